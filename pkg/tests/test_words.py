"""Word parsing, relation presets, derived identities, closure search."""

import math

import pytest
from hypothesis import given, strategies as st

from latticetwist.limits import BudgetExceededError
from latticetwist.semidirect import SemiElement, semi_identity
from latticetwist.words import (
    Relation,
    RelationPreset,
    WordSyntaxError,
    eval_word,
    generated_closure,
    letter,
    normalize_word,
    parse_word,
    relation_preset,
    render_word,
    standard_generators,
    verify_derived_identities,
    verify_relations,
    word_concat,
    word_inverse,
    word_power,
)


class TestWordAlgebra:
    def test_normalize_merges_and_cancels(self):
        assert normalize_word([("s", 1), ("s", 1)]) == (("s", 2),)
        assert normalize_word([("s", 1), ("s", -1)]) == ()
        assert normalize_word([("s", 1), ("t", 0), ("t", 2)]) == (
            ("s", 1), ("t", 2))
        assert normalize_word([("s", 1), ("t", 2), ("t", -2), ("s", 1)]) == (
            ("s", 2),)

    def test_normalize_rejects_unknown_symbols(self):
        with pytest.raises(ValueError):
            normalize_word([("q", 1)])

    def test_inverse_reverses_and_negates(self):
        w = (("s", 1), ("t", 2))
        assert word_inverse(w) == (("t", -2), ("s", -1))
        assert normalize_word(word_concat(w, word_inverse(w))) == ()

    def test_power(self):
        w = (("s", 1), ("t", 1))
        assert word_power(w, 0) == ()
        assert word_power(w, 2) == (("s", 1), ("t", 1), ("s", 1), ("t", 1))
        assert word_power(w, -1) == (("t", -1), ("s", -1))


class TestParser:
    def test_seven_letters_after_normalization(self):
        word = parse_word("a^-1 (b a)^2 b a^-1")
        assert word == (
            ("a", -1), ("b", 1), ("a", 1), ("b", 1),
            ("a", 1), ("b", 1), ("a", -1),
        )
        assert len(word) == 7

    def test_adjacent_powers_merge(self):
        assert parse_word("t^2 t^3") == (("t", 5),)
        assert parse_word("s s^-1") == ()

    def test_negative_group_exponent_inverts(self):
        assert parse_word("(s t)^-1") == (("t", -1), ("s", -1))

    def test_nested_groups(self):
        assert parse_word("((s t)^2 g)^-1") == (
            ("g", -1), ("t", -1), ("s", -1), ("t", -1), ("s", -1))

    def test_zero_exponent_position(self):
        with pytest.raises(WordSyntaxError) as info:
            parse_word("t^0")
        assert info.value.position == 2

    def test_unknown_character_position(self):
        with pytest.raises(WordSyntaxError) as info:
            parse_word("s x")
        assert info.value.position == 2

    def test_unmatched_parens(self):
        with pytest.raises(WordSyntaxError):
            parse_word("(s t")
        with pytest.raises(WordSyntaxError):
            parse_word("s)")
        with pytest.raises(WordSyntaxError):
            parse_word("()")

    def test_dangling_caret(self):
        with pytest.raises(WordSyntaxError):
            parse_word("s^")
        with pytest.raises(WordSyntaxError):
            parse_word("s^t")

    def test_bare_integer_rejected(self):
        with pytest.raises(WordSyntaxError):
            parse_word("3")

    @given(st.lists(
        st.tuples(st.sampled_from("stgab"),
                  st.integers(-4, 4).filter(lambda x: x != 0)),
        max_size=8))
    def test_render_parse_roundtrip(self, letters):
        word = normalize_word(letters)
        assert parse_word(render_word(word)) == word


class TestGenerators:
    def test_concrete_values_at_n4(self):
        gens = standard_generators(4)
        zero = (0, 0, 0, 0)
        assert gens["s"] == SemiElement(zero, (2, 1, 3, 4))
        assert gens["t"] == SemiElement(zero, (4, 1, 2, 3))
        assert gens["g"] == SemiElement((0, 0, 0, 1), (1, 2, 3, 4))
        assert gens["a"] == SemiElement((0, 0, 0, 1), (4, 1, 2, 3))
        assert gens["b"] == gens["s"]

    def test_needs_two_points(self):
        with pytest.raises(ValueError):
            standard_generators(1)

    def test_eval_word(self):
        assert eval_word(parse_word("t^4"), 4) == semi_identity(4)
        assert eval_word(parse_word("a"), 4) == standard_generators(4)["a"]
        assert eval_word((), 4) == semi_identity(4)

    def test_a_equals_g_times_t(self):
        for n in (2, 3, 4, 5):
            assert eval_word(parse_word("g t"), n) == standard_generators(n)["a"]

    def test_cycle_recovered_from_two_generators(self):
        word = parse_word("a^-1 (b a)^2 b a^-1")
        assert eval_word(word, 4) == standard_generators(4)["t"]


class TestRelationPresets:
    def test_preset_sizes(self):
        assert len(relation_preset(4, "sn").relations) == 4
        assert len(relation_preset(8, "sn").relations) == 8
        assert len(relation_preset(4, "three_gen").relations) == 9
        assert len(relation_preset(5, "three_gen").relations) == 12
        assert len(relation_preset(2, "two_gen").relations) == 2
        assert len(relation_preset(3, "two_gen").relations) == 3
        assert len(relation_preset(6, "two_gen").relations) == 6

    def test_preset_name_normalization(self):
        assert relation_preset(4, "Three-Gen").name == "three_gen"

    def test_unknown_preset(self):
        with pytest.raises(ValueError):
            relation_preset(4, "nope")

    def test_sn_needs_four_points(self):
        with pytest.raises(ValueError):
            relation_preset(3, "sn")

    def test_all_presets_hold(self):
        for n in range(4, 9):
            assert verify_relations(relation_preset(n, "sn")).passed
            assert verify_relations(relation_preset(n, "three_gen")).passed
        for n in range(2, 9):
            assert verify_relations(relation_preset(n, "two_gen")).passed

    def test_labels_parse_to_their_words(self):
        for n, name in [(4, "sn"), (5, "three_gen"), (2, "two_gen"),
                        (3, "two_gen"), (6, "two_gen")]:
            for rel in relation_preset(n, name).relations:
                assert eval_word(parse_word(rel.label), n) == eval_word(
                    rel.word, n), rel.label

    def test_mutated_relation_is_caught(self):
        # cubing an order-two word must break exactly that one check
        base = relation_preset(4, "two_gen")
        target = "(b a^2 b a^-2)^2"
        mutated = tuple(
            rel if rel.label != target else Relation(
                "(b a^2 b a^-2)^3",
                word_power(parse_word("b a^2 b a^-2"), 3))
            for rel in base.relations
        )
        report = verify_relations(RelationPreset("mutated", 4, mutated))
        assert not report.passed
        failing = [c.label for c in report.checks if not c.holds]
        assert failing == ["(b a^2 b a^-2)^3"]


class TestDerivedIdentities:
    def test_all_hold_small_range(self):
        for n in range(2, 9):
            report = verify_derived_identities(n, seed=0)
            assert report.passed, [
                (c.name, c.instance) for c in report.checks if not c.holds]

    def test_check_counts(self):
        assert len(verify_derived_identities(2).checks) == 2
        assert len(verify_derived_identities(3).checks) == 3
        # n=4: 3 swaps + order + 2 rewrites + power swap + 1 prefix
        # + 4 draws * 5 commutators
        assert len(verify_derived_identities(4, draws=4).checks) == 28

    def test_deterministic_under_seed(self):
        a = verify_derived_identities(5, seed=9)
        b = verify_derived_identities(5, seed=9)
        assert a == b

    def test_swap_family_matches_transpositions(self):
        report = verify_derived_identities(6)
        swaps = [c for c in report.checks if c.name == "adjacent_swap_conjugate"]
        assert len(swaps) == 5
        for c in swaps:
            i = int(c.instance.split("=")[1])
            expect = tuple(
                i + 1 if v == i else i if v == i + 1 else v
                for v in range(1, 7))
            assert c.rhs == SemiElement((0,) * 6, expect)


class TestClosure:
    def test_permutation_generators_close_to_factorial(self):
        gens = standard_generators(4)
        report = generated_closure([gens["s"], gens["t"]])
        assert report.closed
        assert report.element_count == math.factorial(4)
        assert report.permutations_complete
        assert report.translation_count == 0
        assert not report.budget_exhausted

    def test_single_involution(self):
        gens = standard_generators(3)
        report = generated_closure([gens["b"]])
        assert report.closed
        assert report.element_count == 2

    def test_two_generators_reach_everything(self):
        for n in (3, 4, 5):
            gens = standard_generators(n)
            targets = {k: gens[k] for k in ("s", "t", "g")}
            report = generated_closure(
                [gens["a"], gens["b"]], targets=targets, stop_early=True)
            assert report.stopped_early
            assert all(report.targets_reached.values())
            assert report.permutations_complete
            assert report.translation_rank == n
            assert report.translations_span_lattice
            assert not report.budget_exhausted

    def test_budget_exhaustion_is_reported(self):
        gens = standard_generators(3)
        report = generated_closure([gens["a"], gens["b"]], budget=20)
        assert report.budget_exhausted
        assert not report.closed
        assert report.element_count == 20

    def test_budget_cap(self):
        gens = standard_generators(3)
        with pytest.raises(BudgetExceededError):
            generated_closure([gens["a"]], budget=10_000_000)

    def test_needs_generators(self):
        with pytest.raises(ValueError):
            generated_closure([])


class TestIntLattice:
    def test_rank_and_index(self):
        from latticetwist.words import _IntLattice

        lat = _IntLattice(2)
        lat.add((2, 0))
        lat.add((0, 2))
        assert lat.rank == 2
        assert not lat.spans_all()  # index 4 sublattice
        lat.add((1, 1))
        assert not lat.spans_all()  # index still 2
        lat.add((1, 0))
        assert lat.spans_all()

    def test_dependent_rows_do_not_raise_rank(self):
        from latticetwist.words import _IntLattice

        lat = _IntLattice(3)
        lat.add((1, 2, 3))
        lat.add((2, 4, 6))
        assert lat.rank == 1
        lat.add((0, 1, 1))
        assert lat.rank == 2
