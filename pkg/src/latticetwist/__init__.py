"""Deformed addition on integer vectors.

A permutation tau of {1..n} twists coordinatewise addition of maps
{1..n} -> Z: the right operand is read at positions displaced by the
left operand's values along tau's cycles.  This package implements that
twisted product, its group of invertible elements, an explicit
isomorphism onto the semidirect product Z^n x| S_n, word evaluation for
checking generator/relation systems, and the permutohedral-prism tiling
of R^n whose vertices are exactly the invertible elements in shifted
coordinates.
"""

from .limits import BudgetExceededError
from .twisted import (
    Action,
    NotBijective,
    NotInvertibleError,
    Vec,
    as_vector,
    check_permutation,
    embed_constant,
    identity_element,
    invert,
    ordered_cycles,
    star_multiply,
    transport_permutation,
)
from .units import (
    cyclic_action,
    deformed_identity,
    deformed_inverse,
    deformed_multiply,
    enumerate_residue_classes,
    is_residue_distinct,
    is_unit_member,
    shift_vector,
)
from .semidirect import (
    SemiElement,
    assemble_from_factors,
    cycle_decompose,
    general_is_unit,
    identity_perm,
    perm_compose,
    perm_inverse,
    phi_backward,
    phi_forward,
    semi_identity,
    semi_inverse,
    semi_multiply,
    semi_power,
    split_to_factors,
)
from .words import (
    ClosureReport,
    IdentityReport,
    Relation,
    RelationPreset,
    RelationReport,
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
from .geometry import (
    Decomposition,
    HalfspaceSystem,
    LatticeBasis,
    NotAVertex,
    PrismTile,
    ProductTile,
    TilingReport,
    check_tiling,
    coordinate_matrices,
    decompose_point,
    export_mesh,
    generate_patch,
    is_tile_vertex,
    lattice_basis,
    permutohedron_vertices,
    product_tile_vertices,
    tile_halfspaces,
)

__version__ = "0.1.0"

__all__ = [
    "Action",
    "BudgetExceededError",
    "ClosureReport",
    "Decomposition",
    "HalfspaceSystem",
    "IdentityReport",
    "LatticeBasis",
    "NotAVertex",
    "NotBijective",
    "NotInvertibleError",
    "PrismTile",
    "ProductTile",
    "Relation",
    "RelationPreset",
    "RelationReport",
    "SemiElement",
    "TilingReport",
    "Vec",
    "WordSyntaxError",
    "as_vector",
    "assemble_from_factors",
    "check_permutation",
    "check_tiling",
    "coordinate_matrices",
    "cycle_decompose",
    "cyclic_action",
    "decompose_point",
    "deformed_identity",
    "deformed_inverse",
    "deformed_multiply",
    "embed_constant",
    "enumerate_residue_classes",
    "eval_word",
    "export_mesh",
    "general_is_unit",
    "generate_patch",
    "generated_closure",
    "identity_element",
    "identity_perm",
    "invert",
    "is_residue_distinct",
    "is_tile_vertex",
    "is_unit_member",
    "lattice_basis",
    "letter",
    "normalize_word",
    "ordered_cycles",
    "parse_word",
    "perm_compose",
    "perm_inverse",
    "permutohedron_vertices",
    "phi_backward",
    "phi_forward",
    "product_tile_vertices",
    "relation_preset",
    "render_word",
    "semi_identity",
    "semi_inverse",
    "semi_multiply",
    "semi_power",
    "shift_vector",
    "split_to_factors",
    "standard_generators",
    "star_multiply",
    "tile_halfspaces",
    "transport_permutation",
    "verify_derived_identities",
    "verify_relations",
    "word_concat",
    "word_inverse",
    "word_power",
    "__version__",
]
