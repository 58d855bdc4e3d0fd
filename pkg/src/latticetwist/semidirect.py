"""Semidirect product Z^n x| S_n and its match with the deformed addition.

Elements are pairs (z, s) of a translation vector and a permutation in
one-line notation.  The product is

    (z, s) . (k, r) = (z + k o s, r o s),      (k o s)_i = k_{s(i)}

which is the unique convention making phi_forward below a homomorphism
from the deformed addition (the alternative order fails on concrete
pairs already at n = 3).

phi_forward splits each entry as x_i = n*m_i + l_i with l_i in [0, n-1]
and maps x to z = (m_i), s(i) = 1 + ((-l_i) mod n); phi_backward inverts
this via l_i = (1 - s(i)) mod n.  Unit membership for an arbitrary
permutation action factors through the cycles of the permutation, and
vectors split into one factor per cycle.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

from .twisted import Vec, as_vector, check_permutation, ordered_cycles
from .units import is_residue_distinct

Permutation = tuple[int, ...]
CycleStructure = tuple[tuple[int, ...], ...]


class SemiElement(NamedTuple):
    """Pair (translation vector, permutation in one-line notation)."""

    z: Vec
    s: Permutation


def identity_perm(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def perm_compose(p2: Sequence[int], p1: Sequence[int]) -> Permutation:
    """(p2 o p1)(i) = p2(p1(i))."""
    q2 = check_permutation(p2)
    q1 = check_permutation(p1)
    if len(q2) != len(q1):
        raise ValueError(f"length mismatch: {len(q2)} vs {len(q1)}")
    return tuple(q2[v - 1] for v in q1)


def perm_inverse(p: Sequence[int]) -> Permutation:
    q = check_permutation(p)
    out = [0] * len(q)
    for i, v in enumerate(q, start=1):
        out[v - 1] = i
    return tuple(out)


def semi_identity(n: int) -> SemiElement:
    return SemiElement((0,) * n, identity_perm(n))


def semi_multiply(left: SemiElement, right: SemiElement) -> SemiElement:
    """Product left . right = (z + k o s, r o s) for left=(z,s), right=(k,r)."""
    z, s = left
    k, r = right
    if len(z) != len(k):
        raise ValueError(f"length mismatch: {len(z)} vs {len(k)}")
    new_z = tuple(z[i] + k[s[i] - 1] for i in range(len(z)))
    return SemiElement(new_z, perm_compose(r, s))


def semi_inverse(g: SemiElement) -> SemiElement:
    z, s = g
    s_inv = perm_inverse(s)
    new_z = tuple(-z[s_inv[i] - 1] for i in range(len(z)))
    return SemiElement(new_z, s_inv)


def semi_power(g: SemiElement, k: int) -> SemiElement:
    """g^k by square-and-multiply; negative k goes through the inverse."""
    if k < 0:
        return semi_power(semi_inverse(g), -k)
    acc = semi_identity(len(g.z))
    base = g
    while k:
        if k & 1:
            acc = semi_multiply(acc, base)
        base = semi_multiply(base, base)
        k >>= 1
    return acc


def phi_forward(x: Sequence[int]) -> SemiElement:
    """Isomorphism from residue-distinct vectors to (Z^n, S_n) pairs."""
    xv = as_vector(x)
    n = len(xv)
    if not is_residue_distinct(xv):
        raise ValueError(f"entries not pairwise distinct mod {n}: {xv!r}")
    z = []
    s = []
    for e in xv:
        m, l = divmod(e, n)
        z.append(m)
        s.append(1 + ((-l) % n))
    return SemiElement(tuple(z), tuple(s))


def phi_backward(g: SemiElement) -> Vec:
    """Inverse of phi_forward: x_i = n*z_i + ((1 - s(i)) mod n)."""
    z, s = g
    n = len(z)
    check_permutation(s)
    if len(s) != n:
        raise ValueError(f"length mismatch: {n} vs {len(s)}")
    return tuple(n * z[i] + ((1 - s[i]) % n) for i in range(n))


def cycle_decompose(tau: Sequence[int]) -> CycleStructure:
    """Cycles (w_1..w_m) with tau(w_j) = w_{j-1 mod m}, smallest member first."""
    return ordered_cycles(check_permutation(tau))


def general_is_unit(x: Sequence[int], tau: Sequence[int]) -> bool:
    """Invertibility under the action of an arbitrary permutation tau.

    Checked cycle by cycle: within a cycle of length m the displacements
    (j - x_{w_j}) mod m must be pairwise distinct.
    """
    t = check_permutation(tau)
    xv = as_vector(x, len(t))
    for cycle in ordered_cycles(t):
        m = len(cycle)
        if len({(j - xv[w - 1]) % m for j, w in enumerate(cycle, start=1)}) != m:
            return False
    return True


def split_to_factors(x: Sequence[int], cycles: CycleStructure) -> list[Vec]:
    """Restrict x to each cycle, reindexed along the cycle order."""
    xv = as_vector(x)
    _check_cycles(cycles, len(xv))
    return [tuple(xv[w - 1] for w in cycle) for cycle in cycles]


def assemble_from_factors(parts: Sequence[Sequence[int]], cycles: CycleStructure) -> Vec:
    """Inverse of split_to_factors."""
    n = sum(len(c) for c in cycles)
    _check_cycles(cycles, n)
    if len(parts) != len(cycles):
        raise ValueError(f"{len(parts)} parts for {len(cycles)} cycles")
    out = [0] * n
    for part, cycle in zip(parts, cycles):
        if len(part) != len(cycle):
            raise ValueError(f"part length {len(part)} != cycle length {len(cycle)}")
        for value, w in zip(part, cycle):
            out[w - 1] = int(value)
    return tuple(out)


def _check_cycles(cycles: CycleStructure, n: int) -> None:
    members = [w for cycle in cycles for w in cycle]
    if sorted(members) != list(range(1, n + 1)):
        raise ValueError(f"cycles do not partition 1..{n}: {cycles!r}")
