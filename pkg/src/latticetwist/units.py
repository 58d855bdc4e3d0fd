"""The group of invertible vectors under the cyclic twisted product.

A vector x is invertible exactly when the displacements (v - x_v) mod n
are pairwise distinct.  Translating the whole unit set by the shift
vector (0, n-1, n-2, ..., 1) turns that criterion into plain residue
distinctness of the entries, and transports the twisted product to a
deformed addition with a closed form:

    (x . y)_i = n * floor(x_i / n) + y_{1 + ((-x_i) mod n)}

Residue-distinct vectors fall into exactly n! classes inside [0, n-1]^n.
"""

from __future__ import annotations

from itertools import permutations
from typing import Sequence

from . import limits
from .twisted import Action, Vec, as_vector, invert

_CYCLIC: dict[int, Action] = {}


def cyclic_action(n: int) -> Action:
    if n not in _CYCLIC:
        _CYCLIC[n] = Action.cyclic(n)
    return _CYCLIC[n]


def shift_vector(n: int) -> Vec:
    """(0, n-1, n-2, ..., 2, 1): identity of the deformed addition."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return (0, *range(n - 1, 0, -1))


def is_unit_member(x: Sequence[int]) -> bool:
    """Invertibility under the cyclic twisted product."""
    xv = as_vector(x)
    n = len(xv)
    return len({(v - xv[v - 1]) % n for v in range(1, n + 1)}) == n


def is_residue_distinct(x: Sequence[int]) -> bool:
    """Entries pairwise distinct mod n; membership in the deformed group."""
    xv = as_vector(x)
    n = len(xv)
    return len({e % n for e in xv}) == n


def _require_residue_distinct(x: Sequence[int]) -> Vec:
    xv = as_vector(x)
    if not is_residue_distinct(xv):
        raise ValueError(f"entries not pairwise distinct mod {len(xv)}: {xv!r}")
    return xv


def deformed_identity(n: int) -> Vec:
    return shift_vector(n)


def deformed_multiply(x: Sequence[int], y: Sequence[int]) -> Vec:
    """Deformed addition of residue-distinct vectors (closed form)."""
    xv = _require_residue_distinct(x)
    yv = _require_residue_distinct(y)
    n = len(xv)
    if len(yv) != n:
        raise ValueError(f"length mismatch: {n} vs {len(yv)}")
    return tuple(n * (xv[i] // n) + yv[(-xv[i]) % n] for i in range(n))


def deformed_inverse(x: Sequence[int]) -> Vec:
    """Inverse for the deformed addition, via the shift conjugation."""
    xv = _require_residue_distinct(x)
    n = len(xv)
    s = shift_vector(n)
    inner = invert(tuple(a - b for a, b in zip(xv, s)), cyclic_action(n))
    return tuple(a + b for a, b in zip(s, inner))


def enumerate_residue_classes(n: int) -> list[Vec]:
    """All residue-distinct vectors in [0, n-1]^n: the n! class representatives."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n > limits.MAX_ENUMERATE_N:
        raise limits.BudgetExceededError(
            f"n={n} exceeds enumeration cap {limits.MAX_ENUMERATE_N}"
        )
    return [tuple(p) for p in permutations(range(n))]
