"""Twisted products on integer vectors over a permutation action.

The point set is V = {1..n}, acted on by the powers of a single
permutation: the integer g moves the point v to tau^g(v).  A vector of
length n is read as a map V -> Z, and the twisted product evaluates its
right factor at points displaced by the left factor's values:

    (a * b)(v) = a(v) + b(v . a(v)),      v . g = tau^g(v)

For the cyclic action tau(v) = v - 1, tau(1) = n this becomes

    (a * b)_i = a_i + b_{1 + ((i - 1 - a_i) mod n)}

All arithmetic is exact; indices into V are 1-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

Vec = tuple[int, ...]


@dataclass(frozen=True)
class NotBijective:
    """Witness that a transport map sends two points to the same image."""

    v1: int
    v2: int
    image: int


class NotInvertibleError(ValueError):
    """Raised when inverting an element whose transport map collides."""

    def __init__(self, witness: NotBijective):
        self.witness = witness
        super().__init__(
            f"not invertible: points {witness.v1} and {witness.v2} "
            f"both transport to {witness.image}"
        )


def check_permutation(images: Sequence[int]) -> tuple[int, ...]:
    """Validate one-line notation (1-based images) and return it as a tuple."""
    tau = tuple(int(x) for x in images)
    if sorted(tau) != list(range(1, len(tau) + 1)):
        raise ValueError(f"not a permutation of 1..{len(tau)}: {tau!r}")
    return tau


def ordered_cycles(tau: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """Disjoint cycles (w_1 .. w_m) of tau with tau(w_j) = w_{j-1 mod m}.

    Each cycle starts at its smallest member and is walked against tau, so
    positions within a cycle transform exactly like the cyclic action on
    {1..m}.  Cycles are listed by increasing smallest member.
    """
    n = len(tau)
    prev = [0] * (n + 1)
    for v, image in enumerate(tau, start=1):
        prev[image] = v
    seen = [False] * (n + 1)
    cycles = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        cycle = []
        v = start
        while not seen[v]:
            seen[v] = True
            cycle.append(v)
            v = prev[v]
        cycles.append(tuple(cycle))
    return tuple(cycles)


@dataclass(frozen=True)
class Action:
    """Z-action on {1..n}: the generating permutation and its cycles."""

    n: int
    tau: tuple[int, ...]
    cycles: tuple[tuple[int, ...], ...]

    @classmethod
    def from_permutation(cls, images: Sequence[int]) -> "Action":
        tau = check_permutation(images)
        if not tau:
            raise ValueError("action needs at least one point")
        return cls(n=len(tau), tau=tau, cycles=ordered_cycles(tau))

    @classmethod
    def cyclic(cls, n: int) -> "Action":
        """The action with tau(v) = v - 1 and tau(1) = n."""
        if n < 1:
            raise ValueError(f"n must be positive, got {n}")
        return cls.from_permutation((n, *range(1, n)))

    @classmethod
    def trivial(cls, n: int) -> "Action":
        if n < 1:
            raise ValueError(f"n must be positive, got {n}")
        return cls.from_permutation(range(1, n + 1))

    @cached_property
    def _position(self) -> tuple:
        # v -> (its cycle, its 0-based position in that cycle)
        pos: list = [None] * (self.n + 1)
        for cycle in self.cycles:
            for j, v in enumerate(cycle):
                pos[v] = (cycle, j)
        return tuple(pos)

    def act(self, v: int, g: int) -> int:
        """tau^g(v).  Cyclic case: 1 + ((v - 1 - g) mod n)."""
        if not 1 <= v <= self.n:
            raise ValueError(f"point {v} outside 1..{self.n}")
        cycle, j = self._position[v]
        return cycle[(j - g) % len(cycle)]


def as_vector(values: Sequence[int], n: int | None = None) -> Vec:
    vec = tuple(int(x) for x in values)
    if not vec:
        raise ValueError("empty vector")
    if n is not None and len(vec) != n:
        raise ValueError(f"expected length {n}, got {len(vec)}")
    return vec


def identity_element(action: Action) -> Vec:
    """The all-zero vector: two-sided identity for the twisted product."""
    return (0,) * action.n


def embed_constant(g: int, action: Action) -> Vec:
    """Constant vector with value g; constants embed Z homomorphically."""
    return (int(g),) * action.n


def star_multiply(a: Sequence[int], b: Sequence[int], action: Action) -> Vec:
    """Twisted product a * b under the given action."""
    av = as_vector(a, action.n)
    bv = as_vector(b, action.n)
    act = action.act
    return tuple(
        av[v - 1] + bv[act(v, av[v - 1]) - 1] for v in range(1, action.n + 1)
    )


def transport_permutation(
    a: Sequence[int], action: Action
) -> tuple[int, ...] | NotBijective:
    """The map v -> tau^{a(v)}(v), or a collision witness when not bijective.

    A collision is a normal outcome, not an error: it is exactly the
    certificate that `a` has no twisted inverse.
    """
    av = as_vector(a, action.n)
    act = action.act
    first_preimage: dict[int, int] = {}
    images = []
    for v in range(1, action.n + 1):
        image = act(v, av[v - 1])
        if image in first_preimage:
            return NotBijective(first_preimage[image], v, image)
        first_preimage[image] = v
        images.append(image)
    return tuple(images)


def invert(a: Sequence[int], action: Action) -> Vec:
    """Two-sided twisted inverse psi(w) = -a(pi^{-1}(w)), pi the transport map.

    Raises NotInvertibleError (carrying the collision witness) when the
    transport map is not a bijection.
    """
    av = as_vector(a, action.n)
    pi = transport_permutation(av, action)
    if isinstance(pi, NotBijective):
        raise NotInvertibleError(pi)
    out = [0] * action.n
    for v in range(1, action.n + 1):
        out[pi[v - 1] - 1] = -av[v - 1]
    return tuple(out)
