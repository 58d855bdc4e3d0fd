"""Permutohedral prisms tiling R^n with the residue-distinct vertex set.

The base tile is the convex hull of all permutations of (1..n) together
with their shifts by a = (1,..,1): a prism over the (n-1)-dimensional
permutohedron.  Its translates under the rank-n lattice spanned by

    e_i = (1, .., 1, -(n-1), 1, .., 1)   (i = 1..n-1),   a = (1, .., 1)

tile R^n, and the set of all tile vertices is exactly the set of integer
vectors with pairwise distinct residues mod n.  The change of basis is
the integer matrix C (columns e_1..e_{n-1}, a) with exact rational
inverse; a residue-distinct point p splits as p = C t + u with t integer
and u a permutation of (1..n).

Membership in a tile is decided exactly: the a-coordinate of a point
must lie in the unit slab, and its cross-section (the projection back to
the permutohedron layer) must satisfy every subset-sum inequality
sum_{i in S} x_i >= |S|(|S|+1)/2.  All predicates run in scaled integer
arithmetic; no floats are involved anywhere except mesh-face ordering
for export.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, cached_property
from itertools import combinations, permutations, product
from math import lcm
from typing import NamedTuple, Sequence

from . import limits
from .semidirect import CycleStructure, cycle_decompose
from .twisted import Vec, as_vector

Point = tuple[Fraction, ...]

SAMPLE_DENOMINATOR = 101


def _check_n(n: int, cap: int, what: str) -> None:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n > cap:
        raise limits.BudgetExceededError(f"n={n} exceeds {what} cap {cap}")


def permutohedron_vertices(n: int) -> list[Vec]:
    """All permutations of (1..n); they share coordinate sum n(n+1)/2."""
    _check_n(n, limits.MAX_PERMUTOHEDRON_N, "permutohedron")
    return [tuple(p) for p in permutations(range(1, n + 1))]


@dataclass(frozen=True)
class LatticeBasis:
    e: tuple[Vec, ...]
    a: Vec


def lattice_basis(n: int) -> LatticeBasis:
    if n < 2:
        raise ValueError(f"lattice basis needs n >= 2, got {n}")
    e = tuple(
        tuple(-(n - 1) if j == i else 1 for j in range(n)) for i in range(n - 1)
    )
    return LatticeBasis(e=e, a=(1,) * n)


@lru_cache(maxsize=None)
def coordinate_matrices(n: int) -> tuple[tuple[Vec, ...], tuple[Point, ...]]:
    """(C, C^-1): columns of C are e_1..e_{n-1}, a; the inverse is exact."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n == 1:
        return ((1,),), ((Fraction(1),),)
    rows = [
        tuple(-(n - 1) if j == i else 1 for j in range(n)) for i in range(n - 1)
    ]
    rows.append((1,) * n)
    inv = []
    for i in range(n - 1):
        inv.append(tuple(
            -Fraction(1, n) if j == i else
            Fraction(1, n) if j == n - 1 else Fraction(0)
            for j in range(n)
        ))
    inv.append(tuple(Fraction(1, n) for _ in range(n)))
    return tuple(rows), tuple(inv)


def _lattice_offset(coeffs: Vec) -> Vec:
    """C . coeffs, in integer arithmetic."""
    n = len(coeffs)
    C, _ = coordinate_matrices(n)
    return tuple(sum(C[i][j] * coeffs[j] for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class NotAVertex:
    """Witness: positions v1 < v2 share the same residue mod n."""

    v1: int
    v2: int
    residue: int


class Decomposition(NamedTuple):
    t: Vec
    u: Vec


def is_tile_vertex(p: Sequence[int]) -> bool:
    pv = as_vector(p)
    n = len(pv)
    return len({e % n for e in pv}) == n


def decompose_point(p: Sequence[int]) -> Decomposition | NotAVertex:
    """Split p = C t + u with t integer, u a permutation of (1..n).

    Returns a NotAVertex witness when two entries collide mod n; such
    points are not vertices of any tile.
    """
    pv = as_vector(p)
    n = len(pv)
    seen: dict[int, int] = {}
    for v in range(1, n + 1):
        res = pv[v - 1] % n
        if res in seen:
            return NotAVertex(seen[res], v, res)
        seen[res] = v
    u = tuple(((e - 1) % n) + 1 for e in pv)
    d = [e - f for e, f in zip(pv, u)]
    t = [(d[n - 1] - d[i]) // n for i in range(n - 1)]
    t.append(sum(d) // n)
    return Decomposition(tuple(t), u)


@lru_cache(maxsize=None)
def _proper_subsets(n: int) -> tuple[tuple[tuple[int, ...], int, int], ...]:
    """(0-based index tuple, |S|, |S|(|S|+1)/2) for proper nonempty S."""
    out = []
    for m in range(1, n):
        for subset in combinations(range(n), m):
            out.append((subset, m, m * (m + 1) // 2))
    return tuple(out)


def _evaluate_scaled(P: Sequence[int], den: int, n: int) -> tuple[str, tuple[str, ...]]:
    """Classify the point P/den against the base tile; exact, integer-only.

    The a-coordinate numerator is L = sum(P) - den*K with K = n(n+1)/2;
    the slab is 0 <= L <= den*n, and each subset inequality becomes
    n*sum_S(P) - |S|*L >= den*n*B_S after clearing denominators.
    """
    K = n * (n + 1) // 2
    total = sum(P)
    L = total - den * K
    tight: list[str] = []
    if L < 0 or L > den * n:
        return "outside", ()
    if L == 0:
        tight.append("layer_bottom")
    if L == den * n:
        tight.append("layer_top")
    for subset, m, bound in _proper_subsets(n):
        value = n * sum(P[i] for i in subset) - m * L - den * n * bound
        if value < 0:
            return "outside", ()
        if value == 0:
            tight.append("facet_" + "_".join(str(i + 1) for i in subset))
    if tight:
        return "boundary", tuple(tight)
    return "interior", ()


def _as_point(point: Sequence) -> Point:
    return tuple(Fraction(x) for x in point)


@dataclass(frozen=True)
class HalfspaceSystem:
    """The base tile as 'coeffs . x >= rhs' inequalities over rationals."""

    n: int
    inequalities: tuple[tuple[str, tuple[Fraction, ...], Fraction], ...]

    def classify(self, point: Sequence) -> str:
        """'interior', 'boundary' (some inequality tight), or 'outside'."""
        status, _ = self.classify_with_tight(point)
        return status

    def classify_with_tight(self, point: Sequence) -> tuple[str, tuple[str, ...]]:
        pt = _as_point(point)
        if len(pt) != self.n:
            raise ValueError(f"expected length {self.n}, got {len(pt)}")
        den = lcm(*(x.denominator for x in pt)) if pt else 1
        P = [int(x * den) for x in pt]
        return _evaluate_scaled(P, den, self.n)

    def contains(self, point: Sequence) -> bool:
        return self.classify(point) != "outside"


@lru_cache(maxsize=None)
def tile_halfspaces(n: int) -> HalfspaceSystem:
    """Subset-sum inequalities on the cross-section plus the unit a-slab."""
    _check_n(n, limits.MAX_HALFSPACE_N, "halfspace")
    K = Fraction(n * (n + 1), 2)
    ineqs: list[tuple[str, tuple[Fraction, ...], Fraction]] = [
        ("layer_bottom", tuple(Fraction(1) for _ in range(n)), K),
        ("layer_top", tuple(Fraction(-1) for _ in range(n)), -(K + n)),
    ]
    for subset, m, bound in _proper_subsets(n):
        coeffs = tuple(
            (Fraction(1) if i in subset else Fraction(0)) - Fraction(m, n)
            for i in range(n)
        )
        rhs = Fraction(bound) - Fraction(m, n) * K
        label = "facet_" + "_".join(str(i + 1) for i in subset)
        ineqs.append((label, coeffs, rhs))
    return HalfspaceSystem(n=n, inequalities=tuple(ineqs))


@dataclass(frozen=True)
class PrismTile:
    """One prism: the base tile translated by C . coeffs.

    `coeffs` are the integer coordinates in the basis e_1..e_{n-1}, a.
    """

    n: int
    coeffs: Vec

    @cached_property
    def offset(self) -> Vec:
        return _lattice_offset(self.coeffs)

    @cached_property
    def vertices(self) -> tuple[Vec, ...]:
        """Both layers: permutations of (1..n), then their a-shifts."""
        off = self.offset
        base = permutohedron_vertices(self.n)
        bottom = [tuple(o + v for o, v in zip(off, u)) for u in base]
        top = [tuple(x + 1 for x in v) for v in bottom]
        return tuple(bottom + top)

    def classify(self, point: Sequence) -> str:
        pt = _as_point(point)
        shifted = tuple(x - o for x, o in zip(pt, self.offset))
        return tile_halfspaces(self.n).classify(shifted)


def generate_patch(n: int, radius: int) -> list[PrismTile]:
    """All tiles with max-norm coefficient at most `radius`, lexicographic."""
    _check_n(n, limits.MAX_PATCH_N, "patch")
    if radius < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    if radius > limits.MAX_PATCH_RADIUS:
        raise limits.BudgetExceededError(
            f"radius {radius} exceeds cap {limits.MAX_PATCH_RADIUS}")
    span = range(-radius, radius + 1)
    return [PrismTile(n, coeffs) for coeffs in product(span, repeat=n)]


@dataclass(frozen=True)
class ProductTile:
    """Vertex model of the unit set for an arbitrary permutation action.

    One permutohedron-prism factor per cycle of tau, assembled along the
    cycle positions: a product of |cycle|-1 dimensional permutohedra and
    one unit interval per cycle.
    """

    tau: tuple[int, ...]
    cycles: CycleStructure
    vertices: tuple[Vec, ...]
    permutohedron_dims: tuple[int, ...]
    interval_count: int

    @property
    def description(self) -> str:
        parts = [f"P{d}" for d in self.permutohedron_dims]
        parts.append(f"I^{self.interval_count}")
        return " x ".join(parts)


def product_tile_vertices(tau: Sequence[int]) -> ProductTile:
    cycles = cycle_decompose(tau)
    n = sum(len(c) for c in cycles)
    _check_n(n, limits.MAX_PRODUCT_TILE_N, "product tile")
    factor_vertices = []
    for cycle in cycles:
        m = len(cycle)
        layer = permutohedron_vertices(m)
        factor_vertices.append(layer + [tuple(x + 1 for x in v) for v in layer])
    assembled = []
    for choice in product(*factor_vertices):
        out = [0] * n
        for cycle, part in zip(cycles, choice):
            for w, value in zip(cycle, part):
                out[w - 1] = value
        assembled.append(tuple(out))
    return ProductTile(
        tau=tuple(int(x) for x in tau),
        cycles=cycles,
        vertices=tuple(assembled),
        permutohedron_dims=tuple(len(c) - 1 for c in cycles),
        interval_count=len(cycles),
    )


@dataclass(frozen=True)
class TilingReport:
    n: int
    box: tuple[int, int]
    samples: int
    seed: int
    denominator: int
    covered_count: int
    interior_one_count: int
    resample_count: int
    overlap_witnesses: tuple
    vertex_match: bool
    vertex_count: int
    vertex_mismatches: tuple
    tile_count_scanned: int

    @property
    def covered_fraction(self) -> Fraction:
        return Fraction(self.covered_count, self.samples) if self.samples else Fraction(1)

    @property
    def interior_one_fraction(self) -> Fraction:
        return Fraction(self.interior_one_count, self.samples) if self.samples else Fraction(1)

    @property
    def passed(self) -> bool:
        return (
            self.covered_count == self.samples
            and not self.overlap_witnesses
            and self.vertex_match
        )


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _candidate_coeffs(P: Sequence[int], den: int, n: int):
    """Integer coefficient windows for tiles that could contain P/den.

    The coefficient image of the base tile lies in the box
    [(1-n)/n, (n-1)/n]^(n-1) x [(n+1)/2, (n+3)/2]; any containing tile's
    coefficients sit inside the point's coefficients minus that box.
    """
    dn = den * n
    ranges = []
    for i in range(n - 1):
        num = P[n - 1] - P[i]
        lo = _ceil_div(num - den * (n - 1), dn)
        hi = (num + den * (n - 1)) // dn
        ranges.append(range(lo, hi + 1))
    total2 = 2 * sum(P)
    lo = _ceil_div(total2 - den * n * (n + 3), 2 * dn)
    hi = (total2 - den * n * (n + 1)) // (2 * dn)
    ranges.append(range(lo, hi + 1))
    return product(*ranges)


def _count_containing(P: Sequence[int], den: int, n: int):
    """(closed_count, interior_tiles, any_tight) over all candidate tiles."""
    closed = 0
    interior = []
    any_tight = False
    for coeffs in _candidate_coeffs(P, den, n):
        off = _lattice_offset(coeffs)
        P0 = [p - den * o for p, o in zip(P, off)]
        status, tight = _evaluate_scaled(P0, den, n)
        if status == "outside":
            continue
        closed += 1
        if tight:
            any_tight = True
        else:
            interior.append(coeffs)
    return closed, interior, any_tight


def _tiling_chunk(args) -> dict:
    """Sample a contiguous index range; deterministic per-sample seeding."""
    n, lo, hi, seed, start, count = args
    den = SAMPLE_DENOMINATOR
    covered = 0
    interior_one = 0
    resamples = 0
    overlaps = []
    for index in range(start, start + count):
        rng = random.Random(seed * 1_000_003 + index)
        for _ in range(64):
            P = [rng.randint(lo * den, hi * den) for _ in range(n)]
            closed, interior, any_tight = _count_containing(P, den, n)
            if not any_tight:
                break
            resamples += 1
        else:
            raise RuntimeError(f"sample {index}: could not avoid facets")
        if closed >= 1:
            covered += 1
        if len(interior) == 1:
            interior_one += 1
        elif len(interior) >= 2:
            point = tuple(Fraction(p, den) for p in P)
            overlaps.append((point, tuple(interior)))
    return {
        "covered": covered,
        "interior_one": interior_one,
        "resamples": resamples,
        "overlaps": overlaps,
    }


def _box_vertex_sets(n: int, lo: int, hi: int):
    """Tile-vertex set vs residue-distinct set inside the box, by enumeration."""
    if (hi - lo + 1) ** n > limits.MAX_BOX_POINTS:
        raise limits.BudgetExceededError(
            f"box [{lo}, {hi}]^{n} exceeds {limits.MAX_BOX_POINTS} integer points")
    d_lo, d_hi = lo - (n + 1), hi - 1
    ranges = []
    for _ in range(n - 1):
        lo_i = _ceil_div(d_lo - d_hi, n)
        hi_i = (d_hi - d_lo) // n
        ranges.append(range(lo_i, hi_i + 1))
    ranges.append(range(d_lo, d_hi + 1))
    tile_count = 1
    for r in ranges:
        tile_count *= len(r)
    if tile_count > limits.MAX_BOX_POINTS:
        raise limits.BudgetExceededError(
            f"{tile_count} candidate tiles exceed {limits.MAX_BOX_POINTS}")
    in_box = lambda v: all(lo <= x <= hi for x in v)
    from_tiles = set()
    for coeffs in product(*ranges):
        for v in PrismTile(n, coeffs).vertices:
            if in_box(v):
                from_tiles.add(v)
    from_residues = {
        v for v in product(range(lo, hi + 1), repeat=n) if is_tile_vertex(v)
    }
    return from_tiles, from_residues, tile_count


def check_tiling(
    n: int,
    box: tuple[int, int],
    samples: int = 10_000,
    seed: int = 0,
    workers: int = 1,
) -> TilingReport:
    """Estimate cover/overlap behavior of the tiling on a box, exactly.

    Rational sample points with denominator 101 are classified against
    every tile that could contain them; samples landing on a facet are
    redrawn deterministically.  Also enumerates all integer points of the
    box and matches the tile-vertex set against the residue-distinct set.
    """
    _check_n(n, limits.MAX_PATCH_N, "tiling")
    lo, hi = int(box[0]), int(box[1])
    if lo >= hi:
        raise ValueError(f"box must have lo < hi, got [{lo}, {hi}]")
    if samples < 0:
        raise ValueError(f"samples must be >= 0, got {samples}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")

    from_tiles, from_residues, tile_count = _box_vertex_sets(n, lo, hi)
    mismatches = tuple(sorted(from_tiles ^ from_residues))[:8]

    chunks = []
    if samples:
        per = max(1, samples // workers)
        start = 0
        while start < samples:
            count = min(per, samples - start)
            chunks.append((n, lo, hi, seed, start, count))
            start += count
    if workers > 1 and len(chunks) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_tiling_chunk, chunks))
    else:
        results = [_tiling_chunk(c) for c in chunks]

    covered = sum(r["covered"] for r in results)
    interior_one = sum(r["interior_one"] for r in results)
    resamples = sum(r["resamples"] for r in results)
    overlaps = tuple(o for r in results for o in r["overlaps"])

    return TilingReport(
        n=n,
        box=(lo, hi),
        samples=samples,
        seed=seed,
        denominator=SAMPLE_DENOMINATOR,
        covered_count=covered,
        interior_one_count=interior_one,
        resample_count=resamples,
        overlap_witnesses=overlaps,
        vertex_match=from_tiles == from_residues,
        vertex_count=len(from_residues),
        vertex_mismatches=mismatches,
        tile_count_scanned=tile_count,
    )


def _face_loops(tile: PrismTile) -> list[list[int]]:
    """Vertex index loops of the tile's 2D faces, outward oriented.

    Combinatorics (which vertices lie on which facet) is exact; only the
    cyclic ordering of each loop uses floats.
    """
    n = tile.n
    verts = tile.vertices
    off = tile.offset
    groups: dict[str, list[int]] = {}
    for idx, v in enumerate(verts):
        P0 = [x - o for x, o in zip(v, off)]
        status, tight = _evaluate_scaled(P0, 1, n)
        assert status == "boundary", "tile vertices lie on the boundary"
        for label in tight:
            groups.setdefault(label, []).append(idx)
    if n == 2:
        loops = [list(range(len(verts)))]
    else:
        loops = [idx for idx in groups.values() if len(idx) >= 3]
    center = [sum(v[i] for v in verts) / len(verts) for i in range(n)]
    return [_order_loop([verts[i] for i in loop], loop, center) for loop in loops]


def _order_loop(points, indices, center):
    import math as _math

    k = len(points)
    fc = [sum(p[i] for p in points) / k for i in range(len(center))]
    rel = [[p[i] - fc[i] for i in range(len(fc))] for p in points]
    u = rel[0]
    normal = None
    for other in rel[1:]:
        normal = _cross3(_pad3(u), _pad3(other))
        if sum(abs(x) for x in normal) > 1e-9:
            break
    outward = [fc[i] - center[i] for i in range(len(fc))]
    if sum(a * b for a, b in zip(normal, _pad3(outward))) < 0:
        normal = [-x for x in normal]
    basis_u = _pad3(u)
    basis_v = _cross3(normal, basis_u)
    angles = []
    for idx, r in zip(indices, rel):
        r3 = _pad3(r)
        x = sum(a * b for a, b in zip(r3, basis_u))
        y = sum(a * b for a, b in zip(r3, basis_v))
        angles.append((_math.atan2(y, x), idx))
    return [idx for _, idx in sorted(angles)]


def _pad3(v):
    return [float(x) for x in (*v, 0, 0)][:3]


def _cross3(u, v):
    return [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]


def export_mesh(tiles: Sequence[PrismTile], format: str, path: str | None = None):
    """Serialize tiles as 'json' (any n) or 'off' (ambient dimension <= 3).

    Returns the serialized text; also writes it to `path` when given.
    """
    if not tiles:
        raise ValueError("no tiles to export")
    n = tiles[0].n
    if any(t.n != n for t in tiles):
        raise ValueError("tiles have mixed dimensions")
    if format == "json":
        doc = {
            "n": n,
            "tiles": [
                {"t": list(t.coeffs), "vertices": [list(v) for v in t.vertices]}
                for t in tiles
            ],
        }
        text = json.dumps(doc, indent=2) + "\n"
    elif format == "off":
        if n > 3:
            raise ValueError(f"off export needs ambient dimension <= 3, got {n}")
        all_vertices: list[Vec] = []
        all_faces: list[list[int]] = []
        for tile in tiles:
            base = len(all_vertices)
            all_vertices.extend(tile.vertices)
            if n >= 2:
                all_faces.extend(
                    [base + i for i in loop] for loop in _face_loops(tile)
                )
        lines = ["OFF", f"{len(all_vertices)} {len(all_faces)} 0"]
        for v in all_vertices:
            coords = (*v, 0, 0)[:3]
            lines.append(" ".join(str(x) for x in coords))
        for face in all_faces:
            lines.append(" ".join(str(x) for x in (len(face), *face)))
        text = "\n".join(lines) + "\n"
    else:
        raise ValueError(f"unknown format {format!r}")
    if path is not None:
        with open(path, "w") as handle:
            handle.write(text)
    return text
