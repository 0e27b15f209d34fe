"""Exact lattice geometry: hulls, closures, point censuses, canonical forms.

All arithmetic is exact (int / Fraction).  Convex hulls are supported for
affine dimension up to 5: dimensions 0-2 directly, 3-5 by double
description on the polar dual.  Inputs of lower affine dimension than
their ambient space are projected onto a saturated basis of their affine
lattice, hulled there, and lifted back, so facet data is always integral.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Optional, Sequence, Union

from .errors import (
    DegenerateInputError,
    SiteMembershipError,
    UnsupportedDimensionError,
)

Point = tuple  # tuple[int, ...]; kept loose so Fraction-valued helpers can reuse code

_HULL_DIM_LIMIT = 5


# ---------------------------------------------------------------------------
# small exact linear algebra


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """g, x, y with a*x + b*y = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _vec_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """v divided by the gcd of its entries; v must be nonzero."""
    g = _vec_gcd(v)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(x // g for x in v)


def _dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def _sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def rational_rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q of a small matrix given as rows."""
    mat = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    col = 0
    while rank < len(mat) and col < ncols:
        pivot = None
        for r in range(rank, len(mat)):
            if mat[r][col]:
                pivot = r
                break
        if pivot is None:
            col += 1
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
        col += 1
    return rank


def solve_rational(rows: Sequence[Sequence], rhs: Sequence) -> Optional[list[Fraction]]:
    """One exact solution of rows * x = rhs, or None if inconsistent.

    Free variables are set to zero.  Intended for the tiny systems that
    appear in affine projections and facet lifts.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    aug = [[Fraction(x) for x in rows[r]] + [Fraction(rhs[r])] for r in range(m)]
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(n):
        pr = None
        for r in range(row, m):
            if aug[r][col]:
                pr = r
                break
        if pr is None:
            continue
        aug[row], aug[pr] = aug[pr], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [x * inv for x in aug[row]]
        for r in range(m):
            if r != row and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[row])]
        pivots.append((row, col))
        row += 1
        if row == m:
            break
    for r in range(row, m):
        if aug[r][n]:
            return None
    x = [Fraction(0)] * n
    for r, c in pivots:
        x[c] = aug[r][n]
    return x


def integer_kernel_basis(rows: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """Basis of {x in Z^n : rows * x = 0}.

    Column reduction by unimodular operations; the result generates the
    full (saturated) kernel lattice.
    """
    m = len(rows)
    a_cols = [[rows[r][j] for r in range(m)] for j in range(n)]
    u_cols = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    free = list(range(n))
    for r in range(m):
        active = [j for j in free if a_cols[j][r] != 0]
        while len(active) > 1:
            j1, j2 = active[0], active[1]
            a1, a2 = a_cols[j1][r], a_cols[j2][r]
            g, x, y = _xgcd(a1, a2)
            p, q = a2 // g, a1 // g
            c1a, c2a = a_cols[j1], a_cols[j2]
            a_cols[j1] = [x * u + y * v for u, v in zip(c1a, c2a)]
            a_cols[j2] = [-p * u + q * v for u, v in zip(c1a, c2a)]
            c1u, c2u = u_cols[j1], u_cols[j2]
            u_cols[j1] = [x * u + y * v for u, v in zip(c1u, c2u)]
            u_cols[j2] = [-p * u + q * v for u, v in zip(c1u, c2u)]
            active.pop(1)
        if active:
            free.remove(active[0])
    return [tuple(u_cols[j]) for j in free]


def saturated_direction_basis(points: Sequence[Point]) -> list[tuple[int, ...]]:
    """Integer basis of the saturated lattice spanned by point differences.

    Saturation matters: every lattice point of the affine hull must have
    integer coordinates in this basis.  Obtained as the kernel of the
    kernel (both computed over Z, hence saturated).
    """
    n = len(points[0])
    p0 = points[0]
    diffs = [_sub(p, p0) for p in points[1:]]
    diffs = [d for d in diffs if any(d)]
    if not diffs:
        return []
    orth = integer_kernel_basis(diffs, n)
    return integer_kernel_basis(orth, n)


# ---------------------------------------------------------------------------
# sites


@dataclass(frozen=True)
class FiniteSite:
    """A finite set of lattice points, stored sorted and deduplicated."""

    points: tuple
    dim: int

    @classmethod
    def of(cls, points: Iterable[Point]) -> "FiniteSite":
        pts = sorted(set(tuple(int(x) for x in p) for p in points))
        if not pts:
            raise ValueError("a site must contain at least one point")
        dims = {len(p) for p in pts}
        if len(dims) != 1:
            raise ValueError("mixed point dimensions in site")
        return cls(points=tuple(pts), dim=dims.pop())

    @classmethod
    def grid(cls, *sizes: int) -> "FiniteSite":
        """The box {0..s1-1} x ... x {0..sd-1}."""
        if not sizes or any(s < 1 for s in sizes):
            raise ValueError("grid sizes must be positive")
        return cls.of(itertools.product(*(range(s) for s in sizes)))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __contains__(self, p: object) -> bool:
        return p in set(self.points)

    def describe(self) -> str:
        return f"finite site, {len(self.points)} points in Z^{self.dim}"


class IntegerLattice:
    """Marker site: the full integer lattice of the ambient dimension."""

    _instance = None

    def __new__(cls) -> "IntegerLattice":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def describe(self) -> str:
        return "integer lattice"


Z_LATTICE = IntegerLattice()

Site = Union[FiniteSite, IntegerLattice]


# ---------------------------------------------------------------------------
# census record


@dataclass(frozen=True)
class PointCensus:
    """Counts of site points relative to a polytope.

    total = vertex + nonvertex and nonvertex = interior + boundary hold
    by construction; interior means ambient interior unless the census
    was taken in relative mode.
    """

    total: int
    vertex: int
    nonvertex: int
    interior: int
    boundary: int

    def __post_init__(self) -> None:
        if self.total != self.vertex + self.nonvertex:
            raise ValueError("census mismatch: total != vertex + nonvertex")
        if self.nonvertex != self.interior + self.boundary:
            raise ValueError("census mismatch: nonvertex != interior + boundary")

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.total, self.vertex, self.nonvertex, self.interior, self.boundary)


# ---------------------------------------------------------------------------
# polytope


@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of finitely many lattice points, with exact facet data.

    vertices: canonical order (counterclockwise from the lexicographic
    minimum when the polytope is full-dimensional in ambient Z^2, sorted
    lexicographically otherwise).  facets: (normal, offset) pairs with
    primitive integer normals, meaning normal . x <= offset; for inputs
    of lower affine dimension the facets cut the affine hull.
    """

    vertices: tuple
    facets: tuple
    ambient_dim: int
    affine_dim: int

    @property
    def is_full_dimensional(self) -> bool:
        return self.affine_dim == self.ambient_dim

    @property
    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    def facet_count(self) -> int:
        return len(self.facets)

    def contains(self, p: Point) -> bool:
        """Exact membership; for degenerate polytopes the affine hull counts."""
        if not self.is_full_dimensional and not self._in_affine_hull(p):
            return False
        return all(_dot(n, p) <= c for n, c in self.facets)

    def strictly_contains(self, p: Point) -> bool:
        """Ambient-interior membership (always False when degenerate)."""
        if not self.is_full_dimensional:
            return False
        return all(_dot(n, p) < c for n, c in self.facets)

    def relatively_contains(self, p: Point) -> bool:
        """Relative-interior membership (strict within the affine hull)."""
        if self.affine_dim == 0:
            return tuple(p) == self.vertices[0]
        if not self.is_full_dimensional and not self._in_affine_hull(p):
            return False
        return all(_dot(n, p) < c for n, c in self.facets)

    def _in_affine_hull(self, p: Point) -> bool:
        basis = saturated_direction_basis(self.vertices)
        if not basis:
            return tuple(p) == self.vertices[0]
        rows = [[basis[j][i] for j in range(len(basis))] for i in range(self.ambient_dim)]
        return solve_rational(rows, _sub(p, self.vertices[0])) is not None

    def bounding_box(self) -> tuple[tuple[int, int], ...]:
        lo = tuple(min(v[i] for v in self.vertices) for i in range(self.ambient_dim))
        hi = tuple(max(v[i] for v in self.vertices) for i in range(self.ambient_dim))
        return tuple(zip(lo, hi))


# ---------------------------------------------------------------------------
# hulls


def _hull_cycle_2d(points: Sequence[Point]) -> tuple:
    """Counterclockwise vertex cycle starting at the lexicographic minimum.

    Monotone chain; strictly convex turns only, so collinear interior
    points never survive.  Works for int and Fraction coordinates alike.
    """
    pts = sorted(set(points))

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return tuple(lower[:-1] + upper[:-1])


def _facets_from_cycle_2d(cycle: Sequence[Point]) -> tuple:
    facets = []
    m = len(cycle)
    for i in range(m):
        v, w = cycle[i], cycle[(i + 1) % m]
        e = _sub(w, v)
        normal = primitive((e[1], -e[0]))
        facets.append((normal, _dot(normal, v)))
    return tuple(sorted(facets))


def _hull_1d(points: Sequence[Point]) -> tuple[tuple, tuple]:
    direction = primitive(_sub(max(points), min(points)))
    keyed = sorted(points, key=lambda p: _dot(direction, p))
    lo, hi = keyed[0], keyed[-1]
    neg = tuple(-x for x in direction)
    facets = tuple(sorted([(direction, _dot(direction, hi)), (neg, _dot(neg, lo))]))
    return (tuple(sorted((lo, hi))), facets)


def _affinely_independent_subset(points: Sequence[Point], d: int) -> list[Point]:
    chosen = [points[0]]
    diffs: list = []
    for p in points[1:]:
        cand = diffs + [_sub(p, chosen[0])]
        if rational_rank(cand) > len(diffs):
            diffs = cand
            chosen.append(p)
            if len(chosen) == d + 1:
                break
    return chosen


def _dd_hull(points: Sequence[Point], d: int) -> tuple[tuple, tuple]:
    """Full-dimensional hull in Z^d, d in {3,4,5}, by polar double description."""
    pts = sorted(set(points))
    base = _affinely_independent_subset(pts, d)
    assert len(base) == d + 1, "caller guarantees full affine dimension"
    q = d + 1
    centroid_q = tuple(sum(p[i] for p in base) for i in range(d))  # q * centroid

    # Dual halfspaces: (p - c) . y <= 1, scaled integral: omega . y <= q.
    omegas = [tuple(q * p[i] - centroid_q[i] for i in range(d)) for p in pts]

    # Certified bound on dual vertex coordinates via Hadamard + Cramer.
    m_entry = max(q, max(abs(x) for w in omegas for x in w))
    bound = d ** d * m_entry ** d + 1

    # Start from the bounding cube; box constraint ids are negative.
    def box_normal(idx: int) -> tuple:
        j, sign = divmod(-idx - 1, 2)
        v = [0] * d
        v[j] = 1 if sign == 0 else -1
        return tuple(v)

    constraints: dict[int, tuple[tuple, int]] = {}
    for j in range(d):
        for sign in range(2):
            idx = -(2 * j + sign + 1)
            constraints[idx] = (box_normal(idx), bound)

    verts: list[tuple[tuple, frozenset]] = []
    for corner in itertools.product((-bound, bound), repeat=d):
        tight = frozenset(
            -(2 * j + (0 if corner[j] > 0 else 1) + 1) for j in range(d)
        )
        verts.append((tuple(Fraction(x) for x in corner), tight))

    def tight_set(y: tuple) -> frozenset:
        return frozenset(
            idx for idx, (nrm, off) in constraints.items() if _dot(nrm, y) == off
        )

    for new_idx, omega in enumerate(omegas):
        vals = [_dot(omega, y) - q for y, _ in verts]
        if all(v <= 0 for v in vals):
            constraints[new_idx] = (omega, q)
            verts = [
                (y, tight | ({new_idx} if vals[i] == 0 else frozenset()))
                for i, (y, tight) in enumerate(verts)
            ]
            continue
        ins = [i for i, v in enumerate(vals) if v < 0]
        outs = [i for i, v in enumerate(vals) if v > 0]
        ons = [i for i, v in enumerate(vals) if v == 0]
        new_pts: set[tuple] = set()
        for i in ins:
            yi, ti = verts[i]
            for o in outs:
                yo, to = verts[o]
                common = ti & to
                if len(common) < d - 1:
                    continue
                if rational_rank([constraints[c][0] for c in common]) != d - 1:
                    continue
                t = Fraction(-vals[i], vals[o] - vals[i])
                new_pts.add(tuple(a + t * (b - a) for a, b in zip(yi, yo)))
        constraints[new_idx] = (omega, q)
        kept = [(verts[i][0], verts[i][1]) for i in ins]
        kept += [(verts[i][0], verts[i][1] | {new_idx}) for i in ons]
        kept += [(y, tight_set(y)) for y in sorted(new_pts)]
        verts = sorted(kept)

    for y, tight in verts:
        assert all(idx >= 0 for idx in tight), "dual polytope touched the start box"

    # Each dual vertex is a primal facet: y . (x - c) <= 1.
    facets = set()
    for y, _ in verts:
        denom = 1
        for coord in y:
            denom = denom * coord.denominator // gcd(denom, coord.denominator)
        n_raw = tuple(int(coord * denom) * q for coord in y)
        off = _dot(tuple(int(coord * denom) for coord in y), centroid_q) + denom * q
        g = _vec_gcd(n_raw)
        assert g and off % g == 0, "facet hyperplane must be integral"
        facets.add((tuple(x // g for x in n_raw), off // g))
    facet_list = sorted(facets)

    vertices = []
    for p in pts:
        tightn = [n for n, c in facet_list if _dot(n, p) == c]
        assert all(_dot(n, p) <= c for n, c in facet_list), "hull excludes an input"
        if len(tightn) >= d and rational_rank(tightn) == d:
            vertices.append(p)
    return tuple(vertices), tuple(facet_list)


def _hull_full_dim(points: Sequence[Point], d: int) -> tuple[tuple, tuple]:
    if d == 0:
        return (tuple(sorted(set(points)))[:1], ())
    if d == 1:
        return _hull_1d(points)
    if d == 2:
        cycle = _hull_cycle_2d(points)
        return cycle, _facets_from_cycle_2d(cycle)
    if d <= _HULL_DIM_LIMIT:
        return _dd_hull(points, d)
    raise UnsupportedDimensionError(
        f"exact hulls support affine dimension <= {_HULL_DIM_LIMIT}, got {d}"
    )


def convex_hull(points: Iterable[Point]) -> LatticePolytope:
    """Exact convex hull of lattice points (affine dimension up to 5)."""
    pts = sorted(set(tuple(int(x) for x in p) for p in points))
    if not pts:
        raise ValueError("hull of an empty point set")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise ValueError("mixed point dimensions")

    basis = saturated_direction_basis(pts)
    d = len(basis)
    if d > _HULL_DIM_LIMIT:
        raise UnsupportedDimensionError(
            f"exact hulls support affine dimension <= {_HULL_DIM_LIMIT}, got {d}"
        )

    if d == n:
        vertices, facets = _hull_full_dim(pts, d)
        if n == 2:
            return LatticePolytope(vertices, facets, n, d)
        return LatticePolytope(tuple(sorted(vertices)), facets, n, d)

    # Degenerate: hull in saturated affine coordinates, lift facets back.
    p0 = pts[0]
    rows = [[basis[j][i] for j in range(d)] for i in range(n)]
    coords = []
    for p in pts:
        sol = solve_rational(rows, _sub(p, p0))
        assert sol is not None, "input point outside its own affine hull"
        assert all(x.denominator == 1 for x in sol), "saturation guarantees integrality"
        coords.append(tuple(int(x) for x in sol))
    coord_map = dict(zip(coords, pts))

    sub_vertices, sub_facets = _hull_full_dim(coords, d)
    vertices = tuple(sorted(coord_map[u] for u in sub_vertices))

    bt_rows = [[basis[j][i] for i in range(n)] for j in range(d)]  # B^T
    facets = []
    for ntilde, ctilde in sub_facets:
        sol = solve_rational(bt_rows, ntilde)
        assert sol is not None, "B^T has full row rank"
        denom = 1
        for x in sol:
            denom = denom * x.denominator // gcd(denom, x.denominator)
        normal = tuple(int(x * denom) for x in sol)
        offset = _dot(normal, p0) + denom * ctilde
        g = _vec_gcd(normal)
        assert g and offset % g == 0
        facets.append((tuple(x // g for x in normal), offset // g))
    return LatticePolytope(vertices, tuple(sorted(set(facets))), n, d)


# ---------------------------------------------------------------------------
# point enumeration, closure, census

_NUMPY_LIMIT = 1 << 62


def _box_points_exact(box: Sequence[tuple[int, int]], polytope: LatticePolytope) -> list:
    out = []
    for p in itertools.product(*(range(lo, hi + 1) for lo, hi in box)):
        if all(_dot(n, p) <= c for n, c in polytope.facets):
            out.append(p)
    return out


def _box_points_numpy(box: Sequence[tuple[int, int]], polytope: LatticePolytope) -> Optional[list]:
    """Vectorized facet filter over a coordinate box; None if unsafe.

    int64 overflow is excluded by bounding |normal . x| before running.
    """
    try:
        import numpy as np
    except ImportError:  # pragma: no cover - numpy is a declared dependency
        return None
    n = len(box)
    max_abs = max(max(abs(lo), abs(hi)) for lo, hi in box)
    worst = 0
    for nrm, off in polytope.facets:
        worst = max(worst, sum(abs(x) for x in nrm) * max_abs + abs(off))
    if worst >= _NUMPY_LIMIT:
        return None
    axes = [np.arange(lo, hi + 1, dtype=np.int64) for lo, hi in box]
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([m.reshape(-1) for m in mesh], axis=1)
    mask = np.ones(len(pts), dtype=bool)
    for nrm, off in polytope.facets:
        mask &= pts @ np.array(nrm, dtype=np.int64) <= off
    return [tuple(int(x) for x in row) for row in pts[mask]]


def lattice_points_in(polytope: LatticePolytope, site: Site) -> tuple:
    """All site points inside the polytope, lexicographically sorted."""
    if isinstance(site, FiniteSite):
        if site.dim != polytope.ambient_dim:
            raise ValueError("site and polytope dimensions differ")
        return tuple(p for p in site.points if polytope.contains(p))

    if polytope.is_full_dimensional:
        box = polytope.bounding_box()
        cells = 1
        for lo, hi in box:
            cells *= hi - lo + 1
        if cells >= 200_000:
            fast = _box_points_numpy(box, polytope)
            if fast is not None:
                return tuple(fast)
        return tuple(_box_points_exact(box, polytope))

    # Degenerate in the ambient lattice: enumerate in affine coordinates.
    verts = polytope.vertices
    if polytope.affine_dim == 0:
        return (verts[0],)
    basis = saturated_direction_basis(verts)
    p0 = verts[0]
    rows = [[basis[j][i] for j in range(len(basis))] for i in range(polytope.ambient_dim)]
    coords = []
    for v in verts:
        sol = solve_rational(rows, _sub(v, p0))
        assert sol is not None and all(x.denominator == 1 for x in sol)
        coords.append(tuple(int(x) for x in sol))
    inner = convex_hull(coords)
    pts = []
    for u in lattice_points_in(inner, Z_LATTICE):
        p = tuple(p0[i] + sum(u[j] * basis[j][i] for j in range(len(basis)))
                  for i in range(polytope.ambient_dim))
        pts.append(p)
    return tuple(sorted(pts))


def closure(points: Iterable[Point], site: Site) -> tuple:
    """Site points inside the hull of the given site points.

    The input must lie in the site; violations raise SiteMembershipError.
    """
    pts = sorted(set(tuple(int(x) for x in p) for p in points))
    if not pts:
        raise ValueError("closure of an empty set")
    if isinstance(site, FiniteSite):
        missing = [p for p in pts if p not in set(site.points)]
        if missing:
            raise SiteMembershipError(f"points outside the site: {missing[:3]}")
    return lattice_points_in(convex_hull(pts), site)


def census(polytope: LatticePolytope, site: Site, *, relative: bool = False) -> PointCensus:
    """Classify the site points of a polytope.

    interior counts ambient-interior points by default (zero whenever the
    polytope is not full-dimensional); relative=True switches to the
    relative interior.
    """
    pts = lattice_points_in(polytope, site)
    vset = polytope.vertex_set
    vertex = sum(1 for p in pts if p in vset)
    if relative:
        interior = sum(1 for p in pts if p not in vset and polytope.relatively_contains(p))
    else:
        interior = sum(1 for p in pts if p not in vset and polytope.strictly_contains(p))
    total = len(pts)
    nonvertex = total - vertex
    return PointCensus(
        total=total,
        vertex=vertex,
        nonvertex=nonvertex,
        interior=interior,
        boundary=nonvertex - interior,
    )


# ---------------------------------------------------------------------------
# canonical form in the plane


def polygon_area_2d(cycle: Sequence[Point]) -> Fraction:
    """Area of a polygon given as a vertex cycle, by the shoelace formula."""
    twice = 0
    n = len(cycle)
    for i in range(n):
        x1, y1 = cycle[i]
        x2, y2 = cycle[(i + 1) % n]
        twice += x1 * y2 - x2 * y1
    return abs(Fraction(twice, 2))


def canonical_form_2d(polytope: LatticePolytope) -> tuple:
    """Canonical vertex cycle under unimodular (det +-1) maps and translations.

    Two polygons are equivalent iff their canonical cycles are equal.
    Minimizes, over every anchored directed edge and both orientations,
    the vertex tuple after mapping the edge onto the positive x-axis and
    shear-normalizing; the lexicographic minimum is canonical.
    """
    if polytope.ambient_dim != 2 or polytope.affine_dim != 2:
        raise DegenerateInputError("canonical form needs a full-dimensional polygon in Z^2")
    cycle = list(polytope.vertices)
    m = len(cycle)
    best: Optional[tuple] = None
    for reverse in (False, True):
        seq_base = cycle[::-1] if reverse else cycle
        for start in range(m):
            seq = seq_base[start:] + seq_base[:start]
            anchor = seq[0]
            rel = [_sub(v, anchor) for v in seq]
            ex, ey = rel[1]
            g, a, b = _xgcd(ex, ey)
            px, py = ex // g, ey // g
            # rows (a, b) and (-py, px) form a det-1 map sending the edge
            # direction to (1, 0); a reversed traversal is clockwise, so
            # reflect across the x-axis to restore counterclockwise order.
            pts = [(a * x + b * y, -(-py * x + px * y) if reverse else (-py * x + px * y))
                   for x, y in rel]
            ymax = max(p[1] for p in pts)
            assert ymax > 0 and all(p[1] >= 0 for p in pts)
            vstar = next(p for p in pts if p[1] == ymax)
            shear = -(vstar[0] // ymax)
            sheared = [(x + shear * y, y) for x, y in pts]
            # rotate so the cycle starts at its lex-min vertex, making the
            # stored form a hull-canonical cycle as well
            lead = sheared.index(min(sheared))
            cand = tuple(sheared[lead:] + sheared[:lead])
            if best is None or cand < best:
                best = cand
    assert best is not None
    return best
