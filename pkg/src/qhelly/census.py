"""Census of planar lattice polygons by interior point count, and the
derived counting profile of the full planar lattice.

Enumeration idea: every equivalence class (unimodular maps + translations)
of lattice polygons with lattice width >= 2 has a placement whose vertical
extent h is small (Scott's inequality b <= 2i + 7 plus Pick gives
A <= 2i + 5/2 for i >= 1, against A >= 3w^2/8 the width obeys
w <= sqrt((16i + 20)/3); one extra unit of headroom is kept) and whose
rows y = 0..h are nonempty integer intervals [a_j, b_j].  The DFS below
walks rows bottom-up, keeps the exact left/right hull chains, and prunes
with necessary conditions only, so no valid completion is ever cut:

  - ceil/floor consistency: each recorded row must remain exactly the
    lattice slice of the growing hull (left boundaries only move left as
    rows are added, so a violation is permanent);
  - convexity steps a' >= 2a - a_prev - 1, b' <= 2b - b_prev + 1;
  - a_j <= h - 1 and b_j >= 0 (boundary values interpolate the anchored
    end rows);
  - middle rows have at most i_max + 2 points, end rows at most
    2 i_max + 7 (each interior row point besides its endpoints is an
    interior point of the polygon);
  - the interior count of the partial hull is monotone, so interior
    budget overruns prune.

Translation is fixed by a_0 = 0, the shear by a_h in [0, h-1].  Leaves
are validated and deduplicated through the canonical form; every class
that survives is re-checked against the exact lattice-core census.

Width-1 polygons (trapezoids between two adjacent lattice lines) are
excluded from the stored census: there are infinitely many per nonvertex
count but they contribute vertex count 4 for every k >= 0, which
profile code adds back analytically.
"""

from __future__ import annotations

import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, gcd, isqrt, lcm
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .errors import (
    BudgetExceededError,
    CacheCorruptError,
    CacheIncompleteError,
    CacheMissingError,
    DegenerateInputError,
    GuardRadiusError,
)
from .extint import ExtInt
from .lattice import (
    LatticePolytope,
    Z_LATTICE,
    _hull_cycle_2d,
    _xgcd,
    canonical_form_2d,
    census,
    convex_hull,
    lattice_points_in,
    primitive,
)

CACHE_ENV_VAR = "QHELLY_CACHE_DIR"
_CACHE_VERSION = "polygon-census v1"


def max_height(i_max: int) -> int:
    """Largest vertical extent enumerated for interior count <= i_max.

    ceil(sqrt((16 i + 20) / 3)) + 1, exactly: the width bound from Scott
    plus Pick against the area lower bound, with one unit of headroom.
    """
    num = 16 * i_max + 20
    s = isqrt(num // 3)
    while 3 * s * s < num:
        s += 1
    return s + 1


# ---------------------------------------------------------------------------
# class record


@dataclass(frozen=True)
class CensusClass:
    """One equivalence class of lattice polygons, canonically embedded."""

    vertices: tuple
    vertex_count: int
    interior: int
    boundary: int
    lattice_width: int

    @property
    def nonvertex(self) -> int:
        return self.interior + self.boundary

    @property
    def total(self) -> int:
        return self.vertex_count + self.nonvertex

    def key(self) -> tuple:
        return (self.vertex_count, self.vertices)


def lattice_width_2d(poly: LatticePolytope) -> int:
    """Minimal extent of a primitive linear functional over the polygon."""
    verts = poly.vertices
    if poly.affine_dim < 2:
        return 0
    v0 = verts[0]
    d1 = None
    d2 = None
    for v in verts[1:]:
        d = (v[0] - v0[0], v[1] - v0[1])
        if d1 is None:
            d1 = d
        elif d1[0] * d[1] - d1[1] * d[0] != 0:
            d2 = d
            break
    assert d1 is not None and d2 is not None
    det = abs(d1[0] * d2[1] - d1[1] * d2[0])

    def width(u: tuple) -> int:
        vals = [u[0] * x + u[1] * y for x, y in verts]
        return max(vals) - min(vals)

    best = min(width((1, 0)), width((0, 1)))
    # any direction beating the current best satisfies |u . d1| <= best
    # and |u . d2| <= best, which confines (p, q) to a finite box
    while True:
        improved = False
        pb = (best * (abs(d1[1]) + abs(d2[1]))) // det + 1
        qb = (best * (abs(d1[0]) + abs(d2[0]))) // det + 1
        for q in range(0, qb + 1):
            for p in range(-pb, pb + 1):
                if q == 0 and p <= 0:
                    continue
                if gcd(abs(p), q) != 1:
                    continue
                if abs(p * d1[0] + q * d1[1]) > best or abs(p * d2[0] + q * d2[1]) > best:
                    continue
                w = width((p, q))
                if w < best:
                    best = w
                    improved = True
        if not improved:
            return best


# ---------------------------------------------------------------------------
# row DFS


def _chain_eval(chain: Sequence[tuple], m: int) -> tuple[int, int]:
    """Value of the piecewise-linear chain at height m, as (num, den)."""
    for idx in range(len(chain) - 1):
        (m1, x1), (m2, x2) = chain[idx], chain[idx + 1]
        if m1 <= m <= m2:
            return (x1 * (m2 - m1) + (x2 - x1) * (m - m1), m2 - m1)
    m1, x1 = chain[-1]
    assert m == m1
    return (x1, 1)


def _count_open(lnum: int, lden: int, rnum: int, rden: int) -> int:
    """Integers z with lnum/lden < z < rnum/rden (positive denominators)."""
    lo = lnum // lden + 1
    hi = -((-rnum) // rden) - 1
    return hi - lo + 1 if hi >= lo else 0


def _row_consistent(rows: Sequence[tuple], lchain, rchain, m: int) -> bool:
    a, b = rows[m]
    lnum, lden = _chain_eval(lchain, m)
    if not ((a - 1) * lden < lnum <= a * lden):
        return False
    rnum, rden = _chain_eval(rchain, m)
    return b * rden <= rnum < (b + 1) * rden


def _row_interior(rows: Sequence[tuple], lchain, rchain, m: int) -> int:
    lnum, lden = _chain_eval(lchain, m)
    rnum, rden = _chain_eval(rchain, m)
    return _count_open(lnum, lden, rnum, rden)


def _push_left(chain: list, m: int, x: int) -> int:
    """Append (m, x) to the lower-convex chain; return height of the last
    surviving vertex before the new point (start of the rebuilt span)."""
    while len(chain) >= 2:
        (m1, x1), (m2, x2) = chain[-2], chain[-1]
        # pop the middle vertex when it is not strictly below the chord
        if (x2 - x1) * (m - m1) >= (x - x1) * (m2 - m1):
            chain.pop()
        else:
            break
    start = chain[-1][0]
    chain.append((m, x))
    return start


def _push_right(chain: list, m: int, x: int) -> int:
    while len(chain) >= 2:
        (m1, x1), (m2, x2) = chain[-2], chain[-1]
        # pop when not strictly above the chord
        if (x2 - x1) * (m - m1) <= (x - x1) * (m2 - m1):
            chain.pop()
        else:
            break
    start = chain[-1][0]
    chain.append((m, x))
    return start


def certified_box_bound(i_max: int) -> int:
    """Smallest horizontal search window the enumeration may use.

    Every class with interior count <= i_max has a normalized placement
    whose row endpoints satisfy |x| <= this bound: end rows carry at most
    2 i_max + 6 non-vertex steps, middle rows at most i_max + 1, and the
    shear normalization keeps the left chain within the vertical extent.
    """
    return 2 * i_max + 2 * max_height(i_max) + 10


def _enumerate_rows(i_max: int, h: int, b0: int, window: int, out: list) -> None:
    """DFS over row interval stacks for one (height, bottom width) shard.

    Appends raw leaves (tuples of rows) with exact partial interior count
    <= i_max to out as (rows, interior) pairs.  All row endpoints are
    confined to [-window, window].
    """
    mid_cap = i_max + 2
    end_cap = 2 * i_max + 7

    rows = [(0, b0)]
    lchain = [(0, 0)]
    rchain = [(0, b0)]
    contrib = [0]

    def place(j: int, a: int, b: int, total: int) -> None:
        # j = height of the new row; chains/contrib reflect rows[0..j-1]
        lsave = list(lchain)
        rsave = list(rchain)
        rows.append((a, b))
        contrib.append(0)
        lstart = _push_left(lchain, j, a)
        rstart = _push_right(rchain, j, b)
        ok = True
        affected = set(range(lstart + 1, j)) | set(range(rstart + 1, j))
        affected.add(j - 1)
        affected.discard(0)
        for m in affected:
            if not _row_consistent(rows, lchain, rchain, m):
                ok = False
                break
        csave = {m: contrib[m] for m in affected}
        if ok:
            new_total = total
            for m in affected:
                c = _row_interior(rows, lchain, rchain, m)
                new_total += c - contrib[m]
                contrib[m] = c
            if new_total <= i_max:
                if j == h:
                    out.append((tuple(rows), new_total))
                else:
                    extend(j, new_total)
        rows.pop()
        contrib.pop()
        for m, c in csave.items():
            contrib[m] = c
        lchain[:] = lsave
        rchain[:] = rsave

    def extend(j: int, total: int) -> None:
        a_j, b_j = rows[j]
        if j >= 1:
            a_prev, b_prev = rows[j - 1]
            a_lo = 2 * a_j - a_prev - 1
            b_hi = 2 * b_j - b_prev + 1
        else:
            a_lo = -window
            b_hi = window
        nxt = j + 1
        if nxt == h:
            a_lo = max(a_lo, 0)
            a_hi = h - 1
            cap = end_cap
        else:
            a_lo = max(a_lo, -window)
            a_hi = h - 1
            cap = mid_cap
        b_hi_clip = min(b_hi, window)
        for a in range(a_lo, a_hi + 1):
            top = min(b_hi_clip, a + cap - 1)
            for b in range(max(a, 0), top + 1):
                place(nxt, a, b, total)

    extend(0, 0)


def _leaf_to_class(rows: Sequence[tuple], interior: int) -> Optional[CensusClass]:
    """Validate one raw leaf against the exact lattice core."""
    pts = set()
    for m, (a, b) in enumerate(rows):
        pts.add((a, m))
        pts.add((b, m))
    poly = convex_hull(pts)
    if poly.affine_dim < 2:
        return None
    width = lattice_width_2d(poly)
    if width < 2:
        return None
    cen = census(poly, Z_LATTICE)
    assert cen.interior == interior, "row arithmetic disagrees with the lattice core"
    canon = canonical_form_2d(poly)
    return CensusClass(
        vertices=canon,
        vertex_count=len(canon),
        interior=cen.interior,
        boundary=cen.boundary,
        lattice_width=width,
    )


def _shard_worker(args: tuple) -> list:
    i_max, h, b0, window = args
    raw: list = []
    _enumerate_rows(i_max, h, b0, window, raw)
    out = []
    handled: set = set()
    for rows, interior in raw:
        cls = _leaf_to_class(rows, interior)
        if cls is None or cls.vertices in handled:
            continue
        handled.add(cls.vertices)
        out.append(cls)
    return out


def enumerate_polygon_classes(
    i_max: int, box_bound: Optional[int] = None, *, threads: int = 1, progress=None
) -> dict[int, tuple]:
    """All width->=2 classes with interior count <= i_max, keyed by count.

    Deterministic: results are merged and sorted identically for any
    thread count.  box_bound widens the horizontal search window beyond
    the certified one; a narrower window is refused because completeness
    could no longer be claimed.
    """
    if i_max < 0:
        raise ValueError("interior bound must be nonnegative")
    certified = certified_box_bound(i_max)
    if box_bound is None:
        box_bound = certified
    elif box_bound < certified:
        raise ValueError(
            f"box bound {box_bound} is below the certified bound {certified} "
            f"for interior count {i_max}"
        )
    shards = []
    for h in range(2, max_height(i_max) + 1):
        for b0 in range(0, 2 * i_max + 7):
            shards.append((i_max, h, b0, box_bound))
    results: dict[tuple, CensusClass] = {}
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(_shard_worker, shards, chunksize=4):
                for cls in part:
                    results.setdefault(cls.vertices, cls)
                if progress is not None:
                    progress()
    else:
        for shard in shards:
            for cls in _shard_worker(shard):
                results.setdefault(cls.vertices, cls)
            if progress is not None:
                progress()
    buckets: dict[int, list] = {i: [] for i in range(i_max + 1)}
    for cls in results.values():
        buckets[cls.interior].append(cls)
    return {
        i: tuple(sorted(bucket, key=lambda c: (c.vertex_count, c.vertices)))
        for i, bucket in buckets.items()
    }


def enumerate_polygons_interior(
    i: int, box_bound: Optional[int] = None, *, threads: int = 1, progress=None
) -> tuple:
    """Classes with exactly i interior points and lattice width >= 2."""
    buckets = enumerate_polygon_classes(i, box_bound, threads=threads, progress=progress)
    return buckets[i]


# ---------------------------------------------------------------------------
# persistent cache


@dataclass(frozen=True)
class CensusFile:
    """One persisted census shard: all classes with a fixed interior count."""

    interior: int
    box: int
    complete: bool
    classes: tuple

    def render(self) -> str:
        flag = 1 if self.complete else 0
        lines = [f"{_CACHE_VERSION} interior={self.interior} box={self.box} complete={flag}"]
        for cls in self.classes:
            coords = " ".join(f"{x} {y}" for x, y in cls.vertices)
            lines.append(f"{cls.vertex_count} {coords}")
        lines.append(f"count={len(self.classes)}")
        return "\n".join(lines) + "\n"


_HEADER_RE = re.compile(
    r"\Apolygon-census (?P<version>\S+) interior=(?P<interior>\d+) "
    r"box=(?P<box>\d+) complete=(?P<complete>[01])\Z"
)


def parse_census_file(text: str, *, validate: bool = True) -> CensusFile:
    """Inverse of CensusFile.render; every class is revalidated by default.

    Validation rebuilds each polygon from its stored vertices and checks
    the canonical fixed point, the lattice width, the interior count
    against the header, and the sort order, so a loaded cache carries the
    same guarantees as a freshly enumerated one.
    """
    lines = text.split("\n")
    if not lines or lines[-1] != "":
        raise CacheCorruptError("census file does not end with a newline")
    lines.pop()
    if not lines:
        raise CacheCorruptError("census file is empty")
    m = _HEADER_RE.match(lines[0])
    if m is None:
        raise CacheCorruptError(f"malformed census header: {lines[0]!r}")
    if f"polygon-census {m.group('version')}" != _CACHE_VERSION:
        raise CacheCorruptError(
            f"census format version {m.group('version')!r} is not supported"
        )
    interior = int(m.group("interior"))
    box = int(m.group("box"))
    complete = m.group("complete") == "1"
    if not lines[-1].startswith("count="):
        raise CacheCorruptError("census file has no count trailer")
    trailer = lines[-1]
    try:
        count = int(trailer[len("count="):])
    except ValueError:
        raise CacheCorruptError(f"malformed count trailer: {trailer!r}") from None
    body = lines[1:-1]
    if count != len(body):
        raise CacheCorruptError(
            f"count trailer says {count} classes, file holds {len(body)}"
        )
    classes = []
    for line in body:
        try:
            nums = [int(tok) for tok in line.split(" ")]
        except ValueError:
            raise CacheCorruptError(f"malformed census line: {line!r}") from None
        if not nums or len(nums) != 1 + 2 * nums[0] or nums[0] < 3:
            raise CacheCorruptError(f"malformed census line: {line!r}")
        v = nums[0]
        verts = tuple((nums[1 + 2 * j], nums[2 + 2 * j]) for j in range(v))
        if validate:
            classes.append(_class_from_vertices(verts, interior))
        else:
            classes.append(
                CensusClass(
                    vertices=verts,
                    vertex_count=v,
                    interior=interior,
                    boundary=0,
                    lattice_width=2,
                )
            )
    keys = [cls.key() for cls in classes]
    if keys != sorted(set(keys)):
        raise CacheCorruptError("census classes are not sorted and distinct")
    return CensusFile(interior=interior, box=box, complete=complete, classes=tuple(classes))


def _class_from_vertices(verts: tuple, interior: int) -> CensusClass:
    poly = convex_hull(verts)
    if poly.affine_dim != 2 or poly.vertices != verts:
        raise CacheCorruptError(f"stored vertices are not a polygon hull: {verts}")
    if canonical_form_2d(poly) != verts:
        raise CacheCorruptError(f"stored vertices are not in canonical form: {verts}")
    width = lattice_width_2d(poly)
    if width < 2:
        raise CacheCorruptError(f"stored polygon has lattice width {width}: {verts}")
    cen = census(poly, Z_LATTICE)
    if cen.interior != interior:
        raise CacheCorruptError(
            f"stored polygon has {cen.interior} interior points, header says {interior}"
        )
    return CensusClass(
        vertices=verts,
        vertex_count=len(verts),
        interior=cen.interior,
        boundary=cen.boundary,
        lattice_width=width,
    )


class CensusStore:
    """Directory of per-interior-count census files.

    Files are written atomically (temp file then rename), so a crashed
    run never leaves a truncated final file and finished interior counts
    are reused when a larger run is restarted.
    """

    def __init__(self, directory: Optional[str | Path] = None):
        if directory is None:
            directory = os.environ.get(CACHE_ENV_VAR)
        if directory is None:
            raise ValueError(
                f"no cache directory given and {CACHE_ENV_VAR} is not set"
            )
        self.directory = Path(directory)

    def path(self, i: int) -> Path:
        return self.directory / f"interior_{i:02d}.census"

    def save(self, file: CensusFile) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        target = self.path(file.interior)
        tmp = target.with_name(target.name + f".tmp{os.getpid()}")
        tmp.write_text(file.render(), encoding="ascii")
        os.replace(tmp, target)
        return target

    def load(self, i: int, *, validate: bool = True) -> CensusFile:
        path = self.path(i)
        try:
            text = path.read_text(encoding="ascii")
        except FileNotFoundError:
            raise CacheMissingError(f"no census file for interior count {i}: {path}") from None
        file = parse_census_file(text, validate=validate)
        if file.interior != i:
            raise CacheCorruptError(
                f"{path} holds interior count {file.interior}, expected {i}"
            )
        return file

    def is_complete(self, i: int) -> bool:
        """True when a usable, certified-complete file exists for i."""
        try:
            file = self.load(i, validate=False)
        except CacheMissingError:
            return False
        return file.complete and file.box >= certified_box_bound(i)

    def missing(self, k_max: int) -> tuple:
        return tuple(i for i in range(k_max + 1) if not self.is_complete(i))

    def ensure(self, k_max: int, *, threads: int = 1, progress=None) -> tuple:
        """Enumerate and persist every missing interior count up to k_max.

        Runs one interior count at a time, each saved on completion, so
        an interrupted long run resumes where it stopped.
        """
        built = []
        for i in self.missing(k_max):
            classes = enumerate_polygons_interior(i, threads=threads, progress=progress)
            self.save(
                CensusFile(
                    interior=i,
                    box=certified_box_bound(i),
                    complete=True,
                    classes=classes,
                )
            )
            built.append(i)
        return tuple(built)


# ---------------------------------------------------------------------------
# the counting profile of the planar lattice


@dataclass(frozen=True)
class Width1Witness:
    """Trapezoid between two adjacent lattice lines.

    Width-1 polygons form infinitely many classes per interior count, so
    they are kept out of the cache; for every k >= 0 the family reaches
    vertex count 4 with exactly k non-vertex points and never more.
    """

    nonvertex: int
    vertices: tuple

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)


def width1_trapezoid(k: int) -> Width1Witness:
    if k < 0:
        raise ValueError("non-vertex count must be nonnegative")
    if k == 0:
        verts = ((0, 0), (1, 0), (1, 1), (0, 1))
    else:
        verts = ((0, 0), (k + 1, 0), (1, 1), (0, 1))
    return Width1Witness(nonvertex=k, vertices=verts)


def _best_class(classes: Sequence[CensusClass], k: int):
    """Max vertex count over width->=2 classes with k non-vertex points,
    against the closed-form width-1 family."""
    best = None
    for cls in classes:
        if cls.nonvertex == k and (best is None or cls.vertex_count > best.vertex_count):
            best = cls
    if best is not None and best.vertex_count >= 4:
        return best.vertex_count, best
    return 4, width1_trapezoid(k)


def _require_complete(store: CensusStore, k_max: int) -> None:
    missing = store.missing(k_max)
    if missing:
        raise CacheIncompleteError(
            "census cache is incomplete for interior counts "
            + ", ".join(str(i) for i in missing)
        )


def g_z2(k: int, store: CensusStore) -> tuple:
    """Largest vertex count of a lattice polygon with k non-vertex points.

    Returns (value, witness); the witness is a cached CensusClass or a
    Width1Witness.  A polygon with k non-vertex points has at most k
    interior points, so caches 0..k decide the value exactly.
    """
    if k < 0:
        raise ValueError("non-vertex count must be nonnegative")
    _require_complete(store, k)
    classes = []
    for i in range(k + 1):
        classes.extend(store.load(i).classes)
    classes.sort(key=lambda c: c.key())
    return _best_class(classes, k)


@dataclass(frozen=True)
class LatticeProfile:
    """g and c over the planar lattice, with drop points and findings."""

    label: str
    k_max: int
    g: tuple
    c: tuple
    drops: tuple
    witnesses: tuple
    findings: tuple


def c_z2_profile(k_max: int, store: CensusStore) -> LatticeProfile:
    """Counting profile of the planar lattice through k_max.

    c follows the one-step recursion from g; over an infinite site the
    recursion applies at every k.  Any k with c[k] != g[k] would separate
    the two quantities, which no known example does, so it is reported as
    a finding instead of being silently accepted; the same goes for a g
    step dropping by more than 1, which would indicate an incomplete
    census.
    """
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    _require_complete(store, k_max)
    classes = []
    for i in range(k_max + 1):
        classes.extend(store.load(i).classes)
    classes.sort(key=lambda c: c.key())
    g_vals = []
    witnesses = []
    for k in range(k_max + 1):
        value, witness = _best_class(classes, k)
        g_vals.append(value)
        witnesses.append(witness)
    c_vals = [g_vals[0]]
    for k in range(1, k_max + 1):
        c_vals.append(max(c_vals[k - 1] - 1, g_vals[k]))
    findings = []
    for k in range(1, k_max + 1):
        if c_vals[k] != g_vals[k]:
            findings.append(
                f"c({k}) = {c_vals[k]} exceeds g({k}) = {g_vals[k]}: "
                "vertex maximizers do not explain the Helly value at this k"
            )
        if g_vals[k] < g_vals[k - 1] - 1:
            findings.append(
                f"g({k}) = {g_vals[k]} is more than one below g({k - 1}) = "
                f"{g_vals[k - 1]}; the census is likely incomplete"
            )
    drops = tuple(k for k in range(1, k_max + 1) if g_vals[k] == g_vals[k - 1] - 1)
    return LatticeProfile(
        label="Z^2",
        k_max=k_max,
        g=tuple(g_vals),
        c=tuple(c_vals),
        drops=drops,
        witnesses=tuple(witnesses),
        findings=tuple(findings),
    )


# ---------------------------------------------------------------------------
# maximality of rational polygons


_SCAN_BUDGET = 1 << 22


def _as_fraction_point(p) -> tuple:
    return (Fraction(p[0]), Fraction(p[1]))


def _edge_relint_lattice_point(A: tuple, B: tuple):
    """Some lattice point strictly between rational points A and B, or None."""
    dx = B[0] - A[0]
    dy = B[1] - A[1]
    scale = lcm(Fraction(dy).denominator, Fraction(dx).denominator)
    a = int(dy * scale)
    b = int(-dx * scale)
    g = gcd(abs(a), abs(b))
    a //= g
    b //= g
    c = a * A[0] + b * A[1]
    if Fraction(c).denominator != 1:
        return None
    c = int(c)
    _, u, v = _xgcd(a, b)
    z0 = (u * c, v * c)
    ux, uy = -b, a
    dd = dx * dx + dy * dy
    s0 = Fraction((z0[0] - A[0]) * dx + (z0[1] - A[1]) * dy, 1) / dd
    slope = Fraction(ux * dx + uy * dy, 1) / dd
    if slope > 0:
        t_lo, t_hi = -s0 / slope, (1 - s0) / slope
    else:
        t_lo, t_hi = (1 - s0) / slope, -s0 / slope
    t = floor(t_lo) + 1
    if t > ceil(t_hi) - 1:
        return None
    return (z0[0] + t * ux, z0[1] + t * uy)


def _strict_interior_lattice_points(cycle: Sequence[tuple]) -> tuple:
    """Lattice points strictly inside a ccw rational vertex cycle."""
    xs = [p[0] for p in cycle]
    ys = [p[1] for p in cycle]
    x_lo, x_hi = floor(min(xs)) + 1, ceil(max(xs)) - 1
    y_lo, y_hi = floor(min(ys)) + 1, ceil(max(ys)) - 1
    if x_hi < x_lo or y_hi < y_lo:
        return ()
    cells = (x_hi - x_lo + 1) * (y_hi - y_lo + 1)
    if cells > _SCAN_BUDGET:
        raise BudgetExceededError(
            f"lattice scan over {cells} cells exceeds the budget {_SCAN_BUDGET}"
        )
    edges = [(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]
    out = []
    for x in range(x_lo, x_hi + 1):
        for y in range(y_lo, y_hi + 1):
            if all(
                (bx - ax) * (y - ay) - (by - ay) * (x - ax) > 0
                for (ax, ay), (bx, by) in edges
            ):
                out.append((x, y))
    return tuple(out)


@dataclass(frozen=True)
class MembershipReport:
    """Outcome of the two-part maximality test for a rational polygon."""

    k: int
    vertices: tuple
    interior_count: int
    interior_points: tuple
    facet_count: int
    facets_missing_lattice_point: tuple

    @property
    def is_member(self) -> bool:
        return self.interior_count == self.k and not self.facets_missing_lattice_point


def maximal_membership(points: Iterable[tuple], k: int) -> MembershipReport:
    """Test whether a rational polygon is inclusion-maximal among convex
    sets with exactly k interior lattice points.

    Maximality holds exactly when the interior lattice count is k and the
    relative interior of every edge contains a lattice point.  k = 0 is
    refused: maximal sets without interior points can be unbounded, so no
    polygon test applies.
    """
    if k < 1:
        raise ValueError("maximality test supports k >= 1 only")
    pts = sorted({_as_fraction_point(p) for p in points})
    cycle = _hull_cycle_2d(pts)
    if len(cycle) < 3:
        raise DegenerateInputError("maximality test needs a 2-dimensional polygon")
    interior = _strict_interior_lattice_points(cycle)
    missing = []
    for i in range(len(cycle)):
        A, B = cycle[i], cycle[(i + 1) % len(cycle)]
        if _edge_relint_lattice_point(A, B) is None:
            missing.append(i)
    return MembershipReport(
        k=k,
        vertices=tuple(cycle),
        interior_count=len(interior),
        interior_points=interior,
        facet_count=len(cycle),
        facets_missing_lattice_point=tuple(missing),
    )


@dataclass(frozen=True)
class ExpansionResult:
    """A maximal rational polygon grown around an integral polygon."""

    vertices: tuple
    facet_normals: tuple
    facet_offsets: tuple
    anchors: tuple
    interior_points: tuple
    rounds: int
    report: MembershipReport

    @property
    def facet_count(self) -> int:
        return len(self.facet_normals)


_EXPAND_OP_GUARD = 512


def expand_to_maximal(polytope: LatticePolytope, k: int) -> ExpansionResult:
    """Grow an integral polygon with k non-vertex points into a maximal
    polygon with exactly k interior lattice points, one facet per vertex.

    Facet i is the line through vertex V_i with normal n_{i-1} + mu_i n_i
    (adjacent edge normals, integer weight mu_i >= 1), which keeps V_i in
    the relative interior of its facet and every non-vertex point of the
    input strictly inside, whatever the weights.  Two weight moves refine
    the seed: when consecutive facet normals stop turning strictly left
    (the polygon would degenerate or unbound), every mu doubles, which
    restores the turning since the quadratic mu-term of each determinant
    has positive coefficient; a stray interior lattice point, always
    outside the input, is cut by doubling the mu of its most violated
    input edge, and stays cut because weights never decrease.
    """
    if k < 1:
        raise ValueError("expansion supports k >= 1 only")
    if polytope.ambient_dim != 2 or polytope.affine_dim != 2:
        raise DegenerateInputError("expansion needs a full-dimensional polygon in the plane")
    cen = census(polytope, Z_LATTICE)
    if cen.nonvertex != k:
        raise ValueError(
            f"polygon has {cen.nonvertex} non-vertex points, expansion asked for {k}"
        )
    verts = polytope.vertices
    m = len(verts)
    normals = []
    offsets = []
    for i in range(m):
        ax, ay = verts[i]
        bx, by = verts[(i + 1) % m]
        n = primitive((by - ay, ax - bx))
        normals.append(n)
        offsets.append(n[0] * ax + n[1] * ay)
    keep = set(lattice_points_in(polytope, Z_LATTICE)) - set(verts)
    mu = [1] * m
    rounds = 0

    def build():
        facets = []
        gammas = []
        for i in range(m):
            prev = normals[(i - 1) % m]
            cur = normals[i]
            a = (prev[0] + mu[i] * cur[0], prev[1] + mu[i] * cur[1])
            facets.append(a)
            gammas.append(a[0] * verts[i][0] + a[1] * verts[i][1])
        return facets, gammas

    def fan_ok(facets) -> bool:
        return all(
            facets[i][0] * facets[(i + 1) % m][1]
            - facets[i][1] * facets[(i + 1) % m][0]
            > 0
            for i in range(m)
        )

    while True:
        facets, gammas = build()
        while not fan_ok(facets):
            for i in range(m):
                mu[i] *= 2
            rounds += 1
            if rounds > _EXPAND_OP_GUARD:
                raise GuardRadiusError(
                    "expansion weights grew past the guard while restoring "
                    "the facet normal fan"
                )
            facets, gammas = build()
        cycle = []
        for i in range(m):
            j = (i + 1) % m
            det = facets[i][0] * facets[j][1] - facets[i][1] * facets[j][0]
            x = Fraction(gammas[i] * facets[j][1] - gammas[j] * facets[i][1], det)
            y = Fraction(facets[i][0] * gammas[j] - facets[j][0] * gammas[i], det)
            cycle.append((x, y))
        try:
            interior = _strict_interior_lattice_points(cycle)
        except BudgetExceededError as exc:
            raise GuardRadiusError(
                f"expansion escaped the guard region after {rounds} rounds: {exc}"
            ) from None
        strays = sorted(set(interior) - keep)
        if not strays:
            break
        rounds += 1
        if rounds > _EXPAND_OP_GUARD:
            raise GuardRadiusError(
                f"expansion still has stray lattice points after {rounds} rounds: "
                f"{strays[:5]}"
            )
        z = strays[0]
        worst = max(
            range(m),
            key=lambda e: (normals[e][0] * z[0] + normals[e][1] * z[1] - offsets[e], -e),
        )
        violation = (
            normals[worst][0] * z[0] + normals[worst][1] * z[1] - offsets[worst]
        )
        assert violation > 0, "stray lattice point inside the input polygon"
        mu[worst] *= 2
    # the anchor vertices certify one lattice point per facet relative interior
    report = maximal_membership(cycle, k)
    assert report.is_member, "expansion produced a non-maximal polygon"
    # report.vertices starts at the lex-min vertex; align facet data with it
    shift = cycle.index(min(cycle))
    vertices = tuple(cycle[shift:] + cycle[:shift])
    facet_order = [(shift + 1 + t) % m for t in range(m)]
    return ExpansionResult(
        vertices=vertices,
        facet_normals=tuple(facets[i] for i in facet_order),
        facet_offsets=tuple(gammas[i] for i in facet_order),
        anchors=tuple(verts[i] for i in facet_order),
        interior_points=tuple(sorted(keep)),
        rounds=rounds,
        report=report,
    )
