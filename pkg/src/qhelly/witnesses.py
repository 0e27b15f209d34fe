"""Explicit witness polytopes for vertex maximisation over Z^n.

Two families live here.  The small-k family realises, in every
dimension n >= 2, polytopes whose censuses attain the known extreme
vertex counts for 0..4 nonvertex points: the unit cube (2^n vertices,
no nonvertex point), the fused double cube conv([-1,0]^n u [0,1]^n)
with 2^(n+1)-2 vertices around a single interior point, prism spikes
that stretch the fused cube to carry two or three nonvertex points at
the same vertex count, and the double spike with 2^(n+1) vertices over
exactly four nonvertex points.

The large-k family is a parabolic cap construction.  Over the grid
[1,t]^(n-1) two integer paraboloid sheets are glued,

    l(x) = sum(x_i^2 - t^2)        (lower sheet, convex)
    u(x) = s + sum(t^2 - x_i^2)    (upper sheet, concave)

so that every grid column contributes its two endpoints as vertices
and everything between them is a nonvertex point.  With t the largest
integer satisfying 2n * t^(n+1) <= k and s pushed as high as the
nonvertex budget k allows, the polytope has exactly 2 * t^(n-1)
vertices and k' <= k nonvertex points with k - k' < t^(n-1), which
certifies a lower bound of t^(n-1) for the quantitative Helly number
at parameter k.

All arithmetic is exact integer arithmetic; verification recounts
every lattice point geometrically instead of trusting the sheet
formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional, Union

from .errors import DegenerateInputError, UnsupportedDimensionError
from .lattice import LatticePolytope, Z_LATTICE, census, convex_hull

__all__ = [
    "ConstructionRecipe",
    "LowerBoundWitness",
    "WitnessReport",
    "grid_square_sum",
    "integer_root",
    "lower_bound_witness",
    "tight_recipe",
    "tight_recipes",
    "tight_witness",
    "verify_witness",
]

# Realisations are only attempted when the bounding box of the target
# polytope holds at most this many lattice points; beyond that only the
# closed-form invariants are checked.
_REALIZE_BOX_BUDGET = 10**7

_TIGHT_KINDS = ("cube", "fused_cubes", "prism_spike", "double_spike")


# ---------------------------------------------------------------------------
# integer roots


def integer_root(value: int, degree: int) -> int:
    """Largest r >= 0 with r**degree <= value, by pure integer bisection.

    Floating point is never consulted, so perfect-power boundaries are
    exact for arbitrarily large integers.
    """
    if degree < 1:
        raise ValueError("root degree must be a positive integer")
    if value < 0:
        raise ValueError("integer_root expects a nonnegative value")
    if value in (0, 1) or degree == 1:
        return value
    hi = 1
    while hi**degree <= value:
        hi *= 2
    lo = hi // 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid**degree <= value:
            lo = mid
        else:
            hi = mid
    return lo


# ---------------------------------------------------------------------------
# small-k family


@dataclass(frozen=True)
class ConstructionRecipe:
    """Blueprint for one member of the small-k witness family.

    kind is one of "cube", "fused_cubes", "prism_spike", "double_spike";
    spike is the interior run length of a prism spike (2 or 3) and None
    for the other kinds.  The expected census counts are part of the
    recipe so a verifier can hold the construction to them.
    """

    kind: str
    n: int
    spike: Optional[int]
    expected_vertices: int
    expected_nonvertex: int

    def __post_init__(self) -> None:
        if self.kind not in _TIGHT_KINDS:
            raise ValueError(f"unknown construction kind {self.kind!r}")
        if self.kind == "prism_spike":
            if self.spike not in (2, 3):
                raise ValueError("prism_spike requires spike in {2, 3}")
        elif self.spike is not None:
            raise ValueError(f"{self.kind} does not take a spike length")
        min_n = 1 if self.kind == "cube" else 2
        if self.n < min_n:
            raise UnsupportedDimensionError(
                f"{self.kind} needs dimension >= {min_n}, got {self.n}"
            )

    @property
    def label(self) -> str:
        if self.kind == "prism_spike":
            return f"prism_spike(n={self.n}, spike={self.spike})"
        return f"{self.kind}(n={self.n})"


def tight_recipe(n: int, k: int) -> ConstructionRecipe:
    """Recipe whose polytope attains the extreme vertex count at k nonvertex points.

    The family covers k in 0..4: counts are (2^n, 0) for the cube,
    (2^(n+1)-2, k) for k in {1, 2, 3} and (2^(n+1), 4) for the double
    spike.
    """
    if n < 2:
        raise UnsupportedDimensionError("the witness family needs dimension >= 2")
    if k == 0:
        return ConstructionRecipe("cube", n, None, 2**n, 0)
    if k == 1:
        return ConstructionRecipe("fused_cubes", n, None, 2 ** (n + 1) - 2, 1)
    if k in (2, 3):
        return ConstructionRecipe("prism_spike", n, k, 2 ** (n + 1) - 2, k)
    if k == 4:
        return ConstructionRecipe("double_spike", n, None, 2 ** (n + 1), 4)
    raise ValueError("the small-k witness family covers k in 0..4 only")


def tight_recipes(n: int) -> tuple[ConstructionRecipe, ...]:
    """All five recipes for dimension n, in order of nonvertex count."""
    return tuple(tight_recipe(n, k) for k in range(5))


def _cube_points(n: int) -> list[tuple[int, ...]]:
    return [tuple(p) for p in product((0, 1), repeat=n)]


def _fused_cube_points(n: int) -> list[tuple[int, ...]]:
    # corners of [-1,0]^n and of [0,1]^n; conv of the union fuses the
    # cubes across the shared corner at the origin
    pts = {tuple(p) for p in product((-1, 0), repeat=n)}
    pts.update(tuple(p) for p in product((0, 1), repeat=n))
    return sorted(pts)


def _prism_spike_points(n: int, spike: int) -> list[tuple[int, ...]]:
    # fused double cube one dimension down, extruded to a unit prism,
    # with a spike segment through the shared corner reaching spike
    # levels above the prism and one below
    base = _fused_cube_points(n - 1)
    pts = {p + (z,) for p in base for z in (0, 1)}
    origin = (0,) * (n - 1)
    pts.add(origin + (-1,))
    pts.add(origin + (spike,))
    return sorted(pts)


def _double_spike_points(n: int) -> list[tuple[int, ...]]:
    # a spike-2 prism one dimension down, extruded, with two parallel
    # spikes so that both spike columns contribute top and bottom
    # vertices while their middle levels stay nonvertex
    core = _prism_spike_points(n - 1, 2)
    pts = {p + (z,) for p in core for z in (0, 1)}
    for last in (0, 1):
        column = (0,) * (n - 2) + (last,)
        pts.add(column + (-1,))
        pts.add(column + (2,))
    return sorted(pts)


def _tight_point_set(recipe: ConstructionRecipe) -> list[tuple[int, ...]]:
    if recipe.kind == "cube":
        return _cube_points(recipe.n)
    if recipe.kind == "fused_cubes":
        return _fused_cube_points(recipe.n)
    if recipe.kind == "prism_spike":
        assert recipe.spike is not None
        return _prism_spike_points(recipe.n, recipe.spike)
    return _double_spike_points(recipe.n)


def tight_witness(recipe: ConstructionRecipe) -> LatticePolytope:
    """Build the polytope of a recipe and certify its census on the spot.

    The census over the integer lattice must match the recipe's expected
    vertex and nonvertex counts exactly; a mismatch means the recipe
    arithmetic is wrong and raises immediately rather than letting a bad
    witness circulate.
    """
    polytope = convex_hull(_tight_point_set(recipe))
    counts = census(polytope, Z_LATTICE)
    if (counts.vertex, counts.nonvertex) != (
        recipe.expected_vertices,
        recipe.expected_nonvertex,
    ):
        raise AssertionError(
            f"{recipe.label} census ({counts.vertex} vertices, "
            f"{counts.nonvertex} nonvertex) does not match the expected "
            f"({recipe.expected_vertices}, {recipe.expected_nonvertex})"
        )
    return polytope


# ---------------------------------------------------------------------------
# large-k family


def grid_square_sum(n: int, t: int) -> int:
    """Sum of |x|^2 over the grid x in [1,t]^(n-1), in closed form.

    Equals (n-1)(t+1)(2t+1)t^(n-1)/6, always an integer.
    """
    if n < 2 or t < 0:
        raise ValueError("grid_square_sum needs n >= 2 and t >= 0")
    return (n - 1) * (t * (t + 1) * (2 * t + 1) // 6) * t ** (n - 2)


def _nonvertex_count(n: int, t: int, s: int) -> int:
    # columns hold u - l - 1 = s - 1 + 2(n-1)t^2 - 2|x|^2 nonvertex
    # points each; summed over the grid this collapses to
    # (s - 1 + (n-1)(4t^2-3t-1)/3) * t^(n-1)
    triple = (n - 1) * (4 * t * t - 3 * t - 1) * t ** (n - 1)
    assert triple % 3 == 0, "cap-volume term must be divisible by 3"
    return (s - 1) * t ** (n - 1) + triple // 3


@dataclass(frozen=True)
class LowerBoundWitness:
    """Certificate that 2*t^(n-1) vertices can pen in at most k nonvertex points.

    t is the largest integer with 2n * t^(n+1) <= k and s the largest
    cap height whose realised nonvertex count k_prime stays within k.
    The recorded bound t^(n-1) follows from trading the k - k_prime
    unused nonvertex slots against vertices one for one.  realized is
    the explicit polytope when the ambient box is small enough to
    enumerate; verified says its census was recounted geometrically.
    """

    n: int
    k: int
    t: int
    s: int
    k_prime: int
    predicted_vertices: int
    bound: int
    degenerate: bool
    realized: Optional[LatticePolytope]
    verified: bool

    @property
    def slack(self) -> int:
        """Unused nonvertex budget k - k_prime."""
        return self.k - self.k_prime


def _sheet_values(n: int, t: int, s: int, x: tuple[int, ...]) -> tuple[int, int]:
    q = sum(v * v for v in x)
    shift = (n - 1) * t * t
    return q - shift, s + shift - q


def _parabolic_endpoints(n: int, t: int, s: int) -> list[tuple[int, ...]]:
    # every lattice point of the body lies on the vertical segment
    # between its column's endpoints, so the hull of the endpoints is
    # the hull of the whole body
    pts = []
    for x in product(range(1, t + 1), repeat=n - 1):
        lo, hi = _sheet_values(n, t, s, x)
        pts.append(x + (lo,))
        pts.append(x + (hi,))
    return pts


def _parabolic_box_volume(n: int, t: int, s: int) -> int:
    # grid columns t^(n-1), heights spanning [l(1..1), u(1..1)]
    return t ** (n - 1) * (s + 2 * (n - 1) * (t * t - 1) + 1)


def _degenerate_segment(n: int) -> LatticePolytope:
    return convex_hull([(0,) * n, (1,) + (0,) * (n - 1)])


def lower_bound_witness(n: int, k: int, *, realize: Optional[bool] = None) -> LowerBoundWitness:
    """Construct the parabolic witness for dimension n and nonvertex budget k.

    For k < 2n the construction degenerates and a unit segment stands in
    for it, carrying the trivial bound 1.  Otherwise t, s and k_prime
    are computed exactly, s is cross-checked to be maximal, and the
    polytope is realised whenever its bounding box is small enough
    (force or suppress realisation with realize=True/False).
    """
    if n < 2:
        raise UnsupportedDimensionError("the parabolic construction needs dimension >= 2")
    if k < 0:
        raise ValueError("nonvertex budget k must be nonnegative")

    if k < 2 * n:
        segment = _degenerate_segment(n)
        counts = census(segment, Z_LATTICE)
        assert (counts.vertex, counts.nonvertex) == (2, 0)
        return LowerBoundWitness(
            n=n,
            k=k,
            t=0,
            s=0,
            k_prime=0,
            predicted_vertices=2,
            bound=1,
            degenerate=True,
            realized=segment,
            verified=True,
        )

    t = integer_root(k // (2 * n), n + 1)
    assert t >= 1 and 2 * n * t ** (n + 1) <= k < 2 * n * (t + 1) ** (n + 1)
    cells = t ** (n - 1)
    # solve (s - 1) * t^(n-1) + cap_volume <= k for the largest integer s
    cap_volume = _nonvertex_count(n, t, 1)
    s = (k - cap_volume) // cells + 1
    assert s >= 1, "the cap volume alone must fit the nonvertex budget"
    k_prime = _nonvertex_count(n, t, s)
    # maximality: raising s by one must overshoot the budget
    assert k_prime <= k < _nonvertex_count(n, t, s + 1)

    witness = LowerBoundWitness(
        n=n,
        k=k,
        t=t,
        s=s,
        k_prime=k_prime,
        predicted_vertices=2 * cells,
        bound=cells,
        degenerate=False,
        realized=None,
        verified=False,
    )
    if realize is None:
        realize = _parabolic_box_volume(n, t, s) <= _REALIZE_BOX_BUDGET
    if not realize:
        return witness
    if _parabolic_box_volume(n, t, s) > _REALIZE_BOX_BUDGET:
        raise DegenerateInputError(
            "realisation box exceeds the enumeration budget; "
            "call with realize=False for formula-level invariants only"
        )
    polytope = convex_hull(_parabolic_endpoints(n, t, s))
    counts = census(polytope, Z_LATTICE)
    if (counts.vertex, counts.nonvertex) != (2 * cells, k_prime):
        raise AssertionError(
            f"parabolic witness census ({counts.vertex} vertices, "
            f"{counts.nonvertex} nonvertex) does not match the predicted "
            f"({2 * cells}, {k_prime})"
        )
    return LowerBoundWitness(
        n=n,
        k=k,
        t=t,
        s=s,
        k_prime=k_prime,
        predicted_vertices=2 * cells,
        bound=cells,
        degenerate=False,
        realized=polytope,
        verified=True,
    )


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class WitnessReport:
    """Outcome of an independent recount of a witness's census.

    findings lists every discrepancy in plain language; an empty tuple
    means the witness checks out.  Counts are None when no realisation
    was available to recount.
    """

    label: str
    expected_vertices: int
    expected_nonvertex: int
    actual_vertices: Optional[int]
    actual_nonvertex: Optional[int]
    total_points: Optional[int]
    realized: bool
    findings: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.findings


def _recount(
    label: str,
    polytope: LatticePolytope,
    expected_vertices: int,
    expected_nonvertex: int,
    findings: list[str],
) -> WitnessReport:
    counts = census(polytope, Z_LATTICE)
    if counts.vertex != expected_vertices:
        findings.append(
            f"recounted {counts.vertex} vertices where {expected_vertices} were claimed"
        )
    if counts.nonvertex != expected_nonvertex:
        findings.append(
            f"recounted {counts.nonvertex} nonvertex points where "
            f"{expected_nonvertex} were claimed"
        )
    return WitnessReport(
        label=label,
        expected_vertices=expected_vertices,
        expected_nonvertex=expected_nonvertex,
        actual_vertices=counts.vertex,
        actual_nonvertex=counts.nonvertex,
        total_points=counts.total,
        realized=True,
        findings=tuple(findings),
    )


def _verify_recipe(
    recipe: ConstructionRecipe, polytope: Optional[LatticePolytope]
) -> WitnessReport:
    if polytope is None:
        polytope = convex_hull(_tight_point_set(recipe))
    return _recount(
        recipe.label,
        polytope,
        recipe.expected_vertices,
        recipe.expected_nonvertex,
        [],
    )


def _verify_lower_bound(
    witness: LowerBoundWitness, polytope: Optional[LatticePolytope]
) -> WitnessReport:
    n, k, t, s = witness.n, witness.k, witness.t, witness.s
    label = f"parabolic(n={n}, k={k})"
    findings: list[str] = []

    if witness.degenerate:
        if k >= 2 * n:
            findings.append(f"witness flagged degenerate although k = {k} >= 2n")
        if witness.bound != 1 or witness.k_prime != 0:
            findings.append("degenerate witness must carry bound 1 and k_prime 0")
        segment = polytope or witness.realized or _degenerate_segment(n)
        return _recount(label, segment, witness.predicted_vertices, witness.k_prime, findings)

    if k < 2 * n:
        findings.append(f"k = {k} < 2n admits no parabolic witness, yet none was flagged")
    if t < 1 or not (2 * n * t ** (n + 1) <= k < 2 * n * (t + 1) ** (n + 1)):
        findings.append(f"t = {t} is not the largest integer with 2n*t^(n+1) <= k")
    cells = t ** (n - 1)
    formula_k_prime = _nonvertex_count(n, t, s)
    if witness.k_prime != formula_k_prime:
        findings.append(
            f"stored k_prime = {witness.k_prime} disagrees with the sheet formulas, "
            f"which give {formula_k_prime}"
        )
    if formula_k_prime > k:
        findings.append(f"cap height s = {s} overshoots the nonvertex budget")
    if _nonvertex_count(n, t, s + 1) <= k:
        findings.append(f"cap height s = {s} is not maximal; s + 1 still fits the budget")
    if witness.predicted_vertices != 2 * cells:
        findings.append(
            f"predicted vertex count {witness.predicted_vertices} is not 2*t^(n-1) = {2 * cells}"
        )
    if witness.bound != cells:
        findings.append(f"recorded bound {witness.bound} is not t^(n-1) = {cells}")
    if not (0 <= k - formula_k_prime <= cells):
        findings.append("budget slack k - k_prime escapes [0, t^(n-1)]")

    # rebuild from the stored parameters rather than trusting any
    # realisation the witness happens to carry
    if polytope is None and _parabolic_box_volume(n, t, s) <= _REALIZE_BOX_BUDGET:
        polytope = convex_hull(_parabolic_endpoints(n, t, s))
    if polytope is None:
        return WitnessReport(
            label=label,
            expected_vertices=witness.predicted_vertices,
            expected_nonvertex=witness.k_prime,
            actual_vertices=None,
            actual_nonvertex=None,
            total_points=None,
            realized=False,
            findings=tuple(findings),
        )
    return _recount(label, polytope, witness.predicted_vertices, witness.k_prime, findings)


def verify_witness(
    witness: Union[LowerBoundWitness, ConstructionRecipe],
    polytope: Optional[LatticePolytope] = None,
) -> WitnessReport:
    """Recount a witness's census from scratch and report every discrepancy.

    The recount never trusts the sheet formulas or recipe arithmetic: the
    hull is rebuilt, every lattice point of the bounding box is
    classified, and the resulting counts are compared against the
    witness's claims.  Pass a polytope to audit it against the witness's
    expectations instead of rebuilding; mismatches come back as report
    findings, not exceptions, so corrupted witnesses can be inspected.
    """
    if isinstance(witness, ConstructionRecipe):
        return _verify_recipe(witness, polytope)
    if isinstance(witness, LowerBoundWitness):
        return _verify_lower_bound(witness, polytope)
    raise TypeError(f"cannot verify object of type {type(witness).__name__}")
