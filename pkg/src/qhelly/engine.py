"""Counting-function profiles over finite sites.

Two quantities are computed for a finite site S and each k:

  g(S, k): the largest vertex count of a polytope whose vertices lie in S
           and which contains exactly k points of S that are not vertices;
  c(S, k): the largest N such that some polytope P with vertices in S has
           |S intersect P| - k = N while at most k of those points are in
           the configuration's nonvertex positions (equivalently, the
           quantitative Helly-type constant of S at level k).

c is produced twice on independent routes: once by the stepwise recursion
from the g profile and once by direct maximization over enumerated
configurations.  Tests hold the two routes equal; the engine never blends
them.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import BudgetExceededError
from .extint import NEG_INF, ExtInt, ext_max, is_finite
from .lattice import FiniteSite, census, closure, convex_hull

_DEFAULT_STATE_BUDGET = 2_000_000
_SITE_SIZE_LIMIT = 30


def enumerate_convex_subsets(
    site: FiniteSite, *, max_states: int = _DEFAULT_STATE_BUDGET
) -> tuple:
    """All nonempty closed subsets of the site (C = S intersect conv C).

    Growth rule: a closed set is extended only by points lexicographically
    above its maximum, then closed again.  Every closed set is reachable
    this way (remove the lexicographic maximum, which is always a vertex;
    the closure of the remainder plus that point restores the set), so the
    enumeration is complete without revisiting permutations.
    """
    if len(site) > _SITE_SIZE_LIMIT:
        raise BudgetExceededError(
            f"site has {len(site)} points; closed subsets can approach "
            f"2^{len(site)}, refuse beyond {_SITE_SIZE_LIMIT}"
        )
    seen: set = set()
    queue: deque = deque()
    for p in site.points:
        state = (p,)
        seen.add(state)
        queue.append(state)
    while queue:
        cur = queue.popleft()
        top = cur[-1]
        for p in site.points:
            if p <= top:
                continue
            new = closure(cur + (p,), site)
            if new not in seen:
                seen.add(new)
                if len(seen) > max_states:
                    raise BudgetExceededError(
                        f"more than {max_states} closed subsets; raise max_states"
                    )
                queue.append(new)
    return tuple(sorted(seen, key=lambda s: (len(s), s)))


@dataclass(frozen=True)
class SiteProfile:
    """g and c values of a finite site for k = 0..k_max, plus witnesses.

    witnesses[k] is the vertex tuple of a polytope attaining g[k] (None
    when g[k] is NEG_INF).
    """

    label: str
    ambient_dim: int
    site_size: int
    k_max: int
    g: tuple
    c: tuple
    witnesses: tuple

    def __post_init__(self) -> None:
        assert len(self.g) == len(self.c) == len(self.witnesses) == self.k_max + 1


def c_from_g(g: Sequence[ExtInt], site_size: int, k_max: int) -> tuple:
    """Stepwise recursion: c[0] = g[0], c[k] = max(c[k-1] - 1, g[k]).

    Beyond the site size no configuration qualifies, so c drops to
    NEG_INF there regardless of the recursion value.
    """
    out: list[ExtInt] = []
    for k in range(k_max + 1):
        if k > site_size:
            out.append(NEG_INF)
            continue
        gk = g[k] if k < len(g) else NEG_INF
        if k == 0:
            out.append(gk)
        else:
            prev = out[-1]
            step = prev - 1 if is_finite(prev) else NEG_INF
            out.append(ext_max((step, gk)))
    return tuple(out)


def _configurations(site: FiniteSite, max_states: int):
    """Census data (point count, vertex count, vertices) per closed subset."""
    for sub in enumerate_convex_subsets(site, max_states=max_states):
        poly = convex_hull(sub)
        cen = census(poly, site)
        assert cen.total == len(sub)
        yield len(sub), cen.vertex, poly.vertices


def g_profile(
    site: FiniteSite,
    k_max: Optional[int] = None,
    *,
    label: Optional[str] = None,
    max_states: int = _DEFAULT_STATE_BUDGET,
) -> SiteProfile:
    """Profile of g (and c via the stepwise route) for k = 0..k_max."""
    if k_max is None:
        k_max = len(site)
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    g: list[ExtInt] = [NEG_INF] * (k_max + 1)
    wit: list = [None] * (k_max + 1)
    for total, nvert, vertices in _configurations(site, max_states):
        k = total - nvert
        if k <= k_max and g[k] < nvert:
            g[k] = nvert
            wit[k] = vertices
    return SiteProfile(
        label=label or site.describe(),
        ambient_dim=site.dim,
        site_size=len(site),
        k_max=k_max,
        g=tuple(g),
        c=c_from_g(g, len(site), k_max),
        witnesses=tuple(wit),
    )


def c_direct(
    site: FiniteSite,
    k_max: Optional[int] = None,
    *,
    max_states: int = _DEFAULT_STATE_BUDGET,
) -> tuple:
    """Direct maximization of |S intersect P| - k over qualifying configurations.

    A configuration with t site points and v vertices qualifies for every
    k in [t - v, t]; independent of the stepwise route.
    """
    if k_max is None:
        k_max = len(site)
    out: list[ExtInt] = [NEG_INF] * (k_max + 1)
    for total, nvert, _vertices in _configurations(site, max_states):
        lo = total - nvert
        for k in range(lo, min(total, k_max) + 1):
            if out[k] < total - k:
                out[k] = total - k
    return tuple(out)


def unrolled_c(g: Sequence[ExtInt], site_size: int, k_max: int) -> tuple:
    """Closed form of the stepwise recursion: c[k] = max_{l<=k} (g[l] + l - k).

    Kept separate so tests can pin the recursion against its unrolling.
    """
    out: list[ExtInt] = []
    for k in range(k_max + 1):
        if k > site_size:
            out.append(NEG_INF)
            continue
        cands = [g[line] + line - k for line in range(min(k, len(g) - 1) + 1)
                 if is_finite(g[line])]
        out.append(ext_max(cands))
    return tuple(out)


# ---------------------------------------------------------------------------
# derived series


def helly_series(profile: SiteProfile) -> tuple:
    """Values H(j) = max of c over k < j, for j = 1..k_max+1.

    The same maximum over g must agree; a discrepancy is reported by
    consistency_findings rather than raised here.
    """
    out = []
    for j in range(1, profile.k_max + 2):
        out.append(ext_max(profile.c[:j]))
    return tuple(out)


def consistency_findings(profile: SiteProfile) -> list[str]:
    """Structural identities that should hold for every profile."""
    findings = []
    for j in range(1, profile.k_max + 2):
        if ext_max(profile.c[:j]) != ext_max(profile.g[:j]):
            findings.append(
                f"running maxima of c and g diverge at prefix length {j}"
            )
    for k in range(profile.k_max + 1):
        ck, gk = profile.c[k], profile.g[k]
        if is_finite(gk) and gk > ck:
            findings.append(f"g exceeds c at k={k}")
        if is_finite(ck) and ck > ext_max(profile.g[: k + 1]):
            findings.append(f"c exceeds the running max of g at k={k}")
    return findings


def tverberg_bound(profile: SiteProfile, m: int, k: int) -> ExtInt:
    """Upper bound for the k-interior Tverberg-type number with m parts.

    H(k) * (m - 1) * k * n + k, with H the running maximum of c below k.
    m = 1 collapses to k (a single part needs only the points themselves).
    """
    if m < 1 or k < 1:
        raise ValueError("need m >= 1 and k >= 1")
    if k - 1 > profile.k_max:
        raise ValueError(f"profile only covers k_max={profile.k_max}")
    h = ext_max(profile.c[:k])
    if not is_finite(h):
        return NEG_INF
    return h * (m - 1) * k * profile.ambient_dim + k


# ---------------------------------------------------------------------------
# bound audit


@dataclass(frozen=True)
class BoundCheck:
    k: int
    name: str
    bound: int
    value: ExtInt
    satisfied: bool
    equality: bool


@dataclass(frozen=True)
class BoundReport:
    label: str
    ambient_dim: int
    h: ExtInt
    checks: tuple

    @property
    def all_satisfied(self) -> bool:
        return all(ch.satisfied for ch in self.checks)

    def failures(self) -> list[BoundCheck]:
        return [ch for ch in self.checks if not ch.satisfied]


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def audit_bounds(
    label: str,
    ambient_dim: int,
    c_values: Sequence[ExtInt],
    *,
    lattice_mode: bool = False,
) -> BoundReport:
    """Check c against the known upper bounds.

    paired_step: floor((k+1)/2) * (h-2) + h, valid whenever h >= 2;
    linear:      (k+1) * h;
    and in lattice mode additionally
    two_thirds:  ceil(2(k+1)/3) * (2^n - 2) + 2,
    power:       (k+2)^n.
    NEG_INF values satisfy everything vacuously.
    """
    h = c_values[0]
    checks: list[BoundCheck] = []
    n = ambient_dim
    for k, val in enumerate(c_values):
        entries: list[tuple[str, int]] = []
        if is_finite(h):
            if h >= 2:
                entries.append(("paired_step", ((k + 1) // 2) * (h - 2) + h))
            entries.append(("linear", (k + 1) * h))
        if lattice_mode:
            entries.append(("two_thirds", _ceil_div(2 * (k + 1), 3) * (2 ** n - 2) + 2))
            entries.append(("power", (k + 2) ** n))
        for name, bound in entries:
            ok = (not is_finite(val)) or val <= bound
            eq = is_finite(val) and val == bound
            checks.append(BoundCheck(k, name, bound, val, ok, eq))
    return BoundReport(label=label, ambient_dim=n, h=h, checks=tuple(checks))
