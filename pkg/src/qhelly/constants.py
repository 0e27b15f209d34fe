"""Certified rational enclosures for the constant chains of the bounds.

The lower- and upper-bound arguments for quantitative Helly numbers
over Z^n lean on a handful of numeric constants: the volume constant
chain descending from Andrews' vertex bound (xi, c_1, kappa', gamma,
kappa and the derived alpha), the flatness growth term phi(n) =
n^(5/2), and the growth budget beta(n) = (3n)^(5n).  Every inequality
between them that the arguments rely on is certified here with
outward-rounded interval arithmetic over exact rationals: an Enclosure
holds two Fractions known to bracket the true value, pi comes from a
Machin-style alternating series whose partial sums bracket it, Gamma
at half-integers reduces to factorials and sqrt(pi), and fractional
powers use integer-root bisection on scaled numerators.  No floating
point participates in any certification path.

Comparisons are three-valued: an inequality passes only when the
intervals separate, fails only when they separate the other way, and
is otherwise inconclusive, which triggers precision doubling up to a
cap rather than a false certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd
from typing import TYPE_CHECKING, Iterable, Optional, Sequence

from .errors import DegenerateInputError
from .lattice import polygon_area_2d
from .witnesses import integer_root

if TYPE_CHECKING:
    from .census import CensusStore

__all__ = [
    "AndrewsReport",
    "ChainLinkReport",
    "ConstantsCertificate",
    "EmpiricalReport",
    "Enclosure",
    "GrowthChainCertificate",
    "andrews_constants",
    "andrews_empirical",
    "certify_constant_estimates",
    "certify_growth_chain",
    "gamma_half",
    "machin_pi",
]

DEFAULT_PRECISION = 192
MAX_PRECISION = 8192
MIN_PRECISION = 64


def _as_fraction(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError("floats are not allowed in certification paths")
    return Fraction(value)


@dataclass(frozen=True)
class Enclosure:
    """A closed rational interval guaranteed to contain the true value.

    All operations round outward, so enclosures compose: any chain of
    arithmetic on enclosures yields an enclosure of the exact result.
    """

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if not (isinstance(self.lo, Fraction) and isinstance(self.hi, Fraction)):
            object.__setattr__(self, "lo", _as_fraction(self.lo))
            object.__setattr__(self, "hi", _as_fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError("enclosure bounds are inverted")

    @staticmethod
    def point(value) -> "Enclosure":
        value = _as_fraction(value)
        return Enclosure(value, value)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def relative_width(self) -> Fraction:
        scale = min(abs(self.lo), abs(self.hi))
        if scale == 0:
            return self.width
        return self.width / scale

    def contains(self, value) -> bool:
        value = _as_fraction(value)
        return self.lo <= value <= self.hi

    def encloses(self, other: "Enclosure") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def __add__(self, other: "Enclosure") -> "Enclosure":
        return Enclosure(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: "Enclosure") -> "Enclosure":
        return Enclosure(self.lo - other.hi, self.hi - other.lo)

    def __neg__(self) -> "Enclosure":
        return Enclosure(-self.hi, -self.lo)

    def __mul__(self, other: "Enclosure") -> "Enclosure":
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Enclosure(min(products), max(products))

    def __truediv__(self, other: "Enclosure") -> "Enclosure":
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("division by an enclosure containing zero")
        quotients = (
            self.lo / other.lo,
            self.lo / other.hi,
            self.hi / other.lo,
            self.hi / other.hi,
        )
        return Enclosure(min(quotients), max(quotients))

    def pow_int(self, exponent: int) -> "Enclosure":
        """Integer power, exact (no rounding beyond the input interval)."""
        if exponent == 0:
            return Enclosure.point(1)
        if exponent < 0:
            return Enclosure.point(1) / self.pow_int(-exponent)
        if self.lo >= 0:
            return Enclosure(self.lo**exponent, self.hi**exponent)
        if self.hi <= 0:
            lo, hi = self.lo**exponent, self.hi**exponent
            return Enclosure(min(lo, hi), max(lo, hi))
        # interval straddles zero
        if exponent % 2:
            return Enclosure(self.lo**exponent, self.hi**exponent)
        return Enclosure(Fraction(0), max(self.lo**exponent, self.hi**exponent))

    def root(self, degree: int, precision: int = DEFAULT_PRECISION) -> "Enclosure":
        """Outward-rounded degree-th root of a nonnegative enclosure.

        Bounds land on the grid of multiples of 2^-precision, found by
        integer bisection on scaled numerators; refining the precision
        can only shrink the interval.
        """
        if degree < 1:
            raise ValueError("root degree must be positive")
        if degree == 1:
            return self
        if self.lo < 0:
            raise ValueError("root of an enclosure reaching below zero")
        scale = 1 << precision
        power = scale**degree
        lo_root = integer_root(self.lo.numerator * power // self.lo.denominator, degree)
        hi_scaled = self.hi.numerator * power
        hi_root = integer_root(hi_scaled // self.hi.denominator, degree)
        if hi_root**degree * self.hi.denominator != hi_scaled:
            hi_root += 1
        return Enclosure(Fraction(lo_root, scale), Fraction(hi_root, scale))

    def power(self, p: int, q: int, precision: int = DEFAULT_PRECISION) -> "Enclosure":
        """Rational power x^(p/q) for a positive enclosure, outward-rounded."""
        if q < 1:
            raise ValueError("power denominator must be positive")
        shrink = gcd(abs(p), q)
        if shrink > 1:
            p, q = p // shrink, q // shrink
        if q == 1:
            return self.pow_int(p)
        if self.lo <= 0:
            raise ValueError("fractional powers need a strictly positive enclosure")
        return self.pow_int(p).root(q, precision)

    def __repr__(self) -> str:
        return f"Enclosure({self.lo!r}, {self.hi!r})"


# ---------------------------------------------------------------------------
# three-valued comparison


def certified_le(a: Enclosure, b: Enclosure) -> Optional[bool]:
    """True / False when the intervals separate, None when they overlap."""
    if a.hi <= b.lo:
        return True
    if a.lo > b.hi:
        return False
    return None


def certified_ge(a: Enclosure, b: Enclosure) -> Optional[bool]:
    return certified_le(b, a)


# ---------------------------------------------------------------------------
# pi and Gamma at half-integers


def _atan_inverse(m: int, precision: int) -> Enclosure:
    # arctan(1/m) by its alternating series; consecutive partial sums
    # bracket the limit since the terms decrease strictly
    cutoff = Fraction(1, 1 << (precision + 8))
    total = Fraction(0)
    previous = None
    j = 0
    while True:
        term = Fraction(1, (2 * j + 1) * m ** (2 * j + 1))
        previous = total
        total = total - term if j % 2 else total + term
        if term <= cutoff and j > 0:
            break
        j += 1
    return Enclosure(min(previous, total), max(previous, total))


@lru_cache(maxsize=None)
def machin_pi(precision: int = DEFAULT_PRECISION) -> Enclosure:
    """Certified enclosure of pi via 16*arctan(1/5) - 4*arctan(1/239)."""
    sixteen = Enclosure.point(16)
    four = Enclosure.point(4)
    return sixteen * _atan_inverse(5, precision) - four * _atan_inverse(239, precision)


def _double_factorial(m: int) -> int:
    # (-1)!! = 1 by convention
    result = 1
    while m > 1:
        result *= m
        m -= 2
    return result


def gamma_half(n: int, precision: int = DEFAULT_PRECISION) -> Enclosure:
    """Enclosure of Gamma(n/2) for a positive integer n.

    Even n is an exact factorial; odd n reduces to a double factorial
    times sqrt(pi), the only transcendental ingredient.
    """
    if n < 1:
        raise ValueError("gamma_half needs a positive integer argument")
    if n % 2 == 0:
        return Enclosure.point(factorial(n // 2 - 1))
    sqrt_pi = machin_pi(precision).root(2, precision)
    scale = Enclosure.point(Fraction(_double_factorial(n - 2), 2 ** ((n - 1) // 2)))
    return scale * sqrt_pi


# ---------------------------------------------------------------------------
# the volume-constant chain


def _xi(n: int, precision: int) -> Enclosure:
    base = Enclosure.point(Fraction(factorial(n), n ** (2 * n)))
    tail = Enclosure.point(factorial(n - 1))
    lead = Enclosure.point((n - 1) ** (2 * n))
    return lead * base.power(1, n - 1, precision) * tail.power(1, n - 1, precision)


def _c1(n: int, precision: int) -> Enclosure:
    lead = Enclosure.point(Fraction(1, factorial(n)))
    sqrt_np1 = Enclosure.point(n + 1).root(2, precision)
    # ((n-2)!/sqrt(n))^(n/(n-1)) split into a rational power and a
    # certified root of n
    core = Enclosure.point(factorial(n - 2)).power(n, n - 1, precision)
    denom = Enclosure.point(n).power(n, 2 * (n - 1), precision)
    return lead * sqrt_np1 * core / denom


def _kappa_prime(n: int, xi: Enclosure, precision: int) -> Enclosure:
    body = Enclosure.point(factorial(n)) * xi
    left = body.power(-(n - 1), n, precision)
    surface = (
        Enclosure.point(2)
        * machin_pi(precision).power(n, 2, precision)
        / gamma_half(n, precision)
    )
    return left * surface.power(-1, n, precision)


def andrews_constants(n: int, precision: int = DEFAULT_PRECISION) -> "AndrewsReport":
    """Evaluate the volume-constant chain for dimension n with certificates.

    Every constant comes back as an enclosure; the four estimate flags
    are True/False only when certified by interval separation and None
    when the requested precision cannot decide them.
    """
    if n < 2:
        raise ValueError("the constant chain starts at dimension 2")
    if precision < MIN_PRECISION:
        raise ValueError(f"precision below {MIN_PRECISION} bits cannot certify anything")

    xi = _xi(n, precision)
    c1 = _c1(n, precision)
    kappa_prime = _kappa_prime(n, xi, precision)
    gamma = Enclosure.point(Fraction(1, n**n)) * c1
    kappa = (
        Enclosure.point(Fraction(1, 2 * 3**n))
        * gamma
        * kappa_prime.power(n, n - 1, precision)
    )
    alpha_required = kappa.power(-(n - 1), n + 1, precision)
    phi = Enclosure.point(n).power(5, 2, precision)

    return AndrewsReport(
        n=n,
        precision=precision,
        xi=xi,
        c1=c1,
        kappa_prime=kappa_prime,
        gamma=gamma,
        kappa=kappa,
        alpha_required=alpha_required,
        phi=phi,
        beta_n=(3 * n) ** (5 * n),
        beta_n_minus_1=(3 * (n - 1)) ** (5 * (n - 1)),
        xi_bounded=certified_le(xi, Enclosure.point(n ** (2 * n))),
        c1_bounded=certified_ge(c1, Enclosure.point(Fraction(1, n * n))),
        kappa_prime_bounded=certified_ge(
            kappa_prime, Enclosure.point(Fraction(1, 8 * n ** (3 * n)))
        ),
        alpha_bounded=certified_le(alpha_required, Enclosure.point((3 * n) ** (4 * n))),
    )


@dataclass(frozen=True)
class AndrewsReport:
    """Constant-chain enclosures for one dimension, with estimate verdicts.

    A verdict of None means the precision used could not separate the
    intervals; it is never silently promoted to a pass.
    """

    n: int
    precision: int
    xi: Enclosure
    c1: Enclosure
    kappa_prime: Enclosure
    gamma: Enclosure
    kappa: Enclosure
    alpha_required: Enclosure
    phi: Enclosure
    beta_n: int
    beta_n_minus_1: int
    xi_bounded: Optional[bool]
    c1_bounded: Optional[bool]
    kappa_prime_bounded: Optional[bool]
    alpha_bounded: Optional[bool]

    _CHECKS = ("xi_bounded", "c1_bounded", "kappa_prime_bounded", "alpha_bounded")

    def verdicts(self) -> tuple[tuple[str, Optional[bool]], ...]:
        return tuple((name, getattr(self, name)) for name in self._CHECKS)

    @property
    def all_certified(self) -> bool:
        return all(getattr(self, name) is True for name in self._CHECKS)

    @property
    def inconclusive(self) -> tuple[str, ...]:
        return tuple(name for name in self._CHECKS if getattr(self, name) is None)

    @property
    def failed(self) -> tuple[str, ...]:
        return tuple(name for name in self._CHECKS if getattr(self, name) is False)


@dataclass(frozen=True)
class ConstantsCertificate:
    """Aggregated constant-chain verdicts over a range of dimensions."""

    reports: tuple[AndrewsReport, ...]
    ok: bool
    failures: tuple[tuple[int, str], ...]
    undecided: tuple[tuple[int, str], ...]


def _with_refinement(evaluate, precision: int, max_precision: int):
    # double the working precision until no verdict is inconclusive or
    # the cap is reached; the last report is returned either way
    while True:
        report = evaluate(precision)
        if not report.inconclusive or precision >= max_precision:
            return report
        precision = min(2 * precision, max_precision)


def certify_constant_estimates(
    n_values: Optional[Iterable[int]] = None,
    *,
    precision: int = DEFAULT_PRECISION,
    max_precision: int = MAX_PRECISION,
) -> ConstantsCertificate:
    """Certify the four closing estimates of the volume-constant chain.

    For each dimension (default 2..12) the checks are: xi(n) <= n^(2n),
    c_1(n) >= 1/n^2, kappa'(n) >= 1/(8 n^(3n)) and the derived vertex
    constant alpha_required(n) <= (3n)^(4n).  Inconclusive comparisons
    trigger precision doubling; anything still undecided at the cap is
    reported as undecided, never as a pass.
    """
    if n_values is None:
        n_values = range(2, 13)
    reports = []
    failures = []
    undecided = []
    for n in n_values:
        report = _with_refinement(
            lambda p, n=n: andrews_constants(n, p), precision, max_precision
        )
        reports.append(report)
        failures.extend((n, name) for name in report.failed)
        undecided.extend((n, name) for name in report.inconclusive)
    return ConstantsCertificate(
        reports=tuple(reports),
        ok=not failures and not undecided,
        failures=tuple(failures),
        undecided=tuple(undecided),
    )


# ---------------------------------------------------------------------------
# the growth chain of the upper-bound recursion


@dataclass(frozen=True)
class ChainLinkReport:
    """Verdicts for the three links of the growth-budget chain at one n.

    The chain bounds (2*phi(n)+1)*(beta(n-1)+2^(n-1)) through the
    midpoint 6*phi(n)*beta(n-1) and the integer 6n^3*(3n)^(5n-5) by the
    budget (3n)^(5n).
    """

    n: int
    precision: int
    phi: Enclosure
    lhs: Enclosure
    mid: Enclosure
    mid_integer: int
    budget: int
    first_ok: Optional[bool]
    second_ok: Optional[bool]
    third_ok: Optional[bool]

    _CHECKS = ("first_ok", "second_ok", "third_ok")

    @property
    def all_certified(self) -> bool:
        return all(getattr(self, name) is True for name in self._CHECKS)

    @property
    def inconclusive(self) -> tuple[str, ...]:
        return tuple(name for name in self._CHECKS if getattr(self, name) is None)

    @property
    def failed(self) -> tuple[str, ...]:
        return tuple(name for name in self._CHECKS if getattr(self, name) is False)


@dataclass(frozen=True)
class GrowthChainCertificate:
    reports: tuple[ChainLinkReport, ...]
    ok: bool
    failures: tuple[tuple[int, str], ...]
    undecided: tuple[tuple[int, str], ...]


def _chain_links(n: int, precision: int) -> ChainLinkReport:
    phi = Enclosure.point(n).power(5, 2, precision)
    beta_prev = (3 * (n - 1)) ** (5 * (n - 1))
    lhs = (Enclosure.point(2) * phi + Enclosure.point(1)) * Enclosure.point(
        beta_prev + 2 ** (n - 1)
    )
    mid = Enclosure.point(6 * beta_prev) * phi
    mid_integer = 6 * n**3 * (3 * n) ** (5 * n - 5)
    budget = (3 * n) ** (5 * n)
    return ChainLinkReport(
        n=n,
        precision=precision,
        phi=phi,
        lhs=lhs,
        mid=mid,
        mid_integer=mid_integer,
        budget=budget,
        first_ok=certified_le(lhs, mid),
        second_ok=certified_le(mid, Enclosure.point(mid_integer)),
        third_ok=mid_integer <= budget,
    )


def certify_growth_chain(
    n_values: Optional[Iterable[int]] = None,
    *,
    precision: int = DEFAULT_PRECISION,
    max_precision: int = MAX_PRECISION,
) -> GrowthChainCertificate:
    """Certify the three-link growth chain for each dimension (default 2..8).

    The first link absorbs the flatness prefactor 2*phi(n)+1 and the
    carried 2^(n-1) into 6*phi(n)*beta(n-1); the second trades phi(n)
    for n^3 and beta(n-1) for (3n)^(5n-5); the third is pure integer
    arithmetic.  Each link is certified separately.
    """
    if n_values is None:
        n_values = range(2, 9)
    reports = []
    failures = []
    undecided = []
    for n in n_values:
        if n < 2:
            raise ValueError("the growth chain starts at dimension 2")
        report = _with_refinement(
            lambda p, n=n: _chain_links(n, p), precision, max_precision
        )
        reports.append(report)
        failures.extend((n, name) for name in report.failed)
        undecided.extend((n, name) for name in report.inconclusive)
    return GrowthChainCertificate(
        reports=tuple(reports),
        ok=not failures and not undecided,
        failures=tuple(failures),
        undecided=tuple(undecided),
    )


# ---------------------------------------------------------------------------
# empirical sweep of the vertex bound over the polygon census


@dataclass(frozen=True)
class EmpiricalReport:
    """Result of sweeping the planar vertex bound over cached census classes.

    The bound vert^3 <= alpha(2)^3 * area is checked with exact
    shoelace areas; cubing both sides avoids any root extraction.
    ratio_peak is the largest vert^3/area encountered, a measure of how
    loose the bound runs in the plane.
    """

    interior_max: int
    classes_checked: int
    ok: bool
    ratio_peak: Fraction
    peak_class: tuple
    violations: tuple

    @property
    def budget(self) -> int:
        """The cubed planar vertex constant alpha(2)^3 = 6^24."""
        return 6**24


def andrews_empirical(store: "CensusStore", interior_max: int) -> EmpiricalReport:
    """Check vert(P)^3 <= (6^8)^3 * area(P) over every cached polygon class.

    The census cache must cover interior counts 0..interior_max.  The
    comparison is exact: areas come from the rational shoelace formula
    and both sides stay integers after clearing denominators.
    """
    if interior_max < 0:
        raise DegenerateInputError("interior_max must be nonnegative")
    alpha_cubed = (3 * 2) ** (4 * 2 * 3)
    checked = 0
    ratio_peak = Fraction(0)
    peak_class: tuple = ()
    violations = []
    for i in range(interior_max + 1):
        for cls in store.load(i).classes:
            area = polygon_area_2d(cls.vertices)
            cubed = cls.vertex_count**3
            if cubed > alpha_cubed * area:
                violations.append(cls.vertices)
            ratio = cubed / area
            if ratio > ratio_peak:
                ratio_peak = ratio
                peak_class = cls.vertices
            checked += 1
    return EmpiricalReport(
        interior_max=interior_max,
        classes_checked=checked,
        ok=not violations,
        ratio_peak=ratio_peak,
        peak_class=peak_class,
        violations=tuple(violations),
    )
