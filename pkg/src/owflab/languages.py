"""Decidable language oracles and exact density functions.

A language oracle bundles a membership predicate over words with a claimed
density shape: dens(x) is the number of member words whose Goedel number is
at most x, and the claim is d * x**(1/beta) <= dens(x) <= sqrt(x) for
x >= x0.  The built-in square / r-th power oracles accept only the minimal
binary representation of a value (leading 1); counting padded variants such
as "0100" as well would break the sqrt(x) ceiling that the density argument
rests on.

Lower-bound constants are carried as the exact rational d**beta so that every
bound check is an integer comparison (d itself is typically irrational for
power oracles).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from .errors import BudgetError
from .words import Word, goedel_inverse, word_value

DEFAULT_ENUMERATION_BUDGET = 10_000_000


@dataclass(frozen=True)
class LanguageOracle:
    """Membership predicate plus claimed density exponent and constants.

    ``member`` must be deterministic and side-effect free.  ``d_pow_beta`` is
    d**beta as an exact fraction, or None when no lower-bound constant is
    claimed (e.g. for intersections); ``x0`` is the cutoff from which the
    lower bound is asserted.
    """

    name: str
    member: Callable[[Word], bool]
    beta: int
    d_pow_beta: Fraction | None
    x0: int

    @property
    def d(self) -> float | None:
        """Lower-bound constant as a float, for display only."""
        if self.d_pow_beta is None:
            return None
        return float(self.d_pow_beta) ** (1.0 / self.beta)


@dataclass(frozen=True)
class DensityTable:
    """Cumulative density counts: counts[x] = dens(x) for x = 1..limit."""

    oracle_name: str
    limit: int
    counts: tuple[int, ...]  # counts[0] is a 0 sentinel

    def dens(self, x: int) -> int:
        return self.counts[x]


@dataclass(frozen=True)
class BoundViolation:
    x: int
    kind: str  # "lower" or "upper"
    dens: int


@dataclass(frozen=True)
class DensityReport:
    oracle_name: str
    x0: int
    limit: int
    violations: tuple[BoundViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def _iroot(value: int, r: int) -> int:
    """Largest integer t with t**r <= value (value >= 0, r >= 1)."""
    if value < 0:
        raise ValueError("negative value")
    if r == 1:
        return value
    if r == 2:
        return math.isqrt(value)
    if value == 0:
        return 0
    t = int(round(value ** (1.0 / r)))
    while t**r > value:
        t -= 1
    while (t + 1) ** r <= value:
        t += 1
    return t


def is_perfect_power(value: int, r: int) -> bool:
    """True iff value = x**r for some integer x >= 1."""
    if value < 1:
        return False
    return _iroot(value, r) ** r == value


def _canonical(w: Word) -> bool:
    # Minimal binary representation of a positive integer: leading 1.
    return bool(w) and w[0] == "1"


def sq_member(w: Word) -> bool:
    """True iff the word is the minimal binary form of a perfect square >= 1.

    The empty word has value 0, which is excluded (0 is not counted as a
    natural number here), and padded forms such as "0100" are rejected so
    that each square is counted exactly once by the density function.
    """
    return _canonical(w) and is_perfect_power(word_value(w), 2)


def power_oracle(r: int) -> LanguageOracle:
    """Oracle for minimal-form r-th powers, with beta = r.

    The density of r-th powers up to Goedel number x is at least
    floor((x/5)**(1/r)) because gn(y) <= 5y, which stays above
    (1/2) * (x/5)**(1/r) once x >= 5 * 2**r; hence d**r = 1/(5 * 2**r).
    """
    if r < 2:
        raise ValueError("power oracles need r >= 2")

    def member(w: Word) -> bool:
        return _canonical(w) and is_perfect_power(word_value(w), r)

    return LanguageOracle(
        name=f"power{r}" if r != 2 else "sq",
        member=member,
        beta=r,
        d_pow_beta=Fraction(1, 5 * 2**r),
        x0=5 * 2**r,
    )


# The square oracle keeps the (slightly stronger) constants fixed by a
# calibration scan: d = 3/10 from x0 = 16 onwards.
SQ = LanguageOracle(
    name="sq",
    member=sq_member,
    beta=2,
    d_pow_beta=Fraction(9, 100),
    x0=16,
)


def sigma_star_oracle() -> LanguageOracle:
    """The full language: every word is a member, so dens(x) = x."""
    return LanguageOracle(
        name="sigma-star",
        member=lambda w: True,
        beta=1,
        d_pow_beta=Fraction(1),
        x0=1,
    )


def empty_oracle() -> LanguageOracle:
    return LanguageOracle(
        name="empty",
        member=lambda w: False,
        beta=1,
        d_pow_beta=None,
        x0=1,
    )


def intersect(l1: LanguageOracle, l2: LanguageOracle) -> LanguageOracle:
    """Conjunction oracle.  The result's density never exceeds either input's
    density at any point; no lower-bound constant is claimed for it."""
    m1, m2 = l1.member, l2.member
    return LanguageOracle(
        name=f"{l1.name}&{l2.name}",
        member=lambda w: m1(w) and m2(w),
        beta=max(l1.beta, l2.beta),
        d_pow_beta=None,
        x0=max(l1.x0, l2.x0),
    )


def density_scan(
    oracle: LanguageOracle, limit: int, *, budget: int = DEFAULT_ENUMERATION_BUDGET
) -> Iterator[tuple[int, int]]:
    """Yield (x, dens(x)) for x = 1..limit by enumerating Goedel inverses."""
    if limit > budget:
        raise BudgetError(
            f"density enumeration to {limit} exceeds budget {budget}; "
            "pass a larger budget explicitly"
        )
    count = 0
    member = oracle.member
    for x in range(1, limit + 1):
        if member(goedel_inverse(x)):
            count += 1
        yield x, count


def density(
    oracle: LanguageOracle, x: int, *, budget: int = DEFAULT_ENUMERATION_BUDGET
) -> int:
    """Exact number of member words with Goedel number <= x."""
    if x < 1:
        raise ValueError("density is defined for x >= 1")
    dens = 0
    for _, dens in density_scan(oracle, x, budget=budget):
        pass
    return dens


def density_table(
    oracle: LanguageOracle, limit: int, *, budget: int = DEFAULT_ENUMERATION_BUDGET
) -> DensityTable:
    counts = [0]
    counts.extend(dens for _, dens in density_scan(oracle, limit, budget=budget))
    return DensityTable(oracle.name, limit, tuple(counts))


def lower_bound_holds(oracle: LanguageOracle, x: int, dens: int) -> bool:
    """Exact check of d * x**(1/beta) <= dens via d**beta * x <= dens**beta."""
    if oracle.d_pow_beta is None:
        return True
    dpb = oracle.d_pow_beta
    return dpb.numerator * x <= dens**oracle.beta * dpb.denominator


def upper_bound_holds(x: int, dens: int) -> bool:
    """Exact check of dens <= sqrt(x)."""
    return dens * dens <= x


def density_bound_report(
    oracle: LanguageOracle,
    limit: int,
    *,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> DensityReport:
    """Check both claimed bounds pointwise over [x0, limit].

    Violations are returned as data, never raised: the trivial full language
    violates the sqrt ceiling everywhere, and that is a legitimate finding.
    """
    violations: list[BoundViolation] = []
    for x, dens in density_scan(oracle, limit, budget=budget):
        if x < oracle.x0:
            continue
        if not lower_bound_holds(oracle, x, dens):
            violations.append(BoundViolation(x, "lower", dens))
        if not upper_bound_holds(x, dens):
            violations.append(BoundViolation(x, "upper", dens))
    return DensityReport(oracle.name, oracle.x0, limit, tuple(violations))


def calibrate_d_pow_beta(
    oracle: LanguageOracle,
    limit: int,
    x0: int | None = None,
    *,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> Fraction:
    """Largest admissible d**beta over the scanned range: the pointwise
    minimum of dens(x)**beta / x for x in [x0, limit].

    This is the calibration scan that fixes an oracle's lower-bound constant
    empirically; any stored d_pow_beta at or below the returned value holds
    with zero violations on the scanned range.
    """
    x0 = oracle.x0 if x0 is None else x0
    if limit < x0:
        raise ValueError("the scan range [x0, limit] is empty")
    best: Fraction | None = None
    for x, dens in density_scan(oracle, limit, budget=budget):
        if x < x0:
            continue
        ratio = Fraction(dens**oracle.beta, x)
        if best is None or ratio < best:
            best = ratio
    assert best is not None
    return best


def density_csv_rows(
    oracle: LanguageOracle, limit: int, *, budget: int = DEFAULT_ENUMERATION_BUDGET
) -> Iterator[tuple[int, int, float, float]]:
    """Rows (x, dens, d * x**(1/beta), sqrt(x)) for table export."""
    d = oracle.d
    for x, dens in density_scan(oracle, limit, budget=budget):
        lower = d * x ** (1.0 / oracle.beta) if d is not None else 0.0
        yield x, dens, lower, math.sqrt(x)
