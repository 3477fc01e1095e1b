"""Exact urn hit probabilities, the threshold m*, and its closed-form bounds.

The urn model: N elements, ``good`` of them marked.  Q_k is the event that a
uniformly drawn k-subset contains at least one marked element,

    Pr(Q_k) = 1 - C(N-good, k) / C(N, k),

computed exactly as big-integer rationals.  The threshold is
m*(N, p) = max{k : Pr(Q_k) <= 1/2} with p = good/N, and the closed-form
sandwich derived from factorial-ratio bounds is

    mu_lower = floor(1 + N(1-p) - r)      mu_upper = ceil(N - r)

with the root term r = (N! / (2 * ((1-p)N)!))**(1/(pN)).  Two independent
routes compute the bounds: a log-Gamma kernel at 80+ bit precision with a
2**-30 snapping guard before floor/ceil, and a pure big-integer route that
brackets r by comparing 2*t**(pN) against the falling factorial.  The
big-integer route is exact and serves as the oracle for the kernel.

m(N), the number of elements the sampler actually draws, is
floor(N**(-1/alpha) * mu_lower(N, p_upper)) clamped to >= 1, with
alpha = 4*beta/(beta-2) + 2*beta auto-derived for beta > 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import mpmath

KERNEL_PRECISION_BITS = 96  # "80-bit equivalent" with headroom
GUARD = Fraction(1, 2**30)

DEFAULT_ALPHA_SMALL_BETA = Fraction(8)  # convention for beta <= 2, where the
# closed form for alpha blows up; any alpha > 1 is admissible there.


def hit_probability(N: int, good: int, k: int) -> Fraction:
    """Pr(Q_k), exact, via the falling-factorial product
    1 - prod_{j<k} (N-good-j)/(N-j)."""
    _check_urn(N, good)
    if k < 0 or k > N:
        raise ValueError(f"draw count k={k} outside [0, {N}]")
    if k == 0:
        return Fraction(0)
    if k > N - good:
        return Fraction(1)
    num = 1
    den = 1
    for j in range(k):
        num *= N - good - j
        den *= N - j
    return 1 - Fraction(num, den)


def hit_probability_binomial(N: int, good: int, k: int) -> Fraction:
    """Independent route: 1 - C(N-good, k)/C(N, k)."""
    _check_urn(N, good)
    if k < 0 or k > N:
        raise ValueError(f"draw count k={k} outside [0, {N}]")
    return 1 - Fraction(math.comb(N - good, k), math.comb(N, k))


def _check_urn(N: int, good: int) -> None:
    if N < 1:
        raise ValueError("urn size must be >= 1")
    if not 0 <= good <= N:
        raise ValueError(f"good count {good} outside [0, {N}]")


def _miss_at_least_half(N: int, good: int, k: int) -> bool:
    # Pr(Q_k) <= 1/2  <=>  2*C(N-good, k) >= C(N, k)
    return 2 * math.comb(N - good, k) >= math.comb(N, k)


def exact_threshold(N: int, good: int) -> int:
    """m*(N, p) = max{k : Pr(Q_k) <= 1/2}, by monotone binary search.

    Degenerate urns follow the limits of the defining max-set:
    m*(N, 0) = N (the event never occurs) and m*(N, N) = 0.
    """
    _check_urn(N, good)
    if good == 0:
        return N
    if good == N:
        return 0
    lo, hi = 0, N - good  # beyond N-good the miss probability is 0
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if _miss_at_least_half(N, good, mid):
            lo = mid
        else:
            hi = mid - 1
    return lo


class MuBounds(NamedTuple):
    lower: int  # floor(1 + N(1-p) - r), may be negative
    upper: int  # ceil(N - r)
    lower_clamped: int  # max(0, lower): draw counts cannot be negative
    root: float  # the root term r, for reporting


@lru_cache(maxsize=None)
def _lngamma(arg: int) -> mpmath.mpf:
    with mpmath.workprec(KERNEL_PRECISION_BITS):
        return mpmath.loggamma(arg)


def _guarded_int(value: mpmath.mpf, mode: str) -> int:
    """floor/ceil with a +-2**-30 snap to the nearest integer.

    The kernel's true error is far below the guard, so a value this close to
    an integer means the exact quantity is that integer (e.g. the root term
    of a perfect-power falling factorial) and is rounded to it before the
    floor or ceil is applied.
    """
    nearest = int(mpmath.nint(value))
    if abs(value - nearest) <= mpmath.mpf(GUARD.numerator) / GUARD.denominator:
        return nearest
    return int(mpmath.floor(value)) if mode == "floor" else int(mpmath.ceil(value))


def _validate_p(N: int, p: Fraction) -> int:
    p = Fraction(p)
    good = p * N
    if good.denominator != 1 or good < 1:
        raise ValueError(f"p*N must be a positive integer, got {good}")
    if p > 1:
        raise ValueError("p must be at most 1")
    return int(good)


def mu_bounds(
    N: int, p: Fraction, *, check_sandwich: bool = True
) -> MuBounds:
    """Closed-form threshold bounds via the log-Gamma kernel.

    When ``check_sandwich`` is on and the urn is nondegenerate, the sandwich
    max(0, lower) <= m*(N, p) <= upper is asserted against the exact
    threshold.
    """
    if N < 2:
        raise ValueError("the bounds need N >= 2")
    good = _validate_p(N, p)
    with mpmath.workprec(KERNEL_PRECISION_BITS):
        exponent = (_lngamma(N + 1) - _lngamma(N - good + 1) - mpmath.log(2)) / good
        root = mpmath.exp(exponent)
        lower = _guarded_int(1 + (N - good) - root, "floor")
        upper = _guarded_int(N - root, "ceil")
        root_f = float(root)
    bounds = MuBounds(lower, upper, max(0, lower), root_f)
    if check_sandwich and 1 <= good <= N - 1:
        mstar = exact_threshold(N, good)
        if not bounds.lower_clamped <= mstar <= bounds.upper:
            raise AssertionError(
                f"sandwich violated at N={N}, good={good}: "
                f"{bounds.lower_clamped} <= {mstar} <= {bounds.upper} fails"
            )
    return bounds


def mu_bounds_exact(N: int, p: Fraction) -> MuBounds:
    """Pure big-integer route for the same bounds.

    Uses floor(A - r) = A - ceil(r) and ceil(N - r) = N - floor(r), with
    ceil(r)/floor(r) bracketed by exact comparisons of 2*t**g against the
    falling factorial N!/((N-g)!).
    """
    if N < 2:
        raise ValueError("the bounds need N >= 2")
    good = _validate_p(N, p)
    ff = math.perm(N, good)
    # Estimate r = (ff/2)**(1/good) in floats, then correct exactly.
    est = math.exp((math.lgamma(N + 1) - math.lgamma(N - good + 1) - math.log(2)) / good)
    floor_r = max(0, int(est))
    while 2 * floor_r**good > ff:
        floor_r -= 1
    while 2 * (floor_r + 1) ** good <= ff:
        floor_r += 1
    ceil_r = floor_r if 2 * floor_r**good == ff else floor_r + 1
    lower = 1 + (N - good) - ceil_r
    upper = N - floor_r
    return MuBounds(lower, upper, max(0, lower), float(est))


@dataclass(frozen=True)
class ThresholdInstance:
    """One urn with its exact threshold and continuous bounds.

    p is the exact rational good/N (so p*N is an integer by construction);
    for nondegenerate urns the construction enforces
    max(0, mu_lower) <= mstar <= mu_upper.
    """

    N: int
    good: int
    p: Fraction
    mstar: int
    mu_lower: int
    mu_upper: int


def threshold_instance(N: int, good: int) -> ThresholdInstance:
    _check_urn(N, good)
    mstar = exact_threshold(N, good)
    if 0 < good < N:
        mb = mu_bounds(N, Fraction(good, N))  # sandwich asserted inside
        lower, upper = mb.lower, mb.upper
    else:
        # The mu formulas put p in a denominator; degenerate urns carry the
        # defining max-set limits instead.
        lower, upper = mstar, mstar
    return ThresholdInstance(
        N=N, good=good, p=Fraction(good, N), mstar=mstar,
        mu_lower=lower, mu_upper=upper,
    )


def derive_constants(beta: int | Fraction) -> tuple[Fraction, Fraction]:
    """(alpha, gamma) = (4*beta/(beta-2) + 2*beta, (beta-2)**2/(2*beta))."""
    beta = Fraction(beta)
    if beta <= 2:
        raise ValueError("the closed forms require beta > 2")
    alpha = Fraction(4) * beta / (beta - 2) + 2 * beta
    gamma = (beta - 2) ** 2 / (2 * beta)
    return alpha, gamma


@dataclass(frozen=True)
class SamplerParams:
    """Derived sampling parameters for base size n and density exponent beta.

    N = n**(2*beta) is the full urn, s = n**(2*beta - 1) the thinning factor
    (so the thinned urn has N/s = n elements), p_upper = sqrt(N)/N and
    p_lower = d * N**(1/beta) / N bound the marked fraction, and m is the
    draw count floor(N**(-1/alpha) * mu_lower(N, p_upper)) clamped to >= 1.
    """

    n: int
    beta: int
    alpha: Fraction
    alpha_derived: bool
    N: int
    s: int
    p_upper: Fraction
    p_lower: float | None
    m: int
    m_degenerate: bool


class DrawCount(NamedTuple):
    m: int
    degenerate: bool  # set when the unclamped value fell below 1
    mu_lower: int


def _floor_scaled_by_root(value: int, N: int, alpha: Fraction) -> int:
    """floor(value * N**(-1/alpha)) exactly: the largest m with
    m**alpha.num * N**alpha.den <= value**alpha.num."""
    if value <= 0:
        return 0
    a_num, a_den = alpha.numerator, alpha.denominator
    est = int(value * N ** (-float(a_den) / float(a_num)))
    m = max(0, est)
    target = value**a_num
    while m**a_num * N**a_den > target:
        m -= 1
    while (m + 1) ** a_num * N**a_den <= target:
        m += 1
    return m


def _raw_draw_count(N: int, p_upper: Fraction, alpha: Fraction) -> DrawCount:
    mu = mu_bounds_exact(N, p_upper).lower if N >= 2 else 0
    if mu <= 0:
        return DrawCount(1, True, mu)
    m = _floor_scaled_by_root(mu, N, alpha)
    if m < 1:
        return DrawCount(1, True, mu)
    return DrawCount(m, False, mu)


def sampler_params(
    n: int,
    beta: int,
    alpha: Fraction | int | None = None,
    d: float | None = None,
) -> SamplerParams:
    """Build SamplerParams; alpha is auto-derived for beta > 2 and must
    otherwise come from the caller (or the documented default of 8)."""
    if n < 1:
        raise ValueError("base size n must be >= 1")
    if beta < 1:
        raise ValueError("beta must be >= 1")
    derived = alpha is None
    if alpha is None:
        alpha = derive_constants(beta)[0] if beta > 2 else DEFAULT_ALPHA_SMALL_BETA
    alpha = Fraction(alpha)
    if alpha <= 1:
        raise ValueError("alpha must exceed 1")
    N = n ** (2 * beta)
    s = n ** (2 * beta - 1)
    p_upper = Fraction(n**beta, N)
    p_lower = None if d is None else d * n**2 / N
    draw = _raw_draw_count(N, p_upper, alpha)
    return SamplerParams(
        n=n,
        beta=beta,
        alpha=alpha,
        alpha_derived=derived,
        N=N,
        s=s,
        p_upper=p_upper,
        p_lower=p_lower,
        m=draw.m,
        m_degenerate=draw.degenerate,
    )


def draw_count(params: SamplerParams) -> DrawCount:
    """m(N) = floor(N**(-1/alpha) * mu_lower(N, p_upper)), clamped to >= 1
    with the degeneracy flag set when the unclamped value was < 1."""
    return _raw_draw_count(params.N, params.p_upper, params.alpha)


@dataclass(frozen=True)
class BollobasVerdict:
    N: int
    good: int
    theta: Fraction
    m: int
    mstar: int
    regime: str  # "below" | "above" | "between"
    holds: bool | None  # None in the between-regimes gap
    pr: Fraction


def bollobas_check(
    N: int,
    good: int,
    theta: Fraction | int,
    m: int,
    *,
    mstar: int | None = None,
) -> BollobasVerdict:
    """Check the threshold inequalities with exact rationals.

    Below the threshold (m <= m*/theta):    Pr(Q_m) <= 1 - 2**(-1/theta).
    Above the threshold (m >= theta(m*+1)): Pr(Q_m) >= 1 - 2**(-theta).
    Both comparisons are done exactly by clearing the fractional powers of 2:
    with q = 1 - Pr(Q_m) and theta = a/b, the first is q**a * 2**b >= 1 and
    the second is q**b * 2**a <= 1.
    """
    theta = Fraction(theta)
    if theta < 1:
        raise ValueError("theta must be >= 1")
    if mstar is None:
        mstar = exact_threshold(N, good)
    pr = hit_probability(N, good, m)
    q = 1 - pr
    a, b = theta.numerator, theta.denominator
    if m * a <= mstar * b:  # m <= mstar / theta
        holds = q.numerator**a * 2**b >= q.denominator**a
        regime = "below"
    elif m * b >= (mstar + 1) * a:  # m >= theta * (mstar + 1)
        holds = q.numerator**b * 2**a <= q.denominator**b
        regime = "above"
    else:
        holds = None
        regime = "between"
    return BollobasVerdict(N, good, theta, m, mstar, regime, holds, pr)


@dataclass(frozen=True)
class QuotientRatio:
    """Evaluation of the sampled-versus-threshold growth quotient

        N**(1/alpha) * (1 + n - A)  /  (1 + B - C)

    with N = n**(2*beta) and the terms

        A = 2**(-e) * (Gamma(n+1) / Gamma(n - d*n**(3-2*beta) + 1))**e,
            e = n**(2*beta-3)/d,
        B = n**beta * (n**beta - 1),
        C = 2**(-1/n**beta) * (Gamma(N+1) / Gamma(N - n**beta + 1))**(1/n**beta).

    ``term_c_over_n2beta`` is C normalised by its natural scale N; that is
    the quantity that tends to 1 for large n.  ``scaled`` multiplies the
    quotient by n**gamma for trend reporting.
    """

    n: int
    value: float
    scaled: float
    term_a: float
    term_b: float
    term_c: float
    term_c_over_n2beta: float


def quotient_ratio(
    n: int,
    d: float,
    beta: int,
    alpha: Fraction | int | None = None,
    *,
    precision_bits: int = 192,
) -> QuotientRatio:
    if beta <= 2:
        raise ValueError("the quotient is defined for beta > 2")
    if n < 2:
        raise ValueError("n must be >= 2")
    if d <= 0:
        raise ValueError("d must be positive")
    if alpha is None:
        alpha = derive_constants(beta)[0]
    alpha = Fraction(alpha)
    _, gamma = derive_constants(beta)
    with mpmath.workprec(precision_bits):
        dd = mpmath.mpf(d)
        nb = mpmath.mpf(n) ** beta
        N = mpmath.mpf(n) ** (2 * beta)
        arg_a = n - dd * mpmath.mpf(n) ** (3 - 2 * beta) + 1
        if arg_a <= 0:
            raise ValueError(
                f"Gamma argument {float(arg_a)} <= 0 (d too large for this n)"
            )
        e_a = mpmath.mpf(n) ** (2 * beta - 3) / dd
        ln_quot_a = mpmath.loggamma(n + 1) - mpmath.loggamma(arg_a)
        term_a = mpmath.exp(e_a * (ln_quot_a - mpmath.log(2)))
        numerator = N ** (mpmath.mpf(1) / float(alpha)) * (1 + n - term_a)
        e_c = 1 / nb
        ln_quot_c = mpmath.loggamma(N + 1) - mpmath.loggamma(N - nb + 1)
        term_c = mpmath.exp(e_c * (ln_quot_c - mpmath.log(2)))
        term_b = nb * (nb - 1)
        denominator = 1 + term_b - term_c
        value = numerator / denominator
        scaled = value * mpmath.mpf(n) ** float(gamma)
        return QuotientRatio(
            n=n,
            value=float(value),
            scaled=float(scaled),
            term_a=float(term_a),
            term_b=float(term_b),
            term_c=float(term_c),
            term_c_over_n2beta=float(term_c / N),
        )


def threshold_table_rows(n_max: int, n_min: int = 4):
    """Rows (N, good, m*, mu_lower, mu_upper, Pr(Q_m*), Pr(Q_m*+1)) over the
    full nondegenerate grid; used by the CLI table writer."""
    for N in range(n_min, n_max + 1):
        for good in range(1, N):
            mstar = exact_threshold(N, good)
            mb = mu_bounds(N, Fraction(good, N), check_sandwich=False)
            pr_at = hit_probability(N, good, mstar)
            pr_after = (
                hit_probability(N, good, mstar + 1) if mstar + 1 <= N else Fraction(1)
            )
            yield N, good, mstar, mb.lower, mb.upper, pr_at, pr_after


__all__ = [
    "BollobasVerdict",
    "DrawCount",
    "DEFAULT_ALPHA_SMALL_BETA",
    "MuBounds",
    "QuotientRatio",
    "SamplerParams",
    "ThresholdInstance",
    "bollobas_check",
    "derive_constants",
    "draw_count",
    "exact_threshold",
    "hit_probability",
    "hit_probability_binomial",
    "mu_bounds",
    "mu_bounds_exact",
    "quotient_ratio",
    "sampler_params",
    "threshold_instance",
    "threshold_table_rows",
]
