import math
import random
from fractions import Fraction

import numpy as np
import pytest
from scipy.stats import hypergeom

from owflab.threshold import (
    DEFAULT_ALPHA_SMALL_BETA,
    bollobas_check,
    derive_constants,
    draw_count,
    exact_threshold,
    hit_probability,
    hit_probability_binomial,
    mu_bounds,
    mu_bounds_exact,
    quotient_ratio,
    sampler_params,
    threshold_table_rows,
)


def test_hit_probability_examples():
    assert hit_probability(4, 2, 1) == Fraction(1, 2)
    assert hit_probability(4, 2, 2) == Fraction(5, 6)
    assert hit_probability(30, 7, 0) == 0
    assert hit_probability(30, 7, 24) == 1  # k > N - good forces a hit
    with pytest.raises(ValueError):
        hit_probability(4, 2, 5)
    with pytest.raises(ValueError):
        hit_probability(4, 5, 1)


def test_hit_probability_routes_agree():
    rng = random.Random(11)
    cases = [(4, 2, 1), (4, 2, 2)]
    cases += [
        (N, rng.randrange(0, N + 1), rng.randrange(0, N + 1))
        for N in (7, 33, 120, 400)
        for _ in range(30)
    ]
    for N, good, k in cases:
        assert hit_probability(N, good, k) == hit_probability_binomial(N, good, k)


def test_hit_probability_against_scipy():
    for N, good, k in ((20, 5, 3), (120, 17, 9), (400, 111, 4)):
        ours = float(hit_probability(N, good, k))
        ref = float(1 - hypergeom.pmf(0, N, good, k))
        assert ours == pytest.approx(ref, abs=1e-12)


def test_hit_probability_monotone():
    N = 60
    for good in (0, 1, 13, 59, 60):
        probs = [hit_probability(N, good, k) for k in range(N + 1)]
        assert all(a <= b for a, b in zip(probs, probs[1:]))
    for k in (0, 1, 17, 60):
        probs = [hit_probability(N, good, k) for good in range(N + 1)]
        assert all(a <= b for a, b in zip(probs, probs[1:]))


def test_exact_threshold_examples():
    assert exact_threshold(4, 2) == 1
    assert exact_threshold(37, 0) == 37
    assert exact_threshold(37, 37) == 0


def test_exact_threshold_definition():
    # max{k: Pr(Q_k) <= 1/2} by direct scan
    for N in (5, 12, 41):
        for good in range(0, N + 1):
            mstar = exact_threshold(N, good)
            candidates = [
                k for k in range(N + 1) if hit_probability(N, good, k) <= Fraction(1, 2)
            ]
            assert mstar == max(candidates)


def test_exact_threshold_nonincreasing_in_good():
    for N in (10, 50, 200):
        values = [exact_threshold(N, good) for good in range(N + 1)]
        assert all(a >= b for a, b in zip(values, values[1:]))


def test_mu_bounds_example_small():
    mb = mu_bounds(4, Fraction(1, 2))
    assert (mb.lower, mb.upper) == (0, 2)
    assert mb.root == pytest.approx(math.sqrt(6))


def test_mu_bounds_example_n100():
    mb = mu_bounds(100, Fraction(1, 10))
    mstar = exact_threshold(100, 10)
    assert mb.lower_clamped <= mstar <= mb.upper


def test_mu_bounds_degenerate_p_one():
    mb = mu_bounds(6, Fraction(1), check_sandwich=False)
    # root = (6!/2)**(1/6) = 360**(1/6)
    assert mb.root == pytest.approx(360 ** (1 / 6))
    assert mb.lower < 0
    assert mb.lower_clamped == 0
    assert 0 <= mb.upper
    assert exact_threshold(6, 6) == 0


def test_mu_bounds_validation():
    with pytest.raises(ValueError):
        mu_bounds(10, Fraction(1, 3))  # p*N not integral
    with pytest.raises(ValueError):
        mu_bounds(1, Fraction(1))


def test_mu_bounds_kernel_matches_exact_route():
    # The log-Gamma kernel with the snapping guard must agree with the pure
    # big-integer route on the full small grid.
    for N in range(2, 65):
        for good in range(1, N + 1):
            p = Fraction(good, N)
            kernel = mu_bounds(N, p, check_sandwich=False)
            exact = mu_bounds_exact(N, p)
            assert (kernel.lower, kernel.upper) == (exact.lower, exact.upper), (N, good)


def test_sandwich_on_sampled_grid():
    rng = random.Random(3)
    for _ in range(300):
        N = rng.randrange(4, 401)
        good = rng.randrange(1, N)
        mstar = exact_threshold(N, good)
        mb = mu_bounds(N, Fraction(good, N), check_sandwich=False)
        assert max(0, mb.lower) <= mstar <= mb.upper


def test_derive_constants():
    assert derive_constants(6) == (Fraction(18), Fraction(4, 3))
    assert derive_constants(4) == (Fraction(16), Fraction(1, 2))
    assert derive_constants(3) == (Fraction(18), Fraction(1, 6))
    with pytest.raises(ValueError):
        derive_constants(2)


def test_draw_count_flags_degenerate_cases():
    params = sampler_params(2, 2, alpha=8)  # N = 16, p_upper = 1/4
    assert mu_bounds_exact(16, Fraction(1, 4)).lower == 0
    dc = draw_count(params)
    assert dc == (1, True, 0)
    assert params.m == 1 and params.m_degenerate


def test_draw_count_nondegenerate():
    params = sampler_params(4, 2, alpha=8)  # N = 256, p_upper = 1/16
    assert mu_bounds_exact(256, Fraction(1, 16)).lower == 3
    dc = draw_count(params)
    # floor(3 * 256**(-1/8)) = floor(1.5) = 1, above the clamp
    assert dc == (1, False, 3)
    # dual path: the kernel root agrees with the exact integer bracketing
    kernel = mu_bounds(256, Fraction(1, 16), check_sandwich=False)
    assert kernel.lower == 3


def test_sampler_params_fields():
    params = sampler_params(3, 2, alpha=8, d=0.3)
    assert params.N == 3**4 and params.s == 3**3
    assert params.p_upper == Fraction(9, 81)
    assert params.p_lower == pytest.approx(0.3 * 9 / 81)
    assert not params.alpha_derived
    auto = sampler_params(2, 3)
    assert auto.alpha == Fraction(18) and auto.alpha_derived
    small = sampler_params(2, 2)
    assert small.alpha == DEFAULT_ALPHA_SMALL_BETA
    with pytest.raises(ValueError):
        sampler_params(2, 2, alpha=1)


def test_bollobas_at_threshold():
    v = bollobas_check(4, 2, 1, 1)
    assert v.regime == "below" and v.holds and v.pr == Fraction(1, 2)
    v = bollobas_check(4, 2, 1, 2)
    assert v.regime == "above" and v.holds and v.pr == Fraction(5, 6)


def test_bollobas_between_regimes():
    # mstar(100, 3) sits well inside, so mstar is "below" at theta=1 but a
    # mid value with theta=2 lands in the gap
    mstar = exact_threshold(100, 3)
    mid = (mstar + mstar * 2 + 2) // 2
    v = bollobas_check(100, 3, 2, mid)
    assert v.regime == "between" and v.holds is None


def test_bollobas_irrational_bound_is_exact():
    # theta = 2: below-bound 1 - 2**(-1/2) is irrational; the comparison is
    # cleared to integers, so boundary cases cannot misround.
    v = bollobas_check(100, 10, 2, exact_threshold(100, 10) // 2)
    assert v.holds is True
    with pytest.raises(ValueError):
        bollobas_check(10, 2, Fraction(1, 2), 1)


def test_threshold_instance_bundles_the_sandwich():
    from owflab.threshold import threshold_instance

    inst = threshold_instance(4, 2)
    assert (inst.mstar, inst.mu_lower, inst.mu_upper) == (1, 0, 2)
    assert inst.p == Fraction(1, 2)
    assert max(0, inst.mu_lower) <= inst.mstar <= inst.mu_upper
    # degenerate urns carry the max-set limits
    assert threshold_instance(9, 0).mstar == 9
    assert threshold_instance(9, 9).mstar == 0


def test_threshold_table_rows():
    rows = list(threshold_table_rows(6))
    byn = {(N, g): (ms, lo, up) for N, g, ms, lo, up, _, _ in rows}
    assert byn[(4, 2)] == (1, 0, 2)
    assert all(max(0, lo) <= ms <= up for (ms, lo, up) in byn.values())


def test_quotient_ratio_decreases_along_sweep():
    values = [quotient_ratio(n, 1.0, 6).value for n in (4, 8, 16, 32, 64)]
    assert all(a > b > 0 for a, b in zip(values, values[1:]))


def test_quotient_ratio_term_c_scale():
    qr = quotient_ratio(4, 1.0, 6)
    # The falling-factorial root sits at the urn scale N = n**(2*beta); its
    # ratio to N is the quantity that tends to 1.
    assert 0.9 < qr.term_c_over_n2beta < 1.0001
    assert qr.term_c == pytest.approx(qr.term_c_over_n2beta * 4**12)
    assert qr.term_a == pytest.approx(0.0, abs=1e-30)
    assert qr.term_b == 4096 * 4095


def test_quotient_ratio_domain():
    with pytest.raises(ValueError):
        quotient_ratio(4, 1.0, 2)
    with pytest.raises(ValueError):
        quotient_ratio(1, 1.0, 6)
    with pytest.raises(ValueError):
        quotient_ratio(2, 25.0, 3)  # Gamma argument 2 - 25/8 + 1 <= 0


def test_monte_carlo_concordance():
    rng = np.random.default_rng(20260809)
    trials = 100_000
    for _ in range(20):
        N = int(rng.integers(5, 201))
        good = int(rng.integers(1, N))
        k = int(rng.integers(1, N + 1))
        exact = float(hit_probability(N, good, k))
        draws = rng.hypergeometric(good, N - good, k, size=trials)
        freq = float(np.count_nonzero(draws) / trials)
        sigma = math.sqrt(exact * (1 - exact) / trials)
        assert abs(freq - exact) <= 4 * sigma + 1e-12
