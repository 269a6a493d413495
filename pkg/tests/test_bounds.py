import math

import mpmath
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from listwise import (
    BoundQuery,
    DomainError,
    GrowthFunction,
    InputError,
    asymptotic_term,
    expected_missing_prop_bound,
    growth_eval,
    is_superlog,
    max_k_for_target,
    p_all_lower_bound,
)
from listwise.bounds import (
    bernoulli_lower,
    convergence_threshold,
    log_p_all_lower_bound,
    p_all_lower_bound_complement,
    sandwich,
)

mpmath.mp.dps = 60

ns = st.integers(1, 10**6)
ks = st.integers(1, 3000)
qs = st.floats(0.01, 0.999)


def mp_bound(n, k, q):
    """High-precision oracle for (1 - q**k)**n."""
    q = mpmath.mpf(q)
    return (1 - q**k) ** n


def mp_complement(n, k, q):
    q = mpmath.mpf(q)
    return -mpmath.expm1(n * mpmath.log1p(-(q**k)))


def mp_max_k(n, q, t):
    k = 0
    while mp_bound(n, k + 1, q) <= t:
        k += 1
    return k


@pytest.mark.parametrize("n,k", [(1, 1), (7, 3), (10**6, 1000)])
def test_zero_q_star_gives_one(n, k):
    assert p_all_lower_bound(n, k, 0.0) == 1.0
    assert p_all_lower_bound_complement(n, k, 0.0) == 0.0


def test_hand_arithmetic():
    assert p_all_lower_bound(3, 2, 0.5) == pytest.approx(0.421875, rel=1e-14)


def test_essentially_zero():
    assert p_all_lower_bound(100, 150, 0.99) < 1e-10


def test_bound_query_validation():
    assert BoundQuery(10, 3, 0.5).q_star == 0.5
    for bad in [(0, 1, 0.5), (1, 0, 0.5), (1, 1, 1.0), (1, 1, -0.1), (1.5, 1, 0.5)]:
        with pytest.raises(InputError):
            BoundQuery(*bad)


@given(ns, ks, qs)
def test_matches_high_precision_oracle(n, k, q):
    exact = mp_bound(n, k, q)
    assert p_all_lower_bound(n, k, q) == pytest.approx(float(exact), rel=1e-9, abs=1e-300)
    assert p_all_lower_bound_complement(n, k, q) == pytest.approx(float(mp_complement(n, k, q)), rel=1e-9, abs=1e-300)


def test_no_underflow_large_k():
    # naive float arithmetic: 1 - 0.99**1000 then **10000 rounds poorly
    exact = mp_bound(10**4, 10**3, 0.99)
    assert p_all_lower_bound(10**4, 10**3, 0.99) == pytest.approx(float(exact), rel=1e-10)
    assert p_all_lower_bound_complement(10**6, 200, 0.5) == pytest.approx(float(mp_complement(10**6, 200, 0.5)), rel=1e-10)


def test_expected_missing_prop():
    assert expected_missing_prop_bound(1, 0.0) == 1.0
    assert expected_missing_prop_bound(2, 0.9) == pytest.approx(0.19, rel=1e-12)


@given(ks, st.floats(0.0, 0.999))
def test_expected_is_n_equals_one(k, q):
    assert expected_missing_prop_bound(k, q) == p_all_lower_bound(1, k, q)


@pytest.mark.parametrize("n,q,t,expected", [
    (10000, 0.75, 0.5, 33),
    (10000, 0.99, 0.5, 952),
    (1, 0.5, 0.5, 1),
])
def test_max_k_values(n, q, t, expected):
    assert max_k_for_target(n, q, t) == expected


def test_max_k_zero_when_unreachable():
    # bound(1) = 0.5 already exceeds 0.3
    assert max_k_for_target(1, 0.5, 0.3) == 0


@pytest.mark.parametrize("q,t", [(0.0, 0.5), (1.0, 0.5), (0.5, 0.0), (0.5, 1.0)])
def test_max_k_domain(q, t):
    with pytest.raises(DomainError):
        max_k_for_target(10, q, t)


@given(st.integers(1, 10**5), st.floats(0.05, 0.995), st.floats(0.001, 0.999))
def test_max_k_bracket(n, q, t):
    k = max_k_for_target(n, q, t)
    if k >= 1:
        assert p_all_lower_bound(n, k, q) <= t
    assert p_all_lower_bound(n, k + 1, q) > t


@pytest.mark.parametrize("n,q,t", [(100, 0.9, 0.5), (1000, 0.75, 0.99), (37, 0.6, 0.2)])
def test_max_k_brute_force(n, q, t):
    assert max_k_for_target(n, q, t) == mp_max_k(n, q, t)


@pytest.mark.parametrize("n,expected", [(10, 2), (1000, 8), (10**6, 17)])
def test_growth_power_log(n, expected):
    assert growth_eval(GrowthFunction.power_log(1.1), n) == expected


def test_growth_kinds():
    assert growth_eval(GrowthFunction.polynomial(0.5), 10**4) == 100
    assert growth_eval(GrowthFunction.logarithmic(), 1) == 1
    assert growth_eval(GrowthFunction.constant(5), 10**9) == 5
    assert growth_eval(GrowthFunction.power_log(2), 1) == 1


@given(st.sampled_from([GrowthFunction.power_log(1.1), GrowthFunction.polynomial(0.3),
                        GrowthFunction.logarithmic(), GrowthFunction.constant(3)]),
       st.integers(1, 10**12))
def test_growth_is_positive_int(f, n):
    k = growth_eval(f, n)
    assert isinstance(k, int) and k >= 1


def test_growth_validation_and_parse():
    for bad in [("power_log", 1.0), ("polynomial", 0.0), ("constant", 0.0), ("cubic", 1.0)]:
        with pytest.raises(InputError):
            GrowthFunction(*bad)
    assert GrowthFunction.parse("power-log:1.1") == GrowthFunction.power_log(1.1)
    assert GrowthFunction.parse("log") == GrowthFunction.logarithmic()
    assert str(GrowthFunction.parse("polynomial:0.5")) == "polynomial:0.5"


def test_is_superlog():
    assert is_superlog(GrowthFunction.power_log(1.1))
    assert is_superlog(GrowthFunction.polynomial(0.5))
    assert not is_superlog(GrowthFunction.logarithmic())
    assert not is_superlog(GrowthFunction.constant(10))


def test_asymptotic_term_examples():
    assert asymptotic_term(1, GrowthFunction.constant(1), 0.5) == pytest.approx(0.5)
    # floor(log(10000)**1.1) = floor(11.5001...) = 11, so the term is 10000 / 2**11
    f = GrowthFunction.power_log(1.1)
    assert growth_eval(f, 10000) == 11
    assert asymptotic_term(10000, f, 0.5) == pytest.approx(4.8828125, rel=1e-12)
    # with q_star = 0.9 the term is still growing at these sizes:
    # 10**3 * 0.9**8 vs 10**6 * 0.9**17
    assert asymptotic_term(10**3, f, 0.9) == pytest.approx(1000 * 0.9**8, rel=1e-12)
    assert asymptotic_term(10**6, f, 0.9) == pytest.approx(10**6 * 0.9**17, rel=1e-12)
    assert asymptotic_term(10**6, f, 0.9) > asymptotic_term(10**3, f, 0.9)
    with pytest.raises(DomainError):
        asymptotic_term(10, f, 0.0)


def test_asymptotic_term_vanishes_far_out():
    # power_log(1.1) is superlog but slow: far beyond 10**8 before the term collapses
    f = GrowthFunction.power_log(1.1)
    assert asymptotic_term(10**100, f, 0.5) < 1e-15
    assert asymptotic_term(10**300, f, 0.5) < asymptotic_term(10**100, f, 0.5)
    lo, bound, hi = sandwich(10**100, f, 0.5)
    assert lo <= bound <= hi and bound == pytest.approx(1.0)


# monotonicity: decreasing in n, increasing in k, decreasing in q_star
@given(st.integers(1, 10**5), st.integers(1, 60), st.floats(0.3, 0.95))
def test_monotone_directions(n, k, q):
    base = log_p_all_lower_bound(n, k, q)
    assert log_p_all_lower_bound(n + 1, k, q) < base
    assert log_p_all_lower_bound(n, k + 1, q) > base
    assert log_p_all_lower_bound(n, k, min(q + 0.01, 0.999)) < base


@given(st.integers(1, 10**5), ks, qs)
def test_monotone_non_strict_everywhere(n, k, q):
    b = p_all_lower_bound(n, k, q)
    assert p_all_lower_bound(n + 1, k, q) <= b
    assert p_all_lower_bound(n, k + 1, q) >= b
    assert p_all_lower_bound(n, k, min(q * 1.001, 0.9999)) <= b


@given(st.integers(1, 10**7), ks, st.floats(0.0, 0.999))
def test_sandwich(n, k, q):
    b = p_all_lower_bound(n, k, q)
    assert bernoulli_lower(n, k, q) <= b + 1e-12
    assert b <= 1.0


@pytest.mark.parametrize("f,q", [
    (GrowthFunction.polynomial(0.5), 0.5),
    (GrowthFunction.polynomial(0.5), 0.9),
    (GrowthFunction.polynomial(0.3), 0.75),
    (GrowthFunction.power_log(2.0), 0.5),
    (GrowthFunction.power_log(1.5), 0.25),
])
def test_superlog_path_converges_on_grid(f, q):
    grid = [10**e for e in range(1, 9)]
    threshold = convergence_threshold(f, q, 1e-6, grid)
    assert threshold is not None
    for n in grid:
        if n >= threshold:
            assert p_all_lower_bound(n, growth_eval(f, n), q) >= 1 - 1e-6


def test_log_growth_does_not_converge():
    # k = floor(log n) with q = 0.5: n * q**k grows, so the bound heads to 0
    f = GrowthFunction.logarithmic()
    assert convergence_threshold(f, 0.5, 1e-6, [10**e for e in range(1, 9)]) is None
    assert p_all_lower_bound(10**8, growth_eval(f, 10**8), 0.5) < 1e-6
