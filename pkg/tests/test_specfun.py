"""Unit tests for the special-function primitives."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ringosc.errors import DomainError
from ringosc.specfun import (
    BERNOULLI_K_MAX,
    Hyp1F1Terminating,
    JacobiParams,
    bernoulli,
    gamma_ratio_prefactor,
    hyp1f1_terminating,
    jacobi_poly,
)


# ---------------------------------------------------------------- oracles


def jacobi_series_oracle(n, a, b, x):
    # explicit hypergeometric series definition, independent of the recurrence
    total = 0.0
    for k in range(n + 1):
        total += (
            math.gamma(a + n + 1)
            / (math.factorial(n) * math.gamma(a + b + n + 1))
            * math.comb(n, k)
            * math.gamma(a + b + n + k + 1)
            / math.gamma(a + k + 1)
            * ((x - 1.0) / 2.0) ** k
        )
    return total


def hyp1f1_binomial_oracle(n, b, y):
    # (-n)_k / k! = (-1)^k C(n, k); Pochhammer built afresh per term.
    # Returns the sum and the term-magnitude scale (what cancellation
    # noise is proportional to in either summation route).
    total = 0.0
    scale = 0.0
    for k in range(n + 1):
        poch = 1.0
        for j in range(k):
            poch *= b + j
        term = (-1.0) ** k * math.comb(n, k) * y ** k / poch
        total += term
        scale += abs(term)
    return total, scale


def laguerre_recurrence_oracle(n, alpha, y):
    prev, cur = 1.0, 1.0 + alpha - y
    if n == 0:
        return prev
    for k in range(1, n):
        cur, prev = ((2 * k + 1 + alpha - y) * cur - (k + alpha) * prev) / (k + 1), cur
    return cur


# ----------------------------------------------------------------- jacobi


def test_jacobi_degree_zero_is_one():
    assert jacobi_poly(JacobiParams(0, 1.5, 1.5), 0.3) == 1.0


@pytest.mark.parametrize("a", [0.0, 0.7, 1.5, 3.2])
@pytest.mark.parametrize("x", [-0.8, -0.1, 0.4, 1.0])
def test_jacobi_degree_one_symmetric(a, x):
    assert jacobi_poly(JacobiParams(1, a, a), x) == pytest.approx((a + 1.0) * x, rel=1e-14, abs=1e-14)


def test_jacobi_degree_three_vs_series_oracle():
    value = jacobi_poly(JacobiParams(3, 2.0, 2.0), 0.5)
    oracle = jacobi_series_oracle(3, 2.0, 2.0, 0.5)
    assert value == pytest.approx(oracle, rel=1e-13)
    assert value == pytest.approx(-0.625, rel=1e-13)  # frozen from the oracle


@pytest.mark.parametrize("n", [2, 4, 5])
@pytest.mark.parametrize("a,b", [(0.5, 1.5), (2.0, 0.0), (1.25, 3.5)])
@pytest.mark.parametrize("x", [-0.9, 0.2, 0.77])
def test_jacobi_asymmetric_vs_series_oracle(n, a, b, x):
    assert jacobi_poly(JacobiParams(n, a, b), x) == pytest.approx(
        jacobi_series_oracle(n, a, b, x), rel=1e-12, abs=1e-12
    )


@given(
    s=st.integers(min_value=0, max_value=10),
    a=st.floats(min_value=-0.9, max_value=5.0),
    x=st.floats(min_value=-1.0, max_value=1.0),
)
@settings(max_examples=200, deadline=None)
def test_jacobi_symmetric_parity(s, a, x):
    plus = jacobi_poly(JacobiParams(s, a, a), x)
    minus = jacobi_poly(JacobiParams(s, a, a), -x)
    scale = max(1.0, abs(plus))
    assert abs(minus - (-1.0) ** s * plus) <= 1e-12 * scale


@pytest.mark.parametrize(
    "degree,alpha,beta",
    [(-1, 1.0, 1.0), (2, -1.0, 0.5), (2, 0.5, -1.5), (2, math.inf, 0.0)],
)
def test_jacobi_bad_params(degree, alpha, beta):
    with pytest.raises(DomainError):
        JacobiParams(degree, alpha, beta)


def test_jacobi_argument_out_of_range():
    with pytest.raises(DomainError):
        jacobi_poly(JacobiParams(2, 1.0, 1.0), 1.5)


# -------------------------------------------------------------------- 1f1


def test_hyp1f1_n_zero_is_one():
    assert hyp1f1_terminating(Hyp1F1Terminating(0, 1.5, 2.7)) == 1.0


def test_hyp1f1_two_terms():
    # 1 - y/b with y = 1, b = 2
    assert hyp1f1_terminating(Hyp1F1Terminating(1, 2.0, 1.0)) == pytest.approx(0.5, rel=1e-15)


def test_hyp1f1_vs_laguerre_identity():
    # 1F1(-n; b; y) = L_n^(b-1)(y) / C(n + b - 1, n), scale = (b)_n / n!
    n, b, y = 3, 2.5, 0.8
    scale = (b * (b + 1) * (b + 2)) / math.factorial(n)
    oracle = laguerre_recurrence_oracle(n, b - 1.0, y) / scale
    value = hyp1f1_terminating(Hyp1F1Terminating(n, b, y))
    assert value == pytest.approx(oracle, rel=1e-13)
    assert value == pytest.approx(0.24642539682539685, rel=1e-13)  # frozen from the oracle


@given(
    n=st.integers(min_value=0, max_value=20),
    b=st.floats(min_value=0.5, max_value=10.0),
    y=st.floats(min_value=0.0, max_value=30.0),
)
@settings(max_examples=200, deadline=None)
def test_hyp1f1_vs_brute_force(n, b, y):
    # 1e-13 relative to the term-magnitude scale: for strongly alternating
    # arguments the cancellation noise of *any* double-precision summation
    # is proportional to that scale, not to the (tiny) sum
    value = hyp1f1_terminating(Hyp1F1Terminating(n, b, y))
    oracle, scale = hyp1f1_binomial_oracle(n, b, y)
    assert abs(value - oracle) <= 1e-13 * max(1.0, scale)


@pytest.mark.parametrize("n", [1, 2, 5, 10, 20])
@pytest.mark.parametrize("b,y", [(1.5, 0.05), (4.0, 0.15), (9.5, 0.45)])
def test_hyp1f1_vs_brute_force_strict_mild_cancellation(n, b, y):
    # with y <= b/(n+1) the alternating terms decrease, cancellation is
    # bounded, and a plain relative comparison is meaningful
    assert y <= b / (n + 1)
    value = hyp1f1_terminating(Hyp1F1Terminating(n, b, y))
    oracle, _ = hyp1f1_binomial_oracle(n, b, y)
    assert value == pytest.approx(oracle, rel=1e-13, abs=1e-14)


@pytest.mark.parametrize("n,b,y", [(-1, 1.5, 0.1), (2, 0.0, 0.1), (2, -3.0, 0.1), (2, 1.5, -0.1)])
def test_hyp1f1_bad_params(n, b, y):
    with pytest.raises(DomainError):
        Hyp1F1Terminating(n, b, y)


# ----------------------------------------------------------- gamma ratio


def test_gamma_ratio_examples():
    assert gamma_ratio_prefactor(0, 2.0) == 1.0
    assert gamma_ratio_prefactor(1, 0.0) == pytest.approx(1.5, rel=1e-15)
    assert gamma_ratio_prefactor(2, 1.0) == pytest.approx(4.375, rel=1e-15)


def test_gamma_ratio_matches_lgamma():
    for n, ell in [(5, 0.0), (17, 2.5), (1000, 2.0)]:
        expected = math.exp(
            math.lgamma(n + 1.5 + ell) - math.lgamma(1.5 + ell) - math.lgamma(n + 1.0)
        )
        value = gamma_ratio_prefactor(n, ell)
        assert math.isfinite(value)
        assert value == pytest.approx(expected, rel=1e-11)


@pytest.mark.parametrize("ell", [0.0, 0.5, 1.0, 2.7])
def test_gamma_ratio_times_factorial_increasing(ell):
    # prefactor * n! telescopes Gamma(n + 3/2 + ell)/Gamma(3/2 + ell),
    # increasing in n whenever ell > -1/2
    values = [gamma_ratio_prefactor(n, ell) * math.factorial(n) for n in range(12)]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_gamma_ratio_domain():
    with pytest.raises(DomainError):
        gamma_ratio_prefactor(2, -1.5)
    with pytest.raises(DomainError):
        gamma_ratio_prefactor(-1, 0.0)


# -------------------------------------------------------------- bernoulli


def bernoulli_recurrence_oracle(limit):
    # sum_{j=0}^{m} C(m+1, j) B_j = 0 with B_0 = 1, exact rationals
    table = [Fraction(1)]
    for m in range(1, limit + 1):
        acc = sum(Fraction(math.comb(m + 1, j)) * table[j] for j in range(m))
        table.append(-acc / (m + 1))
    return table


def test_bernoulli_table_values():
    assert bernoulli(1) == Fraction(1, 6)
    assert bernoulli(2) == Fraction(-1, 30)
    assert bernoulli(3) == Fraction(1, 42)


def test_bernoulli_vs_recurrence():
    table = bernoulli_recurrence_oracle(2 * BERNOULLI_K_MAX)
    for k in range(1, BERNOULLI_K_MAX + 1):
        assert bernoulli(k) == table[2 * k]


@pytest.mark.parametrize("k", [0, BERNOULLI_K_MAX + 1, -3])
def test_bernoulli_out_of_range(k):
    with pytest.raises(DomainError):
        bernoulli(k)
