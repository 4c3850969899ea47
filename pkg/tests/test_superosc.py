import math
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from superbargmann.errors import EvaluationError, ParameterError, PrecisionExhaustedError
from superbargmann.superosc import (
    CANCELLATION_GUARD,
    SuperoscParams,
    SupershiftSpec,
    amplification,
    check_cancellation,
    coefficients,
    compensated_sum,
    exponential_sum,
    fn_limit,
    fn_product,
    fn_sum,
    frequencies,
    ftilde_limit,
    ftilde_n,
    generating_function,
    generating_function_bound,
    require_superoscillating,
    supershift_apply,
    supershift_gaps,
)

Z_GRID = np.array([0, 1.3, -2 + 0.5j, 2 + 2j, -0.7 - 1.5j])


def exact_coefficients(n, a):
    a = Fraction(a)
    return [math.comb(n, j) * ((1 + a) / 2) ** (n - j) * ((1 - a) / 2) ** j for j in range(n + 1)]


def test_coefficients_hand_value():
    np.testing.assert_array_equal(coefficients(2, 2), [2.25, -1.5, 0.25])


@pytest.mark.parametrize("n", [1, 3, 8, 15])
@pytest.mark.parametrize("a", [1.5, 2, 4])
def test_coefficients_exact_rational(n, a):
    np.testing.assert_allclose(coefficients(n, a), [float(c) for c in exact_coefficients(n, a)], rtol=1e-15)


def test_frequencies():
    np.testing.assert_array_equal(frequencies(4), [1.0, 0.5, 0.0, -0.5, -1.0])


@pytest.mark.parametrize("n", range(1, 21))
@pytest.mark.parametrize("a", [1.5, 2.0, 4.0])
def test_moments(n, a):
    p = SuperoscParams(n, a)
    assert abs(p.moment(0) - 1) <= 1e-12
    assert abs(p.moment(1) - a) <= 1e-10
    np.testing.assert_allclose(p.abs_sum(), a**n, rtol=1e-14)


def test_amplification_formula():
    assert amplification(10, 2.0) == 2.0**10
    # |1 + a| + |1 - a| over 2 for complex a
    np.testing.assert_allclose(amplification(3, 0.5j), ((abs(1 + 0.5j) + abs(1 - 0.5j)) / 2) ** 3)
    assert amplification(5, 0.5) == 1.0


def test_guard():
    assert check_cancellation(30, 2) == 2.0**30
    with pytest.raises(PrecisionExhaustedError, match="precision exhausted"):
        check_cancellation(60, 2)
    with pytest.raises(PrecisionExhaustedError):
        fn_sum(0.5, SuperoscParams(20, 4))
    assert isinstance(PrecisionExhaustedError(1, 2, 3, 4), ValueError)
    assert CANCELLATION_GUARD == 1e12


def test_allow_unstable_stays_accurate():
    p = SuperoscParams(20, 4)
    got = fn_sum(Z_GRID, p, allow_unstable=True)
    np.testing.assert_allclose(got, fn_product(Z_GRID, 20, 4), rtol=1e-12)


def test_fn_sum_sympy_oracle():
    n, a, z = 6, sympy.Rational(5, 2), sympy.Rational(7, 10) + sympy.I / 3
    exact = sum(
        sympy.binomial(n, j) * ((1 + a) / 2) ** (n - j) * ((1 - a) / 2) ** j * sympy.exp(sympy.I * (1 - sympy.Rational(2 * j, n)) * z)
        for j in range(n + 1)
    )
    value = complex(sympy.N(exact, 30))
    np.testing.assert_allclose(fn_sum(complex(0.7, 1 / 3), SuperoscParams(6, 2.5)), value, rtol=1e-14)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=1, max_value=15),
    st.floats(min_value=1.01, max_value=4.0),
    st.floats(min_value=-3, max_value=3),
    st.floats(min_value=-2, max_value=2),
)
def test_sum_equals_product(n, a, re, im):
    z = complex(re, im)
    np.testing.assert_allclose(fn_sum(z, SuperoscParams(n, a)), fn_product(z, n, a), rtol=1e-12, atol=1e-300)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=12), st.floats(min_value=-0.9, max_value=0.9))
def test_sum_equals_product_complex_a(n, im):
    # complex a exercises the non-real coefficient path
    a = complex(1.5, im)
    z = 0.8 - 0.3j
    np.testing.assert_allclose(fn_sum(z, SuperoscParams(n, a)), fn_product(z, n, a), rtol=1e-12)


def test_exponential_sum_weighted():
    p = SuperoscParams(5, 2.0)
    got = exponential_sum(p, -1j, 0.4, lambda ctx, h: h * h)
    ref = sum(c * h * h * np.exp(-1j * h * 0.4) for c, h in zip(p.coefficients, p.frequencies))
    np.testing.assert_allclose(got, ref, rtol=1e-12)


def test_limit_and_gaussian_factor():
    x = np.linspace(-1, 1, 5)
    assert np.max(np.abs(fn_product(x, 4000, 2) - fn_limit(x, 2))) < 2e-3
    np.testing.assert_allclose(ftilde_n(x, SuperoscParams(3, 2)), np.exp(-x * x / 2) * fn_product(x, 3, 2))
    np.testing.assert_allclose(ftilde_limit(x, 2), np.exp(-x * x / 2 + 2j * x))
    assert fn_product(0.0, 7, 3.0) == 1


def test_require_superoscillating():
    assert require_superoscillating(2) == 2.0
    for bad in (1.0, 0.5, -2, 1 + 1j):
        with pytest.raises(ParameterError):
            require_superoscillating(bad)


@pytest.mark.parametrize("n", [0, -1, 2.5, True])
def test_bad_n(n):
    with pytest.raises(ParameterError):
        SuperoscParams(n, 2.0)


def test_supershift_of_exponential_recovers_fn():
    x = 0.7
    spec = SupershiftSpec(9, 2.0)
    value = supershift_apply(spec, lambda lam: np.exp(1j * lam * x))
    np.testing.assert_allclose(value, fn_product(x, 9, 2.0), rtol=1e-13)


def test_supershift_spec_custom_rules():
    spec = SupershiftSpec(2, 2.0, coefficient_rule=lambda n, a: np.array([0.5, 0.5]), frequency_rule=lambda n: np.array([1.0, -1.0]))
    assert supershift_apply(spec, lambda lam: lam**2) == 1.0
    bad = SupershiftSpec(1, 2.0, frequency_rule=lambda n: np.array([2.0, 0.0]))
    with pytest.raises(ParameterError):
        bad.frequencies()


def test_supershift_nonfinite():
    with pytest.raises(EvaluationError):
        supershift_apply(SupershiftSpec(2, 2.0), lambda lam: math.inf if lam == 0 else lam)


def test_supershift_gaps_decrease():
    gaps = [g for _, g in supershift_gaps(lambda lam: np.exp(-lam * lam), 2.0, [4, 8, 16, 32])]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))


def test_compensated_sum():
    values = np.array([1e16, 1.0, -1e16, 1j])
    assert compensated_sum(values) == complex(1.0, 1.0)


def test_generating_function_bound():
    x = np.linspace(-2, 2, 9)
    for z in (0.3, 1 + 1j, -0.8j):
        values = generating_function(z, x, 2.0, 40)
        assert np.all(np.abs(values) <= generating_function_bound(z, x, 2.0))
