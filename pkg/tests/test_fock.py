import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superbargmann.bargmann import hkn_closed
from superbargmann.errors import ParameterError
from superbargmann.fock import (
    CoherentState,
    EntireFn,
    basis_e,
    fock_representation,
    inner_product,
    kernel,
    norm,
    weyl_apply,
    weyl_compose_check,
    weyl_limit_shift,
    weyl_phase,
    weyl_shifts,
    weyl_superposition,
    weyl_supershift_limit,
)
from superbargmann.quadrature import fock_rule
from superbargmann.superosc import SuperoscParams

Z = np.array([0, 0.5 + 0.5j, -1.2 + 0.8j, 1.5 - 1j, -0.3 - 1.9j])
small = st.floats(min_value=-1.5, max_value=1.5)


def test_kernel_values():
    assert kernel(1 + 1j, 1j) == cmath.exp((1 + 1j) * -1j)
    np.testing.assert_allclose(kernel(Z, 0.0), np.ones(5))


def test_reproducing_property():
    f = EntireFn(lambda z: z**3 - 2 * z + 1j, "poly")
    for w in (0.3 - 0.2j, 1.1 + 0.4j):
        kw = EntireFn(lambda z, w=w: kernel(z, w))
        np.testing.assert_allclose(inner_product(f, kw), f(w), atol=1e-12)


def test_basis_orthonormal():
    rule = fock_rule(64)
    gram = np.array([[inner_product(basis_e(j), basis_e(k), rule) for k in range(8)] for j in range(8)])
    np.testing.assert_allclose(gram, np.eye(8), atol=1e-12)


def test_basis_bounds():
    with pytest.raises(ParameterError):
        basis_e(61)
    assert basis_e(0)(2.5 + 1j) == 1


def test_coherent_state_unit_norm():
    for w in (0, 0.5, 1 - 1j):
        np.testing.assert_allclose(norm(CoherentState(w)), 1.0, atol=1e-12)


def test_weyl_closed_values():
    # W_a 1 = k_a, W_a k_0 likewise
    one = EntireFn(lambda z: np.ones_like(z), "1")
    np.testing.assert_allclose(weyl_apply(0.4 - 0.2j, one)(Z), CoherentState(0.4 - 0.2j)(Z))
    np.testing.assert_allclose(weyl_apply(0, basis_e(2))(Z), basis_e(2)(Z))


@settings(max_examples=60, deadline=None)
@given(small, small, small, small)
def test_weyl_composition_law(ar, ai, br, bi):
    a, b = complex(ar, ai), complex(br, bi)
    lhs, rhs = weyl_compose_check(a, b, basis_e(3), Z)
    np.testing.assert_allclose(lhs, rhs, atol=1e-12, rtol=1e-12)


def test_weyl_phase():
    assert weyl_phase(1, 1j) == cmath.exp(1j)
    assert weyl_phase(0.5, 0.5) == 1


@pytest.mark.parametrize("a", [0.5, -0.3 + 0.7j, 1j])
@pytest.mark.parametrize("f", [basis_e(1), basis_e(4), CoherentState(0.3)])
def test_weyl_unitary(a, f):
    np.testing.assert_allclose(norm(weyl_apply(a, f)), norm(f), atol=1e-9)


def test_weyl_shifts():
    np.testing.assert_allclose(weyl_shifts(2), [-1j / math.sqrt(2), 0, 1j / math.sqrt(2)])
    assert weyl_limit_shift(2.0) == -1j * 2 / math.sqrt(2)


@pytest.mark.parametrize("k", [0, 1, 3])
def test_weyl_superposition_of_basis(k):
    p = SuperoscParams(8, 2.0)
    np.testing.assert_allclose(weyl_superposition(basis_e(k), p, Z), hkn_closed(Z, k, 8, 2.0), atol=1e-12)


def test_weyl_supershift_limit_decreases():
    rows = weyl_supershift_limit(EntireFn(lambda z: np.ones_like(z)), 2.0, 0.5, [4, 8, 16])
    gaps = [g for _, g in rows]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))


def test_fock_representation_inverts_limit():
    g = basis_e(2)
    a = 2.0
    f = fock_representation(g, a)
    np.testing.assert_allclose(weyl_apply(weyl_limit_shift(a), f)(Z), g(Z), atol=1e-12)


@pytest.mark.parametrize("k", [0, 2])
def test_weyl_superposition_mp_and_double_agree(k):
    p = SuperoscParams(6, 1.5)
    e = basis_e(k)
    plain = EntireFn(e.func, e.label)
    np.testing.assert_allclose(weyl_superposition(e, p, Z), weyl_superposition(plain, p, Z), atol=1e-11)


def test_weyl_superposition_shift_factor():
    p = SuperoscParams(4, 2.0)
    f = CoherentState(0.3 - 0.2j)
    c = 0.4 + 0.1j
    want = sum(cj * weyl_apply(c * h, f)(Z) for cj, h in zip(p.coefficients, p.frequencies))
    np.testing.assert_allclose(weyl_superposition(f, p, Z, shift_factor=c), want, atol=1e-12)
