"""Gauss-Hermite quadrature on the real line and on the complex plane.

Every numerical oracle in the package reduces to one of two sums:

    sum_i w_i f(x_i)            ~  int_R exp(-x^2) f(x) dx
    sum_pq w_p w_q / pi f(z_pq) ~  (1/pi) int_C exp(-|z|^2) f(z) dA(z)

The nodes come from ``scipy.special.roots_hermite``; the weights are
recomputed from the Christoffel function of the normalized Hermite functions,
which also yields the "folded" weights w_i exp(x_i^2) without overflow. Folded
weights are what the transforms use when the Gaussian factor of an integrand
is handled analytically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import roots_hermite

from .errors import EvaluationError, ParameterError, QuadratureNonConvergence
from .hermite import hermite_functions

MAX_ORDER = 512
DEFAULT_ORDER = 96
# outer order for nested transforms: the inner rule cannot resolve the
# oscillation at the outermost nodes of a high-order outer rule
NESTED_ORDER = 40
REFINE_RTOL = 1e-9
REFINE_ATOL = 1e-13

SQRT_PI = math.sqrt(math.pi)


def _readonly(arr):
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class QuadRule1D:
    """Gauss-Hermite rule of order m for the weight exp(-x^2).

    ``folded_weights`` holds w_i * exp(x_i^2); it stays finite even where the
    plain weights underflow.
    """

    nodes: np.ndarray
    weights: np.ndarray
    folded_weights: np.ndarray
    order: int

    def __repr__(self):
        return f"QuadRule1D(order={self.order})"

    def integrate(self, values):
        """Weighted sum of samples already evaluated at ``nodes``."""
        return np.tensordot(self.weights, values, axes=(0, 0))


@dataclass(frozen=True, eq=False)
class QuadRule2D:
    """Tensor-product rule for the normalized Gaussian measure on C.

    Node z_pq = x_p + i x_q carries weight w_p w_q / pi, so constants
    integrate to one.
    """

    nodes: np.ndarray
    weights: np.ndarray
    order: int
    base: QuadRule1D = field(repr=False)

    def __repr__(self):
        return f"QuadRule2D(order={self.order})"


def _check_order(m):
    if int(m) != m or not 1 <= m <= MAX_ORDER:
        raise ParameterError(f"quadrature order m={m!r} must be an integer in [1, {MAX_ORDER}]")
    return int(m)


@lru_cache(maxsize=None)
def gauss_hermite_rule(m: int = DEFAULT_ORDER) -> QuadRule1D:
    """Nodes and weights of the order-m Gauss-Hermite rule."""
    m = _check_order(m)
    x, _ = roots_hermite(m)
    x = np.sort(x)
    # exact mirror symmetry; the middle node of an odd rule is exactly 0
    x = 0.5 * (x - x[::-1])
    christoffel = np.sum(hermite_functions(m - 1, x) ** 2, axis=0)
    folded = 1.0 / christoffel
    weights = folded * np.exp(-x * x)
    return QuadRule1D(_readonly(x), _readonly(weights), _readonly(folded), m)


@lru_cache(maxsize=None)
def fock_rule(m: int = DEFAULT_ORDER) -> QuadRule2D:
    """Tensor Gauss-Hermite rule for (1/pi) exp(-|z|^2) dA(z) with m^2 nodes."""
    base = gauss_hermite_rule(m)
    x = base.nodes
    nodes = (x[:, None] + 1j * x[None, :]).ravel()
    weights = (np.outer(base.weights, base.weights) / math.pi).ravel()
    return QuadRule2D(_readonly(nodes), _readonly(weights), base.order, base)


def gaussian_integral_closed(alpha, w):
    """int_R exp(-alpha t^2 + w t) dt = sqrt(pi/alpha) exp(w^2 / (4 alpha))."""
    if not alpha > 0:
        raise ParameterError(f"alpha must be positive, got {alpha!r}")
    return complex(math.sqrt(math.pi / alpha) * np.exp(complex(w) ** 2 / (4.0 * alpha)))


def _finite_or_raise(values, nodes):
    values = np.asarray(values)
    bad = ~np.isfinite(values)
    if np.any(bad):
        idx = np.unravel_index(np.argmax(bad), bad.shape)
        raise EvaluationError("integrand is not finite", node=nodes.flat[idx[0]] if nodes.ndim else nodes)
    return values


def refine_check(coarse, fine, order, rtol=REFINE_RTOL, atol=REFINE_ATOL):
    """Raise QuadratureNonConvergence when two rule orders disagree."""
    coarse_a = np.asarray(coarse)
    fine_a = np.asarray(fine)
    scale = np.maximum(np.abs(coarse_a), np.abs(fine_a))
    if np.any(np.abs(coarse_a - fine_a) > rtol * scale + atol):
        raise QuadratureNonConvergence(coarse, fine, order, rtol)
    return fine


def integrate_gaussian_weighted(f, rule: QuadRule1D | None = None, *, check=False):
    """Approximate int_R exp(-x^2) f(x) dx by sum_i w_i f(x_i).

    ``f`` must accept an array of nodes. With ``check=True`` the result is
    recomputed at twice the order and a QuadratureNonConvergence is raised if
    the two disagree.
    """
    rule = rule or gauss_hermite_rule()
    values = _finite_or_raise(f(rule.nodes), rule.nodes)
    result = complex(np.sum(rule.weights * values))
    if check:
        fine = integrate_gaussian_weighted(f, gauss_hermite_rule(2 * rule.order))
        return complex(refine_check(result, fine, rule.order))
    return result


def integrate_fock(f, rule: QuadRule2D | None = None, *, check=False):
    """Approximate (1/pi) int_C f(z) exp(-|z|^2) dA(z)."""
    rule = rule or fock_rule()
    values = _finite_or_raise(f(rule.nodes), rule.nodes)
    result = complex(np.sum(rule.weights * values))
    if check:
        fine = integrate_fock(f, fock_rule(2 * rule.order))
        return complex(refine_check(result, fine, rule.order))
    return result
