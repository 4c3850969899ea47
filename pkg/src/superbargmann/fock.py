"""Fock space of entire functions: kernels, coherent states, Weyl operators.

Inner product <f, g> = (1/pi) int_C f(z) conj(g(z)) exp(-|z|^2) dA(z), estimated
with the tensor Gauss-Hermite rule. Reproducing kernel K(z, w) = exp(z conj(w)),
coherent state k_w(z) = exp(z conj(w) - |w|^2 / 2), Weyl operator
W_a f(z) = f(z - a) k_a(z).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ParameterError
from .quadrature import QuadRule2D, integrate_fock
from .superosc import SuperoscParams, check_cancellation, compensated_sum, require_superoscillating, supershift_sum

SQRT2 = math.sqrt(2.0)
MAX_BASIS_INDEX = 60


def _out(arr):
    return arr if arr.ndim else complex(arr)


@dataclass(frozen=True)
class EntireFn:
    """A labelled entire function of one complex variable, vectorized over arrays.

    ``mp`` optionally evaluates the function in extended precision as
    mp(ctx, z) with an mpmath context; C_j-weighted sums use it when present.
    """

    func: Callable[[np.ndarray], np.ndarray]
    label: str = "f"
    mp: Callable | None = None

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return _out(np.asarray(self.func(z), dtype=complex) * np.ones(z.shape))

    def __repr__(self):
        return f"EntireFn({self.label})"


def as_entire(f, label=None) -> EntireFn:
    if isinstance(f, EntireFn):
        return f
    return EntireFn(f, label or getattr(f, "__name__", "f"))


def kernel(z, w):
    """K(z, w) = exp(z conj(w))."""
    z = np.asarray(z, dtype=complex)
    return _out(np.exp(z * np.conj(w)))


@dataclass(frozen=True)
class CoherentState:
    """Normalized reproducing kernel k_w centred at ``center``."""

    center: complex

    def __call__(self, z):
        w = complex(self.center)
        z = np.asarray(z, dtype=complex)
        return _out(np.exp(z * w.conjugate() - 0.5 * abs(w) ** 2))

    @property
    def label(self):
        return f"k_{{{self.center}}}"

    def mp(self, ctx, z):
        w = ctx.mpc(complex(self.center))
        return ctx.exp(z * ctx.conj(w) - abs(w) ** 2 / 2)


def normalized_kernel(w) -> CoherentState:
    return CoherentState(complex(w))


def basis_e(k) -> EntireFn:
    """Orthonormal monomial e_k(z) = z^k / sqrt(k!)."""
    if int(k) != k or not 0 <= k <= MAX_BASIS_INDEX:
        raise ParameterError(f"basis index k={k!r} must be an integer in [0, {MAX_BASIS_INDEX}]")
    k = int(k)
    scale = math.exp(-0.5 * math.lgamma(k + 1))
    return EntireFn(lambda z: scale * z**k, f"e_{k}", lambda ctx, z: z**k / ctx.sqrt(ctx.factorial(k)))


def inner_product(f, g, rule: QuadRule2D | None = None, *, check=False):
    """<f, g> = int f conj(g) dmu by 2D Gauss-Hermite quadrature."""
    return integrate_fock(lambda z: np.asarray(f(z)) * np.conj(np.asarray(g(z))), rule, check=check)


def norm(f, rule: QuadRule2D | None = None, *, check=False):
    return math.sqrt(max(inner_product(f, f, rule, check=check).real, 0.0))


def weyl_apply(a, f) -> EntireFn:
    """W_a f(z) = f(z - a) exp(z conj(a) - |a|^2 / 2)."""
    a = complex(a)
    ka = CoherentState(a)
    label = getattr(f, "label", "f")
    return EntireFn(lambda z: np.asarray(f(z - a)) * ka(z), f"W_{{{a}}}[{label}]")


def weyl_phase(a, b):
    """exp(-i Im(a conj(b))), the cocycle in W_a W_b = phase * W_{a+b}."""
    return cmath.exp(-1j * (complex(a) * complex(b).conjugate()).imag)


def weyl_compose_check(a, b, f, z):
    """Return ((W_a W_b f)(z), exp(-i Im(a conj(b))) (W_{a+b} f)(z))."""
    lhs = weyl_apply(a, weyl_apply(b, f))(z)
    rhs = weyl_phase(a, b) * weyl_apply(complex(a) + complex(b), f)(z)
    return lhs, rhs


def weyl_shifts(n):
    """b_j = -(i / sqrt 2)(1 - 2j/n): the Weyl parameters paired with C_j(n, a)."""
    return -1j / SQRT2 * (1.0 - 2.0 * np.arange(n + 1) / n)


def weyl_superposition(f, p: SuperoscParams, z, *, shift_factor=None, allow_unstable=False):
    """sum_j C_j(n, a) (W_{c h_j} f)(z) with c = ``shift_factor``, default -i/sqrt 2 (so c h_j = b_j).

    Uses f.mp in extended precision when available; otherwise the double
    terms are summed with math.fsum and carry an error of about eps * a^n.
    """
    c = -1j / SQRT2 if shift_factor is None else complex(shift_factor)
    mp_eval = getattr(f, "mp", None)
    if mp_eval is not None:

        def term(ctx, lam, w):
            b = ctx.mpc(c) * lam
            return mp_eval(ctx, w - b) * ctx.exp(w * ctx.conj(b) - abs(b) ** 2 / 2)

        return supershift_sum(p, term, z, allow_unstable=allow_unstable)
    p.check(allow_unstable)
    z = np.asarray(z, dtype=complex)
    terms = np.stack([cj * weyl_apply(c * h, f)(z) for cj, h in zip(p.coefficients, p.frequencies)])
    out = np.empty(z.shape, dtype=complex)
    for idx in np.ndindex(z.shape):
        out[idx] = compensated_sum(terms[(slice(None),) + idx])
    return _out(out)


def weyl_limit_shift(a):
    """b = -i a / sqrt 2, the limit of the Weyl parameters b_j under the supershift."""
    return -1j * require_superoscillating(a) / SQRT2


def weyl_supershift_limit(f, a, z, n_list, *, allow_unstable=False):
    """Rows (n, |sum_j C_j W_{b_j} f(z) - W_b f(z)|) with b = -i a / sqrt 2."""
    a = require_superoscillating(a)
    target = complex(weyl_apply(weyl_limit_shift(a), f)(z))
    rows = []
    for n in n_list:
        check_cancellation(n, a, allow_unstable)
        value = complex(weyl_superposition(f, SuperoscParams(n, a), z, allow_unstable=allow_unstable))
        rows.append((n, abs(value - target)))
    return rows


def fock_representation(g, a) -> EntireFn:
    """The f with g = lim_n sum_j C_j W_{b_j} f, namely f = W_{i a / sqrt 2} g."""
    a = require_superoscillating(a)
    return weyl_apply(-weyl_limit_shift(a), g)

