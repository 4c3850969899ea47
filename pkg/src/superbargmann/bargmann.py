"""The Segal-Bargmann transform pair and closed-form images of superoscillating wave functions.

Forward transform, L2(R) -> Fock space:

    B(phi)(z) = pi^(-1/4) int_R exp(-(z^2 + x^2)/2 + sqrt(2) z x) phi(x) dx

Inverse, normalized so that inverse(forward(phi)) = phi:

    B^-1(f)(x) = pi^(-1/4) (1/pi) int_C exp(-(conj(z)^2 + x^2)/2 + sqrt(2) conj(z) x) f(z) exp(-|z|^2) dA(z)

Both are evaluated by Gauss-Hermite quadrature with the Gaussian part of the
kernel folded into the rule; the closed forms below are evaluated in extended
precision through ``superosc.supershift_sum``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import EvaluationError, ParameterError
from .fock import SQRT2, EntireFn, weyl_apply, weyl_superposition
from .hermite import MAX_INDEX
from .quadrature import (
    NESTED_ORDER,
    QuadRule1D,
    QuadRule2D,
    fock_rule,
    gauss_hermite_rule,
    refine_check,
)
from .superosc import SuperoscParams, exponential_sum, fn_product, require_superoscillating, supershift_sum

PI_14 = math.pi**0.25
PI_M14 = math.pi**-0.25


def _out(arr):
    arr = np.asarray(arr)
    return arr if arr.ndim else complex(arr)


@dataclass(frozen=True)
class RealFn:
    """A labelled complex-valued function of one real variable, vectorized over arrays.

    ``mp`` optionally evaluates it in extended precision as mp(ctx, x).
    """

    func: Callable[[np.ndarray], np.ndarray]
    label: str = "phi"
    mp: Callable | None = None

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return _out(np.asarray(self.func(x), dtype=complex) * np.ones(x.shape))

    def __repr__(self):
        return f"RealFn({self.label})"


def _finite(values, nodes, what):
    values = np.asarray(values, dtype=complex)
    bad = ~np.isfinite(values)
    if np.any(bad):
        raise EvaluationError(f"{what} is not finite", node=np.asarray(nodes).flat[int(np.argmax(bad.ravel()))])
    return values


def bargmann_kernel(z, x):
    """A(z, x) = pi^(-1/4) exp(-(conj(z)^2 + x^2)/2 + sqrt(2) conj(z) x)."""
    zc = np.conj(np.asarray(z, dtype=complex))
    x = np.asarray(x, dtype=float)
    return _out(PI_M14 * np.exp(-0.5 * (zc * zc + x * x) + SQRT2 * zc * x))


# -- transforms --------------------------------------------------------------


def _forward(phi, z, rule: QuadRule1D):
    x = rule.nodes
    values = _finite(phi(x), x, "wave function")
    z = np.asarray(z, dtype=complex)
    zz = z[..., None]
    # the rule integrates against dx through the folded weights w_i exp(x_i^2)
    expo = -0.5 * x * x - 0.5 * zz * zz + SQRT2 * zz * x
    return PI_M14 * np.sum(rule.folded_weights * np.exp(expo) * values, axis=-1)


def forward(phi, z, rule: QuadRule1D | None = None, *, check=False):
    """Segal-Bargmann transform of ``phi`` at the point(s) ``z``.

    ``phi`` takes an array of real nodes. Accurate when phi decays at least
    like exp(-x^2/2) times a function of exponential type.
    """
    rule = rule or gauss_hermite_rule()
    result = _forward(phi, z, rule)
    if check:
        fine = _forward(phi, z, gauss_hermite_rule(2 * rule.order))
        result = refine_check(result, fine, rule.order)
    return _out(result)


_U_SCALE = math.sqrt(2.0 / 3.0)
_CHUNK = 8


def _inverse(f, x, rule: QuadRule2D):
    # exponent in z = u + iv: -(3/2)u^2 - v^2/2 + iuv + sqrt2 u x - i sqrt2 v x - x^2/2;
    # rescaling u = s sqrt(2/3), v = t sqrt(2) turns the Gaussian part into exp(-s^2 - t^2)
    base = rule.base
    u = base.nodes * _U_SCALE
    v = base.nodes * SQRT2
    U, V = np.meshgrid(u, v, indexing="ij")
    Z = U + 1j * V
    fz = _finite(f(Z), Z, "entire function")
    weights = np.outer(base.weights, base.weights) * (_U_SCALE * SQRT2 / math.pi) * PI_M14
    wf = weights * fz * np.exp(1j * U * V)
    x = np.asarray(x, dtype=float)
    flat = x.ravel()
    out = np.empty(flat.shape, dtype=complex)
    for start in range(0, flat.size, _CHUNK):
        xs = flat[start : start + _CHUNK, None, None]
        phase = np.exp(SQRT2 * U * xs - 1j * SQRT2 * V * xs - 0.5 * xs * xs)
        out[start : start + _CHUNK] = np.sum(wf * phase, axis=(1, 2))
    return out.reshape(x.shape)


def inverse(f, x, rule: QuadRule2D | None = None, *, check=False):
    """Inverse Segal-Bargmann transform of the entire function ``f`` at real point(s) ``x``."""
    rule = rule or fock_rule()
    result = _inverse(f, x, rule)
    if check:
        fine = _inverse(f, x, fock_rule(2 * rule.order))
        result = refine_check(result, fine, rule.order)
    return _out(result)


def round_trip(phi, x, rule: QuadRule1D | None = None, inverse_rule: QuadRule2D | None = None):
    """inverse(forward(phi))(x) with both transforms by quadrature.

    The inverse runs on a lower-order plane rule by default, since the forward
    quadrature loses accuracy at the outermost nodes of a high-order one.
    """
    inverse_rule = inverse_rule or fock_rule(NESTED_ORDER)
    bphi = EntireFn(lambda z: forward(phi, z, rule), "B[phi]")
    return inverse(bphi, x, inverse_rule)


# -- closed forms --------------------------------------------------------------


def _params(n, a):
    require_superoscillating(a)
    return SuperoscParams(n, a)


def coherent_superposition(n, a, *, allow_unstable=False) -> EntireFn:
    """sum_j C_j(n, a) k_{b_j}(z) with b_j = -(i/sqrt 2)(1 - 2j/n), in extended precision."""
    p = _params(n, a)
    p.check(allow_unstable)
    weight = lambda ctx, lam: ctx.exp(-lam * lam / 4)  # noqa: E731
    return EntireFn(
        lambda z: exponential_sum(p, 1j / SQRT2, z, weight, allow_unstable=allow_unstable),
        f"sum C_j k_b_j (n={n}, a={a})",
    )


def bso_closed(z, n, a, *, allow_unstable=False):
    """B(exp(-x^2/2) F_n(x, a))(z) = pi^(1/4) sum_j C_j exp(i z h_j / sqrt 2 - h_j^2 / 4)."""
    return _out(PI_14 * np.asarray(coherent_superposition(n, a, allow_unstable=allow_unstable)(z)))


def blim_closed(z, a):
    """B(exp(-x^2/2 + i a x))(z) = pi^(1/4) exp(i z a / sqrt 2 - a^2 / 4) = pi^(1/4) k_{-ia/sqrt2}(z)."""
    a = require_superoscillating(a)
    z = np.asarray(z, dtype=complex)
    return _out(PI_14 * np.exp(1j * z * a / SQRT2 - 0.25 * a * a))


def cauchy_derivative(f, z, order, radius=1.0, points=64):
    """order-th derivative of an entire function by the trapezoidal Cauchy integral on a circle."""
    if order < 0:
        raise ParameterError("derivative order must be nonnegative")
    z = np.asarray(z, dtype=complex)
    theta = 2.0 * np.pi * np.arange(points) / points
    circle = radius * np.exp(1j * theta)
    samples = np.asarray(f(z[..., None] + circle))
    coeff = np.mean(samples * np.exp(-1j * order * theta), axis=-1)
    return _out(math.factorial(order) * coeff / radius**order)


def derivative_relation_check(z, a, ell):
    """(d/dz)^ell of B(F~) against (i a / sqrt 2)^ell B(F~).

    The left side is a contour-integral derivative of the closed form, so it
    does not reuse the analytic eigenrelation it is checked against.
    """
    if int(ell) != ell or not 0 <= ell <= 4:
        raise ParameterError("ell must be an integer in [0, 4]")
    a = require_superoscillating(a)
    f = lambda w: blim_closed(w, a)  # noqa: E731
    lhs = f(z) if ell == 0 else cauchy_derivative(f, z, int(ell))
    rhs = (1j * a / SQRT2) ** ell * np.asarray(blim_closed(z, a))
    return lhs, _out(rhs)


def exp_shift(f) -> EntireFn:
    """exp(d/dz) acting on an entire function: the unit shift z -> f(z + 1)."""
    return EntireFn(lambda z: f(z + 1.0), f"exp(d/dz)[{getattr(f, 'label', 'f')}]")


def _check_k(k, name="k"):
    if int(k) != k or not 0 <= k <= MAX_INDEX:
        raise ParameterError(f"{name}={k!r} must be an integer in [0, {MAX_INDEX}]")
    return int(k)


def hkn_closed(z, k, n, a, *, allow_unstable=False):
    """B(h_k F_n)(z) = (1/sqrt k!) sum_j C_j (z + i h_j / sqrt 2)^k exp(i z h_j / sqrt 2 - h_j^2 / 4)."""
    k = _check_k(k)
    p = _params(n, a)
    scale = math.exp(-0.5 * math.lgamma(k + 1))

    def term(ctx, lam, w):
        shift = ctx.j * lam / ctx.sqrt(2)
        return (w + shift) ** k * ctx.exp(ctx.j * w * lam / ctx.sqrt(2) - lam * lam / 4)

    return _out(scale * np.asarray(supershift_sum(p, term, z, allow_unstable=allow_unstable)))


def hk_closed(z, k, a):
    """B(h_k exp(i a x))(z) = (1/sqrt k!) exp(i z a / sqrt 2 - a^2/4) (z + i a / sqrt 2)^k."""
    k = _check_k(k)
    a = require_superoscillating(a)
    z = np.asarray(z, dtype=complex)
    scale = math.exp(-0.5 * math.lgamma(k + 1))
    return _out(scale * np.exp(1j * z * a / SQRT2 - 0.25 * a * a) * (z + 1j * a / SQRT2) ** k)


def phi_ell(z, ell, a):
    """Appell function (1/ell!) (z + i a / sqrt 2)^ell exp(i z a / sqrt 2 - a^2 / 4)."""
    ell = _check_k(ell, "ell")
    a = require_superoscillating(a)
    z = np.asarray(z, dtype=complex)
    return _out(np.exp(1j * z * a / SQRT2 - 0.25 * a * a) * (z + 1j * a / SQRT2) ** ell / math.factorial(ell))


def appell_apply(ell, a, z, method="analytic"):
    """(d/dz - i a / sqrt 2) Phi_ell at z; equals Phi_{ell-1}.

    ``method="analytic"`` differentiates the polynomial-times-exponential form
    with the product rule; ``method="cauchy"`` uses a contour-integral derivative.
    """
    ell = _check_k(ell, "ell")
    if ell == 0:
        raise ParameterError("the ladder operator has no image below ell = 0")
    a = require_superoscillating(a)
    c = 1j * a / SQRT2
    z = np.asarray(z, dtype=complex)
    if method == "analytic":
        expo = np.exp(c * z - 0.25 * a * a)
        poly = z + c
        deriv = (ell * poly ** (ell - 1) * expo + c * poly**ell * expo) / math.factorial(ell)
    elif method == "cauchy":
        deriv = np.asarray(cauchy_derivative(lambda w: phi_ell(w, ell, a), z, 1))
    else:
        raise ParameterError(f"unknown derivative method {method!r}")
    return _out(deriv - c * np.asarray(phi_ell(z, ell, a)))


def modulated(psi, n, a) -> RealFn:
    """x -> psi(x) F_n(x, a)."""
    return RealFn(lambda x: np.asarray(psi(x)) * fn_product(x, n, a), f"{getattr(psi, 'label', 'psi')}*F_{n}")


def modulate_bargmann(psi, n, a, z, rule: QuadRule1D | None = None, *, transform=None, allow_unstable=False):
    """B(psi F_n)(z) as the Weyl superposition sum_j C_j (W_{b_j} B psi)(z).

    ``transform`` may supply B(psi) directly; otherwise it is computed by
    quadrature at the shifted points.
    """
    p = _params(n, a)
    bpsi = transform or EntireFn(lambda w: forward(psi, w, rule), "B[psi]")
    return weyl_superposition(bpsi, p, z, allow_unstable=allow_unstable)


def modulate_bargmann_limit(psi, a, z, rule: QuadRule1D | None = None, *, transform=None):
    """W_{-ia/sqrt2}(B psi)(z), the image of psi(x) exp(i a x)."""
    a = require_superoscillating(a)
    bpsi = transform or EntireFn(lambda w: forward(psi, w, rule), "B[psi]")
    return weyl_apply(-1j * a / SQRT2, bpsi)(z)


def entire_fn_kernel_decomp(z, n, a, *, allow_unstable=False):
    """sum_j C_j K_{w_j}(z) with w_j = -i(1 - 2j/n); equals F_n(z, a)."""
    # K_{w_j}(z) = exp(z conj(w_j)) = exp(i h_j z)
    return exponential_sum(_params(n, a), 1j, z, allow_unstable=allow_unstable)


def fock_norm_Fn(n, a, *, allow_unstable=False):
    """||F_n(., a)||_F from the kernel Gram matrix: sum_{j,l} C_j conj(C_l) exp(w_l conj(w_j))."""
    p = _params(n, a)
    p.check(allow_unstable)
    ctx, cs, lams = p.extended(squared=True)
    ws = [-ctx.j * lam for lam in lams]
    total = ctx.fsum(
        cj * ctx.conj(cl) * ctx.exp(wl * ctx.conj(wj)) for cj, wj in zip(cs, ws) for cl, wl in zip(cs, ws)
    )
    return math.sqrt(max(float(ctx.re(total)), 0.0))


def integral_rep_I(x, n, a, rule: QuadRule2D | None = None, *, check=False, allow_unstable=False):
    """F_n(x, a) rebuilt as pi^(1/4) exp(x^2/2) B^-1(sum_j C_j k_{b_j})(x)."""
    x = np.asarray(x, dtype=float)
    phi_n = coherent_superposition(n, a, allow_unstable=allow_unstable)
    return _out(PI_14 * np.exp(0.5 * x * x) * np.asarray(inverse(phi_n, x, rule, check=check)))


def sigma_n(x, n, a, *, allow_unstable=False):
    """B^-1(F_n) in two algebraically equal forms: (sum_j C_j A_{w_j}(x), explicit exponential form).

    The explicit form carries the pi^(-1/4) constant of the Bargmann kernel.
    """
    p = _params(n, a)

    def kernel_form(ctx, lam, w):
        x_ = ctx.re(w)
        wj_bar = ctx.conj(-ctx.j * lam)
        return ctx.exp(-(wj_bar * wj_bar + x_ * x_) / 2 + ctx.sqrt(2) * wj_bar * x_)

    x = np.asarray(x, dtype=float)
    first = PI_M14 * np.asarray(supershift_sum(p, kernel_form, x, allow_unstable=allow_unstable))
    weight = lambda ctx, lam: ctx.exp(lam * lam / 2)  # noqa: E731
    explicit = exponential_sum(p, 1j * SQRT2, x, weight, allow_unstable=allow_unstable)
    second = PI_M14 * np.exp(-0.5 * x * x) * np.asarray(explicit)
    return _out(first), _out(second)


def sigma_fn(n, a, *, allow_unstable=False) -> RealFn:
    """sigma_n as a RealFn (kernel-sum form)."""
    return RealFn(lambda x: sigma_n(x, n, a, allow_unstable=allow_unstable)[0], f"sigma_{n}")


def integral_rep_II(z, n, a, rule: QuadRule1D | None = None, *, check=False, allow_unstable=False):
    """B(sigma_n)(z) by quadrature; equals F_n(z, a)."""
    return forward(sigma_fn(n, a, allow_unstable=allow_unstable), z, rule, check=check)


# -- closed-form registry --------------------------------------------------------

CLOSED_FORM_KINDS = ("BSO_n", "BLIM", "HKN", "HK", "PHI_ELL")


@dataclass(frozen=True)
class BargmannClosedForm:
    """One of the closed-form Fock images, evaluable as an entire function."""

    kind: str
    a: float
    n: int | None = None
    k: int | None = None

    def __post_init__(self):
        if self.kind not in CLOSED_FORM_KINDS:
            raise ParameterError(f"kind must be one of {CLOSED_FORM_KINDS}, got {self.kind!r}")
        require_superoscillating(self.a)
        if self.kind in ("BSO_n", "HKN") and self.n is None:
            raise ParameterError(f"{self.kind} needs n")
        if self.kind in ("HKN", "HK", "PHI_ELL") and self.k is None:
            raise ParameterError(f"{self.kind} needs k")

    def __call__(self, z):
        if self.kind == "BSO_n":
            return bso_closed(z, self.n, self.a)
        if self.kind == "BLIM":
            return blim_closed(z, self.a)
        if self.kind == "HKN":
            return hkn_closed(z, self.k, self.n, self.a)
        if self.kind == "HK":
            return hk_closed(z, self.k, self.a)
        return phi_ell(z, self.k, self.a)

    @property
    def label(self):
        return f"{self.kind}(a={self.a}, n={self.n}, k={self.k})"
