"""Fourier-side identities for superoscillating sequences and their approximating sequences.

Convention: F(phi)(lam) = int_R exp(-i lam t) phi(t) dt, with no 1/sqrt(2 pi).
Under this convention the Hermite functions satisfy F(h_k) = sqrt(2 pi) (-i)^k h_k.

Approximating sequence of a signal psi:

    phi_{psi,n,a}(x) = sum_j C_j(n, a) psi(x + h_j),    F(phi) = F(psi) F_n(., a)

Its Segal-Bargmann image is a Weyl superposition; a translation by b on the
line corresponds to the Weyl operator with parameter b / sqrt(2) in this
normalization of the transform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bargmann import RealFn, forward, inverse
from .errors import EvaluationError, ParameterError
from .fock import SQRT2, EntireFn, weyl_apply, weyl_superposition
from .hermite import MAX_INDEX, hermite_fn, hermite_fn_mp
from .quadrature import NESTED_ORDER, QuadRule1D, QuadRule2D, fock_rule, gauss_hermite_rule, refine_check
from .superosc import (
    SuperoscParams,
    check_cancellation,
    compensated_sum,
    exponential_sum,
    fn_product,
    require_superoscillating,
    supershift_sum,
)

SQRT_2PI = math.sqrt(2.0 * math.pi)


def _out(arr):
    arr = np.asarray(arr)
    return arr if arr.ndim else complex(arr)


def _fourier(phi, lam, rule: QuadRule1D):
    # t = sqrt(2) s puts a exp(-t^2/2) decay onto the rule's exp(-s^2)
    t = SQRT2 * rule.nodes
    values = np.asarray(phi(t), dtype=complex) * np.ones(t.shape)
    if not np.all(np.isfinite(values)):
        bad = int(np.argmax(~np.isfinite(values)))
        raise EvaluationError("signal is not finite", node=float(t[bad]))
    lam = np.asarray(lam, dtype=float)
    phase = np.exp(-1j * lam[..., None] * t)
    return SQRT2 * np.sum(rule.folded_weights * phase * values, axis=-1)


def fourier_quadrature(phi, lam, rule: QuadRule1D | None = None, *, check=False):
    """F(phi)(lam) for a signal decaying like exp(-t^2/2) times a tame factor."""
    rule = rule or gauss_hermite_rule()
    result = _fourier(phi, lam, rule)
    if check:
        fine = _fourier(phi, lam, gauss_hermite_rule(2 * rule.order))
        result = refine_check(result, fine, rule.order)
    return _out(result)


def fourier_hermite(lam, k):
    """F(h_k)(lam) = sqrt(2 pi) (-i)^k h_k(lam)."""
    if int(k) != k or not 0 <= k <= MAX_INDEX:
        raise ParameterError(f"k={k!r} must be an integer in [0, {MAX_INDEX}]")
    return _out(SQRT_2PI * (-1j) ** int(k) * hermite_fn(int(k), lam))


def fourier_ftilde_n_closed(lam, n, a, *, allow_unstable=False):
    """F(exp(-x^2/2) F_n(x, a))(lam) = sqrt(2 pi) sum_j C_j exp(-(h_j - lam)^2 / 2).

    The grouped exponent equals exp(-lam^2/2) exp(lam h_j - h_j^2/2).
    """
    lam = np.asarray(lam, dtype=float)
    inner = np.asarray(gaussian_supershift_sum(lam, n, a, allow_unstable=allow_unstable))
    return _out(SQRT_2PI * np.exp(-0.5 * lam * lam) * inner)


def fourier_ftilde_limit(lam, a):
    """F(exp(-x^2/2 + i a x))(lam) = sqrt(2 pi) exp(-(lam - a)^2 / 2)."""
    a = require_superoscillating(a)
    lam = np.asarray(lam, dtype=float)
    return _out(SQRT_2PI * np.exp(-0.5 * (lam - a) ** 2))


def gaussian_supershift_sum(lam, n, a, *, allow_unstable=False):
    """sum_j C_j exp(lam h_j - h_j^2 / 2) in extended precision."""
    p = SuperoscParams(n, require_superoscillating(a))
    weight = lambda ctx, h: ctx.exp(-h * h / 2)  # noqa: E731
    return exponential_sum(p, 1.0, np.asarray(lam, dtype=float), weight, allow_unstable=allow_unstable)


def supershift_gaussian_limit(lam, a, n_list, *, allow_unstable=False):
    """Rows (n, |sum_j C_j exp(lam h_j - h_j^2/2) - exp(a lam - a^2/2)|)."""
    a = require_superoscillating(a)
    target = math.exp(a * lam - 0.5 * a * a)
    return [
        (n, abs(complex(gaussian_supershift_sum(lam, n, a, allow_unstable=allow_unstable)) - target))
        for n in n_list
    ]


# -- approximating sequences ---------------------------------------------------------


@dataclass(frozen=True)
class ApproxSeqSpec:
    """A signal psi together with the superoscillation parameters (n, a)."""

    psi: RealFn
    n: int
    a: float

    def __post_init__(self):
        object.__setattr__(self, "a", require_superoscillating(self.a))
        object.__setattr__(self, "psi", self.psi if isinstance(self.psi, RealFn) else RealFn(self.psi))

    @property
    def params(self) -> SuperoscParams:
        return SuperoscParams(self.n, self.a)


def normalized_gaussian() -> RealFn:
    """(2 pi)^(-1/2) exp(-x^2/2); its Fourier transform is exp(-lam^2/2)."""
    return RealFn(
        lambda x: np.exp(-0.5 * x * x) / SQRT_2PI,
        "gauss",
        lambda ctx, x: ctx.exp(-x * x / 2) / ctx.sqrt(2 * ctx.pi),
    )


def hermite_signal(k) -> RealFn:
    """h_k as a RealFn carrying its extended-precision evaluator."""
    k = int(k)
    hermite_fn(k, 0.0)
    return RealFn(lambda x: hermite_fn(k, x), f"h_{k}", lambda ctx, x: hermite_fn_mp(ctx, k, x))


def approx_sequence(spec: ApproxSeqSpec, x, *, allow_unstable=False):
    """phi_{psi,n,a}(x) = sum_j C_j psi(x + h_j).

    With psi.mp the sum runs in extended precision; otherwise the double
    terms go through math.fsum and the result carries about eps * a^n.
    """
    p = spec.params
    if spec.psi.mp is not None:
        psi_mp = spec.psi.mp
        x = np.asarray(x, dtype=float)
        return supershift_sum(p, lambda ctx, h, w: psi_mp(ctx, ctx.re(w) + h), x, allow_unstable=allow_unstable)
    p.check(allow_unstable)
    x = np.asarray(x, dtype=float)
    terms = np.stack([c * np.asarray(spec.psi(x + h)) for c, h in zip(p.coefficients, p.frequencies)])
    out = np.empty(x.shape, dtype=complex)
    for idx in np.ndindex(x.shape):
        out[idx] = compensated_sum(terms[(slice(None),) + idx])
    return _out(out)


def approx_fn(spec: ApproxSeqSpec, *, allow_unstable=False) -> RealFn:
    return RealFn(lambda x: approx_sequence(spec, x, allow_unstable=allow_unstable), f"phi[{spec.psi.label}]")


def gaussian_approx_closed(x, n, a, *, allow_unstable=False):
    """Approximating sequence of the normalized Gaussian:
    (2 pi)^(-1/2) exp(-x^2/2) sum_j C_j exp(-x h_j - h_j^2/2)."""
    x = np.asarray(x, dtype=float)
    inner = np.asarray(gaussian_supershift_sum(-x, n, a, allow_unstable=allow_unstable))
    return _out(np.exp(-0.5 * x * x) / SQRT_2PI * inner)


def approx_fourier_factorization(spec: ApproxSeqSpec, lam, rule: QuadRule1D | None = None):
    """(F(phi_{psi,n,a})(lam), F(psi)(lam) F_n(lam, a)), both sides by quadrature."""
    lhs = fourier_quadrature(approx_fn(spec), lam, rule)
    rhs = np.asarray(fourier_quadrature(spec.psi, lam, rule)) * fn_product(lam, spec.n, spec.a)
    return lhs, _out(rhs)


def double_fourier_check(spec: ApproxSeqSpec, xi, rule: QuadRule1D | None = None, outer: QuadRule1D | None = None):
    """(F(F(phi))(xi), 2 pi phi(-xi)) with both transforms done by quadrature."""
    outer = outer or gauss_hermite_rule(NESTED_ORDER)
    phi = approx_fn(spec)
    inner = RealFn(lambda lam: fourier_quadrature(phi, lam, rule), "F[phi]")
    lhs = fourier_quadrature(inner, xi, outer)
    rhs = 2.0 * math.pi * np.asarray(approx_sequence(spec, -np.asarray(xi, dtype=float)))
    return lhs, _out(rhs)


def norm_bound_check(spec: ApproxSeqSpec, rule: QuadRule1D | None = None, outer: QuadRule1D | None = None):
    """(||F(phi)||_2, sqrt(2 pi) a^n ||psi||_2), the first by nested quadrature.

    sup |F_n| <= sum_j |C_j| = a^n and Plancherel give the bound.
    """
    outer = outer or gauss_hermite_rule(NESTED_ORDER)
    phi = approx_fn(spec)
    # |F(phi)|^2 and |psi|^2 decay like exp(-t^2); the folded rule at unit scale fits them
    fphi = np.asarray(fourier_quadrature(phi, outer.nodes, rule))
    lhs = math.sqrt(math.fsum(outer.folded_weights * np.abs(fphi) ** 2))
    psi_sq = np.abs(np.asarray(spec.psi(outer.nodes))) ** 2
    psi_norm = math.sqrt(math.fsum(outer.folded_weights * psi_sq))
    bound = SQRT_2PI * check_cancellation(spec.n, spec.a, allow_unstable=True) * psi_norm
    return lhs, bound


def translate(psi, b) -> RealFn:
    """T_b psi(x) = psi(x - b)."""
    return RealFn(lambda x: np.asarray(psi(np.asarray(x) - b)), f"T_{b}[{getattr(psi, 'label', 'psi')}]")


def translation_weyl_intertwine(
    b,
    f,
    z,
    *,
    weyl_shift=None,
    rule: QuadRule1D | None = None,
    inverse_rule: QuadRule2D | None = None,
):
    """(B T_b B^-1 f (z), W_c f (z)) with the left side by quadrature composition.

    ``weyl_shift`` is c and defaults to b. In this normalization of the
    transform the two sides agree for c = b / sqrt(2).
    """
    b = float(b)
    c = b if weyl_shift is None else weyl_shift
    inverse_rule = inverse_rule or fock_rule(NESTED_ORDER)
    psi = RealFn(lambda x: inverse(f, x, inverse_rule), "B^-1 f")
    lhs = forward(translate(psi, b), z, rule)
    rhs = weyl_apply(c, f)(z)
    return lhs, rhs


def approx_bargmann(
    spec: ApproxSeqSpec,
    z,
    *,
    weyl_scale=1.0,
    transform=None,
    rule: QuadRule1D | None = None,
    allow_unstable=False,
):
    """(B(phi_{psi,n,a})(z), sum_j C_j W_{s (2j/n - 1)}[B psi](z)) with s = ``weyl_scale``.

    The identity holds for s = 1/sqrt(2) in this normalization; s = 1 is the
    unscaled statement. ``transform`` may supply B(psi) directly.
    """
    p = spec.params
    p.check(allow_unstable)
    lhs = forward(approx_fn(spec, allow_unstable=allow_unstable), z, rule)
    bpsi = transform or EntireFn(lambda w: forward(spec.psi, w, rule), "B[psi]")
    rhs = weyl_superposition(bpsi, p, z, shift_factor=-weyl_scale, allow_unstable=allow_unstable)
    return lhs, rhs


def band_limited_check(support, psi, *, transform=None, scan=None, rule: QuadRule1D | None = None, rtol=1e-10):
    """True iff |F(psi)| stays below rtol * max|F(psi)| on the scan grid outside ``support``.

    ``transform`` may give F(psi) in closed form; signals with slow decay
    (sinc-type) need it, since quadrature assumes Gaussian decay.
    """
    lo, hi = (float(s) for s in support)
    if not lo <= hi:
        raise ParameterError("support must be an interval (lo, hi) with lo <= hi")
    if scan is None:
        width = max(abs(lo), abs(hi), 1.0)
        scan = np.linspace(-4.0 * width, 4.0 * width, 801)
    scan = np.asarray(scan, dtype=float)
    values = np.abs(np.asarray(transform(scan) if transform else fourier_quadrature(psi, scan, rule)))
    peak = float(np.max(values)) if values.size else 0.0
    edge = 1e-9 * max(1.0, hi - lo)
    outside = (scan < lo - edge) | (scan > hi + edge)
    if not np.any(outside):
        return True
    return bool(np.max(values[outside]) <= rtol * peak)


def approx_integral_rep(spec: ApproxSeqSpec, x, *, transform=None, rule: QuadRule1D | None = None, outer: QuadRule1D | None = None):
    """(1/2 pi) int F_n(lam, a) F(psi)(lam) exp(i lam x) dlam by nested quadrature.

    ``transform`` may supply F(psi) in closed form.
    """
    outer = outer or gauss_hermite_rule(NESTED_ORDER)
    fpsi = transform or (lambda lam: fourier_quadrature(spec.psi, lam, rule))
    integrand = RealFn(lambda lam: np.asarray(fpsi(lam)) * fn_product(lam, spec.n, spec.a), "F_n F[psi]")
    x = np.asarray(x, dtype=float)
    return _out(np.asarray(fourier_quadrature(integrand, -x, outer)) / (2.0 * math.pi))
