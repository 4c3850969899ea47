"""Superoscillating sequences and the supershift functional.

F_n(z, a) = sum_j C_j(n, a) exp(i (1 - 2j/n) z),
C_j(n, a) = binom(n, j) ((1 + a)/2)^(n - j) ((1 - a)/2)^j.

For real a > 1 the coefficients alternate in sign and sum_j |C_j| = a^n, so any
C_j-weighted sum loses about log10(a^n) digits to cancellation. Two evaluation
paths exist:

* ``supershift_sum`` evaluates the coefficients and the summands in mpmath at a
  working precision raised by log10(a^n) digits, then rounds once. All closed
  forms built on C_j sums go through it.
* ``supershift_apply`` takes a plain float callable, as the supershift
  definition does, and sums with ``math.fsum``. Its accuracy is bounded by the
  accuracy of the callable times a^n.

Both refuse to run when a^n exceeds ``CANCELLATION_GUARD`` unless
``allow_unstable=True`` is passed. The product form ``fn_product`` has no
cancellation and no guard.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable

import mpmath
import numpy as np

from .errors import EvaluationError, ParameterError, PrecisionExhaustedError

CANCELLATION_GUARD = 1e12
# decimal digits carried beyond double precision in extended-precision sums
_GUARD_DIGITS = 20


def _as_number(a):
    a = complex(a)
    return a.real if a.imag == 0 else a


def _check_n(n):
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ParameterError(f"n must be a positive integer, got {n!r}")
    return int(n)


def amplification(n, a):
    """sum_j |C_j(n, a)| = ((|1 + a| + |1 - a|) / 2)^n; equals a^n for real a > 1."""
    a = complex(a)
    base = 0.5 * (abs(1 + a) + abs(1 - a))
    with np.errstate(over="ignore"):
        return float(np.float64(base) ** n)


def check_cancellation(n, a, allow_unstable=False, guard=CANCELLATION_GUARD):
    """Raise PrecisionExhaustedError if the C_j sum amplification exceeds ``guard``."""
    amp = amplification(n, a)
    if amp > guard and not allow_unstable:
        raise PrecisionExhaustedError(n, a, amp, guard)
    return amp


def require_superoscillating(a):
    """Limits in a need real a > 1."""
    a = complex(a)
    if a.imag != 0 or not a.real > 1:
        raise ParameterError(f"this operation requires real a > 1, got {a!r}")
    return a.real


@lru_cache(maxsize=64)
def _context(dps):
    ctx = mpmath.MPContext()
    ctx.dps = dps
    return ctx


def _working_digits(n, a):
    amp = amplification(n, a)
    return _GUARD_DIGITS + max(0, math.ceil(math.log10(amp))) if math.isfinite(amp) else 400


@lru_cache(maxsize=256)
def _coefficients_mp(n, a, dps):
    ctx = _context(dps)
    a_mp = ctx.mpmathify(a)
    p = (1 + a_mp) / 2
    q = (1 - a_mp) / 2
    return tuple(ctx.binomial(n, j) * p ** (n - j) * q**j for j in range(n + 1))


def _to_float_vector(values, real):
    if real:
        return np.array([float(v) for v in values])
    return np.array([complex(v) for v in values])


def coefficients(n, a):
    """Vector C_0(n, a), ..., C_n(n, a), each correctly rounded from extended precision."""
    n = _check_n(n)
    a = _as_number(a)
    dps = _working_digits(n, a)
    return _to_float_vector(_coefficients_mp(n, a, dps), isinstance(a, float))


def frequencies(n):
    """h_j = 1 - 2j/n for j = 0..n."""
    n = _check_n(n)
    return 1.0 - 2.0 * np.arange(n + 1) / n


@dataclass(frozen=True)
class SuperoscParams:
    """The pair (n, a) together with the derived coefficients and frequencies."""

    n: int
    a: complex

    def __post_init__(self):
        object.__setattr__(self, "n", _check_n(self.n))
        object.__setattr__(self, "a", _as_number(self.a))

    @cached_property
    def coefficients(self):
        return coefficients(self.n, self.a)

    @cached_property
    def frequencies(self):
        return frequencies(self.n)

    @property
    def amplification(self):
        return amplification(self.n, self.a)

    def check(self, allow_unstable=False):
        return check_cancellation(self.n, self.a, allow_unstable)

    def extended(self, squared=False):
        """(ctx, C_j, h_j) as mpmath numbers at a precision covering the cancellation.

        ``squared=True`` sizes the precision for double sums over j and l.
        """
        dps = _working_digits(self.n, self.a)
        if squared:
            dps = 2 * dps - _GUARD_DIGITS
        ctx = _context(dps)
        cs = _coefficients_mp(self.n, self.a, dps)
        lams = [ctx.mpf(self.n - 2 * j) / self.n for j in range(self.n + 1)]
        return ctx, cs, lams

    def moment(self, k):
        """sum_j C_j h_j^k in extended precision (1 for k=0, a for k=1)."""
        ctx, cs, lams = self.extended()
        return _as_number(complex(ctx.fsum(c * lam**k for c, lam in zip(cs, lams))))

    def abs_sum(self):
        """sum_j |C_j| in extended precision."""
        ctx, cs, _ = self.extended()
        return float(ctx.fsum(abs(c) for c in cs))


def supershift_sum(p: SuperoscParams, term, points, *, allow_unstable=False):
    """Evaluate sum_j C_j(n, a) term(ctx, h_j, point) for each point, in extended precision.

    ``term`` receives an mpmath context, the frequency h_j as an mpf and the
    evaluation point as an mpc, and must return an mpmath number built with
    that context. The result is rounded to complex128 with the shape of
    ``points``.
    """
    p.check(allow_unstable)
    ctx, cs, lams = p.extended()
    pts = np.asarray(points, dtype=complex)
    out = np.empty(pts.shape, dtype=complex)
    for idx, pt in np.ndenumerate(pts):
        z = ctx.mpc(pt.real, pt.imag)
        out[idx] = complex(ctx.fsum(c * term(ctx, lam, z) for c, lam in zip(cs, lams)))
    return out if out.ndim else complex(out)


def exponential_sum(p: SuperoscParams, rate, points, weight=None, *, allow_unstable=False):
    """sum_j C_j(n, a) g(h_j) exp(rate h_j w) at each point w, in extended precision.

    ``weight`` maps (ctx, h_j) to g(h_j) and defaults to 1. Since h_j = 1 - 2j/n
    the sum is E^n P(E^-2) with E = exp(rate w / n) and P a polynomial of
    degree n, evaluated by Horner's rule.
    """
    p.check(allow_unstable)
    ctx, cs, lams = p.extended()
    rate = ctx.mpmathify(complex(rate))
    coeffs = [c * weight(ctx, lam) if weight else c for c, lam in zip(cs, lams)]
    coeffs.reverse()
    pts = np.asarray(points, dtype=complex)
    out = np.empty(pts.shape, dtype=complex)
    for idx, pt in np.ndenumerate(pts):
        e = ctx.exp(rate * ctx.mpc(pt.real, pt.imag) / p.n)
        out[idx] = complex(ctx.polyval(coeffs, 1 / (e * e)) * e**p.n)
    return out if out.ndim else complex(out)


def fn_sum(z, p: SuperoscParams, *, allow_unstable=False):
    """F_n(z, a) from its exponential-sum form."""
    return exponential_sum(p, 1j, z, allow_unstable=allow_unstable)


def fn_product(z, n, a):
    """F_n(z, a) = (cos(z/n) + i a sin(z/n))^n; stable for every n and complex a."""
    n = _check_n(n)
    z = np.asarray(z, dtype=complex)
    base = np.cos(z / n) + 1j * complex(a) * np.sin(z / n)
    # integer power is evaluated by repeated squaring
    out = base**n
    return out if out.ndim else complex(out)


def fn_limit(z, a):
    """F(z, a) = exp(i a z), the limit of F_n on compact sets."""
    out = np.exp(1j * complex(a) * np.asarray(z, dtype=complex))
    return out if out.ndim else complex(out)


def ftilde_n(x, p: SuperoscParams):
    """exp(-x^2/2) F_n(x, a) on the real line."""
    x = np.asarray(x, dtype=float)
    out = np.exp(-0.5 * x * x) * fn_product(x, p.n, p.a)
    return out if out.ndim else complex(out)


def ftilde_limit(x, a):
    """exp(-x^2/2 + i a x), the limit of ftilde_n."""
    a = require_superoscillating(a)
    x = np.asarray(x, dtype=float)
    out = np.exp(-0.5 * x * x + 1j * a * x)
    return out if out.ndim else complex(out)


@dataclass(frozen=True)
class SupershiftSpec:
    """A generalized Fourier sequence: coefficient rule Z_j(n, a) and frequency rule h_j(n).

    The defaults give the standard sequence C_j(n, a), 1 - 2j/n.
    """

    n: int
    a: float
    coefficient_rule: Callable[[int, float], np.ndarray] | None = None
    frequency_rule: Callable[[int], np.ndarray] | None = None

    def __post_init__(self):
        object.__setattr__(self, "n", _check_n(self.n))

    def coefficients(self):
        rule = self.coefficient_rule or coefficients
        return np.asarray(rule(self.n, self.a))

    def frequencies(self):
        rule = self.frequency_rule or frequencies
        h = np.asarray(rule(self.n), dtype=float)
        if np.any(np.abs(h) > 1 + 1e-15):
            raise ParameterError("frequencies of a superoscillating sequence must lie in [-1, 1]")
        return h


def compensated_sum(values):
    """Correctly rounded complex sum (math.fsum on each component)."""
    values = np.asarray(values, dtype=complex)
    return complex(math.fsum(values.real), math.fsum(values.imag))


def supershift_apply(spec: SupershiftSpec, phi, *, allow_unstable=False):
    """psi_n = sum_j Z_j(n, a) phi(h_j), with phi evaluated only on [-1, 1].

    ``phi`` is called once per frequency with a float. The guard applies only
    to the standard coefficients, whose amplification is known in closed form.
    """
    if spec.coefficient_rule is None:
        check_cancellation(spec.n, spec.a, allow_unstable)
    cs = spec.coefficients()
    values = []
    for lam in spec.frequencies():
        v = complex(phi(float(lam)))
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise EvaluationError("supershift function is not finite", node=float(lam))
        values.append(v)
    return compensated_sum(cs * np.asarray(values))


def supershift_gaps(phi, a, n_list, target=None, *, allow_unstable=False):
    """Rows (n, |psi_n - target|) for the standard supershift of ``phi``.

    ``target`` defaults to phi(a). Rates are reported, not asserted.
    """
    target = complex(phi(a)) if target is None else complex(target)
    return [
        (n, abs(supershift_apply(SupershiftSpec(n, a), phi, allow_unstable=allow_unstable) - target))
        for n in n_list
    ]


def generating_function(z, x, a, N):
    """Partial sum sum_{n=1}^N z^n / n! * ftilde_n(x; n, a)."""
    a = require_superoscillating(a)
    N = _check_n(N)
    z = complex(z)
    x = np.asarray(x, dtype=float)
    total = np.zeros(x.shape, dtype=complex)
    zn_over_fact = 1.0 + 0j
    for n in range(1, N + 1):
        zn_over_fact *= z / n
        total = total + zn_over_fact * ftilde_n(x, SuperoscParams(n, a))
    return total if total.ndim else complex(total)


def generating_function_bound(z, x, a):
    """exp((1 + a)|z| - x^2/2), the growth bound of the generating function."""
    x = np.asarray(x, dtype=float)
    return np.exp((1 + a) * abs(complex(z)) - 0.5 * x * x)
