"""Hermite polynomials, L2-normalized Hermite functions and their modulated families.

Normalization: h_k(x) = (2^k k! sqrt(pi))^(-1/2) H_k(x) exp(-x^2/2), the unique
choice for which the Segal-Bargmann transform sends h_k to z^k / sqrt(k!).
"""

from __future__ import annotations

import numpy as np

from .errors import ParameterError
from .superosc import SuperoscParams, fn_product

MAX_INDEX = 60

_PI_M14 = np.pi ** -0.25


def _check_index(k, kmax=MAX_INDEX):
    if int(k) != k or k < 0 or k > kmax:
        raise ParameterError(f"Hermite index k={k!r} must be an integer in [0, {kmax}]")
    return int(k)


def hermite_poly(k, x, kmax=MAX_INDEX):
    """Physicists' Hermite polynomial H_k(x) from H_{k+1} = 2x H_k - 2k H_{k-1}."""
    k = _check_index(k, kmax)
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if k == 0:
        return prev
    cur = 2.0 * x
    for j in range(1, k):
        prev, cur = cur, 2.0 * x * cur - 2.0 * j * prev
    return cur


def hermite_functions(kmax, x):
    """Rows h_0(x), ..., h_kmax(x) from the normalized three-term recurrence.

    No index cap is applied here; the quadrature module uses this with
    kmax = m - 1 up to m = 512.
    """
    x = np.asarray(x, dtype=float)
    out = np.empty((kmax + 1,) + x.shape)
    out[0] = _PI_M14 * np.exp(-0.5 * x * x)
    if kmax >= 1:
        out[1] = np.sqrt(2.0) * x * out[0]
    for k in range(1, kmax):
        out[k + 1] = x * np.sqrt(2.0 / (k + 1)) * out[k] - np.sqrt(k / (k + 1)) * out[k - 1]
    return out


def hermite_fn(k, x, kmax=MAX_INDEX):
    """Normalized Hermite function h_k(x); orthonormal in L2(R)."""
    k = _check_index(k, kmax)
    return hermite_functions(k, x)[k]


def hermite_fn_mp(ctx, k, x):
    """h_k(x) in the mpmath context ``ctx`` by the normalized recurrence."""
    k = _check_index(k)
    prev = ctx.exp(-x * x / 2) / ctx.root(ctx.pi, 4)
    if k == 0:
        return prev
    cur = ctx.sqrt(2) * x * prev
    for j in range(1, k):
        prev, cur = cur, x * ctx.sqrt(ctx.mpf(2) / (j + 1)) * cur - ctx.sqrt(ctx.mpf(j) / (j + 1)) * prev
    return cur


def hkn(x, k, p: SuperoscParams):
    """h_k(x) F_n(x, a): a Hermite function modulated by the superoscillating sequence.

    F_n is evaluated through its product form, which is free of cancellation
    and therefore not subject to the a**n guard.
    """
    return hermite_fn(k, x) * fn_product(x, p.n, p.a)


def hk_limit(x, k, a):
    """Pointwise limit h_k(x) exp(i a x) of hkn as n grows."""
    x = np.asarray(x, dtype=float)
    return hermite_fn(k, x) * np.exp(1j * a * x)
