"""Recompute the frozen convergence-table values with plain mpmath sums.

Independent of the package: coefficients, exponentials and sums are written
out directly at 120 digits. Output is pasted into tests/test_regressions.py.
"""

import mpmath as mp

mp.mp.dps = 120


def coeffs(n, a):
    a = mp.mpf(a)
    return [mp.binomial(n, j) * ((1 + a) / 2) ** (n - j) * ((1 - a) / 2) ** j for j in range(n + 1)]


def freq(n):
    return [1 - mp.mpf(2 * j) / n for j in range(n + 1)]


def superosc_gap(n, a, points=201):
    cs, hs = coeffs(n, a), freq(n)
    worst = mp.mpf(0)
    for i in range(points):
        x = -1 + mp.mpf(2 * i) / (points - 1)
        fn = mp.fsum(c * mp.expj(h * x) for c, h in zip(cs, hs))
        worst = max(worst, abs(fn - mp.expj(a * x)))
    return worst


def weyl_gap(n, a, z):
    # f = 1, so W_b f = k_b and b_j = -i h_j / sqrt 2
    cs, hs = coeffs(n, a), freq(n)
    z = mp.mpc(z)

    def k(b):
        return mp.exp(z * mp.conj(b) - abs(b) ** 2 / 2)

    total = mp.fsum(c * k(-1j * h / mp.sqrt(2)) for c, h in zip(cs, hs))
    return abs(total - k(-1j * mp.mpf(a) / mp.sqrt(2)))


def gauss_gap(n, a, lam):
    cs, hs = coeffs(n, a), freq(n)
    lam = mp.mpf(lam)
    total = mp.fsum(c * mp.exp(lam * h - h * h / 2) for c, h in zip(cs, hs))
    return abs(total - mp.exp(a * lam - mp.mpf(a) ** 2 / 2))


if __name__ == "__main__":
    print("superosc", [mp.nstr(superosc_gap(n, 2), 17) for n in (10, 50, 200)])
    print("weyl z=0", [mp.nstr(weyl_gap(n, 2, 0), 17) for n in (4, 8, 16)])
    print("weyl z=0.5", [mp.nstr(weyl_gap(n, 2, 0.5), 17) for n in (4, 8, 16)])
    print("F1 lam=0", [mp.nstr(gauss_gap(n, 2, 0), 17) for n in (4, 8, 16)])
    print("F2 lam=a/2", [mp.nstr(gauss_gap(n, 2, 1), 17) for n in (4, 8, 16)])
