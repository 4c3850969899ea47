"""Identity verification suite, convergence tables and grid evaluations.

Each check compares a closed form or algebraic identity with an independent
evaluation (quadrature, contour derivative, product form) and reports the
largest absolute gap over its grid. The CLI is a thin layer over this module.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import bargmann, fock, fourier, hermite, superosc
from .errors import ParameterError
from .quadrature import DEFAULT_ORDER, MAX_ORDER, fock_rule, gauss_hermite_rule

DEFAULT_Z_GRID = (0j, 0.5 + 0.5j, -1.2 + 0.8j, 1.5 - 1.0j, -0.3 - 1.9j)
DEFAULT_X_GRID = (-1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5)
DEFAULT_LAM_GRID = (-2.0, -1.0, 0.0, 0.5, 1.0, 2.0)


@dataclass
class SuiteConfig:
    quad_order: int = DEFAULT_ORDER
    n_list: tuple = (2, 4, 6, 8, 10, 12)
    a_list: tuple = (1.5, 2.0, 3.0)
    z_grid: tuple = DEFAULT_Z_GRID
    x_grid: tuple = DEFAULT_X_GRID
    tolerances: dict = field(default_factory=dict)
    format: str = "json"
    out: str | None = None
    allow_unstable: bool = False

    def validate(self, guarded=True):
        if int(self.quad_order) != self.quad_order or not 2 <= self.quad_order <= MAX_ORDER:
            raise ParameterError(f"quad_order must be an integer in [2, {MAX_ORDER}]")
        if self.format not in ("csv", "json"):
            raise ParameterError(f"format must be csv or json, got {self.format!r}")
        if not self.n_list or not self.a_list:
            raise ParameterError("n_list and a_list must be nonempty")
        for n in self.n_list:
            if int(n) != n or n < 1:
                raise ParameterError(f"n values must be positive integers, got {n!r}")
        for a in self.a_list:
            superosc.require_superoscillating(a)
        if any(abs(complex(x).imag) > 0 for x in self.x_grid):
            raise ParameterError("x_grid must be real")
        for key, tol in self.tolerances.items():
            if key not in CHECKS:
                raise ParameterError(f"unknown identity {key!r} in tolerance overrides")
            if not tol > 0:
                raise ParameterError(f"tolerance for {key} must be positive, got {tol!r}")
        if guarded:
            for a in self.a_list:
                for n in self.n_list:
                    superosc.check_cancellation(n, a, self.allow_unstable)
        return self

    def tolerance(self, check_id):
        return self.tolerances.get(check_id, CHECKS[check_id].tolerance)

    @property
    def rule(self):
        return gauss_hermite_rule(self.quad_order)

    @property
    def rule2d(self):
        return fock_rule(self.quad_order)

    def pairs(self):
        return [(n, float(a)) for a in self.a_list for n in self.n_list]


@dataclass
class ReportEntry:
    id: str
    identity: str
    max_err: float
    tolerance: float
    passed: bool
    runtime: float
    amplification: float


@dataclass
class VerificationReport:
    entries: list

    @property
    def summary(self):
        passed = sum(e.passed for e in self.entries)
        return {"total": len(self.entries), "passed": passed, "failed": len(self.entries) - passed}

    @property
    def ok(self):
        return all(e.passed for e in self.entries)

    def failures(self):
        return [e for e in self.entries if not e.passed]

    def to_dict(self):
        return {"entries": [asdict(e) for e in self.entries], "summary": self.summary}


@dataclass(frozen=True)
class Check:
    identity: str
    tolerance: float
    run: Callable[[SuiteConfig], tuple]


def _gap(lhs, rhs):
    return float(np.max(np.abs(np.asarray(lhs) - np.asarray(rhs))))


def _amp(cfg):
    return max(superosc.amplification(n, a) for n, a in cfg.pairs())


def _z(cfg):
    return np.asarray(cfg.z_grid, dtype=complex)


def _x(cfg):
    return np.asarray([complex(x).real for x in cfg.x_grid])


# -- superosc ------------------------------------------------------------------


def check_sum_product(cfg):
    z = _z(cfg)
    err = 0.0
    for n, a in cfg.pairs():
        p = superosc.SuperoscParams(n, a)
        s = superosc.fn_sum(z, p, allow_unstable=cfg.allow_unstable)
        q = superosc.fn_product(z, n, a)
        err = max(err, float(np.max(np.abs(s - q) / np.abs(q))))
    return err, _amp(cfg)


def check_moment_sum(cfg):
    err = 0.0
    for n, a in cfg.pairs():
        superosc.check_cancellation(n, a, cfg.allow_unstable)
        err = max(err, abs(superosc.SuperoscParams(n, a).moment(0) - 1.0))
    return err, _amp(cfg)


def check_moment_first(cfg):
    err = 0.0
    for n, a in cfg.pairs():
        superosc.check_cancellation(n, a, cfg.allow_unstable)
        err = max(err, abs(superosc.SuperoscParams(n, a).moment(1) - a))
    return err, _amp(cfg)


# -- fock ------------------------------------------------------------------------

_WEYL_PARAMS = (0.5, -0.3 + 0.7j, 1j, 0.8 - 0.2j)


def check_weyl_composition(cfg):
    z = _z(cfg)
    err = 0.0
    for f in (fock.basis_e(2), fock.CoherentState(0.3 - 0.4j)):
        for a in _WEYL_PARAMS:
            for b in _WEYL_PARAMS:
                err = max(err, _gap(*fock.weyl_compose_check(a, b, f, z)))
    return err, 1.0


def check_weyl_unitarity(cfg):
    err = 0.0
    for f in (fock.basis_e(1), fock.basis_e(3), fock.CoherentState(0.5)):
        ref = fock.norm(f, cfg.rule2d)
        for a in _WEYL_PARAMS:
            err = max(err, abs(fock.norm(fock.weyl_apply(a, f), cfg.rule2d) - ref))
    return err, 1.0


# -- bargmann ----------------------------------------------------------------------


def check_basis_mapping(cfg):
    z = _z(cfg)
    err = 0.0
    for k in range(7):
        got = bargmann.forward(lambda x, k=k: hermite.hermite_fn(k, x), z, cfg.rule)
        err = max(err, _gap(got, fock.basis_e(k)(z)))
    return err, 1.0


def check_bso_oracle(cfg):
    z = _z(cfg)
    err = 0.0
    for n, a in cfg.pairs():
        p = superosc.SuperoscParams(n, a)
        got = bargmann.forward(lambda x: superosc.ftilde_n(x, p), z, cfg.rule)
        err = max(err, _gap(got, bargmann.bso_closed(z, n, a, allow_unstable=cfg.allow_unstable)))
    return err, _amp(cfg)


def check_blim_oracle(cfg):
    z = _z(cfg)
    err = 0.0
    for a in cfg.a_list:
        got = bargmann.forward(lambda x: superosc.ftilde_limit(x, a), z, cfg.rule)
        err = max(err, _gap(got, bargmann.blim_closed(z, a)))
    return err, 1.0


def check_hkn_oracle(cfg):
    z = _z(cfg)
    err = 0.0
    for n, a in cfg.pairs():
        p = superosc.SuperoscParams(n, a)
        for k in range(5):
            got = bargmann.forward(lambda x, k=k: hermite.hkn(x, k, p), z, cfg.rule)
            err = max(err, _gap(got, bargmann.hkn_closed(z, k, n, a, allow_unstable=cfg.allow_unstable)))
    return err, _amp(cfg)


def check_hk_oracle(cfg):
    z = _z(cfg)
    err = 0.0
    for a in cfg.a_list:
        for k in range(5):
            got = bargmann.forward(lambda x, k=k: hermite.hk_limit(x, k, a), z, cfg.rule)
            err = max(err, _gap(got, bargmann.hk_closed(z, k, a)))
    return err, 1.0


def check_appell_ladder(cfg):
    z = _z(cfg)
    err = 0.0
    for a in cfg.a_list:
        for ell in range(1, 7):
            err = max(err, _gap(bargmann.appell_apply(ell, a, z), bargmann.phi_ell(z, ell - 1, a)))
    return err, 1.0


def check_integral_rep_I(cfg):
    x = _x(cfg)
    err = 0.0
    for n, a in cfg.pairs():
        got = bargmann.integral_rep_I(x, n, a, cfg.rule2d, allow_unstable=cfg.allow_unstable)
        err = max(err, _gap(got, superosc.fn_product(x, n, a)))
    return err, _amp(cfg)


def check_integral_rep_II(cfg):
    z = _z(cfg)
    err = 0.0
    for n, a in cfg.pairs():
        got = bargmann.integral_rep_II(z, n, a, cfg.rule, allow_unstable=cfg.allow_unstable)
        err = max(err, _gap(got, superosc.fn_product(z, n, a)))
    return err, _amp(cfg)


def check_sigma_forms(cfg):
    x = _x(cfg)
    err = 0.0
    for n, a in cfg.pairs():
        err = max(err, _gap(*bargmann.sigma_n(x, n, a, allow_unstable=cfg.allow_unstable)))
    return err, _amp(cfg)


def check_kernel_decomposition(cfg):
    z = _z(cfg)
    err = 0.0
    for n, a in cfg.pairs():
        got = bargmann.entire_fn_kernel_decomp(z, n, a, allow_unstable=cfg.allow_unstable)
        ref = superosc.fn_sum(z, superosc.SuperoscParams(n, a), allow_unstable=cfg.allow_unstable)
        err = max(err, _gap(got, ref))
    return err, _amp(cfg)


# -- fourier ------------------------------------------------------------------------


def check_fourier_closed(cfg):
    lam = np.asarray(DEFAULT_LAM_GRID)
    err = 0.0
    for n, a in cfg.pairs():
        p = superosc.SuperoscParams(n, a)
        got = fourier.fourier_quadrature(lambda t: superosc.ftilde_n(t, p), lam, cfg.rule)
        err = max(err, _gap(got, fourier.fourier_ftilde_n_closed(lam, n, a, allow_unstable=cfg.allow_unstable)))
    return err, _amp(cfg)


def check_fourier_hermite(cfg):
    lam = np.asarray(DEFAULT_LAM_GRID)
    err = 0.0
    for k in range(7):
        got = fourier.fourier_quadrature(lambda t, k=k: hermite.hermite_fn(k, t), lam, cfg.rule)
        err = max(err, _gap(got, fourier.fourier_hermite(lam, k)))
    return err, 1.0


def check_fourier_factorization(cfg):
    lam = np.asarray(DEFAULT_LAM_GRID)
    err = 0.0
    for n, a in cfg.pairs():
        for k in range(3):
            spec = fourier.ApproxSeqSpec(fourier.hermite_signal(k), n, a)
            err = max(err, _gap(*fourier.approx_fourier_factorization(spec, lam, cfg.rule)))
    return err, _amp(cfg)


def _gaussian_spec(n, a):
    return fourier.ApproxSeqSpec(fourier.normalized_gaussian(), n, a)


def check_gaussian_case_i(cfg):
    lam = np.asarray(DEFAULT_LAM_GRID)
    err = 0.0
    for n, a in cfg.pairs():
        spec = _gaussian_spec(n, a)
        got = fourier.fourier_quadrature(fourier.approx_fn(spec, allow_unstable=cfg.allow_unstable), lam, cfg.rule)
        err = max(err, _gap(got, superosc.ftilde_n(lam, spec.params)))
    return err, _amp(cfg)


def check_gaussian_case_ii(cfg):
    err = 0.0
    for n, a in cfg.pairs():
        spec = _gaussian_spec(n, a)
        total = fourier.fourier_quadrature(fourier.approx_fn(spec, allow_unstable=cfg.allow_unstable), 0.0, cfg.rule)
        err = max(err, abs(total - 1.0))
    return err, _amp(cfg)


def check_double_fourier(cfg):
    xi = _x(cfg)
    err = 0.0
    for n, a in cfg.pairs():
        err = max(err, _gap(*fourier.double_fourier_check(_gaussian_spec(n, a), xi, cfg.rule)))
    return err, _amp(cfg)


_TW_SHIFTS = (0.0, 0.5, 1.0)


def _tw_functions():
    return (fock.EntireFn(lambda z: np.ones_like(z), "1"), fock.basis_e(1), fock.CoherentState(0.5))


def check_translation_weyl(cfg):
    z = _z(cfg)
    err = 0.0
    for b in _TW_SHIFTS:
        for f in _tw_functions():
            err = max(err, _gap(*fourier.translation_weyl_intertwine(b, f, z, rule=cfg.rule)))
    return err, 1.0


def check_translation_weyl_scaled(cfg):
    z = _z(cfg)
    err = 0.0
    for b in _TW_SHIFTS:
        for f in _tw_functions():
            pair = fourier.translation_weyl_intertwine(b, f, z, weyl_shift=b / math.sqrt(2.0), rule=cfg.rule)
            err = max(err, _gap(*pair))
    return err, 1.0


def check_approx_bargmann_scaled(cfg):
    z = _z(cfg)
    err = 0.0
    for n, a in cfg.pairs():
        for k in range(2):
            psi = fourier.hermite_signal(k)
            spec = fourier.ApproxSeqSpec(psi, n, a)
            pair = fourier.approx_bargmann(
                spec, z, weyl_scale=1 / math.sqrt(2.0), transform=fock.basis_e(k), rule=cfg.rule,
                allow_unstable=cfg.allow_unstable,
            )
            err = max(err, _gap(*pair))
    return err, _amp(cfg)


CHECKS = {
    "sum_product": Check("F_n exponential sum vs product form (relative)", 1e-10, check_sum_product),
    "moment_sum": Check("sum_j C_j = 1", 1e-12, check_moment_sum),
    "moment_first": Check("sum_j C_j h_j = a", 1e-10, check_moment_first),
    "basis_mapping": Check("B(h_k) = z^k / sqrt(k!), k <= 6", 1e-9, check_basis_mapping),
    "bso_oracle": Check("B(exp(-x^2/2) F_n) closed form vs quadrature", 1e-8, check_bso_oracle),
    "blim_oracle": Check("B(exp(-x^2/2 + iax)) closed form vs quadrature", 1e-9, check_blim_oracle),
    "hkn_oracle": Check("B(h_k F_n) closed form vs quadrature, k <= 4", 1e-8, check_hkn_oracle),
    "hk_oracle": Check("B(h_k exp(iax)) closed form vs quadrature, k <= 4", 1e-8, check_hk_oracle),
    "weyl_composition": Check("W_a W_b = exp(-i Im(a conj b)) W_{a+b}", 1e-12, check_weyl_composition),
    "weyl_unitarity": Check("||W_a f|| = ||f|| by 2D quadrature", 1e-9, check_weyl_unitarity),
    "appell_ladder": Check("(d/dz - ia/sqrt2) Phi_l = Phi_{l-1}, l <= 6", 1e-11, check_appell_ladder),
    "integral_rep_I": Check("pi^(1/4) exp(x^2/2) B^-1(sum_j C_j k_{b_j}) = F_n", 1e-7, check_integral_rep_I),
    "integral_rep_II": Check("B(sigma_n) = F_n by quadrature", 1e-8, check_integral_rep_II),
    "sigma_forms": Check("kernel-sum and explicit forms of B^-1(F_n) agree", 1e-12, check_sigma_forms),
    "kernel_decomposition": Check("F_n = sum_j C_j K_{w_j}", 1e-12, check_kernel_decomposition),
    "fourier_closed": Check("F(exp(-x^2/2) F_n) closed form vs quadrature", 1e-8, check_fourier_closed),
    "fourier_hermite": Check("F(h_k) = sqrt(2 pi) (-i)^k h_k, k <= 6", 1e-9, check_fourier_hermite),
    "fourier_factorization": Check("F(phi_{psi,n,a}) = F(psi) F_n, psi in h_0..h_2", 1e-8, check_fourier_factorization),
    "gaussian_case_i": Check("Gaussian psi: F(phi_{psi,n,a}) = exp(-x^2/2) F_n", 1e-8, check_gaussian_case_i),
    "gaussian_case_ii": Check("Gaussian psi: integral of phi_{psi,n,a} = 1", 1e-9, check_gaussian_case_ii),
    "double_fourier": Check("Gaussian psi: F^2 phi(xi) = 2 pi phi(-xi)", 1e-7, check_double_fourier),
    "translation_weyl": Check("B T_b B^-1 = W_b (unscaled Weyl parameter)", 1e-7, check_translation_weyl),
    "translation_weyl_scaled": Check("B T_b B^-1 = W_{b/sqrt2}", 1e-7, check_translation_weyl_scaled),
    "approx_bargmann_scaled": Check(
        "B(phi_{psi,n,a}) = sum_j C_j W_{(2j/n-1)/sqrt2} B(psi)", 1e-7, check_approx_bargmann_scaled
    ),
}


# checks whose grid runs over the configured (n, a) pairs
PAIR_CHECKS = (
    "sum_product",
    "moment_sum",
    "moment_first",
    "bso_oracle",
    "hkn_oracle",
    "integral_rep_I",
    "integral_rep_II",
    "sigma_forms",
    "kernel_decomposition",
    "fourier_closed",
    "fourier_factorization",
    "gaussian_case_i",
    "gaussian_case_ii",
    "double_fourier",
    "approx_bargmann_scaled",
)


def run_check(check_id, cfg: SuiteConfig) -> ReportEntry:
    check = CHECKS[check_id]
    tol = cfg.tolerance(check_id)
    start = time.perf_counter()
    err, amp = check.run(cfg)
    elapsed = time.perf_counter() - start
    return ReportEntry(check_id, check.identity, float(err), float(tol), bool(err <= tol), elapsed, float(amp))


def run_suite(cfg: SuiteConfig, ids=None) -> VerificationReport:
    cfg.validate()
    return VerificationReport([run_check(i, cfg) for i in (ids or CHECKS)])


# -- convergence tables ----------------------------------------------------------------

CONVERGE_KINDS = ("superosc", "weyl", "fourier_limit")
CONVERGE_DEFAULT_N = {"superosc": (10, 50, 200), "weyl": (4, 8, 16), "fourier_limit": (4, 8, 16)}


def converge_table(kind, a, n_list, grid=None, *, f=None, allow_unstable=False):
    """Rows (n, sup gap over ``grid``) for one of the limit families.

    superosc: |F_n(x, a) - exp(iax)| over real x, default 201 points on [-1, 1].
    weyl: |sum_j C_j W_{b_j} f(z) - W_{-ia/sqrt2} f(z)|, default f = 1 and z = 0.
    fourier_limit: |sum_j C_j exp(lam h_j - h_j^2/2) - exp(a lam - a^2/2)|,
    default lam in {0, a/2}.
    """
    a = superosc.require_superoscillating(a)
    rows = []
    if kind == "superosc":
        x = np.linspace(-1.0, 1.0, 201) if grid is None else np.real(np.asarray(grid, dtype=complex))
        target = superosc.fn_limit(x, a)
        for n in n_list:
            rows.append((int(n), _gap(superosc.fn_product(x, n, a), target)))
    elif kind == "weyl":
        f = f or fock.EntireFn(lambda z: np.ones_like(z), "1")
        z = np.asarray([0j] if grid is None else grid, dtype=complex)
        for n in n_list:
            gaps = [g for zz in z for _, g in fock.weyl_supershift_limit(f, a, zz, [n], allow_unstable=allow_unstable)]
            rows.append((int(n), max(gaps)))
    elif kind == "fourier_limit":
        lams = [0.0, a / 2] if grid is None else [complex(v).real for v in grid]
        for n in n_list:
            gaps = [g for lam in lams for _, g in fourier.supershift_gaussian_limit(lam, a, [n], allow_unstable=allow_unstable)]
            rows.append((int(n), max(gaps)))
    else:
        raise ParameterError(f"kind must be one of {CONVERGE_KINDS}, got {kind!r}")
    return rows


# -- grid evaluation ----------------------------------------------------------------------

EVAL_OBJECTS = ("fn", "ftilde_n", "bso", "hkn", "sigma_n", "coherent_sum")
_REAL_OBJECTS = ("ftilde_n", "sigma_n")


def eval_grid(obj, n, a, grid, *, k=0, allow_unstable=False):
    """Values of one closed-form object at every grid point."""
    if obj not in EVAL_OBJECTS:
        raise ParameterError(f"object must be one of {EVAL_OBJECTS}, got {obj!r}")
    pts = np.asarray(grid, dtype=complex)
    if obj in _REAL_OBJECTS:
        if np.any(pts.imag != 0):
            raise ParameterError(f"{obj} is defined on the real line; grid must be real")
        pts = pts.real
    if obj == "fn":
        return np.atleast_1d(superosc.fn_product(pts, n, a))
    if obj == "ftilde_n":
        return np.atleast_1d(superosc.ftilde_n(pts, superosc.SuperoscParams(n, a)))
    if obj == "bso":
        return np.atleast_1d(bargmann.bso_closed(pts, n, a, allow_unstable=allow_unstable))
    if obj == "hkn":
        return np.atleast_1d(bargmann.hkn_closed(pts, k, n, a, allow_unstable=allow_unstable))
    if obj == "sigma_n":
        return np.atleast_1d(bargmann.sigma_n(pts, n, a, allow_unstable=allow_unstable)[0])
    return np.atleast_1d(bargmann.coherent_superposition(n, a, allow_unstable=allow_unstable)(pts))
