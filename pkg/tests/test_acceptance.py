"""Acceptance gate: one test per criterion, each at its stated tolerance.

A pass/fail line per criterion is printed in the terminal summary.
"""

import time

import numpy as np
import pytest

from superbargmann.errors import PrecisionExhaustedError
from superbargmann.superosc import SuperoscParams, fn_sum
from superbargmann.verify import PAIR_CHECKS, SuiteConfig, converge_table, run_check

from .conftest import ACCEPTANCE_LINES
from .test_regressions import FROZEN

FULL_N = tuple(range(1, 21))
STANDARD = SuiteConfig()


def gate(number, title, results):
    """results: list of (label, value, tolerance); value <= tolerance passes."""
    ok = all(value <= tol for _, value, tol in results)
    detail = "; ".join(f"{label} {value:.2e} <= {tol:.0e}" if value <= tol else f"{label} {value:.2e} > {tol:.0e}" for label, value, tol in results)
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'} criterion {number:2d} {title}: {detail}")
    return ok


def checks(cfg, *ids):
    out = []
    for check_id in ids:
        entry = run_check(check_id, cfg)
        out.append((check_id, entry.max_err, entry.tolerance))
    return out


def test_criterion_01_sum_product():
    # a = 4, n = 20 exceeds the guard (4^20 > 1e12) and is run with the explicit opt-in
    cfg = SuiteConfig(n_list=FULL_N, a_list=(1.5, 2.0, 4.0), allow_unstable=True)
    assert gate(1, "sum/product equivalence", checks(cfg, "sum_product"))


def test_criterion_02_moments():
    cfg = SuiteConfig(n_list=FULL_N, a_list=(1.5, 2.0, 4.0), allow_unstable=True)
    assert gate(2, "coefficient moments", checks(cfg, "moment_sum", "moment_first"))


def test_criterion_03_basis_mapping():
    assert gate(3, "basis mapping", checks(STANDARD, "basis_mapping"))


def test_criterion_04_bso():
    assert gate(4, "transform of F~_n and its limit", checks(STANDARD, "bso_oracle", "blim_oracle"))


def test_criterion_05_hermite_families():
    assert gate(5, "transforms of H_{k,n} and h_k e^{iax}", checks(STANDARD, "hkn_oracle", "hk_oracle"))


def test_criterion_06_weyl():
    assert gate(6, "Weyl algebra", checks(STANDARD, "weyl_composition", "weyl_unitarity"))


def test_criterion_07_appell():
    assert gate(7, "Appell ladder", checks(STANDARD, "appell_ladder"))


def test_criterion_08_integral_representations():
    rep_one = SuiteConfig(n_list=tuple(range(1, 9)))
    results = checks(rep_one, "integral_rep_I") + checks(STANDARD, "integral_rep_II")
    assert gate(8, "integral representations", results)


def test_criterion_09_fourier():
    ids = ("fourier_closed", "fourier_factorization", "gaussian_case_i", "gaussian_case_ii", "double_fourier", "translation_weyl")
    assert gate(9, "Fourier suite", checks(STANDARD, *ids))


def test_criterion_10_convergence_regressions():
    results = []
    for (kind, grid), (n_list, expected) in FROZEN.items():
        gaps = np.array([g for _, g in converge_table(kind, 2.0, n_list, grid)])
        label = f"{kind}{'' if grid is None else grid}"
        monotone = bool(np.all(np.diff(gaps) < 0))
        results.append((f"{label} monotone", 0.0 if monotone else 1.0, 0.0))
        results.append((f"{label} rel dev", float(np.max(np.abs(gaps / np.array(expected) - 1))), 0.05))
    assert gate(10, "convergence regressions", results)


def test_criterion_11_cancellation_guard():
    results = []
    try:
        fn_sum(0.5, SuperoscParams(60, 2.0))
        rejected = False
    except PrecisionExhaustedError as exc:
        rejected = "precision exhausted" in str(exc)
    results.append(("a=2 n=60 rejected", 0.0 if rejected else 1.0, 0.0))
    cfg = SuiteConfig(n_list=(30,), a_list=(2.0,))
    start = time.perf_counter()
    results += checks(cfg, *PAIR_CHECKS)
    results.append(("runtime s", time.perf_counter() - start, 60.0))
    assert gate(11, "cancellation guard and a=2, n=30", results)


@pytest.mark.parametrize("n,a", [(60, 2.0), (20, 4.0), (40, 3.0)])
def test_guard_threshold(n, a):
    with pytest.raises(PrecisionExhaustedError):
        run_check("bso_oracle", SuiteConfig(n_list=(n,), a_list=(a,)))
