"""Superoscillating sequences, the Segal-Bargmann transform and Fock-space identities."""

from .bargmann import (
    BargmannClosedForm,
    RealFn,
    appell_apply,
    bargmann_kernel,
    blim_closed,
    bso_closed,
    coherent_superposition,
    derivative_relation_check,
    entire_fn_kernel_decomp,
    exp_shift,
    fock_norm_Fn,
    forward,
    hk_closed,
    hkn_closed,
    integral_rep_I,
    integral_rep_II,
    inverse,
    modulate_bargmann,
    phi_ell,
    sigma_n,
)
from .errors import (
    EvaluationError,
    ParameterError,
    PrecisionExhaustedError,
    QuadratureNonConvergence,
    SuperBargmannError,
)
from .fock import CoherentState, EntireFn, basis_e, inner_product, kernel, norm, weyl_apply, weyl_compose_check, weyl_superposition
from .fourier import (
    ApproxSeqSpec,
    approx_bargmann,
    approx_fourier_factorization,
    approx_integral_rep,
    approx_sequence,
    band_limited_check,
    double_fourier_check,
    fourier_ftilde_n_closed,
    fourier_quadrature,
    hermite_signal,
    norm_bound_check,
    normalized_gaussian,
    supershift_gaussian_limit,
    translation_weyl_intertwine,
)
from .hermite import hermite_fn, hermite_poly, hk_limit, hkn
from .quadrature import QuadRule1D, QuadRule2D, fock_rule, gauss_hermite_rule
from .superosc import (
    CANCELLATION_GUARD,
    SuperoscParams,
    SupershiftSpec,
    coefficients,
    fn_limit,
    fn_product,
    fn_sum,
    frequencies,
    ftilde_n,
    supershift_apply,
)
from .verify import SuiteConfig, VerificationReport, run_suite

__version__ = "0.1.0"
