"""Exception hierarchy shared by every module."""


class SuperBargmannError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(SuperBargmannError, ValueError):
    """An argument lies outside the domain an operation supports."""


class PrecisionExhaustedError(ParameterError):
    """Cancellation in a coefficient-weighted sum would swamp double precision.

    Raised when the amplification factor sum_j |C_j(n, a)| (equal to a**n for
    real a > 1) exceeds the configured guard.
    """

    def __init__(self, n, a, amplification, guard):
        self.n = n
        self.a = a
        self.amplification = amplification
        self.guard = guard
        super().__init__(
            f"precision exhausted: sum |C_j(n={n}, a={a})| = {amplification:.3e} "
            f"exceeds the cancellation guard {guard:.1e}; pass allow_unstable=True "
            "to evaluate anyway"
        )


class EvaluationError(SuperBargmannError, ArithmeticError):
    """A function handle returned a non-finite value at a required point."""

    def __init__(self, message, node=None):
        self.node = node
        super().__init__(message if node is None else f"{message} (at {node!r})")


class QuadratureNonConvergence(SuperBargmannError, ArithmeticError):
    """Doubling the quadrature order changed the result beyond tolerance."""

    def __init__(self, coarse, fine, order, rtol):
        self.coarse = coarse
        self.fine = fine
        self.order = order
        self.rtol = rtol
        super().__init__(
            f"quadrature did not converge: order {order} gave {coarse!r}, "
            f"order {2 * order} gave {fine!r} (rtol {rtol:.1e})"
        )
