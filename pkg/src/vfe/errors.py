"""Exception hierarchy.

Usage errors derive from ``ValueError``; everything raised because a
numerical computation left its domain of validity derives from
``NumericalError``.  The CLI maps the two families to exit codes 1 and 3.
"""


class VFEError(Exception):
    pass


class UsageError(VFEError, ValueError):
    """Bad arguments, mismatched shapes or base points, invalid config."""


class NumericalError(VFEError, ArithmeticError):
    pass


class ManifoldError(NumericalError):
    """A point is too far from the model to be retracted."""


class GeometryError(NumericalError):
    """Degenerate or self-intersecting closed curve."""


class FrenetUndefined(NumericalError):
    """Curvature fell below ``kappa_min``; the principal normal is undefined."""

    def __init__(self, samples, kappa_min, kappa_values=None):
        self.samples = [int(i) for i in samples]
        self.kappa_min = float(kappa_min)
        self.kappa_values = kappa_values
        shown = self.samples[:10]
        more = "" if len(self.samples) <= 10 else f" (+{len(self.samples) - 10} more)"
        super().__init__(
            f"curvature below kappa_min={self.kappa_min:.3e} at samples {shown}{more}"
        )


class StepRejected(NumericalError):
    """Arclength spacing drifted beyond tolerance during a time step."""

    def __init__(self, message, drift=None, tolerance=None, t=None):
        self.drift = drift
        self.tolerance = tolerance
        self.t = t
        super().__init__(message)


class IntrinsicBlowup(NumericalError):
    """Curvature crossed ``kappa_min`` while integrating the (kappa, tau) system."""

    def __init__(self, message, t=None, samples=None):
        self.t = t
        self.samples = samples
        super().__init__(message)
