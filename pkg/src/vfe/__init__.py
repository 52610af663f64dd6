"""Binormal flow of closed filaments in space forms.

The package evolves a closed curve by ``d alpha/dt = kappa B`` in Euclidean
space, the round sphere or hyperbolic space, and checks the evolution
against the cubic nonlinear Schroedinger equation through the Hasimoto
transform.
"""

from .errors import (
    FrenetUndefined,
    GeometryError,
    IntrinsicBlowup,
    ManifoldError,
    NumericalError,
    StepRejected,
    UsageError,
    VFEError,
)
from .geometry import SpaceForm, TangentVector, cross, metric, norm, project_to_tangent, retract
from .filament import ClosedFilament, FrenetField, frenet, resample, resample_arclength, sample_curve
from .initial import GENERATORS, generate_initial
from .dynamics import (
    FlowState,
    IntrinsicState,
    cross_validate,
    evolve,
    max_stable_dt,
    step_extrinsic,
    step_intrinsic,
)
from .hasimoto import certify_nls, gauge_phase, hasimoto_transform, nls_residual, transform_flow
from .frames import (
    check_J_eigenvector,
    ehresmann_coefficient,
    hasimoto_frame_coefficient,
    normal_frame,
    parallel_phase,
)

__all__ = [
    "FrenetUndefined",
    "GeometryError",
    "IntrinsicBlowup",
    "ManifoldError",
    "NumericalError",
    "StepRejected",
    "UsageError",
    "VFEError",
    "SpaceForm",
    "TangentVector",
    "cross",
    "metric",
    "norm",
    "project_to_tangent",
    "retract",
    "ClosedFilament",
    "FrenetField",
    "frenet",
    "resample",
    "resample_arclength",
    "sample_curve",
    "GENERATORS",
    "generate_initial",
    "FlowState",
    "IntrinsicState",
    "cross_validate",
    "evolve",
    "max_stable_dt",
    "step_extrinsic",
    "step_intrinsic",
    "certify_nls",
    "gauge_phase",
    "hasimoto_transform",
    "nls_residual",
    "transform_flow",
    "check_J_eigenvector",
    "ehresmann_coefficient",
    "hasimoto_frame_coefficient",
    "normal_frame",
    "parallel_phase",
]

__version__ = "0.1.0"
