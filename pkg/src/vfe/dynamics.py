"""Binormal flow ``d alpha/dt = kappa B`` and the intrinsic (kappa, tau) system.

The extrinsic integrator moves the sample points with classical RK4,
retracting every stage onto the model.  The intrinsic integrator advances
curvature and torsion directly with

    kappa_t = -2 tau kappa_s - kappa tau_s + kappa (T,B,T,N)
    tau_t   = d/ds (kappa_ss/kappa - tau^2 + kappa^2/2 + (T,B,T,B)) - kappa (B,T,N,B)

where on a space form ``(T,B,T,B) = K0`` and the mixed components vanish.
Running both from the same data is the cross-check in :func:`cross_validate`.
"""

from dataclasses import dataclass, field, replace

import numpy as np

from . import geometry as geo
from .errors import IntrinsicBlowup, NumericalError, StepRejected, UsageError
from .filament import ClosedFilament, frenet, resample, resample_arclength
from .spectral import periodic_derivative

CFL = 0.25
TOL_ARCLENGTH_DRIFT = 1e-5


def max_stable_dt(ds, cfl=CFL):
    """Largest admissible step for the dispersive scaling ``dt <= cfl * ds**2``."""
    return cfl * ds**2


def _check_dt(dt, ds, cfl):
    if not dt >= 0:
        raise UsageError(f"time step must be non-negative, got {dt}")
    bound = max_stable_dt(ds, cfl)
    if dt > bound * (1 + 1e-12):
        raise UsageError(f"dt={dt:.6g} violates the stability bound dt <= {cfl}*ds^2 = {bound:.6g}")


@dataclass(frozen=True, eq=False)
class FlowState:
    """A filament at time ``t`` with its Frenet data and drift bookkeeping.

    ``spacing0`` is the per-sample arclength element at ``t = 0``; ``drift``
    is ``max |spacing - spacing0|`` (length units).
    """

    t: float
    filament: ClosedFilament
    frenet: object
    spacing0: np.ndarray
    drift: float = 0.0

    @classmethod
    def initial(cls, filament, t=0.0):
        return cls(t, filament, frenet(filament), filament.spacing.copy(), 0.0)


def vfe_velocity(state_or_filament):
    """Per-sample binormal velocity ``kappa * B``."""
    fr = state_or_filament.frenet if isinstance(state_or_filament, FlowState) else frenet(state_or_filament)
    return fr.kappa[:, None] * fr.B


def _velocity(M, points):
    fr = frenet(ClosedFilament(M, points))
    return fr.kappa[:, None] * fr.B


def step_extrinsic(state, dt, cfl=CFL, tol_drift=TOL_ARCLENGTH_DRIFT):
    """One RK4 step of the binormal flow.

    Stage points are retracted onto the model before their Frenet frames
    are evaluated; the final combination is retracted as well.

    Raises
    ------
    StepRejected
        If the arclength spacing drifted by more than ``tol_drift * ds``.
    FrenetUndefined
        If a stage curve has a vanishing curvature.
    """
    f = state.filament
    _check_dt(dt, f.ds, cfl)
    if dt == 0:
        return state
    M = f.M
    x = f.points
    k1 = state.frenet.kappa[:, None] * state.frenet.B
    k2 = _velocity(M, geo.retract(M, x + 0.5 * dt * k1))
    k3 = _velocity(M, geo.retract(M, x + 0.5 * dt * k2))
    k4 = _velocity(M, geo.retract(M, x + dt * k3))
    x_new = geo.retract(M, x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4))
    g = ClosedFilament(M, x_new)
    fr = frenet(g)
    drift = float(np.max(np.abs(g.spacing - state.spacing0)))
    t = state.t + dt
    if drift > tol_drift * g.ds:
        raise StepRejected(
            f"arclength drift {drift:.3e} exceeds {tol_drift:g}*ds = {tol_drift * g.ds:.3e} at t={t:.6g}",
            drift=drift,
            tolerance=tol_drift * g.ds,
            t=t,
        )
    return FlowState(t, g, fr, state.spacing0, drift)


def reproject(state):
    """Resample the current filament to uniform arclength (opt-in)."""
    g = resample_arclength(state.filament)
    return FlowState(state.t, g, frenet(g), g.spacing.copy(), 0.0)


def _steps(T_end, dt):
    if not T_end > 0:
        raise UsageError("T_end must be positive")
    if not dt > 0:
        raise UsageError("dt must be positive")
    n = max(1, int(np.ceil(T_end / dt - 1e-9)))
    return n, T_end / n


def evolve(initial, T_end, dt, reproject_every=0, cfl=CFL, tol_drift=TOL_ARCLENGTH_DRIFT):
    """Yield flow states from ``t = 0`` to ``T_end`` (inclusive).

    The step is shrunk to ``T_end / ceil(T_end / dt)`` so the run ends
    exactly at ``T_end``.
    """
    n, dt = _steps(T_end, dt)
    state = initial if isinstance(initial, FlowState) else FlowState.initial(initial)
    yield state
    for i in range(1, n + 1):
        state = step_extrinsic(state, dt, cfl=cfl, tol_drift=tol_drift)
        if reproject_every and i % reproject_every == 0:
            state = reproject(state)
        state = replace(state, t=i * dt)
        yield state


# --- intrinsic system --------------------------------------------------------


@dataclass(frozen=True, eq=False)
class IntrinsicState:
    t: float
    kappa: np.ndarray
    tau: np.ndarray
    K0: float
    ds: float

    @classmethod
    def from_frenet(cls, fr, t=0.0):
        f = fr.filament
        return cls(t, fr.kappa.copy(), fr.tau.copy(), f.M.K0, f.ds)


def intrinsic_rhs(kappa, tau, ds, K0):
    """Right-hand sides ``(kappa_t, tau_t)`` on a space form of curvature ``K0``."""
    D = periodic_derivative
    k_s = D(kappa, ds)
    k_ss = D(kappa, ds, order=2)
    t_s = D(tau, ds)
    # curvature-tensor components along the frame on a space form
    sectional_TBTB = np.full_like(kappa, K0)
    mixed = np.zeros_like(kappa)
    dk = -2.0 * tau * k_s - kappa * t_s + kappa * mixed
    potential = k_ss / kappa - tau**2 + 0.5 * kappa**2
    dtau = D(potential, ds) + D(sectional_TBTB, ds) - kappa * mixed
    return dk, dtau


def step_intrinsic(state, dt, cfl=CFL, kappa_min=None):
    """One RK4 step of the intrinsic (kappa, tau) evolution."""
    _check_dt(dt, state.ds, cfl)
    if dt == 0:
        return state
    ds, K0 = state.ds, state.K0
    if kappa_min is None:
        kappa_min = 1e-6 / (ds * state.kappa.size)

    def rhs(k, t, stage):
        bad = np.flatnonzero(~(k > kappa_min))
        if bad.size:
            raise IntrinsicBlowup(
                f"kappa fell below {kappa_min:.3e} at samples {bad[:10].tolist()} "
                f"(stage {stage}, t={state.t:.6g})",
                t=state.t,
                samples=bad,
            )
        return intrinsic_rhs(k, t, ds, K0)

    k, t = state.kappa, state.tau
    a1, b1 = rhs(k, t, 1)
    a2, b2 = rhs(k + 0.5 * dt * a1, t + 0.5 * dt * b1, 2)
    a3, b3 = rhs(k + 0.5 * dt * a2, t + 0.5 * dt * b2, 3)
    a4, b4 = rhs(k + dt * a3, t + dt * b3, 4)
    k_new = k + (dt / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
    t_new = t + (dt / 6.0) * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
    rhs(k_new, t_new, "final")
    return IntrinsicState(state.t + dt, k_new, t_new, K0, ds)


# --- cross validation ----------------------------------------------------------


@dataclass
class CrossValidation:
    """Extrinsic-vs-intrinsic discrepancies per resolution level.

    ``kappa_diff[l][j]`` is the L-infinity difference of curvature at
    ``times[l][j]`` on level ``l`` (``N = sizes[l]``); likewise ``tau_diff``.
    The last sample of every level is the final time.
    """

    sizes: list
    dts: list
    times: list
    kappa_diff: list
    tau_diff: list
    orders_kappa: list = field(default_factory=list)
    orders_tau: list = field(default_factory=list)

    @property
    def final_kappa(self):
        return np.array([d[-1] for d in self.kappa_diff])

    @property
    def final_tau(self):
        return np.array([d[-1] for d in self.tau_diff])


def _tag(exc, source):
    exc.source = source
    exc.args = (f"[{source}] {exc.args[0] if exc.args else ''}",) + tuple(exc.args[1:])
    return exc


def _side_by_side(f, T_end, dt, n_samples):
    n, dt = _steps(T_end, dt)
    marks = set(np.linspace(0, n, n_samples + 1).round().astype(int)[1:])
    ext = FlowState.initial(f)
    intr = IntrinsicState.from_frenet(ext.frenet)
    times, dk, dt_ = [], [], []
    for i in range(1, n + 1):
        try:
            ext = step_extrinsic(ext, dt)
        except NumericalError as exc:
            raise _tag(exc, "extrinsic")
        try:
            intr = step_intrinsic(intr, dt)
        except NumericalError as exc:
            raise _tag(exc, "intrinsic")
        if i in marks:
            times.append(i * dt)
            dk.append(float(np.max(np.abs(ext.frenet.kappa - intr.kappa))))
            dt_.append(float(np.max(np.abs(ext.frenet.tau - intr.tau))))
    return dt, np.array(times), np.array(dk), np.array(dt_)


def cross_validate(initial, T_end, dt, levels=3, n_samples=5):
    """Run both integrators from the same (kappa, tau) and compare.

    Level ``l`` resamples ``initial`` onto ``N * 2**l`` points and uses
    ``dt / 4**l`` (the dispersive scaling ``dt ~ ds**2``).  Empirical orders
    are ``log2`` of successive final-time discrepancy ratios.
    """
    sizes, dts, dks, dtaus, times = [], [], [], [], []
    for lvl in range(levels):
        f = initial if lvl == 0 else resample(initial, initial.N * 2**lvl)
        used_dt, tl, dk, dtau = _side_by_side(f, T_end, dt / 4**lvl, n_samples)
        times.append(tl)
        sizes.append(f.N)
        dts.append(used_dt)
        dks.append(dk)
        dtaus.append(dtau)
    report = CrossValidation(sizes, dts, times, dks, dtaus)
    for a, b in zip(report.final_kappa[:-1], report.final_kappa[1:]):
        report.orders_kappa.append(float(np.log2(a / b)))
    for a, b in zip(report.final_tau[:-1], report.final_tau[1:]):
        report.orders_tau.append(float(np.log2(a / b)))
    return report
