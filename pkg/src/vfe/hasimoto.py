"""Hasimoto transform, gauge phase and NLS certification.

For a filament moving by binormal flow on a space form,

    psi(s, t) = kappa(s, t) exp(i int_0^s tau)

solves ``-i psi_t = psi_ss + |psi|^2 psi / 2 - A(t) psi`` with
``A(t) = (kappa_ss/kappa - tau^2 + kappa^2/2)`` evaluated at the base
point, and ``Psi = exp(i int_0^t A) psi`` solves the focusing cubic NLS
``-i Psi_t = Psi_ss + |Psi|^2 Psi / 2``.

``psi`` is quasi-periodic: going once around the loop multiplies it by
``exp(i Theta)`` with ``Theta`` the total torsion.  Spatial derivatives of
such fields use shifted wavenumbers (see
:func:`vfe.spectral.quasi_periodic_derivative`).
"""

from dataclasses import dataclass, field

import numpy as np

from .dynamics import CFL, evolve, _steps
from .errors import UsageError
from .filament import resample
from .spectral import (
    cumulative_spectral_periodic,
    cumulative_trapezoid_periodic,
    periodic_derivative,
    quasi_periodic_derivative,
)

ORDER_THRESHOLD = 1.8


@dataclass(frozen=True, eq=False)
class HasimotoField:
    psi: np.ndarray
    total_torsion: float
    ds: float
    base_index: int = 0
    gauge_accumulator: float = 0.0

    @property
    def kappa(self):
        return np.abs(self.psi)


def hasimoto_transform(kappa, tau, ds, base_index=0, quadrature="trapezoid"):
    """``psi_j = kappa_j exp(i rho_j)`` with ``rho`` the running integral of tau.

    ``rho`` starts at 0 on ``base_index`` and runs forward around the loop;
    the full-loop integral is returned as ``total_torsion``.  The default
    trapezoid rule is second order at interior points; ``"spectral"``
    integrates the zero-mean part of tau exactly in Fourier space.
    """
    kappa = np.asarray(kappa, dtype=float)
    if not np.all(kappa > 0):
        raise UsageError("hasimoto_transform needs kappa > 0 everywhere")
    if quadrature == "trapezoid":
        rho, theta = cumulative_trapezoid_periodic(tau, ds, base_index)
    elif quadrature == "spectral":
        rho, theta = cumulative_spectral_periodic(tau, ds, base_index)
    else:
        raise UsageError(f"unknown quadrature {quadrature!r}")
    return HasimotoField(kappa * np.exp(1j * rho), theta, ds, int(base_index))


def gauge_phase(kappa, tau, ds, base_index=0):
    """``A = kappa_ss/kappa - tau^2 + kappa^2/2`` at the base sample."""
    kappa = np.asarray(kappa, dtype=float)
    tau = np.asarray(tau, dtype=float)
    b = int(base_index)
    if not kappa[b] > 0:
        raise UsageError("gauge_phase needs kappa > 0 at the base sample")
    k_ss = periodic_derivative(kappa, ds, order=2)
    return float(k_ss[b] / kappa[b] - tau[b] ** 2 + 0.5 * kappa[b] ** 2)


def gauge_accumulator(A_series, dt):
    """Running trapezoid ``int_0^t A`` on a uniform time grid."""
    A = np.asarray(A_series, dtype=float)
    acc = np.zeros_like(A)
    if A.size > 1:
        acc[1:] = np.cumsum(0.5 * dt * (A[1:] + A[:-1]))
    return acc


def corrected_field(history, A_series, dt):
    """``Psi_n = exp(i int_0^{t_n} A) psi_n`` for a time series of psi.

    ``history`` is a sequence of :class:`HasimotoField` or a complex array
    of shape ``(n_times, N)``.  Returns ``(Psi, accumulator)``.
    """
    psi = np.array([h.psi for h in history]) if not isinstance(history, np.ndarray) else history
    A = np.asarray(A_series, dtype=float)
    if psi.ndim != 2 or psi.shape[0] != A.size:
        raise UsageError(f"history has {psi.shape[0]} time levels but A_series has {A.size}")
    acc = gauge_accumulator(A, dt)
    return np.exp(1j * acc)[:, None] * psi, acc


def nls_terms(Psi, ds, theta, base_index=0):
    """``(Psi_ss, |Psi|^2 Psi / 2)`` for quasi-periodic samples (last axis = space)."""
    Psi = np.asarray(Psi, dtype=complex)
    Pss = quasi_periodic_derivative(Psi, ds, theta, order=2, base_index=base_index, axis=-1)
    return Pss, 0.5 * np.abs(Psi) ** 2 * Psi


def nls_residual(Psi, dt, ds, theta, base_index=0):
    """Relative NLS residual at each interior time level.

    ``R = -i Psi_t - Psi_ss - |Psi|^2 Psi / 2`` with a centered time
    difference; the returned norm is ``|R|_2 / (|Psi_ss|_2 + |Psi|^2 Psi/2|_2)``.
    The result has ``n_times - 2`` entries (levels 1 .. n_times-2).
    """
    Psi = np.asarray(Psi, dtype=complex)
    if Psi.ndim != 2 or Psi.shape[0] < 3:
        raise UsageError("nls_residual needs at least 3 time levels")
    Pt = (Psi[2:] - Psi[:-2]) / (2.0 * dt)
    Pss, cubic = nls_terms(Psi[1:-1], ds, theta, base_index)
    R = -1j * Pt - Pss - cubic
    scale = np.linalg.norm(Pss, axis=-1) + np.linalg.norm(cubic, axis=-1)
    return np.linalg.norm(R, axis=-1) / scale


@dataclass
class Trajectory:
    """Time series produced by :func:`transform_flow`; arrays indexed by time level."""

    t: np.ndarray
    s: np.ndarray
    kappa: np.ndarray
    tau: np.ndarray
    psi: np.ndarray
    A: np.ndarray
    gauge: np.ndarray
    total_torsion: np.ndarray
    drift: np.ndarray
    constraint: np.ndarray
    dt: float
    ds: float
    base_index: int = 0
    residual: np.ndarray = None

    @property
    def Psi(self):
        return np.exp(1j * self.gauge)[:, None] * self.psi

    @property
    def theta(self):
        return float(self.total_torsion[0])


def transform_flow(initial, T_end, dt, base_index=0, reproject_every=0, cfl=CFL, quadrature="trapezoid"):
    """Run the binormal flow and build psi, A, Psi and residuals at every step."""
    rows = []
    for state in evolve(initial, T_end, dt, reproject_every=reproject_every, cfl=cfl):
        fr = state.frenet
        h = hasimoto_transform(fr.kappa, fr.tau, state.filament.ds, base_index, quadrature)
        A = gauge_phase(fr.kappa, fr.tau, state.filament.ds, base_index)
        rows.append((state.t, fr.kappa, fr.tau, h.psi, A, h.total_torsion, state.drift,
                     state.filament.constraint_residual(), state.filament.ds))
    _, dt_used = _steps(T_end, dt)
    t, kappa, tau, psi, A, theta, drift, cons, dss = (np.array(c) for c in zip(*rows))
    ds = float(dss[0])
    traj = Trajectory(
        t=t, s=np.arange(kappa.shape[1]) * ds, kappa=kappa, tau=tau, psi=psi, A=A,
        gauge=gauge_accumulator(A, dt_used), total_torsion=theta, drift=drift,
        constraint=cons, dt=dt_used, ds=ds, base_index=int(base_index),
    )
    res = np.full(t.size, np.nan)
    if t.size >= 3:
        res[1:-1] = nls_residual(traj.Psi, dt_used, ds, traj.theta, base_index)
    traj.residual = res
    return traj


@dataclass
class Certification:
    sizes: list
    dts: list
    residuals: list
    orders: list = field(default_factory=list)
    threshold: float = ORDER_THRESHOLD
    trajectories: list = field(default_factory=list, repr=False)

    @property
    def passed(self):
        return bool(self.orders) and all(o >= self.threshold for o in self.orders)

    def summary(self):
        lines = [f"N={n} dt={d:.6g} max_residual={r:.6e}" for n, d, r in zip(self.sizes, self.dts, self.residuals)]
        lines.append("orders=" + ",".join(f"{o:.4f}" for o in self.orders))
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


def certify_nls(initial, T_end, dt, levels=2, base_index=0, threshold=ORDER_THRESHOLD, executor=None):
    """Certify that the corrected field solves NLS, by self-convergence.

    Level ``l`` resamples ``initial`` onto ``N * 2**l`` points and uses
    ``dt / 4**l``.  The figure of merit per level is the maximum relative
    residual over interior time levels; PASS iff every successive order
    ``log2(r_l / r_{l+1})`` is at least ``threshold``.
    """
    if levels < 2:
        raise UsageError("certification needs at least two resolution levels")
    if _steps(T_end, dt)[0] < 2:
        raise UsageError(f"T_end={T_end:g} allows fewer than 2 steps of dt={dt:g}; residuals need 3 time levels")

    def run(lvl):
        f = initial if lvl == 0 else resample(initial, initial.N * 2**lvl)
        return transform_flow(f, T_end, dt / 4**lvl, base_index=base_index * 2**lvl)

    trajs = list(executor.map(run, range(levels))) if executor else [run(l) for l in range(levels)]
    res = [float(np.nanmax(tr.residual)) for tr in trajs]
    orders = [float(np.log2(a / b)) for a, b in zip(res[:-1], res[1:])]
    return Certification([tr.kappa.shape[1] for tr in trajs], [tr.dt for tr in trajs], res, orders,
                         threshold, trajs)


def rebase(Psi, theta, new_base, old_base=0, phase=0.0):
    """Relabel the seam of quasi-periodic samples from ``old_base`` to ``new_base``.

    Samples that move from after the seam to before it pick up the holonomy
    ``exp(i theta)`` (or lose it, for a backward move); a constant ``phase``
    can be folded in.  The result describes the same continuous field, so
    :func:`nls_residual` with ``base_index=new_base`` must agree with the
    original to rounding.
    """
    Psi = np.asarray(Psi, dtype=complex)
    n = Psi.shape[-1]
    j = np.arange(n)
    old_rel = (j - old_base) % n
    new_rel = (j - new_base) % n
    # continuous position measured from old_base; shift it by the base offset
    wraps = np.floor_divide(old_rel - new_rel + ((new_base - old_base) % n), n)
    return Psi * np.exp(1j * (phase - theta * wraps))
