"""Discrete closed curves, arclength resampling and Frenet data.

A :class:`ClosedFilament` stores ``N`` samples of a smooth closed curve on
a uniform periodic grid.  All derivatives are spectral in the sample
index, so a curve sampled at uniform arclength has ``|d alpha/ds| = 1`` to
spectral accuracy; the local spacing used throughout is
``sigma_j = |d alpha/dj|`` evaluated that way.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import geometry as geo
from .errors import FrenetUndefined, GeometryError, ManifoldError, UsageError
from .spectral import (
    MIN_SAMPLES,
    fourier_coefficients,
    fourier_evaluate,
    periodic_derivative,
    upsample,
)

__all__ = [
    "ClosedFilament",
    "FrenetField",
    "frenet",
    "frenet_formula_residuals",
    "periodic_derivative",
    "resample",
    "resample_arclength",
    "sample_curve",
]

KAPPA_MIN_FACTOR = 1e-6
TOL_ARCLENGTH = 1e-6


@dataclass(frozen=True, eq=False)
class ClosedFilament:
    """Periodic samples of an embedded closed curve in a space form.

    Parameters
    ----------
    M : SpaceForm
    points : ndarray, shape (N, M.dim)
    parameter : ndarray, optional
        Generator parameter of each sample, when the curve came from an
        analytic parameterization.
    """

    M: geo.SpaceForm
    points: np.ndarray
    parameter: np.ndarray = None

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != self.M.dim:
            raise UsageError(f"points must have shape (N, {self.M.dim}), got {pts.shape}")
        if pts.shape[0] < MIN_SAMPLES:
            raise UsageError(f"a filament needs N >= {MIN_SAMPLES} samples, got {pts.shape[0]}")
        if not np.all(np.isfinite(pts)):
            raise ManifoldError("filament has non-finite coordinates")
        res = self.M.constraint_residual(pts)
        if np.max(res) > geo.TOL_MANIFOLD:
            raise ManifoldError(
                f"points violate the {self.M.kind} model constraint (max residual {np.max(res):.3e})"
            )
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def N(self):
        return self.points.shape[0]

    @cached_property
    def spacing(self):
        """Local arclength element per sample index (spectral)."""
        d = periodic_derivative(self.points, 1.0)
        d = geo.project_to_tangent(self.M, self.points, d)
        return geo.norm(self.M, d)

    @cached_property
    def L(self):
        return float(np.sum(self.spacing))

    @property
    def ds(self):
        return self.L / self.N

    @property
    def s(self):
        return np.arange(self.N) * self.ds

    @property
    def kappa_min(self):
        return KAPPA_MIN_FACTOR / self.L

    def spacing_deviation(self):
        """``max |sigma_j - ds|``: zero for a uniform-arclength sampling."""
        return float(np.max(np.abs(self.spacing - self.ds)))

    def chord_lengths(self):
        return geo.distance(self.M, self.points, np.roll(self.points, -1, axis=0))

    def constraint_residual(self):
        return float(np.max(self.M.constraint_residual(self.points)))

    def reversed(self):
        """Same curve traversed backwards, keeping sample 0 in place."""
        idx = (-np.arange(self.N)) % self.N
        return ClosedFilament(self.M, self.points[idx])


@dataclass(frozen=True, eq=False)
class FrenetField:
    """Per-sample Frenet frame with curvature and torsion."""

    filament: ClosedFilament
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray
    kappa: np.ndarray
    tau: np.ndarray
    speed: np.ndarray

    @property
    def ds(self):
        return self.filament.ds

    def orthonormality_defect(self):
        M = self.filament.M
        vecs = (self.T, self.N, self.B)
        worst = 0.0
        for i, X in enumerate(vecs):
            for j, Y in enumerate(vecs):
                worst = max(worst, float(np.max(np.abs(geo.metric(M, X, Y) - (i == j)))))
        return worst


def _unit_derivative(M, points, field, ds, speed, scheme="spectral"):
    return geo.covariant_derivative(M, points, field, ds, scheme=scheme) / speed[:, None]


def frenet(f, kappa_min=None):
    """Frenet frame, curvature and torsion of a closed filament.

    ``N`` is the normalised trace of the second fundamental form (the part
    of ``D/ds T`` normal to ``T``), ``B = cross(T, N)`` and
    ``tau = <D/ds N, B>``.  Derivatives are divided by the local speed, so
    the result does not depend on small departures from uniform arclength.

    Raises
    ------
    FrenetUndefined
        If ``kappa < kappa_min`` (default ``1e-6 / L``) at any sample.
    """
    M = f.M
    pts = f.points
    ds = f.ds
    if kappa_min is None:
        kappa_min = f.kappa_min

    d1 = geo.project_to_tangent(M, pts, periodic_derivative(pts, ds))
    speed = geo.norm(M, d1)
    T = d1 / speed[:, None]

    dT = _unit_derivative(M, pts, T, ds, speed)
    curv = dT - geo.metric(M, dT, T)[:, None] * T
    kappa = geo.norm(M, curv)
    bad = np.flatnonzero(~(kappa > kappa_min))
    if bad.size:
        raise FrenetUndefined(bad, kappa_min, kappa[bad])
    N = curv / kappa[:, None]
    B = geo.cross(M, pts, T, N)

    dN = _unit_derivative(M, pts, N, ds, speed)
    tau = geo.metric(M, dN, B)
    return FrenetField(f, T, N, B, kappa, tau, speed)


def frenet_formula_residuals(fr, scheme="central"):
    """Per-sample norms of the three Frenet-formula residuals.

    Returns ``(|DT - kN|, |DN + kT - tB|, |DB + tN|)`` with ``D/ds``
    evaluated by ``scheme``.  The default centered scheme is independent of
    the spectral operator used to build the frame, so the residual decays
    at its truncation order (two) on smooth curves.
    """
    f = fr.filament
    M, pts, ds = f.M, f.points, f.ds
    k = fr.kappa[:, None]
    t = fr.tau[:, None]
    dT = _unit_derivative(M, pts, fr.T, ds, fr.speed, scheme)
    dN = _unit_derivative(M, pts, fr.N, ds, fr.speed, scheme)
    dB = _unit_derivative(M, pts, fr.B, ds, fr.speed, scheme)
    return (
        geo.norm(M, dT - k * fr.N),
        geo.norm(M, dN + k * fr.T - t * fr.B),
        geo.norm(M, dB + t * fr.N),
    )


# --- arclength parameterisation -------------------------------------------


def _uniform_arclength_parameters(fine, M, n, tol=1e-14, max_iter=50):
    """Parameters ``theta_j`` splitting a closed curve into ``n`` equal arcs.

    ``fine`` holds samples on the uniform grid ``theta = 2*pi*j/Q``.  The
    speed is differentiated spectrally, its antiderivative is a Fourier
    series, and each target arclength is found by Newton iteration.
    """
    Q = fine.shape[0]
    dtheta = 2.0 * np.pi / Q
    d = periodic_derivative(fine, dtheta)
    speed = np.sqrt(np.maximum(M.inner(d, d), 0.0))
    if np.min(speed) <= 1e-14 * np.max(speed):
        raise GeometryError("curve has a stationary point (zero speed)")

    c = np.fft.fft(speed) / Q
    k = np.fft.fftfreq(Q, d=1.0 / Q)
    keep = np.abs(c) > 1e-17 * np.abs(c[0])
    keep[0] = False
    ck, kk = c[keep], k[keep]
    mean = c[0].real
    L = 2.0 * np.pi * mean

    def arclength(theta):
        ph = np.exp(1j * np.outer(theta, kk))
        return mean * theta + ((ph - 1.0) @ (ck / (1j * kk))).real

    def rate(theta):
        return mean + (np.exp(1j * np.outer(theta, kk)) @ ck).real

    grid = np.arange(Q + 1) * dtheta
    table = np.concatenate([[0.0], np.cumsum(0.5 * dtheta * (speed + np.roll(speed, -1)))])
    table *= L / table[-1]
    targets = np.arange(n) * (L / n)
    theta = np.interp(targets, table, grid)
    for _ in range(max_iter):
        err = arclength(theta) - targets
        theta = theta - err / rate(theta)
        if np.max(np.abs(err)) < tol * L:
            break
    else:
        raise GeometryError("arclength inversion did not converge")
    return theta


def sample_curve(M, curve, n, oversample=16, min_fine=1024):
    """Sample an analytic closed curve at ``n`` points of uniform arclength.

    ``curve`` maps parameters in ``[0, 2*pi)`` to ambient points; it must be
    smooth and ``2*pi``-periodic.  The returned filament records the
    parameter of each sample.
    """
    Q = max(oversample * n, min_fine)
    fine = np.asarray(curve(np.arange(Q) * (2.0 * np.pi / Q)), dtype=float)
    theta = _uniform_arclength_parameters(fine, M, n)
    pts = geo.retract(M, np.asarray(curve(theta), dtype=float))
    return ClosedFilament(M, pts, parameter=theta)


def _check_embedded(f):
    chords = f.chord_lengths()
    if np.min(chords) <= 1e-12 * max(np.sum(chords), 1e-300):
        raise GeometryError("degenerate filament: repeated consecutive points")
    N = f.N
    thresh = 0.5 * np.median(chords)
    idx = np.arange(N)
    for start in range(0, N, 256):
        rows = idx[start:start + 256]
        d = geo.distance(f.M, f.points[rows, None, :], f.points[None, :, :])
        sep = np.abs(rows[:, None] - idx[None, :])
        sep = np.minimum(sep, N - sep)
        hit = (d < thresh) & (sep >= 3)
        if np.any(hit):
            i, j = np.argwhere(hit)[0]
            raise GeometryError(
                f"self-intersecting filament: samples {rows[i]} and {j} are "
                f"{d[i, j]:.3e} apart (median spacing {np.median(chords):.3e})"
            )


def resample(f, n=None, oversample=8):
    """Band-limited resampling of ``f`` onto ``n`` points of uniform arclength.

    The samples are interpolated by their trigonometric polynomial in the
    index parameter; the interpolant is reparameterised by arclength and
    evaluated at the new parameters, then retracted onto the model.
    """
    n = f.N if n is None else int(n)
    if n < MIN_SAMPLES:
        raise UsageError(f"need n >= {MIN_SAMPLES}")
    _check_embedded(f)
    fine = upsample(f.points, oversample * max(n, f.N))
    theta = _uniform_arclength_parameters(fine, f.M, n)
    pts = fourier_evaluate(fourier_coefficients(f.points), theta)
    return ClosedFilament(f.M, geo.retract(f.M, pts))


def resample_arclength(f):
    """Uniform-arclength resampling with the sample count preserved."""
    return resample(f, f.N)
