"""Moving frames along a filament and their connection coefficients.

A moving frame of rank ``k`` is a loop of ``k`` complexified tangent
vectors, orthonormal for the Hermitian form

    h(u, v) = <u_re, v_re> + <u_im, v_im> + i (<u_im, v_re> - <u_re, v_im>),

which is linear in ``u`` and conjugate-linear in ``v``.  Its connection
coefficient at each sample is the ``k x k`` matrix
``m[i, j] = h(D/ds A^j, A^i)``, skew-Hermitian for a metric connection.

Frames here may be quasi-periodic: vector ``a`` is allowed to satisfy
``A^a(s + L) = exp(i seam_phase[a]) A^a(s)``, which is what a phase
``exp(i int tau)`` produces when the total torsion is not a multiple of
``2 pi``.

The default differentiation scheme is second-order centered differences;
``scheme="spectral"`` uses the filament's spectral operator instead.
"""

from dataclasses import dataclass

import numpy as np

from . import geometry as geo
from .errors import UsageError
from .spectral import cumulative_trapezoid_periodic, quasi_periodic_central, quasi_periodic_derivative

TOL_ORTHONORMAL = 1e-8


def hermitian(M, u, v):
    """Sesquilinear extension of the metric (conjugate-linear in ``v``)."""
    return np.sum(M.gram * np.asarray(u) * np.conj(np.asarray(v)), axis=-1)


@dataclass(frozen=True, eq=False)
class MovingFrame:
    """``vectors[j, a]`` is the ``a``-th frame vector at sample ``j``."""

    filament: object
    vectors: np.ndarray
    seam_phase: np.ndarray = None
    base_index: int = 0

    def __post_init__(self):
        vec = np.asarray(self.vectors, dtype=complex)
        if vec.ndim != 3 or vec.shape[0] != self.filament.N or vec.shape[2] != self.filament.M.dim:
            raise UsageError(f"frame vectors must have shape (N, rank, {self.filament.M.dim}), got {vec.shape}")
        object.__setattr__(self, "vectors", vec)
        phase = np.zeros(vec.shape[1]) if self.seam_phase is None else np.asarray(self.seam_phase, float)
        if phase.shape != (vec.shape[1],):
            raise UsageError("seam_phase needs one entry per frame vector")
        object.__setattr__(self, "seam_phase", phase)

    @property
    def rank(self):
        return self.vectors.shape[1]

    def gram(self):
        """``G[j, a, b] = h(A^a, A^b)`` per sample."""
        M = self.filament.M
        A = self.vectors
        return hermitian(M, A[:, :, None, :], A[:, None, :, :])

    def orthonormality_defect(self):
        return float(np.max(np.abs(self.gram() - np.eye(self.rank))))


@dataclass(frozen=True, eq=False)
class ConnectionCoefficient:
    """Per-sample skew-Hermitian matrices plus the raw skew defect."""

    matrices: np.ndarray
    skew_defect: float

    def entry(self, i, j):
        return self.matrices[:, i, j]


def frame_derivative(frame, scheme="central"):
    """``D/ds`` of every frame vector, per unit arclength."""
    f = frame.filament
    M, pts, ds = f.M, f.points, f.ds
    speed = f.spacing / ds
    out = np.empty_like(frame.vectors)
    for a in range(frame.rank):
        V = frame.vectors[:, a, :]
        if scheme == "central":
            d = quasi_periodic_central(V, ds, frame.seam_phase[a], base_index=frame.base_index)
        elif scheme == "spectral":
            d = quasi_periodic_derivative(V, ds, frame.seam_phase[a], base_index=frame.base_index)
        else:
            raise UsageError(f"unknown differentiation scheme {scheme!r}")
        out[:, a, :] = geo.project_to_tangent(M, pts, d) / speed[:, None]
    return out


def ehresmann_coefficient(frame, scheme="central", tol=TOL_ORTHONORMAL):
    """Connection coefficient ``m[i, j] = h(D A^j, A^i)`` along the filament.

    The raw matrices are skew-Hermitianised by ``(m - m^*)/2``; the largest
    pre-symmetrisation defect ``|m + m^*|`` is kept as a diagnostic.

    Raises
    ------
    UsageError
        If the frame is not Hermitian-orthonormal within ``tol``.
    """
    defect = frame.orthonormality_defect()
    if defect > tol:
        raise UsageError(f"frame is not orthonormal (defect {defect:.3e})")
    M = frame.filament.M
    A = frame.vectors
    dA = frame_derivative(frame, scheme)
    # m[n, i, j] = h(dA^j, A^i)
    m = hermitian(M, dA[:, None, :, :], A[:, :, None, :])
    mh = np.conj(np.swapaxes(m, 1, 2))
    skew = float(np.max(np.abs(m + mh)))
    return ConnectionCoefficient(0.5 * (m - mh), skew)


def parallel_phase(tau, ds, base_index=0):
    """Running integral of torsion from ``base_index`` (trapezoid rule).

    Returns ``(rho, total)`` where ``total`` is the full-loop integral;
    the frame ``exp(i rho) (N + iB)/sqrt(2)`` has seam phase ``total``.
    """
    return cumulative_trapezoid_periodic(tau, ds, base_index)


def frenet_frame(fr):
    """The real rank-3 frame ``(T, N, B)``."""
    return MovingFrame(fr.filament, np.stack([fr.T, fr.N, fr.B], axis=1))


def normal_frame(fr, rho=None, seam_phase=0.0, base_index=0):
    """Rank-1 frame ``exp(i rho) (N + iB)/sqrt(2)`` of the line bundle span{N + iB}."""
    rho = np.zeros(fr.filament.N) if rho is None else np.asarray(rho, float)
    V = np.exp(1j * rho)[:, None] * (fr.N + 1j * fr.B) / np.sqrt(2.0)
    return MovingFrame(fr.filament, V[:, None, :], [seam_phase], base_index)


def hasimoto_frame(fr, base_index=0):
    """Rank-2 frame ``{T, exp(i int tau) (N + iB)/sqrt(2)}``."""
    rho, theta = parallel_phase(fr.tau, fr.filament.ds, base_index)
    V = np.exp(1j * rho)[:, None] * (fr.N + 1j * fr.B) / np.sqrt(2.0)
    return MovingFrame(fr.filament, np.stack([fr.T.astype(complex), V], axis=1), [0.0, theta], base_index)


def hasimoto_frame_coefficient(fr, scheme="central", base_index=0):
    """Connection coefficient of :func:`hasimoto_frame`.

    Up to discretisation error this equals
    ``[[0, -psi], [conj(psi), 0]] / sqrt(2)`` with ``psi`` the Hasimoto field.
    """
    return ehresmann_coefficient(hasimoto_frame(fr, base_index), scheme)


def check_J_eigenvector(fr, B=None):
    """Largest relative defect ``|J(N + iB) + i(N + iB)| / |N + iB|``.

    ``J v = cross(T, v)`` is the rotation of the normal plane.  ``B`` may
    be overridden (e.g. with ``-fr.B``) to probe the eigenvalue sign.
    """
    f = fr.filament
    M, pts = f.M, f.points
    B = fr.B if B is None else np.asarray(B)
    v = fr.N + 1j * B
    Jv = geo.cross(M, pts, fr.T, v.real) + 1j * geo.cross(M, pts, fr.T, v.imag)
    r = Jv + 1j * v
    num = np.sqrt(np.maximum(np.real(hermitian(M, r, r)), 0.0))
    den = np.sqrt(np.real(hermitian(M, v, v)))
    return float(np.max(num / den))
