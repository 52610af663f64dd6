"""Embedded models of the three simply connected space forms.

* ``euclidean``  -- R^3 with the standard inner product, K0 = 0.
* ``spherical``  -- the round sphere ``<p,p> = R^2`` in Euclidean R^4, K0 = 1/R^2.
* ``hyperbolic`` -- the upper sheet of ``<p,p>_L = -R^2`` in Minkowski R^{1,3}
  with signature (-,+,+,+), K0 = -1/R^2.

In every model the Levi-Civita derivative along a curve is "differentiate
the ambient coordinates, then project to the tangent space", so one code
path serves all three geometries.

Orientation: the volume form at ``p`` is ``vol(u, v, x) = det[n, u, v, x]``
with ``n = p/R`` the unit normal (``det[u, v, x]`` in the flat model).  At
the sphere's pole ``e0`` this makes ``(e1, e2, e3)`` positively oriented;
the same holds at the hyperboloid apex.  Flipping the convention negates
torsion and conjugates the Hasimoto field.

All functions broadcast over leading axes: points and vectors are arrays
whose last axis is the ambient dimension.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ManifoldError, UsageError
from .spectral import central_derivative, periodic_derivative

EUCLIDEAN = "euclidean"
SPHERICAL = "spherical"
HYPERBOLIC = "hyperbolic"
KINDS = (EUCLIDEAN, SPHERICAL, HYPERBOLIC)

TOL_MANIFOLD = 1e-9


@dataclass(frozen=True)
class SpaceForm:
    """A constant-curvature model space.

    Parameters
    ----------
    kind : {"euclidean", "spherical", "hyperbolic"}
    K0 : float
        Sectional curvature.  Must be 0 for the flat model, positive for
        the sphere and negative for hyperbolic space.
    """

    kind: str
    K0: float = 0.0

    def __post_init__(self):
        kind = str(self.kind).lower()
        if kind not in KINDS:
            raise UsageError(f"unknown space form {self.kind!r}; expected one of {KINDS}")
        object.__setattr__(self, "kind", kind)
        K0 = float(self.K0)
        if kind == EUCLIDEAN and K0 != 0.0:
            raise UsageError("the euclidean model has K0 = 0")
        if kind == SPHERICAL and not K0 > 0.0:
            raise UsageError("the spherical model needs K0 > 0")
        if kind == HYPERBOLIC and not K0 < 0.0:
            raise UsageError("the hyperbolic model needs K0 < 0")
        object.__setattr__(self, "K0", K0)

    @classmethod
    def euclidean(cls):
        return cls(EUCLIDEAN, 0.0)

    @classmethod
    def sphere(cls, K0=1.0):
        return cls(SPHERICAL, K0)

    @classmethod
    def hyperbolic(cls, K0=-1.0):
        return cls(HYPERBOLIC, K0)

    @property
    def flat(self):
        return self.kind == EUCLIDEAN

    @property
    def dim(self):
        """Ambient dimension."""
        return 3 if self.flat else 4

    @property
    def radius(self):
        return np.inf if self.flat else 1.0 / np.sqrt(abs(self.K0))

    @cached_property
    def gram(self):
        """Diagonal of the ambient bilinear form."""
        g = np.ones(self.dim)
        if self.kind == HYPERBOLIC:
            g[0] = -1.0
        return g

    @property
    def pole(self):
        """Base point used by the generators: the origin, pole or apex."""
        p = np.zeros(self.dim)
        if not self.flat:
            p[0] = self.radius
        return p

    def inner(self, u, v):
        """Ambient pairing of coordinate vectors (Euclidean or Minkowski)."""
        return np.sum(self.gram * np.asarray(u) * np.asarray(v), axis=-1)

    def constraint_residual(self, p):
        """Relative violation of the model equation, per point."""
        p = np.asarray(p, dtype=float)
        if self.flat:
            return np.zeros(p.shape[:-1])
        R2 = self.radius**2
        target = R2 if self.kind == SPHERICAL else -R2
        res = np.abs(self.inner(p, p) - target) / R2
        if self.kind == HYPERBOLIC:
            res = np.where(p[..., 0] > 0, res, np.inf)
        return res


@dataclass(frozen=True)
class TangentVector:
    """A tangent vector together with its base point."""

    base: np.ndarray
    coords: np.ndarray


def _coords(x):
    return x.coords if isinstance(x, TangentVector) else np.asarray(x, dtype=float)


def metric(M, u, v):
    """Riemannian metric of two tangent vectors.

    Accepts raw coordinate arrays or :class:`TangentVector` instances; for
    the latter the base points must agree.
    """
    if isinstance(u, TangentVector) and isinstance(v, TangentVector):
        if u.base.shape != v.base.shape or not np.allclose(u.base, v.base, rtol=0, atol=1e-12):
            raise UsageError("metric: tangent vectors have different base points")
    return M.inner(_coords(u), _coords(v))


def norm(M, u):
    return np.sqrt(np.maximum(metric(M, u, u), 0.0))


def project_to_tangent(M, p, w):
    """Remove the component of ``w`` along the position vector ``p``."""
    w = np.asarray(w)
    if M.flat:
        return w.copy()
    p = np.asarray(p, dtype=float)
    coef = M.inner(w, p) / M.inner(p, p)
    return w - coef[..., None] * p


def _triple(a, b, c):
    return np.einsum("...i,...i->...", a, np.cross(b, c))


def cross(M, p, u, v):
    """Oriented cross product of tangent vectors at ``p``.

    Returns the tangent ``w`` with ``metric(w, x) = vol(u, v, x)`` for every
    tangent ``x``.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if M.flat:
        return np.cross(u, v)
    p = np.asarray(p, dtype=float)
    n = p / M.radius
    n, u, v = np.broadcast_arrays(n, u, v)
    cols = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]]
    # c_k = det[n, u, v, e_k], expanded along the last row
    c = np.stack(
        [(-1) ** (3 + k) * _triple(n[..., idx], u[..., idx], v[..., idx]) for k, idx in enumerate(cols)],
        axis=-1,
    )
    return M.gram * c


def covariant_derivative(M, points, field, ds, scheme="spectral"):
    """Covariant derivative ``D/ds`` of a periodic vector field along a closed curve.

    The coordinate functions are differentiated on the periodic grid
    (spectrally by default, or with centered differences) and the result
    is projected to the tangent space at each sample.  Complex fields are
    handled componentwise.
    """
    field = np.asarray(field)
    if field.shape[0] < 4:
        raise UsageError("covariant_derivative needs at least 4 samples")
    if scheme == "spectral":
        d = periodic_derivative(field, ds, order=1, axis=0)
    elif scheme == "central":
        d = central_derivative(field, ds, order=1, axis=0)
    else:
        raise UsageError(f"unknown differentiation scheme {scheme!r}")
    return project_to_tangent(M, points, d)


def riemann(M, X, Y, W, Z):
    """Curvature 4-tensor ``(X,Y,W,Z) = K0 (<X,W><Y,Z> - <X,Z><Y,W>)``."""
    g = M.inner
    return M.K0 * (g(X, W) * g(Y, Z) - g(X, Z) * g(Y, W))


def retract(M, p):
    """Map an ambient point near the model back onto it (radial rescaling)."""
    p = np.asarray(p, dtype=float)
    if M.flat:
        return p.copy()
    q = M.inner(p, p)
    R = M.radius
    if M.kind == SPHERICAL:
        scale2 = q / R**2
    else:
        scale2 = -q / R**2
    bad = ~(scale2 > 1e-2) | ~(scale2 < 1e2)
    if M.kind == HYPERBOLIC:
        bad = bad | ~(p[..., 0] > 0)
    if np.any(bad):
        worst = np.asarray(scale2)[bad] if np.ndim(scale2) else scale2
        raise ManifoldError(
            f"cannot retract onto the {M.kind} model: normalised squared norm "
            f"{np.atleast_1d(worst)[:5]} (expected close to 1; near 0 means the light cone "
            f"or the origin)"
        )
    return p / np.sqrt(scale2)[..., None]


def distance(M, p, q):
    """Geodesic distance, computed from the chord for accuracy at short range."""
    d = np.asarray(p, dtype=float) - np.asarray(q, dtype=float)
    chord2 = np.maximum(M.inner(d, d), 0.0)
    if M.flat:
        return np.sqrt(chord2)
    R = M.radius
    half = np.sqrt(chord2) / (2.0 * R)
    if M.kind == SPHERICAL:
        return 2.0 * R * np.arcsin(np.minimum(half, 1.0))
    return 2.0 * R * np.arcsinh(half)


def exp_map(M, p, v):
    """Riemannian exponential map."""
    p = np.asarray(p, dtype=float)
    v = np.asarray(v, dtype=float)
    if M.flat:
        return p + v
    R = M.radius
    r = norm(M, v)[..., None]
    safe = np.where(r > 0, r, 1.0)
    if M.kind == SPHERICAL:
        c, s = np.cos(r / R), np.sin(r / R)
    else:
        c, s = np.cosh(r / R), np.sinh(r / R)
    return c * p + np.where(r > 0, R * s / safe, 1.0) * v


def log_map(M, p, q):
    """Inverse of :func:`exp_map` for nearby points."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if M.flat:
        return q - p
    w = project_to_tangent(M, p, q - p)
    wn = norm(M, w)
    d = distance(M, p, q)
    return w * (d / np.where(wn > 0, wn, 1.0))[..., None]


def transport_along_geodesic(M, p, v, w):
    """Parallel transport of ``w`` from ``p`` to ``exp_map(M, p, v)``.

    Closed form: the component of ``w`` along the geodesic direction
    follows the geodesic velocity, the orthogonal part is unchanged.
    """
    p, v, w = (np.asarray(a, dtype=float) for a in (p, v, w))
    if M.flat:
        return w.copy()
    R = M.radius
    r = norm(M, v)
    if r == 0:
        return w.copy()
    u = v / r
    a = M.inner(w, u)
    if M.kind == SPHERICAL:
        vel = -np.sin(r / R) * p / R + np.cos(r / R) * u
    else:
        vel = np.sinh(r / R) * p / R + np.cosh(r / R) * u
    return w - a * u + a * vel


def holonomy_curvature(M, p, e1, e2, h):
    """Finite-size estimate of the sectional curvature of the plane (e1, e2).

    A vector is parallel transported around the geodesic square of side
    ``h`` spanned by the orthonormal tangent pair (e1, e2) at ``p``; the
    square is closed by a fifth geodesic segment.  The rotation angle of
    the transported vector divided by ``h**2`` estimates the curvature,
    with an O(h^2) relative error from the enclosed area.
    """
    p = np.asarray(p, dtype=float)
    e1 = np.asarray(e1, dtype=float)
    e2 = np.asarray(e2, dtype=float)
    x = p
    d1, d2 = e1.copy(), e2.copy()
    carried = e1.copy()
    for which, sign in ((0, 1.0), (1, 1.0), (0, -1.0), (1, -1.0)):
        # edge directions are carried along with the walker
        step = sign * (d1 if which == 0 else d2)
        v = h * step / norm(M, step)
        nxt = exp_map(M, x, v)
        d1 = transport_along_geodesic(M, x, v, d1)
        d2 = transport_along_geodesic(M, x, v, d2)
        carried = transport_along_geodesic(M, x, v, carried)
        x = nxt
    v = log_map(M, x, p)
    carried = transport_along_geodesic(M, x, v, carried)
    angle = np.arctan2(metric(M, carried, e2), metric(M, carried, e1))
    return float(angle / h**2)
