"""Initial-condition generators.

Every generator builds an analytic closed curve and samples it at uniform
arclength with :func:`vfe.filament.sample_curve`.  Curves in the curved
models are images of planar/space curves under the exponential map at the
model's pole, so ``r`` is a geodesic radius there.
"""

import numpy as np

from . import geometry as geo
from .errors import UsageError
from .filament import frenet, sample_curve


def _tangent_frame(M):
    """Orthonormal tangent basis (e_x, e_y, e_z) at the pole."""
    eye = np.eye(M.dim)
    off = 0 if M.flat else 1
    return eye[off], eye[off + 1], eye[off + 2]


def _lift(M, v):
    return geo.exp_map(M, M.pole, v)


def circle(M, N, r=1.0):
    return perturbed_circle(M, N, r=r, eps=0.0)


def perturbed_circle(M, N, r=1.0, m=3, eps=None, height=0.0):
    """Circle of (geodesic) radius ``r`` with a mode-``m`` radial wobble.

    ``eps`` defaults to ``0.05 * r``; ``height`` adds an out-of-plane
    ``height * sin(m*theta)`` component, which gives the curve torsion.
    """
    if eps is None:
        eps = 0.05 * r
    if r <= 0:
        raise UsageError("circle radius must be positive")
    if M.kind == geo.SPHERICAL and r + abs(eps) >= 0.5 * np.pi * M.radius:
        raise UsageError("spherical circle must stay inside a hemisphere (kappa > 0)")
    ex, ey, ez = _tangent_frame(M)

    def curve(theta):
        theta = np.asarray(theta)[:, None]
        rad = r + eps * np.cos(m * theta)
        v = rad * (np.cos(theta) * ex + np.sin(theta) * ey) + height * np.sin(m * theta) * ez
        return _lift(M, v)

    return sample_curve(M, curve, N)


def torus_knot(M, N, p=2, q=3, R0=1.0, r0=0.4):
    """``(p, q)`` torus knot on the torus of radii ``R0 > r0``."""
    if not R0 > r0 > 0:
        raise UsageError("torus_knot needs R0 > r0 > 0")
    if np.gcd(int(p), int(q)) != 1:
        raise UsageError("torus_knot needs coprime p, q")
    ex, ey, ez = _tangent_frame(M)

    def curve(theta):
        theta = np.asarray(theta)[:, None]
        rad = R0 + r0 * np.cos(q * theta)
        v = rad * (np.cos(p * theta) * ex + np.sin(p * theta) * ey) + r0 * np.sin(q * theta) * ez
        return _lift(M, v)

    return sample_curve(M, curve, N)


def hopf_circle(M, N, p=1, q=2, phi=np.pi / 4, eps=0.0, m=3):
    """Constant-curvature, constant-torsion loop on a Clifford torus of S^3.

    The curve ``R (cos phi e^{i p t}, sin phi e^{i q t})`` is an orbit of a
    one-parameter group of isometries, so kappa and tau are constant.  With
    ``p == q`` it would be a Hopf fibre, a great circle with zero
    curvature, hence the default ``(1, 2)``.  ``eps`` perturbs the torus
    latitude by ``eps * cos(m t)``.
    """
    if M.kind != geo.SPHERICAL:
        raise UsageError("hopf_circle is defined on the spherical model only")
    if p == q:
        raise UsageError("hopf_circle with p == q is a great circle (kappa = 0)")
    if np.gcd(int(p), int(q)) != 1:
        raise UsageError("hopf_circle needs coprime p, q")
    R = M.radius

    def curve(theta):
        theta = np.asarray(theta)
        lat = phi + eps * np.cos(m * theta)
        return R * np.stack(
            [
                np.cos(lat) * np.cos(p * theta),
                np.cos(lat) * np.sin(p * theta),
                np.sin(lat) * np.cos(q * theta),
                np.sin(lat) * np.sin(q * theta),
            ],
            axis=-1,
        )

    return sample_curve(M, curve, N)


def hyperbolic_circle(M, N, r=1.0, m=3, eps=0.0, height=0.0):
    """Geodesic circle in a totally geodesic plane of hyperbolic space."""
    if M.kind != geo.HYPERBOLIC:
        raise UsageError("hyperbolic_circle is defined on the hyperbolic model only")
    return perturbed_circle(M, N, r=r, m=m, eps=eps, height=height)


GENERATORS = {
    "circle": circle,
    "perturbed_circle": perturbed_circle,
    "torus_knot": torus_knot,
    "hopf_circle": hopf_circle,
    "hyperbolic_circle": hyperbolic_circle,
}


def generate_initial(name, params, M, N):
    """Build a named initial filament and check that its Frenet frame exists."""
    try:
        gen = GENERATORS[name]
    except KeyError:
        raise UsageError(f"unknown generator {name!r}; expected one of {sorted(GENERATORS)}") from None
    try:
        f = gen(M, N, **(params or {}))
    except TypeError as exc:
        raise UsageError(f"bad parameters for {name}: {exc}") from None
    frenet(f)  # raises FrenetUndefined if kappa vanishes somewhere
    return f
