import numpy as np
import pytest
import sympy as sp

from vfe import geometry as geo
from vfe.errors import FrenetUndefined, GeometryError, ManifoldError, UsageError
from vfe.filament import (
    ClosedFilament,
    frenet,
    frenet_formula_residuals,
    resample,
    resample_arclength,
    sample_curve,
)
from vfe.initial import circle, hopf_circle, torus_knot

from conftest import MODELS

E, S, H = MODELS["euclidean"], MODELS["spherical"], MODELS["hyperbolic"]
th = sp.symbols("theta", real=True)


def _derivatives(r):
    """Exact parameter derivatives (0..3) of a sympy curve, as numpy callables."""
    fs = [sp.lambdify(th, list(r.diff(th, k)) if k else list(r), "numpy") for k in range(4)]

    def ev(theta):
        theta = np.asarray(theta, dtype=float)
        return [np.stack([np.broadcast_to(c, theta.shape) for c in f(theta)], -1) for f in fs]

    return ev


def _space_curve_oracle(r):
    """Classical kappa = |r1 x r2| / |r1|^3 and tau = (r1 x r2).r3 / |r1 x r2|^2."""
    ev = _derivatives(r)

    def oracle(theta):
        _, d1, d2, d3 = ev(theta)
        c = np.cross(d1, d2)
        cc = np.sum(c * c, -1)
        return np.sqrt(cc) / np.linalg.norm(d1, axis=-1) ** 3, np.sum(c * d3, -1) / cc

    return oracle


def _sphere_curve_oracle(a):
    """kappa, tau of a curve on the unit 3-sphere from exact derivatives.

    In arclength ``s`` the acceleration satisfies ``a_ss = -a + kappa N``;
    ``B`` completes ``(a, T, N)`` to a positive frame of R^4 and
    ``tau = <a3, B> / (v^3 kappa)`` with ``v = |a1|`` (``ak`` = k-th derivative).
    """
    ev = _derivatives(a)

    def oracle(theta):
        p, d1, d2, d3 = ev(theta)
        v = np.linalg.norm(d1, axis=-1)[:, None]
        a_ss = (d2 - (np.sum(d1 * d2, -1)[:, None] / v**2) * d1) / v**2
        kn = a_ss + p
        kappa = np.linalg.norm(kn, axis=-1)
        N = kn / kappa[:, None]
        T = d1 / v
        B = np.array([[np.linalg.det(np.stack([p[j], T[j], N[j], e])) for e in np.eye(4)] for j in range(len(p))])
        return kappa, np.sum(d3 * B, -1) / (v[:, 0] ** 3 * kappa)

    return oracle


# --- construction ---------------------------------------------------------------


def test_filament_validation():
    with pytest.raises(UsageError, match="N >= 16"):
        ClosedFilament(E, np.zeros((8, 3)))
    with pytest.raises(UsageError, match="shape"):
        ClosedFilament(E, np.zeros((32, 4)))
    pts = circle(S, 32, r=0.5).points.copy()
    pts[3] *= 1.01
    with pytest.raises(ManifoldError):
        ClosedFilament(S, pts)
    pts = circle(E, 32).points.copy()
    pts[0, 0] = np.nan
    with pytest.raises(ManifoldError):
        ClosedFilament(E, pts)


def test_points_are_read_only():
    f = circle(E, 32)
    with pytest.raises(ValueError):
        f.points[0, 0] = 1.0


def test_uniform_spacing(M, curve):
    assert curve.spacing_deviation() < 1e-10 * curve.ds
    # geodesic chords differ from ds only by the chord/arc defect kappa^2 ds^3 / 24
    fr = frenet(curve)
    bound = np.max(fr.kappa) ** 2 * curve.ds**3 / 24 * 1.5 + 1e-12
    assert np.max(np.abs(curve.chord_lengths() - curve.ds)) < bound


# --- Frenet oracles -------------------------------------------------------------------


@pytest.mark.parametrize("r", [0.5, 1.0, 3.0])
def test_euclidean_circle(r):
    fr = frenet(circle(E, 128, r=r))
    np.testing.assert_allclose(fr.kappa, 1 / r, atol=1e-10)
    assert np.max(np.abs(fr.tau)) < 1e-10
    np.testing.assert_allclose(fr.B, np.tile([0, 0, 1.0], (128, 1)), atol=1e-12)


@pytest.mark.parametrize("rho0", [0.3, 0.8, 1.2])
def test_spherical_small_circle_cot(rho0):
    fr = frenet(circle(S, 256, r=rho0))
    np.testing.assert_allclose(fr.kappa, 1 / np.tan(rho0), atol=1e-9)
    assert np.max(np.abs(fr.tau)) < 1e-9


@pytest.mark.parametrize("rho0", [0.3, 1.0])
def test_hyperbolic_circle_coth(rho0):
    fr = frenet(circle(H, 256, r=rho0))
    np.testing.assert_allclose(fr.kappa, 1 / np.tanh(rho0), atol=1e-9)
    assert np.max(np.abs(fr.tau)) < 1e-9


def test_sphere_curvature_scales_with_radius():
    M = geo.SpaceForm.sphere(4.0)  # radius 1/2
    fr = frenet(circle(M, 128, r=0.3))
    np.testing.assert_allclose(fr.kappa, 2.0 / np.tan(0.3 * 2.0), atol=1e-9)


def test_torus_knot_matches_symbolic_oracle():
    p, q, R0, r0 = 2, 3, 1.0, 0.4
    r = sp.Matrix([(R0 + r0 * sp.cos(q * th)) * sp.cos(p * th),
                   (R0 + r0 * sp.cos(q * th)) * sp.sin(p * th),
                   r0 * sp.sin(q * th)])
    oracle = _space_curve_oracle(r)
    errs = []
    for n in (256, 512, 1024):
        f = torus_knot(E, n, p=p, q=q, R0=R0, r0=r0)
        kap, tau = oracle(f.parameter)
        fr = frenet(f)
        errs.append(np.max(np.abs(fr.tau - tau)))
    # torsion dips to about -9.6 in a narrow band, so it needs ~1000 samples
    np.testing.assert_allclose(fr.kappa, kap, atol=1e-10)
    np.testing.assert_allclose(fr.tau, tau, atol=1e-7)
    assert errs[0] > 100 * errs[1] > 1e4 * errs[2]


def test_hopf_type_circle_matches_symbolic_oracle():
    phi = sp.pi / 4
    a = sp.Matrix([sp.cos(phi) * sp.cos(th), sp.cos(phi) * sp.sin(th),
                   sp.sin(phi) * sp.cos(2 * th), sp.sin(phi) * sp.sin(2 * th)])
    f = hopf_circle(S, 128)
    kap, tau = _sphere_curve_oracle(a)(f.parameter)
    fr = frenet(f)
    np.testing.assert_allclose(fr.kappa, kap, atol=1e-10)
    np.testing.assert_allclose(fr.tau, tau, atol=1e-10)
    np.testing.assert_allclose(fr.kappa, 0.6, atol=1e-10)
    np.testing.assert_allclose(fr.tau, 0.8, atol=1e-10)


def test_perturbed_hopf_matches_symbolic_oracle():
    phi = sp.pi / 4 + sp.Rational(1, 20) * sp.cos(3 * th)
    a = sp.Matrix([sp.cos(phi) * sp.cos(th), sp.cos(phi) * sp.sin(th),
                   sp.sin(phi) * sp.cos(2 * th), sp.sin(phi) * sp.sin(2 * th)])
    f = hopf_circle(S, 256, eps=0.05, m=3)
    kap, tau = _sphere_curve_oracle(a)(f.parameter)
    fr = frenet(f)
    np.testing.assert_allclose(fr.kappa, kap, atol=1e-8)
    np.testing.assert_allclose(fr.tau, tau, atol=1e-8)


def test_frame_is_orthonormal_and_oriented(M, curve):
    fr = frenet(curve)
    assert fr.orthonormality_defect() < 1e-12
    np.testing.assert_array_equal(fr.B, geo.cross(M, curve.points, fr.T, fr.N))
    if not M.flat:
        assert np.max(np.abs(M.inner(fr.T, curve.points))) < 1e-12


def test_frenet_formulas_second_order(M):
    from vfe.verification import standard_curve

    errs = []
    for n in (64, 128, 256):
        errs.append([np.max(r) for r in frenet_formula_residuals(frenet(standard_curve(M, n)))])
    errs = np.array(errs)
    for col in range(3):
        ratio = errs[:-1, col] / errs[1:, col]
        assert np.all((ratio > 3) & (ratio < 5)), ratio
    spectral = [np.max(r) for r in frenet_formula_residuals(frenet(standard_curve(M, 128)), scheme="spectral")]
    assert max(spectral) < 1e-8


def test_reversal_keeps_torsion(M, curve):
    fr = frenet(curve)
    rv = frenet(curve.reversed())
    idx = (-np.arange(curve.N)) % curve.N
    np.testing.assert_allclose(rv.kappa, fr.kappa[idx], atol=1e-10)
    np.testing.assert_allclose(rv.tau, fr.tau[idx], atol=1e-10)


def test_frenet_undefined_on_geodesic():
    s = np.arange(64) * 2 * np.pi / 64
    great = np.stack([np.cos(s), np.sin(s), 0 * s, 0 * s], axis=1)
    with pytest.raises(FrenetUndefined) as info:
        frenet(ClosedFilament(S, great))
    assert len(info.value.samples) == 64


def test_frenet_undefined_names_the_flat_samples():
    # a stadium-like curve with a straight stretch has kappa ~ 0 there
    from vfe.initial import perturbed_circle

    f = perturbed_circle(E, 64, r=1.0, m=2, eps=0.2)  # kappa still positive
    frenet(f)
    with pytest.raises(FrenetUndefined):
        frenet(f, kappa_min=10.0)


# --- resampling ---------------------------------------------------------------


def test_resample_fixed_point_on_uniform_circle():
    f = circle(E, 64)
    g = resample_arclength(f)
    np.testing.assert_allclose(g.points, f.points, atol=1e-12)


def test_resample_clustered_circle():
    n = 64
    u = np.arange(n) * 2 * np.pi / n
    theta = u + 0.3 * np.sin(u)  # clustered parameterisation
    f = ClosedFilament(E, np.stack([np.cos(theta), np.sin(theta), 0 * theta], 1))
    assert f.spacing_deviation() > 1e-2 * f.ds
    g = resample_arclength(f)
    ang = np.unwrap(np.arctan2(g.points[:, 1], g.points[:, 0]))
    np.testing.assert_allclose(np.diff(ang), 2 * np.pi / n, atol=1e-10)


def _ellipse_arc(a, b, theta, nodes=64):
    """Exact arclength of ``(a cos t, b sin t)`` from 0 to each ``theta`` (Gauss-Legendre)."""
    x, w = np.polynomial.legendre.leggauss(nodes)
    out = []
    for t in theta:
        # split [0, t] into quarter-turn panels so each integrand is smooth
        edges = np.linspace(0.0, t, int(np.ceil(t / (np.pi / 8))) + 1)
        total = 0.0
        for lo, hi in zip(edges[:-1], edges[1:]):
            u = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
            total += 0.5 * (hi - lo) * np.sum(w * np.hypot(a * np.sin(u), b * np.cos(u)))
        out.append(total)
    return np.array(out)


def test_resample_ellipse_spacing():
    n, a, b = 64, 2.0, 1.0
    u = np.arange(n) * 2 * np.pi / n
    f = ClosedFilament(E, np.stack([a * np.cos(u), b * np.sin(u), 0 * u], 1))
    g = resample_arclength(f)
    theta = np.unwrap(np.arctan2(g.points[:, 1] / b, g.points[:, 0] / a))
    theta = np.append(theta - theta[0], 2 * np.pi)
    arcs = np.diff(_ellipse_arc(a, b, theta))
    assert np.max(np.abs(arcs - g.ds)) < 1e-6 * g.ds
    assert abs(g.L - _ellipse_arc(a, b, [2 * np.pi])[0]) < 1e-8


def test_resample_preserves_length(M, curve):
    g = resample(curve, 2 * curve.N)
    assert abs(g.L - curve.L) < 1e-12 * curve.L
    assert g.spacing_deviation() < 1e-10 * g.ds


def test_resample_rejects_self_intersection():
    n = 64
    u = np.arange(n) * 2 * np.pi / n
    # figure eight in the plane: crosses itself at the origin
    f = ClosedFilament(E, np.stack([np.sin(u), np.sin(u) * np.cos(u), 0 * u], 1))
    with pytest.raises(GeometryError, match="self-intersecting"):
        resample(f)


def test_sample_curve_stationary_point():
    with pytest.raises(GeometryError):
        sample_curve(E, lambda t: np.stack([np.cos(t) ** 3, np.sin(t) ** 3, 0 * t], -1), 32)
