import numpy as np
import pytest

from vfe.errors import FrenetUndefined, UsageError
from vfe.filament import frenet
from vfe.initial import GENERATORS, circle, generate_initial, perturbed_circle

from conftest import MODELS

E, S, H = MODELS["euclidean"], MODELS["spherical"], MODELS["hyperbolic"]


def test_circle_r1_kappa():
    f = generate_initial("circle", {"r": 1.0}, E, 64)
    np.testing.assert_allclose(frenet(f).kappa, 1.0, atol=1e-8)


def test_hopf_circle_constant_fields():
    fr = frenet(generate_initial("hopf_circle", {}, S, 64))
    assert np.ptp(fr.kappa) < 1e-10 and np.ptp(fr.tau) < 1e-10


@pytest.mark.parametrize("model", list(MODELS))
def test_zero_perturbation_is_the_circle(model):
    M = MODELS[model]
    a = perturbed_circle(M, 64, r=0.7, eps=0.0)
    b = circle(M, 64, r=0.7)
    np.testing.assert_array_equal(a.points, b.points)


def test_default_perturbation_is_five_percent():
    f = perturbed_circle(E, 64, r=2.0)
    rad = np.linalg.norm(f.points[:, :2], axis=1)
    assert rad.max() == pytest.approx(2.1, abs=1e-3)
    assert rad.min() == pytest.approx(1.9, abs=1e-3)


@pytest.mark.parametrize("name,model", [("hopf_circle", "euclidean"), ("hopf_circle", "hyperbolic"),
                                        ("hyperbolic_circle", "spherical"), ("hyperbolic_circle", "euclidean")])
def test_generator_model_mismatch(name, model):
    with pytest.raises(UsageError):
        generate_initial(name, {}, MODELS[model], 32)


def test_unknown_generator_and_bad_params():
    with pytest.raises(UsageError, match="unknown generator"):
        generate_initial("spiral", {}, E, 32)
    with pytest.raises(UsageError, match="bad parameters"):
        generate_initial("circle", {"radius": 1.0}, E, 32)
    with pytest.raises(UsageError):
        generate_initial("hopf_circle", {"p": 2, "q": 2}, S, 32)
    with pytest.raises(UsageError):
        generate_initial("perturbed_circle", {"r": 1.5}, S, 32)


def test_kappa_violation_is_reported():
    # generate_initial runs the Frenet check; a geodesic-radius circle of
    # radius pi/2 on the sphere is a great circle and is refused earlier
    with pytest.raises(UsageError):
        generate_initial("circle", {"r": np.pi / 2}, S, 32)
    with pytest.raises(FrenetUndefined):
        frenet(perturbed_circle(E, 64, r=1.0, m=3, eps=0.1), kappa_min=0.2)


def test_all_generators_on_their_models():
    # the default torus knot lifted to H^3 nearly inflects (kappa_min ~ 0.01)
    cases = {"circle": E, "perturbed_circle": S, "torus_knot": E, "hopf_circle": S, "hyperbolic_circle": H}
    assert set(cases) == set(GENERATORS)
    for name, M in cases.items():
        f = generate_initial(name, {}, M, 256)
        assert f.constraint_residual() < 1e-12
        assert f.spacing_deviation() < 1e-8 * f.ds
