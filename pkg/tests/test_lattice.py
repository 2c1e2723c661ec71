import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from lbm_bounce.grid import BoundaryError, PopulationField, Stepper, step, stream
from lbm_bounce.lattice import (
    OPPOSITE,
    VELOCITIES,
    ParameterError,
    SchemeParams,
    collision_matrix,
    equilibrium_moments,
    equilibrium_populations,
    inverse_moment_matrix,
    moment_matrix,
    moments_from_populations,
    populations_from_moments,
    relax,
)

finite = st.floats(-10, 10, allow_nan=False)
lams = st.floats(0.25, 4.0)


def polynomial_moment_matrix(lam):
    # rows written as polynomials of the velocity components
    rows = []
    for ex, ey in VELOCITIES:
        n2 = ex * ex + ey * ey
        rows.append([
            1, lam * ex, lam * ey, lam**2 * (3 * n2 - 4), lam**2 * (ex * ex - ey * ey),
            lam**2 * ex * ey, lam**3 * ex * (3 * n2 - 5), lam**3 * ey * (3 * n2 - 5),
            lam**4 * (9 * n2 * n2 - 21 * n2 + 8) / 2,
        ])
    return np.array(rows, float).T


@pytest.mark.parametrize("lam", [1.0, 0.5, 3.0])
def test_moment_matrix_matches_velocity_polynomials(lam):
    np.testing.assert_allclose(moment_matrix(lam), polynomial_moment_matrix(lam), rtol=0, atol=1e-12)


@pytest.mark.parametrize("lam", [1.0, 0.3, 7.0])
def test_inverse_moment_matrix(lam):
    M, Minv = moment_matrix(lam), inverse_moment_matrix(lam)
    # rows carry powers of lam up to 4, so measure each entry against its own scale
    scale = np.abs(M) @ np.abs(Minv)
    err = np.abs(M @ Minv - np.eye(9))
    assert np.all(err <= 1e-14 * scale)


def test_opposite_reverses_velocity():
    np.testing.assert_array_equal(VELOCITIES[OPPOSITE], -VELOCITIES)


def test_moments_of_rest_population():
    f = np.zeros(9)
    f[0] = 1.0
    np.testing.assert_array_equal(moments_from_populations(f, SchemeParams()), [1, 0, 0, -4, 0, 0, 0, 0, 4])
    np.testing.assert_array_equal(moments_from_populations(np.zeros(9), SchemeParams()), np.zeros(9))


def test_moments_of_rest_equilibrium():
    p = SchemeParams(alpha=-2, beta=1)
    m = moments_from_populations(equilibrium_populations(1.0, 0.0, 0.0, p), p)
    np.testing.assert_allclose(m, [1, 0, 0, -2, 0, 0, 0, 0, 1], atol=1e-15)


def test_equilibrium_moments_examples():
    p = SchemeParams(alpha=-2, beta=1)
    np.testing.assert_array_equal(equilibrium_moments(1, 0, 0, p), [1, 0, 0, -2, 0, 0, 0, 0, 1])
    np.testing.assert_array_equal(equilibrium_moments(0, 0, 0, p), np.zeros(9))
    m = equilibrium_moments(1, 0.1, 0, p)
    assert m[6] == pytest.approx(-0.1) and m[7] == 0


def test_standard_weights():
    f = equilibrium_populations(1.0, 0.0, 0.0, SchemeParams(alpha=-2, beta=1))
    np.testing.assert_allclose(f, [4 / 9] + [1 / 9] * 4 + [1 / 36] * 4, rtol=0, atol=1e-16)


def test_equilibrium_populations_examples():
    p = SchemeParams(alpha=-2, beta=1)
    np.testing.assert_array_equal(equilibrium_populations(0.0, 0.0, 0.0, p), np.zeros(9))
    f = equilibrium_populations(1.0, 0.01, 0.0, p)
    assert f[1] - f[3] == pytest.approx(1 / 150, abs=1e-16)


def test_equilibrium_populations_agree_with_moments(draw_params, rng):
    for _ in range(10):
        p = draw_params(lam=rng.uniform(0.5, 3))
        rho, ux, uy = rng.normal(size=3)
        f = equilibrium_populations(rho, ux, uy, p)
        ref = inverse_moment_matrix(p.lam) @ equilibrium_moments(rho, rho * ux, rho * uy, p)
        # the closed form is written with j = u, which agrees with j = rho u at rho = 1
        ref1 = inverse_moment_matrix(p.lam) @ equilibrium_moments(1.0, ux, uy, p)
        np.testing.assert_allclose(equilibrium_populations(1.0, ux, uy, p), ref1, rtol=0, atol=1e-14)
        np.testing.assert_allclose(f[0], ref[0], rtol=1e-13)


def test_relax_examples():
    p = SchemeParams(alpha=-2, s3=1.5)
    m = np.zeros(9)
    m[0] = 1.0
    assert relax(m, p)[3] == pytest.approx(-3.0)
    full = SchemeParams(s3=1, s4=1, s7=1, s8=1)
    m = np.arange(1.0, 10.0)
    np.testing.assert_allclose(relax(m, full), equilibrium_moments(*m[:3], full))
    meq = equilibrium_moments(0.7, -0.2, 0.4, p)
    np.testing.assert_allclose(relax(meq, p), meq, atol=1e-15)


def test_relax_is_collision_matrix(draw_params, rng):
    for _ in range(10):
        p = draw_params(lam=rng.uniform(0.5, 3))
        m = rng.normal(size=9)
        np.testing.assert_allclose(relax(m, p), collision_matrix(p) @ m, rtol=0, atol=1e-12)


def test_scheme_params_validation():
    p = SchemeParams(lam=2.0, dx=0.1, s4=1.2)
    assert p.dt == pytest.approx(0.05)
    assert p.sigma4 == pytest.approx(1 / 3)
    assert SchemeParams(alpha=-2).sound_speed == pytest.approx(np.sqrt(1 / 3))
    for bad in ({"alpha": -5}, {"alpha": -4}, {"s4": 0}, {"s7": 2.5}, {"lam": 0}, {"dx": -1}):
        with pytest.raises(ParameterError):
            SchemeParams(**bad)
    assert SchemeParams.from_sigmas(sigma4=0.25).s4 == pytest.approx(4 / 3)
    with pytest.raises(ParameterError):
        SchemeParams.from_sigmas(sigma3=-0.1)


@given(arrays(float, 9, elements=finite), lams)
def test_population_moment_round_trip(f, lam):
    p = SchemeParams(lam=lam)
    back = populations_from_moments(moments_from_populations(f, p), p)
    np.testing.assert_allclose(back, f, rtol=0, atol=1e-14 * max(1.0, np.abs(f).max()) * max(lam, 1 / lam) ** 4)


@given(arrays(float, 9, elements=finite), st.floats(-3.9, 4), st.floats(-2, 2), st.floats(0.1, 2))
def test_relax_conserves_density_and_momentum(m, alpha, beta, s):
    p = SchemeParams(alpha=alpha, beta=beta, s3=s, s4=s, s7=s, s8=s)
    np.testing.assert_array_equal(relax(m, p)[:3], m[:3])


@given(arrays(float, 9, elements=finite), arrays(float, 9, elements=finite), finite)
def test_relax_is_affine(m1, m2, c):
    p = SchemeParams(alpha=0.5, beta=-1.0, s3=1.1, s4=0.7, s7=1.6, s8=0.4)
    lhs = relax(m1 + c * m2, p)
    rhs = relax(m1, p) + c * relax(m2, p)
    np.testing.assert_allclose(lhs, rhs, rtol=0, atol=1e-11 * (1 + np.abs(lhs).max()))


# --------------------------------------------------------------------------- grid


def test_stream_single_population():
    f = np.zeros((9, 5, 4))
    f[1, 4, 2] = 1.0
    f[5, 4, 3] = 2.0
    out = stream(PopulationField(5, 4, f)).f
    assert out[1, 0, 2] == 1.0 and out[1].sum() == 1.0
    assert out[5, 0, 0] == 2.0 and out[5].sum() == 2.0


def test_stream_uniform_field_unchanged(rng):
    f = np.broadcast_to(rng.random((9, 1, 1)), (9, 6, 3)).copy()
    np.testing.assert_array_equal(stream(PopulationField(6, 3, f)).f, f)


def test_stream_marks_unresolved_entries():
    field = PopulationField(4, 3, np.ones((9, 4, 3)), edges={"bottom": "wall", "top": "wall"})
    out = stream(field).f
    for j in (2, 5, 6):
        assert np.isnan(out[j, :, 0]).all()
    for j in (4, 7, 8):
        assert np.isnan(out[j, :, -1]).all()
    assert not np.isnan(out[:, :, 1]).any()


@given(arrays(float, (9, 4, 3), elements=finite))
def test_stream_conserves_each_population(f):
    out = stream(PopulationField(4, 3, f)).f
    np.testing.assert_allclose(out.sum(axis=(1, 2)), f.sum(axis=(1, 2)), rtol=0, atol=1e-12)


def test_field_validation():
    with pytest.raises(ValueError):
        PopulationField(0, 3)
    with pytest.raises(ValueError):
        PopulationField(3, 3, np.zeros((9, 2, 3)))
    with pytest.raises(ValueError):
        PopulationField(3, 3, edges={"bottom": "wall"})
    with pytest.raises(ValueError):
        PopulationField(3, 3, edges={"bottom": "lava", "top": "lava"})


def test_missing_closure_is_reported():
    p = SchemeParams()
    field = PopulationField.at_equilibrium(4, 3, 1.0, 0.0, 0.0, p, edges={"bottom": "wall", "top": "wall"})
    with pytest.raises(BoundaryError):
        step(field, p)


def test_rest_equilibrium_is_fixed_point():
    p = SchemeParams(s3=1.3, s4=0.8, s7=1.1, s8=1.7)
    field = PopulationField.at_equilibrium(6, 5, 1.0, 0.0, 0.0, p)
    out = Stepper(field, p).step(50)
    np.testing.assert_allclose(out.f, field.f, rtol=0, atol=1e-15)


def test_periodic_mass_conservation(rng):
    p = SchemeParams(alpha=-1, beta=0.5, s3=1.2, s4=1.5, s7=0.9, s8=1.1)
    field = PopulationField(8, 6, rng.random((9, 8, 6)))
    mass0 = field.density().sum()
    out = Stepper(field, p).step(1000)
    assert abs(out.density().sum() - mass0) / mass0 < 1e-12


def test_step_returns_new_field():
    p = SchemeParams()
    field = PopulationField.at_equilibrium(3, 3, 1.0, 0.1, 0.0, p)
    before = field.f.copy()
    step(field, p)
    np.testing.assert_array_equal(field.f, before)
