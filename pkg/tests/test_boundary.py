from types import SimpleNamespace

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from lbm_bounce.boundary import (
    BoundaryParams,
    PressureBoundary,
    SingularConditionError,
    WallBoundary,
    WallData,
    WallOrientation,
    anti_bounce_back_pressure,
    classical_bounce_back,
    classical_quartic_sigma7,
    constrained_k,
    first_order_bounce_back,
    generalized_bounce_back,
    orient,
    quartic_sigma7,
)
from lbm_bounce.grid import PopulationField, Stepper
from lbm_bounce.lattice import (
    VELOCITIES,
    ParameterError,
    SchemeParams,
    equilibrium_moments,
    equilibrium_populations,
    inverse_moment_matrix,
)

SIDES = ("bottom", "top", "left", "right")
vals = st.floats(-5, 5, allow_nan=False)


def closure_inputs(rng, n=4):
    fstar = rng.normal(size=(9, n))
    rho = rng.normal(size=n)
    rho_up = rng.normal(size=(3, n))
    J = [tuple(rng.normal(size=(2, n))) for _ in range(3)]
    return fstar, rho, rho_up, J


# --------------------------------------------------------------------------- closure formulas


def test_classical_pure_reflection(rng):
    fstar = rng.random(9)
    zero = (0.0, 0.0)
    f2, f5, f6 = classical_bounce_back(fstar, zero, zero, zero, SchemeParams())
    assert (f2, f5, f6) == (fstar[4], fstar[7], fstar[8])


def test_classical_examples():
    p = SchemeParams()
    fstar = np.zeros(9)
    fstar[4], fstar[7] = 0.1, 0.02
    f2, f5, _ = classical_bounce_back(fstar, (0.0, 0.03), (0.04, 0.02), (0.0, 0.0), p)
    assert f2 == pytest.approx(0.12)
    assert f5 == pytest.approx(0.03)


@pytest.mark.parametrize("lam", [1.0, 2.0])
def test_first_order_reduces_to_classical_at_equilibrium(lam):
    p = SchemeParams(lam=lam, alpha=-1.0, beta=0.5, s3=1.2, s4=0.9, s7=1.4, s8=1.1)
    J = (0.03, -0.02)
    fstar = equilibrium_populations(1.0, *J, p)
    rho_up = np.ones(3)
    got = first_order_bounce_back(fstar, 1.0, rho_up, J, J, J, p)
    want = classical_bounce_back(fstar, J, J, J, p)
    np.testing.assert_allclose(got, want, rtol=0, atol=1e-15)


def test_first_order_zero_input():
    zero = (0.0, 0.0)
    got = first_order_bounce_back(np.zeros(9), 0.0, np.zeros(3), zero, zero, zero, SchemeParams())
    assert got == (0.0, 0.0, 0.0)


def test_first_order_density_difference():
    p = SchemeParams(alpha=-2, beta=1)
    zero = (0.0, 0.0)
    f2, f5, f6 = first_order_bounce_back(np.zeros(9), 1.0, np.array([1.0, 1.36, 1.0]), zero, zero, zero, p)
    assert f2 == pytest.approx(-0.04)
    assert f5 == pytest.approx(0.0) and f6 == pytest.approx(0.0)


def test_generalized_moment_correction():
    p = SchemeParams()
    m = np.zeros(9)
    m[7] = 0.3  # q_y with j_y = 0
    fstar = inverse_moment_matrix(1.0) @ m
    zero = (0.0, 0.0)
    f2, _, _ = generalized_bounce_back(fstar, 0.0, np.zeros(3), zero, zero, zero, p, BoundaryParams(a2=1.0))
    assert f2 - fstar[4] == pytest.approx(-0.1)


def test_third_order_moment_normalisation():
    # post-collision q* is m6/lam^3: at equilibrium it equals -j/lam and the correction vanishes
    p = SchemeParams(lam=3.0, s3=1.0)
    fstar = inverse_moment_matrix(3.0) @ equilibrium_moments(1.0, 0.2, -0.1, p)
    zero = (0.0, 0.0)
    bp = BoundaryParams(1.0, 1.0, 1.0)
    got = generalized_bounce_back(fstar, 0.0, np.zeros(3), zero, zero, zero, p, bp)
    want = classical_bounce_back(fstar, zero, zero, zero, p)
    np.testing.assert_allclose(got, want, rtol=0, atol=1e-15)


def test_degeneracy_chain(rng, draw_params):
    for _ in range(20):
        p = draw_params(lam=rng.uniform(0.5, 3))
        fstar, rho, rho_up, J = closure_inputs(rng)
        zero_bp = generalized_bounce_back(fstar, rho, rho_up, *J, p, BoundaryParams())
        np.testing.assert_allclose(zero_bp, classical_bounce_back(fstar, *J, p), rtol=0, atol=1e-14)
        preset = generalized_bounce_back(fstar, rho, rho_up, *J, p, BoundaryParams.first_order(p))
        np.testing.assert_allclose(preset, first_order_bounce_back(fstar, rho, rho_up, *J, p), rtol=0, atol=1e-14)


@given(st.integers(0, 2**32 - 1), vals)
def test_closures_are_linear(seed, c):
    rng = np.random.default_rng(seed)
    p = SchemeParams(lam=1.7, alpha=0.3, beta=-0.6)
    bp = BoundaryParams(*rng.normal(size=6))
    a, b = closure_inputs(rng), closure_inputs(rng)
    mix = (a[0] + c * b[0], a[1] + c * b[1], a[2] + c * b[2],
           [tuple(np.add(x, np.multiply(c, y))) for x, y in zip(a[3], b[3])])
    closures = (
        lambda f, r, ru, J: classical_bounce_back(f, *J, p),
        lambda f, r, ru, J: first_order_bounce_back(f, r, ru, *J, p),
        lambda f, r, ru, J: generalized_bounce_back(f, r, ru, *J, p, bp),
    )
    for closure in closures:
        lhs = np.array(closure(*mix))
        rhs = np.array(closure(*a)) + c * np.array(closure(*b))
        np.testing.assert_allclose(lhs, rhs, rtol=0, atol=1e-13 * (1 + np.abs(lhs).max()))


# --------------------------------------------------------------------------- parameter rules


def test_first_order_preset_values():
    bp = BoundaryParams.first_order(SchemeParams(alpha=-2, beta=1))
    assert bp == BoundaryParams(1, 1, 1, 4, 1, 1)


def test_constrained_k_examples():
    p = SchemeParams(alpha=-2, beta=1)
    assert constrained_k(1.0, 1.0, p, rule="literal") == pytest.approx((4.0, 1.5, 1.5))
    assert constrained_k(1.0, 1.0, p) == pytest.approx((4.0, 1.0, 1.0))
    half = SchemeParams.from_sigmas(sigma7=0.5, alpha=-2, beta=1)
    for rule in ("cancel", "literal"):
        k2, k5, k6 = constrained_k(0.0, 0.0, half, rule)
        assert (k2, k5, k6) == pytest.approx((4.0, 1.0, 1.0))
    # alpha = -4 lies outside SchemeParams; the rule itself only reads alpha, beta and sigma7
    edge = SimpleNamespace(alpha=-4.0, beta=2.0, sigma7=0.3)
    assert constrained_k(1.0, 1.0, edge, rule="literal") == pytest.approx((4.0, -1.5, -1.5))
    assert constrained_k(1.0, 1.0, edge) == pytest.approx((4.0, -2.0, -2.0))
    with pytest.raises(ValueError):
        constrained_k(1.0, 1.0, p, rule="other")


def test_constrained_reduces_to_first_order_preset(draw_params):
    for _ in range(10):
        p = draw_params()
        got = BoundaryParams.constrained(1.0, 1.0, p)
        want = BoundaryParams.first_order(p)
        for name in ("a2", "a5", "a6", "k2", "k5", "k6"):
            assert getattr(got, name) == pytest.approx(getattr(want, name), abs=1e-12)


def test_quartic_sigma7_examples():
    assert quartic_sigma7(-1.0, 0.5) == pytest.approx(5 / 16)
    assert quartic_sigma7(0.0, 0.75) == pytest.approx(0.0)
    with pytest.raises(SingularConditionError):
        quartic_sigma7(1.0, 0.5)
    with pytest.raises(ParameterError):
        quartic_sigma7(0.0, 0.0)


def test_quartic_sigma7_condition(rng):
    for _ in range(10):
        a5, s4 = rng.uniform(-3, 0.9), rng.uniform(0.05, 2)
        s7 = quartic_sigma7(a5, s4)
        assert s4 * s7 == pytest.approx((8 * a5 * s4 + 4 * s4 - 3) / (16 * (a5 - 1)))


def test_classical_quartic_sigma7_examples():
    assert classical_quartic_sigma7(0.5, -2.0, 1.0) == pytest.approx(3 / 8)
    assert classical_quartic_sigma7(0.5, -4.0, 1.0) == pytest.approx(0.0)
    with pytest.raises(SingularConditionError):
        classical_quartic_sigma7(0.5, -2.0, 3.0)
    with pytest.raises(SingularConditionError):
        classical_quartic_sigma7(0.0, -2.0, 1.0)


def test_anti_bounce_back_examples(rng):
    p = SchemeParams(alpha=-1, beta=0.2)
    rho = 1.03
    feq = equilibrium_populations(np.full(3, rho), np.zeros(3), np.zeros(3), p)
    missing = [1, 5, 8]
    got = anti_bounce_back_pressure(feq, missing, rho, p)
    np.testing.assert_allclose(got, feq[missing], rtol=0, atol=1e-15)
    np.testing.assert_array_equal(anti_bounce_back_pressure(np.zeros((9, 3)), missing, 0.0, p), np.zeros((3, 3)))


def test_pressure_boundary_validation():
    with pytest.raises(ValueError):
        PressureBoundary("bottom", 1.0)
    with pytest.raises(ValueError):
        PressureBoundary("left", 1.0, velocity="guess")


# --------------------------------------------------------------------------- orientation


def test_orientation_maps():
    assert list(WallOrientation("bottom").perm) == list(range(9))
    assert WallOrientation("bottom").missing == (2, 5, 6)
    assert set(WallOrientation("top").missing) == {4, 7, 8}
    assert set(WallOrientation("left").missing) == {1, 5, 8}
    assert set(WallOrientation("right").missing) == {3, 6, 7}
    with pytest.raises(ValueError):
        WallOrientation("diagonal")


@pytest.mark.parametrize("side", SIDES)
def test_orientation_missing_point_into_domain(side):
    inward = {"bottom": (0, 1), "top": (0, -1), "left": (1, 0), "right": (-1, 0)}[side]
    for j in WallOrientation(side).missing:
        assert VELOCITIES[j] @ inward > 0


@pytest.mark.parametrize("side", SIDES)
@given(arrays(float, 9, elements=vals))
def test_orient_is_involution(side, f):
    o = WallOrientation(side)
    np.testing.assert_array_equal(orient(orient(f, o), o), f)
    vx, vy = o.vector(*o.vector(0.3, -0.7))
    assert (vx, vy) == (0.3, -0.7)


# --------------------------------------------------------------------------- wall boundaries on a grid


def _mirror_y(f):
    return f[WallOrientation("top").perm][:, :, ::-1]


def _transpose(f):
    return f[WallOrientation("left").perm].transpose(0, 2, 1)


def _wall(scheme, side, data, p):
    bp = BoundaryParams(0.4, -0.7, -0.7, 2.0, 1.5, 1.5) if scheme == "generalized" else None
    return WallBoundary(side, scheme, data, bp)


def _steps(f, edges, walls, p, n=3):
    nx, ny = f.shape[1:]
    return Stepper(PopulationField(nx, ny, f, edges), p, walls).step(n).f


@pytest.mark.parametrize("scheme", ["classical", "first_order", "generalized"])
def test_top_wall_mirrors_bottom_wall(scheme, rng):
    p = SchemeParams(alpha=-1.2, beta=0.4, s3=1.1, s4=1.3, s7=0.8, s8=1.5)
    nx, ny = 6, 5
    f = rng.random((9, nx, ny))
    low = WallData(lambda s, t: (np.cos(s), 0.2 * np.sin(s)))
    high = WallData(lambda s, t: (0.5 * np.sin(s), -0.3 + 0 * s))
    edges = {"bottom": "wall", "top": "wall"}
    out = _steps(f, edges, [_wall(scheme, "bottom", low, p), _wall(scheme, "top", high, p)], p)
    flip = lambda d: WallData(lambda s, t: (d(s, t)[0], -np.asarray(d(s, t)[1])))
    mirrored = _steps(_mirror_y(f), edges,
                      [_wall(scheme, "bottom", flip(high), p), _wall(scheme, "top", flip(low), p)], p)
    np.testing.assert_allclose(mirrored, _mirror_y(out), rtol=0, atol=1e-14)


@pytest.mark.parametrize("scheme", ["classical", "first_order", "generalized"])
def test_side_walls_match_transposed_problem(scheme, rng):
    p = SchemeParams(alpha=-2.5, beta=1.4, s3=0.9, s4=1.6, s7=1.2, s8=0.7)
    nx, ny = 5, 7
    f = rng.random((9, nx, ny))
    left = WallData(lambda s, t: (0.1 * np.sin(s), np.cos(s)))
    right = WallData(lambda s, t: (0.2 + 0 * s, -0.4 * np.sin(2 * s)))
    out = _steps(f, {"left": "wall", "right": "wall"},
                 [_wall(scheme, "left", left, p), _wall(scheme, "right", right, p)], p)
    swap = lambda d: WallData(lambda s, t: tuple(reversed(d(s, t))))
    moved = _steps(_transpose(f), {"bottom": "wall", "top": "wall"},
                   [_wall(scheme, "bottom", swap(left), p), _wall(scheme, "top", swap(right), p)], p)
    np.testing.assert_allclose(moved, _transpose(out), rtol=0, atol=1e-14)


def test_classical_zero_data_walls_conserve_mass(rng):
    p = SchemeParams(s3=1.3, s4=1.1, s7=0.9, s8=1.2)
    nx, ny = 8, 6
    f = PopulationField.at_equilibrium(nx, ny, 1.0, 0.05 * np.sin(np.arange(ny))[None, :], 0.0, p,
                                       edges={"bottom": "wall", "top": "wall"}).f
    f += 1e-3 * rng.random(f.shape)
    field = PopulationField(nx, ny, f, {"bottom": "wall", "top": "wall"})
    mass0 = field.density().sum()
    out = Stepper(field, p, [WallBoundary("bottom"), WallBoundary("top")]).step(500)
    assert abs(out.density().sum() - mass0) / mass0 < 1e-12


def test_corner_uses_straight_neighbour(rng):
    p = SchemeParams(alpha=-1.0, beta=0.5)
    nx, ny = 4, 3
    edges = {"left": "pressure", "right": "pressure", "bottom": "wall", "top": "wall"}
    field = PopulationField(nx, ny, rng.random((9, nx, ny)), edges)
    fstar, fout = rng.random((9, nx, ny)), np.zeros((9, nx, ny))
    WallBoundary("bottom", "first_order").apply(fout, fstar, field, p, 0.0)
    rho = fstar.sum(axis=0)
    zero = (np.zeros(nx), np.zeros(nx))
    up = rho[:, 1]
    left, right = np.concatenate([[up[0]], up[:-1]]), np.concatenate([up[1:], [up[-1]]])
    want = first_order_bounce_back(fstar[:, :, 0], rho[:, 0], np.stack([left, up, right]), zero, zero, zero, p)
    for j, w in zip((2, 5, 6), want):
        np.testing.assert_allclose(fout[j, :, 0], w, rtol=0, atol=1e-15)


def test_wall_boundary_validation():
    with pytest.raises(ValueError):
        WallBoundary("bottom", "quadratic")
    with pytest.raises(ValueError):
        WallBoundary("bottom", "generalized")
    with pytest.raises(ValueError):
        WallBoundary("middle")
