# tests/test_radial_ode.py
import math

import numpy as np
import pytest

from conftest import E_MIN_PRINTED
from polarcoulomb.analysis.quartic_analysis import turning_points
from polarcoulomb.analysis.radial_ode import (
    Direction,
    RadialSolution,
    asymptotic_infinity,
    asymptotic_origin,
    default_match_point,
    default_span,
    eigenfunction,
    integrate_radial,
    matching_defect,
    normalize,
    reconstruct_components,
    shoot_eigenvalue,
    wronskian,
)
from polarcoulomb.models.params import PhysicalParams
from polarcoulomb.utils.exceptions import (
    NoSignChangeError,
    ParameterDomainError,
    RadialOverflowError,
)
from scipy.integrate import trapezoid


@pytest.fixture
def free():
    """α = 0, j = 0: f'' = K²f"""
    return PhysicalParams(alpha=0.0, j=0, sigma=-1.0)


# === Asymptotiken ===
def test_origin_asymptotic_solves_leading_equation():
    alpha, r, h = 1.0, 0.2, 1e-6
    f, df = asymptotic_origin(r, alpha)
    f_plus, _ = asymptotic_origin(r + h, alpha)
    f_minus, _ = asymptotic_origin(r - h, alpha)
    assert df == pytest.approx((f_plus - f_minus) / (2 * h), rel=1e-6)
    _, df_plus = asymptotic_origin(r + h, alpha)
    _, df_minus = asymptotic_origin(r - h, alpha)
    d2f = (df_plus - df_minus) / (2 * h)
    assert abs(d2f - alpha ** 2 * f / r ** 4) < 1e-4 * abs(d2f)


def test_origin_asymptotic_decay():
    assert asymptotic_origin(1e-3, 1.0) == (0.0, 0.0)
    assert asymptotic_origin(0.5, 2.0)[0] < asymptotic_origin(0.5, 1.0)[0]
    with pytest.raises(ParameterDomainError):
        asymptotic_origin(0.5, 0.0)


def test_infinity_asymptotic_leading_order():
    e = 0.5
    kappa = math.sqrt(1 - e * e)

    def relative_residual(r, h=1e-4):
        f, _ = asymptotic_infinity(r, e)
        _, df_plus = asymptotic_infinity(r + h, e)
        _, df_minus = asymptotic_infinity(r - h, e)
        d2f = (df_plus - df_minus) / (2 * h)
        return abs(d2f - kappa ** 2 * f) / (kappa ** 2 * f)

    assert relative_residual(50.0) < 0.1
    assert relative_residual(500.0) < 0.01
    assert relative_residual(500.0) < relative_residual(50.0)


def test_infinity_asymptotic_limits():
    assert asymptotic_infinity(1e4, 0.5) == (0.0, 0.0)
    f_far, _ = asymptotic_infinity(40.0, 0.5)
    f_near, _ = asymptotic_infinity(20.0, 0.5)
    assert 0 < f_far < f_near
    with pytest.raises(ParameterDomainError):
        asymptotic_infinity(10.0, 1.0)


def test_default_span_and_match_point(canonical):
    e = 0.75
    r_min, r_max = default_span(canonical, e)
    kappa = math.sqrt(1 - e * e)
    assert r_min == pytest.approx(1.0 / 30.0)
    assert r_max == pytest.approx(30.0 / kappa)
    assert default_match_point(canonical, e) == pytest.approx(math.sqrt(1.0 / kappa))


# === Integration ===
def test_free_case_reproduces_exponential(free):
    e = 0.6
    kappa = math.sqrt(1 - e * e)
    grid = np.linspace(1.0, 10.0, 91)
    sol = integrate_radial(free, e, (1.0, 10.0), Direction.INWARD, grid=grid, initial=(1.0, -kappa))
    np.testing.assert_allclose(sol.grid, grid)
    np.testing.assert_allclose(sol.f, np.exp(-kappa * (grid - 10.0)), rtol=1e-8)
    np.testing.assert_allclose(sol.df, -kappa * sol.f, rtol=1e-8)


def test_wronskian_is_constant(canonical):
    e = 0.7
    grid = np.linspace(1.0, 5.0, 200)
    a = integrate_radial(canonical, e, (1.0, 5.0), Direction.OUTWARD, grid=grid,
                         initial=(1.0, 0.0), rtol=1e-12, atol=1e-14)
    b = integrate_radial(canonical, e, (1.0, 5.0), Direction.OUTWARD, grid=grid,
                         initial=(0.0, 1.0), rtol=1e-12, atol=1e-14)
    w = wronskian(a, b)
    np.testing.assert_allclose(w, 1.0, rtol=1e-8)


def test_overflow_is_reported(canonical):
    with pytest.raises(RadialOverflowError):
        integrate_radial(canonical, 0.3, (1.0, 2000.0), Direction.OUTWARD, initial=(1.0, 1.0))


def test_p_squared_signs_match_motion_interval(canonical):
    e = 0.75
    sol = eigenfunction(canonical, e, n_points=400)
    frame = sol.to_frame(canonical)
    r3, r4 = turning_points(canonical.with_energy(e)).positive_roots
    inside = (frame["r"] > r3) & (frame["r"] < r4)
    assert ((frame["p_squared"] > 0) == inside).all()


def test_eigenfunction_is_normalized(canonical):
    sol = eigenfunction(canonical, 0.75, n_points=800)
    assert trapezoid(sol.f ** 2, sol.grid) == pytest.approx(1.0, rel=1e-12)
    assert np.all(np.diff(sol.grid) > 0)


def test_radial_solution_validation():
    with pytest.raises(ParameterDomainError):
        RadialSolution(grid=[1.0, 0.5], f=[1.0, 1.0], df=[0.0, 0.0], e=0.5)
    with pytest.raises(ParameterDomainError):
        RadialSolution(grid=[0.5, 1.0], f=[1.0, np.nan], df=[0.0, 0.0], e=0.5)


def test_normalize_rejects_zero_solution():
    sol = RadialSolution(grid=[0.5, 1.0], f=[0.0, 0.0], df=[0.0, 0.0], e=0.5)
    with pytest.raises(ParameterDomainError):
        normalize(sol)


# === Schießverfahren ===
def test_defect_changes_sign_inside_canonical_bracket(canonical):
    match_r = default_match_point(canonical, 0.805)
    at_lo = matching_defect(canonical, 0.62, match_r)
    inside = matching_defect(canonical, 0.8, match_r)
    at_hi = matching_defect(canonical, 0.99, match_r)
    assert np.sign(at_lo) != np.sign(inside)
    # mehrere Wechsel im Intervall: die Ränder haben gleiches Vorzeichen
    assert np.sign(at_lo) == np.sign(at_hi)


def test_shooting_finds_lowest_eigenvalue(canonical):
    e = shoot_eigenvalue(canonical, (0.62, 0.99))
    assert E_MIN_PRINTED < e < 1.0
    assert e == pytest.approx(0.74921, abs=1e-4)
    assert shoot_eigenvalue(canonical, (0.62, 0.8)) == pytest.approx(e, abs=1e-6)


def test_shooting_eigenvalue_is_stable(canonical):
    e = shoot_eigenvalue(canonical, (0.62, 0.99))
    refined = shoot_eigenvalue(canonical, (0.62, 0.99), rtol=5e-11, atol=5e-13)
    assert abs(refined - e) < 1e-6
    assert abs(matching_defect(canonical, e, default_match_point(canonical, 0.805))) < 1e-6


def test_shooting_validates_arguments(canonical):
    with pytest.raises(ParameterDomainError):
        shoot_eigenvalue(canonical, (0.9, 0.7))
    with pytest.raises(ParameterDomainError):
        shoot_eigenvalue(canonical, (0.62, 0.99), scan_points=1)


def test_no_bound_state_without_coupling(free):
    with pytest.raises(NoSignChangeError):
        shoot_eigenvalue(free, (0.1, 0.99))


def test_shooting_requires_decaying_origin(regime_ii):
    with pytest.raises(ParameterDomainError):
        matching_defect(regime_ii, 0.9)


# === Rekonstruktion ===
@pytest.fixture
def exponential_profile():
    """C(r) = exp(−r), also f = r·exp(−r)"""
    r = np.linspace(0.5, 5.0, 100)
    return RadialSolution(grid=r, f=r * np.exp(-r), df=np.exp(-r) * (1 - r), e=0.75)


def test_reconstruction_constraints(exponential_profile, canonical):
    fields = reconstruct_components(exponential_profile, canonical)
    residuals = fields.constraint_residuals()
    assert all(v == 0.0 for v in residuals.values())


def test_reconstruction_analytic_relations(exponential_profile):
    p = PhysicalParams(epsilon=0.75, mass_M=1.0, alpha=1.0, j=2, sigma=-1.0)
    m = 1.3
    fields = reconstruct_components(exponential_profile, p, mass=m, sign=1)
    r = exponential_profile.grid
    C = np.exp(-r)
    dC = -np.exp(-r)
    field_term = p.epsilon + p.alpha / r
    polar = p.alpha / (m * m * r * r)
    nu = math.sqrt(p.j * (p.j + 1) / 2)

    np.testing.assert_allclose(fields.C, C, rtol=1e-12)
    np.testing.assert_allclose(fields.Phi2, dC / m, rtol=1e-8)
    np.testing.assert_allclose(fields.Phi0, -1j * field_term * C / m, rtol=1e-10)
    np.testing.assert_allclose(fields.Phi1, -nu * C / (r * m), rtol=1e-10)
    np.testing.assert_allclose(fields.C1, fields.Phi1, rtol=1e-12)
    np.testing.assert_allclose(fields.E2, -1j * polar * C, rtol=1e-10)
    residual_c0 = m * fields.C0 + 1j * field_term * C - 1j * p.alpha * p.sigma * dC / (m * m * r * r)
    residual_c2 = m * fields.C2 - dC - p.sigma * polar * field_term * C
    assert np.max(np.abs(residual_c0)) < 1e-10
    assert np.max(np.abs(residual_c2)) < 1e-10


def test_sign_flip_negates_e2(exponential_profile, canonical):
    plus = reconstruct_components(exponential_profile, canonical, sign=1)
    minus = reconstruct_components(exponential_profile, canonical, sign=-1)
    np.testing.assert_allclose(minus.E2, -plus.E2, rtol=1e-14)
    np.testing.assert_array_equal(minus.Phi0, plus.Phi0)
    np.testing.assert_array_equal(minus.Phi2, plus.Phi2)


def test_reconstruction_frame_columns(exponential_profile, canonical):
    frame = reconstruct_components(exponential_profile, canonical).to_frame()
    assert frame.columns[0] == "r"
    assert len(frame.columns) == 1 + 2 * 15
    assert "E2_im" in frame.columns


def test_reconstruction_guards(exponential_profile, canonical):
    with pytest.raises(ParameterDomainError):
        reconstruct_components(exponential_profile, canonical, mass=0.0)
    with pytest.raises(ParameterDomainError):
        reconstruct_components(exponential_profile, canonical, sign=2)
    tiny = RadialSolution(grid=[1e-13, 1.0], f=[1e-13, 1.0], df=[1.0, 1.0], e=0.5)
    with pytest.raises(ParameterDomainError):
        reconstruct_components(tiny, canonical)
