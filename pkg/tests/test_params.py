# tests/test_params.py
import math

import numpy as np
import pytest
from pydantic import ValidationError

from conftest import E_MIN_PRINTED, random_params
from polarcoulomb.models.params import (
    Convention,
    PhysicalParams,
    Regime,
    derive,
    p_squared,
    quartic_coefficients,
)
from polarcoulomb.utils.exceptions import ParameterDomainError


# === Validierung ===
@pytest.mark.parametrize("field, value", [
    ("mass_M", 0.0),
    ("mass_M", -1.0),
    ("j", -1),
    ("j", 1.5),
    ("sigma", 0.0),
])
def test_invalid_params_rejected(field, value):
    with pytest.raises(ValidationError):
        PhysicalParams(**{field: value})


def test_params_are_frozen(canonical):
    with pytest.raises(ValidationError):
        canonical.alpha = 2.0


def test_with_energy_scales_by_mass():
    p = PhysicalParams(epsilon=1.0, mass_M=2.0)
    q = p.with_energy(0.3)
    assert q.epsilon == pytest.approx(0.6)
    assert q.e == pytest.approx(0.3)
    assert q.alpha == p.alpha and q.j == p.j


# === derive ===
def test_derive_without_polarizability():
    d = derive(PhysicalParams(epsilon=0.0, mass_M=1.0, alpha=0.0, j=1, sigma=1.0))
    assert d.K2 == 1.0
    assert d.J2 == 2.0
    assert d.Sigma2 == 0.0
    assert d.A == 0


def test_derive_canonical(canonical):
    d = derive(canonical)
    assert d.K2 == pytest.approx(0.4375)
    assert d.J2 == -1.0
    assert d.Sigma2 == -1.0
    assert d.A.real == pytest.approx(0.813288, abs=1e-6)
    assert d.A.imag == pytest.approx(0.0, abs=1e-15)
    assert d.regime is Regime.I


def test_derive_at_printed_e_min():
    d = derive(PhysicalParams(epsilon=E_MIN_PRINTED, alpha=1.0, j=0, sigma=-1.0))
    assert d.K2 == pytest.approx(0.622194, abs=1e-6)


def test_a_fourth_power_matches(rng):
    for _ in range(500):
        p = random_params(rng)
        d = derive(p)
        target = (p.epsilon ** 2 - p.mass_M ** 2) * d.Sigma2
        assert abs(d.A ** 4 - target) <= 1e-12 * abs(target)
        assert d.J2 == p.j * (p.j + 1) - p.alpha * p.alpha


def test_regime_depends_only_on_signs(rng):
    expected = {("-", "-"): Regime.I, ("-", "+"): Regime.II,
                ("+", "-"): Regime.III, ("+", "+"): Regime.IV}
    seen = set()
    for _ in range(200):
        p = random_params(rng)
        d = derive(p)
        shell = "+" if p.epsilon ** 2 > p.mass_M ** 2 else "-"
        pol = "+" if p.sigma > 0 else "-"
        assert d.sign_pattern == (shell, pol)
        assert d.regime is expected[(shell, pol)]
        seen.add(d.regime)
    assert seen == set(Regime)


def test_sign_pattern_without_alpha_uses_sigma():
    d = derive(PhysicalParams(epsilon=0.5, alpha=0.0, j=1, sigma=1.0))
    assert d.Sigma2 == 0.0
    assert d.sign_pattern == ("-", "+")


def test_sigma_principal_root():
    assert derive(PhysicalParams(sigma=-1.0)).Sigma == pytest.approx(1j)
    assert derive(PhysicalParams(sigma=4.0, alpha=1.0)).Sigma == pytest.approx(2.0)


# === P² ===
def test_p_squared_hand_value():
    p = PhysicalParams(epsilon=0.0, mass_M=1.0, alpha=1.0, j=0, sigma=-1.0)
    assert p_squared(1.0, p) == pytest.approx(-1.0)


def test_p_squared_limits(canonical):
    d = derive(canonical)
    assert p_squared(1e8, canonical) == pytest.approx(-d.K2, abs=1e-7)
    r = 1e-5
    assert p_squared(r, canonical) * r ** 4 / d.Sigma2 == pytest.approx(1.0, rel=1e-8)


def test_p_squared_rejects_non_positive_radius(canonical):
    with pytest.raises(ParameterDomainError):
        p_squared(0.0, canonical)
    with pytest.raises(ParameterDomainError):
        p_squared(np.array([1.0, -2.0]), canonical)


def test_p_squared_vectorized(canonical):
    r = np.array([0.5, 1.0, 2.0])
    values = p_squared(r, canonical)
    assert values.shape == (3,)
    assert values[1] == pytest.approx(p_squared(1.0, canonical))


def test_quartic_coefficients_from_polynomial_fit(rng):
    r = np.array([0.5, 1.0, 1.5, 2.0, 2.5])
    vandermonde = np.vander(r, 5)
    for _ in range(20):
        p = random_params(rng)
        for convention in Convention:
            fitted = np.linalg.solve(vandermonde, p_squared(r, p, convention) * r ** 4)
            expected = quartic_coefficients(p, convention)
            scale = np.max(np.abs(expected))
            np.testing.assert_allclose(fitted, expected, rtol=0, atol=1e-10 * scale)


def test_conventions_differ_only_in_r2_term(canonical):
    c2 = quartic_coefficients(canonical, Convention.SECTION2)
    c4 = quartic_coefficients(canonical, Convention.SECTION4)
    np.testing.assert_array_equal(np.delete(c2, 2), np.delete(c4, 2))
    assert c2[2] == 1.0      # −J² mit J² = −1
    assert c4[2] == 0.0      # −j(j+1)
    assert math.isclose(c2[2] - c4[2], canonical.alpha ** 2)
