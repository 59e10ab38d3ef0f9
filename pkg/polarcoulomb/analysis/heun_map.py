# polarcoulomb/analysis/heun_map.py
"""
HeunMap - Koordinatentransformation und doppelt konfluente Heun-Parameter

- x(r) = (iAr + Σ)/(iAr − Σ) und Umkehrung
- Substitution f = (x+1)^B (x−1)^C exp(Dx/((x+1)(x−1))) F
- (μ, β, γ, δ) mit Nebenbedingung β + δ = γ
- punktweiser Koeffizientenvergleich der reduzierten Gleichung
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Tuple, Union

import numpy as np

from polarcoulomb.models.params import DerivedParams, PhysicalParams, derive
from polarcoulomb.utils.constants import HEUN_CONSTRAINT_TOLERANCE, SINGULAR_TOLERANCE
from polarcoulomb.utils.exceptions import (
    DegenerateHeunError,
    ParameterDomainError,
    SingularTransformError,
)

logger = logging.getLogger("HeunMap")

ComplexLike = Union[complex, np.ndarray]


@dataclass(frozen=True)
class HeunParams:
    mu: complex
    beta: complex
    gamma: complex
    delta: complex
    sign_choice: int = 1

    @property
    def constraint_residual(self) -> float:
        """|β + δ − γ| relativ zur größten Parametergröße"""
        scale = max(1.0, abs(self.beta), abs(self.gamma), abs(self.delta))
        return abs(self.beta + self.delta - self.gamma) / scale

    def to_dict(self) -> dict:
        def pair(z: complex) -> list:
            return [float(z.real), float(z.imag)]

        return {
            "sign": "+" if self.sign_choice > 0 else "-",
            "mu": pair(self.mu),
            "beta": pair(self.beta),
            "gamma": pair(self.gamma),
            "delta": pair(self.delta),
            "constraint_residual": self.constraint_residual,
        }


@dataclass(frozen=True)
class SubstitutionParams:
    B: Fraction
    C: Fraction
    D: complex


def _check_sign(sign_choice: int) -> int:
    if sign_choice not in (1, -1):
        raise ParameterDomainError(f"sign_choice muss ±1 sein, erhalten: {sign_choice}")
    return sign_choice


# === Koordinatentransformation ===
def modulus_scale(d: DerivedParams) -> float:
    """
    Reelle Skala s mit s⁴ = |(ε²−M²)Σ²|

    Für Σ² < 0 negativ gewählt, so dass x(r) reell in [−1, 1) läuft;
    für Σ² > 0 positiv, dann liegt x(r) auf dem Einheitskreis.
    """
    s = abs(d.A)
    if s == 0.0:
        raise DegenerateHeunError("α = 0 oder ε² = M²")
    return -s if d.Sigma2 < 0 else s


def x_of_r(r: ComplexLike, d: DerivedParams, scale: Optional[complex] = None) -> ComplexLike:
    """
    Möbius-Variable x(r) = (i·s·r + Σ)/(i·s·r − Σ), s = A falls nicht anders angegeben

    Args:
        r: Radius (Skalar oder Array), > 0
        d: Abgeleitete Parameter
        scale: Skala s statt A (siehe modulus_scale)

    Returns:
        x als komplexe Zahl(en)
    """
    s = d.A if scale is None else complex(scale)
    if s == 0:
        raise DegenerateHeunError("A = 0")
    r_arr = np.asarray(r)
    if np.any(np.real(r_arr) <= 0):
        raise ParameterDomainError(f"x_of_r braucht r > 0, erhalten: {r}")

    sigma = d.Sigma
    numerator = 1j * s * r_arr + sigma
    denominator = 1j * s * r_arr - sigma
    if np.any(np.abs(denominator) <= SINGULAR_TOLERANCE * np.maximum(1.0, np.abs(numerator))):
        raise SingularTransformError(f"iAr = Σ bei r={r}")

    x = numerator / denominator
    if np.ndim(r) == 0:
        return complex(x)
    return x


def r_of_x(x: ComplexLike, d: DerivedParams, scale: Optional[complex] = None) -> ComplexLike:
    """Umkehrung r = (−iΣ/s)·(x+1)/(x−1)"""
    s = d.A if scale is None else complex(scale)
    if s == 0:
        raise DegenerateHeunError("A = 0")
    x_arr = np.asarray(x, dtype=complex)
    if np.any(np.abs(x_arr - 1.0) <= SINGULAR_TOLERANCE):
        raise SingularTransformError("r_of_x ist bei x = 1 singulär")

    r = (-1j * d.Sigma / s) * (x_arr + 1.0) / (x_arr - 1.0)
    if np.ndim(x) == 0:
        return complex(r)
    return r


# === Heun-Parameter ===
def heun_params(p: PhysicalParams, sign_choice: int = 1) -> HeunParams:
    """
    Parameter der doppelt konfluenten Heun-Gleichung

    Args:
        p: Physikalische Parameter
        sign_choice: +1 oder −1 für D = ±4A

    Returns:
        HeunParams (μ = ±8A)
    """
    sign_choice = _check_sign(sign_choice)
    d = derive(p)
    A = d.A
    if A == 0:
        raise DegenerateHeunError("α = 0 oder ε² = M²")

    coupling = 1j * p.epsilon * p.alpha * d.Sigma / A     # iεαΣ/A
    A2 = A * A
    hp = HeunParams(
        mu=sign_choice * 8.0 * A,
        beta=-1.0 - 4.0 * d.J2 + 8.0 * A2 - 8.0 * coupling,
        gamma=-16.0 * coupling,
        delta=1.0 + 4.0 * d.J2 - 8.0 * A2 - 8.0 * coupling,
        sign_choice=sign_choice,
    )
    if hp.constraint_residual > HEUN_CONSTRAINT_TOLERANCE:
        logger.warning(f"⚠️ β + δ − γ = {hp.constraint_residual:.3e} (relativ)")
    logger.debug(f"Heun-Parameter: {hp.to_dict()}")
    return hp


def substitution_params(hp: HeunParams) -> SubstitutionParams:
    """B = 1/2, C = −1/2, D = μ/2"""
    return SubstitutionParams(B=Fraction(1, 2), C=Fraction(-1, 2), D=hp.mu / 2.0)


def substitution_prefactor(x: ComplexLike, sp: SubstitutionParams) -> ComplexLike:
    """(x+1)^B (x−1)^C exp(Dx/((x+1)(x−1))), Hauptzweig der Potenzen"""
    x_arr = np.asarray(x, dtype=complex)
    value = (
        np.power(x_arr + 1.0, float(sp.B))
        * np.power(x_arr - 1.0, float(sp.C))
        * np.exp(sp.D * x_arr / ((x_arr + 1.0) * (x_arr - 1.0)))
    )
    if np.ndim(x) == 0:
        return complex(value)
    return value


# === Koeffizientenfunktionen ===
def reduced_coefficients(x: complex, p: PhysicalParams, D: complex) -> Tuple[complex, complex]:
    """
    Koeffizienten von F' und F der reduzierten Gleichung (nach B=1/2, C=−1/2)

    Returns:
        (first_order, zeroth_order)
    """
    d = derive(p)
    A = d.A
    ieaS = 1j * p.epsilon * p.alpha * d.Sigma
    xp, xm = x + 1.0, x - 1.0

    first = 1.0 / xp + 1.0 / xm - D / xp ** 2 - D / xm ** 2
    numerator = (
        (D * D * A - 8.0 * d.J2 * A - 2.0 * A - 16.0 * ieaS) * x * x
        + (8.0 * D * A - 32.0 * ieaS) * x
        + 2.0 * A - 16.0 * ieaS - D * D * A + 8.0 * d.J2 * A
    )
    zeroth = numerator / (2.0 * A * xp ** 3 * xm ** 3)
    return first, zeroth


def heun_coefficients(x: complex, hp: HeunParams) -> Tuple[complex, complex]:
    """Koeffizienten von H' und H der Normalform mit (μ, β, γ, δ)"""
    xp, xm = x + 1.0, x - 1.0
    first = 1.0 / xp + 1.0 / xm - hp.mu / (2.0 * xp ** 2) - hp.mu / (2.0 * xm ** 2)
    zeroth = (hp.beta * x * x + (hp.gamma + 2.0 * hp.mu) * x + hp.delta) / (xp ** 3 * xm ** 3)
    return first, zeroth


def verify_heun_reduction(p: PhysicalParams, sign_choice: int, x_samples: Iterable[complex]) -> float:
    """
    Maximale Abweichung der Koeffizientenfunktionen beider Gleichungsformen

    Args:
        p: Physikalische Parameter
        sign_choice: ±1
        x_samples: Stützstellen abseits von ±1

    Returns:
        max |Δ| über beide Koeffizienten und alle Stützstellen
    """
    hp = heun_params(p, sign_choice)
    D = hp.mu / 2.0
    worst = 0.0
    for x in x_samples:
        x = complex(x)
        if abs(x - 1.0) < SINGULAR_TOLERANCE or abs(x + 1.0) < SINGULAR_TOLERANCE:
            raise SingularTransformError(f"Stützstelle x={x} liegt auf einer Singularität")
        red_first, red_zeroth = reduced_coefficients(x, p, D)
        heun_first, heun_zeroth = heun_coefficients(x, hp)
        worst = max(worst, abs(red_first - heun_first), abs(red_zeroth - heun_zeroth))
    logger.debug(f"Heun-Reduktion: max Residuum {worst:.3e}")
    return worst
