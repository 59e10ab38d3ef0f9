# polarcoulomb/models/params.py
"""
Physikalische und abgeleitete Parameter des radialen Problems

- PhysicalParams: (ε, M, α, j, σ), validiert über Pydantic
- DerivedParams: K², J², Σ², A (reine Rechengrößen)
- p_squared: effektiver quadrierter Radialimpuls P²(r)
"""

import cmath
from dataclasses import dataclass
from enum import Enum
from typing import Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from polarcoulomb.utils.exceptions import ParameterDomainError

ArrayLike = Union[float, np.ndarray]


# === Enums für typsichere Auswahl ===
class Convention(str, Enum):
    """r²-Koeffizient der Quartik: −J² (SECTION2) oder −j(j+1) (SECTION4)"""
    SECTION2 = "section2"
    SECTION4 = "section4"


class Regime(str, Enum):
    I = "I"      # ε²<M², Σ²<0
    II = "II"    # ε²<M², Σ²>0
    III = "III"  # ε²>M², Σ²<0
    IV = "IV"    # ε²>M², Σ²>0


class RootBranch(str, Enum):
    """Wurzel der Energiegleichung, die über κ minimiert wird"""
    ROOT1 = "root1"   # kleinere Wurzel
    ROOT2 = "root2"   # größere Wurzel


_REGIME_BY_SIGNS = {
    ("-", "-"): Regime.I,
    ("-", "+"): Regime.II,
    ("+", "-"): Regime.III,
    ("+", "+"): Regime.IV,
}


class PhysicalParams(BaseModel):
    """Die fünf physikalischen Eingaben; e = ε/M ist die dimensionslose Energie"""
    model_config = ConfigDict(frozen=True)

    epsilon: float = Field(default=0.75, description="Energie ε")
    mass_M: float = Field(default=1.0, gt=0, description="Masse M")
    alpha: float = Field(default=1.0, description="Coulomb-Kopplung α")
    j: int = Field(default=0, ge=0, description="Drehimpulsquantenzahl")
    sigma: float = Field(default=-1.0, description="Polarisierbarkeit σ (kanonisch ±1)")

    @field_validator("sigma")
    @classmethod
    def validate_sigma(cls, v: float) -> float:
        if v == 0:
            raise ValueError("sigma darf nicht 0 sein")
        return v

    @property
    def e(self) -> float:
        return self.epsilon / self.mass_M

    def with_energy(self, e: float) -> "PhysicalParams":
        """Kopie mit ε = e·M"""
        return self.model_copy(update={"epsilon": e * self.mass_M})


@dataclass(frozen=True)
class DerivedParams:
    K2: float
    J2: float
    Sigma2: float
    A: complex
    sigma_sign: float = -1.0

    @property
    def Sigma(self) -> complex:
        """Hauptzweig von √Σ²: reell positiv oder +i|Σ|"""
        return cmath.sqrt(self.Sigma2)

    @property
    def sign_pattern(self) -> Tuple[str, str]:
        shell = "+" if self.K2 < 0 else "-"
        if self.Sigma2 != 0:
            pol = "+" if self.Sigma2 > 0 else "-"
        else:
            # α = 0: Vorzeichen allein aus σ
            pol = "+" if self.sigma_sign > 0 else "-"
        return shell, pol

    @property
    def regime(self) -> Regime:
        return _REGIME_BY_SIGNS[self.sign_pattern]

    def to_dict(self) -> dict:
        return {
            "K2": self.K2,
            "J2": self.J2,
            "Sigma2": self.Sigma2,
            "A": [self.A.real, self.A.imag],
        }


def derive(p: PhysicalParams) -> DerivedParams:
    """
    Berechnet die zusammengesetzten Symbole

    Args:
        p: Physikalische Parameter

    Returns:
        DerivedParams mit A als Hauptzweig der vierten Wurzel
    """
    eps, mass, alpha = p.epsilon, p.mass_M, p.alpha
    K2 = mass * mass - eps * eps
    J2 = p.j * (p.j + 1) - alpha * alpha
    Sigma2 = p.sigma * alpha * alpha / (mass * mass)
    A = complex(-K2 * Sigma2) ** 0.25
    return DerivedParams(
        K2=K2,
        J2=J2,
        Sigma2=Sigma2,
        A=A,
        sigma_sign=1.0 if p.sigma > 0 else -1.0,
    )


def r2_coefficient(p: PhysicalParams, convention: Convention = Convention.SECTION2) -> float:
    if Convention(convention) is Convention.SECTION4:
        return -float(p.j * (p.j + 1))
    return -(p.j * (p.j + 1) - p.alpha * p.alpha)


def quartic_coefficients(p: PhysicalParams,
                         convention: Convention = Convention.SECTION2) -> np.ndarray:
    """Koeffizienten von P²(r)·r⁴, höchste Potenz zuerst"""
    d = derive(p)
    return np.array([
        -d.K2,
        2.0 * p.epsilon * p.alpha,
        r2_coefficient(p, convention),
        0.0,
        d.Sigma2,
    ])


def p_squared(r: ArrayLike, p: PhysicalParams,
              convention: Convention = Convention.SECTION2) -> ArrayLike:
    """
    Effektiver quadrierter Radialimpuls
    P²(r) = (ε²−M²) + 2εα/r − J²/r² + Σ²/r⁴

    Args:
        r: Radius (Skalar oder Array), > 0
        p: Physikalische Parameter
        convention: r²-Koeffizient (SECTION4 ersetzt J² durch j(j+1))

    Returns:
        P²(r), gleiche Form wie r
    """
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= 0):
        raise ParameterDomainError(f"p_squared braucht r > 0, erhalten: {r}")

    c4, c3, c2, _, c0 = quartic_coefficients(p, convention)
    inv = 1.0 / r_arr
    inv2 = inv * inv
    value = c4 + c3 * inv + c2 * inv2 + c0 * inv2 * inv2
    if np.ndim(r) == 0:
        return float(value)
    return value
