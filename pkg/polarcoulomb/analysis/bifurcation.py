# polarcoulomb/analysis/bifurcation.py
"""
Bifurcation - untere Grenze e_min gebundener Zustände

Bei e = e_min bekommt die Quartik (Konvention −j(j+1)r²) eine positive
Doppelwurzel r0; das komplexe Paar a ± ib bleibt in der linken Halbebene.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.optimize import brentq

from polarcoulomb.models.params import Convention, PhysicalParams, quartic_coefficients
from polarcoulomb.utils.constants import (
    BIFURCATION_BRACKET_MARGIN,
    BIFURCATION_MAX_ITER,
    BIFURCATION_XTOL,
)
from polarcoulomb.utils.exceptions import (
    NoSignChangeError,
    ParameterDomainError,
    RadicandError,
    RootRefinementError,
)

logger = logging.getLogger("Bifurcation")


@dataclass(frozen=True)
class DoubleRootGeometry:
    r0: float
    a: float
    b2: float
    e: float

    def polynomial(self) -> np.ndarray:
        """Koeffizienten von (r−r0)²((r−a)²+b²), höchste Potenz zuerst"""
        double = np.array([1.0, -2.0 * self.r0, self.r0 * self.r0])
        pair = np.array([1.0, -2.0 * self.a, self.a * self.a + self.b2])
        return np.polymul(double, pair)

    def to_dict(self) -> dict:
        return {"r0": self.r0, "a": self.a, "b2": self.b2}


@dataclass(frozen=True)
class BifurcationResult:
    e_min: float
    geometry: DoubleRootGeometry
    bracket: Tuple[float, float]
    iterations: int
    residual: float

    def to_dict(self) -> dict:
        return {
            "e_min": self.e_min,
            **self.geometry.to_dict(),
            "residual": self.residual,
            "bracket": list(self.bracket),
            "iterations": self.iterations,
        }


# === Hilfsgrößen ===
def _radicand(e: float, j: int, alpha: float) -> float:
    return 8.0 * (e * e - 1.0) * j * (1 + j) + 9.0 * e * e * alpha * alpha


def _checked_root(e: float, p: PhysicalParams) -> float:
    rad = _radicand(e, p.j, p.alpha)
    if rad < 0:
        raise RadicandError(e, rad)
    return math.sqrt(rad)


def monic_quartic(e: float, p: PhysicalParams) -> np.ndarray:
    """Π(r): die Quartik mit −j(j+1)r², normiert auf führenden Koeffizienten 1"""
    c = quartic_coefficients(p.with_energy(e), Convention.SECTION4)
    if c[0] == 0:
        raise ParameterDomainError("Π(r) ist bei e² = 1 nicht definiert")
    return c / c[0]


# === Geschlossene Formen ===
def double_root_geometry(e: float, p: PhysicalParams) -> DoubleRootGeometry:
    """
    r0, a, b² der Doppelwurzel-Konfiguration

    Args:
        e: dimensionslose Energie, |e| < 1
        p: Physikalische Parameter (M, α, j)

    Returns:
        DoubleRootGeometry mit b² ≥ 0

    Raises:
        RadicandError: 8(e²−1)j(j+1) + 9e²α² < 0
    """
    if not abs(e) < 1.0:
        raise ParameterDomainError(f"Doppelwurzel nur für |e| < 1 (e={e})")
    S = _checked_root(e, p)
    M, alpha = p.mass_M, p.alpha
    u = e * e - 1.0

    r0 = -(3.0 * e * alpha + S) / (4.0 * u * M)
    a = (M * (r0 - e * e * r0) - e * alpha) / (u * M)
    b2 = -(e * alpha * (u * M * r0 + e * alpha)) / (u * u * M * M)

    if b2 < 0:
        raise ParameterDomainError(
            f"Kein komplexes Paar bei e={e}: b²={b2:.6g} < 0"
        )
    return DoubleRootGeometry(r0=r0, a=a, b2=b2, e=e)


def bifurcation_residual(e: float, p: PhysicalParams) -> float:
    """Linke Seite der Bestimmungsgleichung für e, Term für Term"""
    S = _checked_root(e, p)
    j, alpha, sigma = p.j, p.alpha, p.sigma
    u = e * e - 1.0
    return (
        -16.0 * u * u * j ** 3
        - 8.0 * u * u * j ** 4
        - 27.0 * e ** 4 * alpha ** 4
        - 9.0 * e ** 3 * alpha ** 3 * S
        - 4.0 * e * u * j * alpha * (9.0 * e * alpha + 2.0 * S)
        - 4.0 * u * j * j * (-2.0 + e * e * (2.0 + 9.0 * alpha * alpha) + 2.0 * e * alpha * S)
        + 32.0 * u ** 3 * alpha * alpha * sigma
    )


def bifurcation_condition(e: float, p: PhysicalParams) -> float:
    """Kompakte Form (3eα+S)³(eα−S)/8 + 32(e²−1)³α²σ, identisch zum Residuum"""
    S = _checked_root(e, p)
    ea = e * p.alpha
    u = e * e - 1.0
    return (3.0 * ea + S) ** 3 * (ea - S) / 8.0 + 32.0 * u ** 3 * p.alpha ** 2 * p.sigma


def reality_bound(j: int, alpha: float) -> float:
    """|e| muss diese Schranke überschreiten, damit r0 reell ist"""
    if alpha == 0:
        raise ParameterDomainError("reality_bound braucht α ≠ 0")
    numerator = 8.0 * j + 8.0 * j * j
    return math.sqrt(numerator / (numerator + 9.0 * alpha * alpha))


def default_bracket(p: PhysicalParams, sign: int = 1) -> Tuple[float, float]:
    lo = reality_bound(p.j, p.alpha) + BIFURCATION_BRACKET_MARGIN
    hi = 1.0 - BIFURCATION_BRACKET_MARGIN
    if sign < 0:
        return -hi, -lo
    return lo, hi


# === Nullstellensuche ===
def find_bifurcation(p: PhysicalParams, bracket: Optional[Tuple[float, float]] = None,
                     sign: int = 1) -> BifurcationResult:
    """
    Verfeinert die Nullstelle der Bestimmungsgleichung im Intervall

    Args:
        p: Physikalische Parameter (j, α, σ, M)
        bracket: (lo, hi); Standard (Schranke + 1e-6, 1 − 1e-6)
        sign: −1 sucht auf dem negativen Energieast

    Returns:
        BifurcationResult

    Raises:
        NoSignChangeError: kein Vorzeichenwechsel oder Nullstelle ohne
            gültige Geometrie (r0 > 0, b² ≥ 0)
    """
    lo, hi = bracket if bracket is not None else default_bracket(p, sign)
    if not lo < hi:
        raise ParameterDomainError(f"Ungültiges Intervall [{lo}, {hi}]")

    # Vorzeichen und Verfeinerung auf der kompakten Form: die Termform
    # löscht bei σ > 0 nahe |e| → 1 bis auf Rundungsrauschen aus
    f_lo = bifurcation_condition(lo, p)
    f_hi = bifurcation_condition(hi, p)
    if f_lo == 0.0 or f_hi == 0.0:
        root, iterations = (lo if f_lo == 0.0 else hi), 0
    elif np.sign(f_lo) == np.sign(f_hi):
        logger.warning(
            f"⚠️ Kein Vorzeichenwechsel auf [{lo:.6g}, {hi:.6g}] "
            f"(j={p.j}, α={p.alpha}, σ={p.sigma})"
        )
        raise NoSignChangeError(lo, hi, f_lo, f_hi, what="bifurcation condition")
    else:
        root, info = brentq(
            bifurcation_condition, lo, hi, args=(p,),
            xtol=BIFURCATION_XTOL, rtol=4.0 * np.finfo(float).eps,
            maxiter=BIFURCATION_MAX_ITER, full_output=True, disp=False,
        )
        if not info.converged:
            raise RootRefinementError("bifurcation condition", info.iterations)
        iterations = info.iterations

    try:
        geometry = double_root_geometry(root, p)
    except ParameterDomainError as e:
        logger.warning(f"⚠️ Nullstelle e={root:.12g} ohne Doppelwurzel-Geometrie: {e}")
        raise NoSignChangeError(lo, hi, f_lo, f_hi, what="bifurcation condition") from e
    if not geometry.r0 > 0:
        logger.warning(f"⚠️ Nullstelle e={root:.12g} mit r0={geometry.r0:.6g} ≤ 0 verworfen")
        raise NoSignChangeError(lo, hi, f_lo, f_hi, what="bifurcation condition")

    residual = bifurcation_residual(root, p)
    logger.debug(
        f"e_min={root:.12f} nach {iterations} Iterationen, "
        f"r0={geometry.r0:.9f}, Residuum {residual:.3e}"
    )
    return BifurcationResult(
        e_min=float(root),
        geometry=geometry,
        bracket=(lo, hi),
        iterations=iterations,
        residual=residual,
    )


def e_min(p: PhysicalParams, bracket: Optional[Tuple[float, float]] = None, sign: int = 1) -> float:
    return find_bifurcation(p, bracket, sign).e_min


# === Kurven ===
def scan_residual(p: PhysicalParams, lo: float, hi: float, n: int) -> pd.DataFrame:
    """
    Residuum auf n gleichverteilten e-Werten; NaN wo der Radikand negativ ist
    """
    if n < 2 or not lo < hi:
        raise ParameterDomainError(f"Scan braucht n ≥ 2 und lo < hi (n={n}, [{lo}, {hi}])")
    energies = np.linspace(lo, hi, n)
    values = []
    for e in energies:
        try:
            values.append(bifurcation_residual(float(e), p))
        except RadicandError:
            values.append(np.nan)
    return pd.DataFrame({"e": energies, "residual": values})


def pi_curve(p: PhysicalParams, e: float, r_grid: Sequence[float]) -> pd.DataFrame:
    """Π(r) auf einem Radiengitter"""
    r = np.asarray(r_grid, dtype=float)
    return pd.DataFrame({"r": r, "pi": np.polyval(monic_quartic(e, p), r)})
