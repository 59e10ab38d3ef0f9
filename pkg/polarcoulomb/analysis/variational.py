# polarcoulomb/analysis/variational.py
"""
Variational - verallgemeinertes Ritz-Verfahren für den Grundzustand
Zuständig für:
- modifizierte Bessel-Funktionen K_n
- Normierungsintegral der Testfunktion
- quadratische Energiegleichung in ε und ihre Wurzeln
- Minimierung einer Wurzel über den Zerfallsparameter κ
"""

import logging
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple, Union

import numpy as np
import pandas as pd
from scipy.integrate import IntegrationWarning, quad
from scipy.special import k0e, k1e

from polarcoulomb.models.params import RootBranch
from polarcoulomb.utils.constants import (
    DEFAULT_CURVE_POINTS,
    DEFAULT_KAPPA_RANGE,
    EXP_UNDERFLOW_LIMIT,
    GOLDEN_SECTION_TOL,
    QUADRATURE_LIMIT,
)
from polarcoulomb.utils.exceptions import (
    NoRealRootError,
    ParameterDomainError,
    QuadratureConvergenceError,
)

logger = logging.getLogger("Variational")

INV_PHI = (math.sqrt(5) - 1) / 2          # 1/φ
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2   # 1/φ²

ArrayLike = Union[float, np.ndarray]


# === Bessel-Funktionen ===
def bessel_k(n: int, x: float) -> float:
    """
    Modifizierte Bessel-Funktion zweiter Art K_n(x)

    K0, K1 exponentiell skaliert, danach Aufwärtsrekursion
    K_{n+1} = K_{n−1} + (2n/x)·K_n (stabil für K).

    Args:
        n: Ordnung ≥ 0
        x: Argument > 0

    Returns:
        K_n(x)
    """
    if int(n) != n or n < 0:
        raise ParameterDomainError(f"bessel_k braucht ganzzahliges n ≥ 0, erhalten: {n}")
    if not x > 0:
        raise ParameterDomainError(f"bessel_k braucht x > 0, erhalten: {x}")

    previous, current = float(k0e(x)), float(k1e(x))
    if n == 0:
        return previous * math.exp(-x)
    for order in range(1, int(n)):
        previous, current = current, previous + (2.0 * order / x) * current
    return current * math.exp(-x)


# === Quadratur ===
def adaptive_quadrature(integrand: Callable[[float], float], lo: float, hi: float,
                        tol: float = 1e-10, limit: int = QUADRATURE_LIMIT) -> float:
    """
    Adaptive Gauß-Kronrod-Quadratur (QUADPACK), unendliche Obergrenze
    über die Abbildung auf (0, 1]

    Args:
        integrand: reelle Funktion
        lo: Untergrenze
        hi: Obergrenze (darf math.inf sein)
        tol: relative Fehlerschranke
        limit: Budget an Teilintervallen

    Returns:
        Schätzwert des Integrals

    Raises:
        QuadratureConvergenceError: Budget erschöpft oder Fehlerschranke verfehlt
    """
    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            value, abserr = quad(integrand, lo, hi, epsabs=0.0, epsrel=tol, limit=limit)
        except IntegrationWarning as exc:
            raise QuadratureConvergenceError(
                f"Quadratur auf [{lo}, {hi}] konvergiert nicht: {str(exc).splitlines()[0]}"
            ) from exc

    if abserr > max(tol * abs(value), np.finfo(float).tiny):
        raise QuadratureConvergenceError(
            f"Quadratur auf [{lo}, {hi}]: Fehler {abserr:.3e} über Schranke {tol:.1e}"
        )
    return float(value)


# === Normierung ===
def norm_integral(alpha: float, kappa: float) -> float:
    """∫₀^∞ exp(−2α/r − 2κr) r² dr = 2(α/κ)^{3/2} K₃(4√(ακ))"""
    if not (alpha > 0 and kappa > 0):
        raise ParameterDomainError(f"norm_integral braucht α, κ > 0 (α={alpha}, κ={kappa})")
    return 2.0 * (alpha / kappa) ** 1.5 * bessel_k(3, 4.0 * math.sqrt(alpha * kappa))


def norm_integrand(alpha: float, kappa: float) -> Callable[[float], float]:
    """Integrand von norm_integral, für den Quadraturvergleich"""
    def integrand(r: float) -> float:
        if r <= 0:
            return 0.0
        exponent = -2.0 * alpha / r - 2.0 * kappa * r
        if exponent < EXP_UNDERFLOW_LIMIT:
            return 0.0
        return math.exp(exponent) * r * r
    return integrand


@dataclass(frozen=True)
class TrialState:
    alpha: float
    kappa: float
    norm: float

    def __post_init__(self):
        if not (self.alpha > 0 and self.kappa > 0 and self.norm > 0):
            raise ParameterDomainError(
                f"TrialState braucht α, κ, Norm > 0 "
                f"(α={self.alpha}, κ={self.kappa}, Norm={self.norm})"
            )

    @classmethod
    def normalized(cls, alpha: float, kappa: float) -> "TrialState":
        return cls(alpha=alpha, kappa=kappa, norm=1.0 / math.sqrt(norm_integral(alpha, kappa)))

    @property
    def peak(self) -> float:
        return math.sqrt(self.alpha / self.kappa)


def trial_wavefunction(r: ArrayLike, ts: TrialState) -> ArrayLike:
    """
    C(r) = Norm · exp(−α/r − κr), 0 wo der Exponent unter −700 fällt

    Args:
        r: Radius (Skalar oder Array), > 0
        ts: Testzustand

    Returns:
        C(r)
    """
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= 0):
        raise ParameterDomainError(f"trial_wavefunction braucht r > 0, erhalten: {r}")

    exponent = -ts.alpha / r_arr - ts.kappa * r_arr
    safe = np.maximum(exponent, EXP_UNDERFLOW_LIMIT)
    value = np.where(exponent < EXP_UNDERFLOW_LIMIT, 0.0, ts.norm * np.exp(safe))
    if np.ndim(r) == 0:
        return float(value)
    return value


# === Energiegleichung ===
def energy_coefficients(kappa: float, alpha: float) -> Tuple[float, float, float]:
    """(c₂, c₁, c₀) der quadratischen Gleichung c₂ε² + c₁ε + c₀ = 0"""
    if not (kappa > 0 and alpha > 0):
        raise ParameterDomainError(f"Energiegleichung braucht κ, α > 0 (κ={kappa}, α={alpha})")
    X = 4.0 * math.sqrt(alpha * kappa)
    k2 = bessel_k(2, X)
    k3 = bessel_k(3, X)
    weight = math.sqrt(alpha / kappa) * k3
    return weight, 2.0 * alpha * k2, weight * (alpha * kappa - kappa * kappa - 1.0) - alpha * k2


def discriminant(kappa: float, alpha: float) -> float:
    c2, c1, c0 = energy_coefficients(kappa, alpha)
    return c1 * c1 - 4.0 * c2 * c0


def energy_equation(eps: float, kappa: float, alpha: float) -> float:
    """Linke Seite der Energiegleichung in der ungekürzten Form"""
    X = 4.0 * math.sqrt(alpha * kappa)
    return (
        math.sqrt(alpha / kappa) * bessel_k(3, X) * (alpha * kappa - kappa ** 2 + eps ** 2 - 1.0)
        + alpha * (2.0 * eps - 1.0) * bessel_k(2, X)
    )


def energy_roots(kappa: float, alpha: float) -> Tuple[Optional[float], Optional[float]]:
    """
    Beide Wurzeln in ε, aufsteigend

    Returns:
        (eps1, eps2) oder (None, None) bei negativer Diskriminante
    """
    c2, c1, c0 = energy_coefficients(kappa, alpha)
    disc = c1 * c1 - 4.0 * c2 * c0
    if disc < 0:
        return None, None
    # Auslöschungsfreie Form
    q = -0.5 * (c1 + math.copysign(math.sqrt(disc), c1))
    roots = sorted((q / c2, c0 / q)) if q != 0 else [-c1 / (2.0 * c2)] * 2
    return roots[0], roots[1]


def branch_root(kappa: float, alpha: float, branch: RootBranch) -> Optional[float]:
    eps1, eps2 = energy_roots(kappa, alpha)
    return eps1 if RootBranch(branch) is RootBranch.ROOT1 else eps2


def sample_root_curves(alpha: float, kappa_range: Tuple[float, float] = DEFAULT_KAPPA_RANGE,
                       n: int = DEFAULT_CURVE_POINTS) -> pd.DataFrame:
    """(κ, ε₁, ε₂) auf gleichmäßigem κ-Gitter, NaN wo keine reelle Wurzel existiert"""
    lo, hi = kappa_range
    if n < 2 or not 0 < lo < hi:
        raise ParameterDomainError(f"Ungültiges κ-Gitter: n={n}, Bereich {kappa_range}")
    kappas = np.linspace(lo, hi, n)
    eps1, eps2 = [], []
    for kappa in kappas:
        r1, r2 = energy_roots(float(kappa), alpha)
        eps1.append(np.nan if r1 is None else r1)
        eps2.append(np.nan if r2 is None else r2)
    return pd.DataFrame({"kappa": kappas, "eps1": eps1, "eps2": eps2})


# === Minimierung ===
def golden_section(f: Callable[[float], float], lo: float, hi: float,
                   tol: float = GOLDEN_SECTION_TOL) -> Tuple[float, float]:
    """
    Goldener Schnitt auf [lo, hi] bis Intervallbreite ≤ tol

    Returns:
        (x, f(x)) am besseren Rand des Restintervalls
    """
    a, b = min(lo, hi), max(lo, hi)
    h = b - a
    if h <= tol:
        x = 0.5 * (a + b)
        return x, f(x)

    steps = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))
    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc, yd = f(c), f(d)

    for _ in range(steps - 1):
        if yc < yd:
            b, d, yd = d, c, yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARE * h
            yc = f(c)
        else:
            a, c, yc = c, d, yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = f(d)

    return (c, yc) if yc < yd else (d, yd)


@dataclass
class VariationalResult:
    e_star: float
    kappa_star: float
    root_curves: pd.DataFrame
    branch: RootBranch = RootBranch.ROOT2
    alpha: float = 1.0
    at_boundary: bool = False
    discriminant: float = 0.0
    kappa_range: Tuple[float, float] = field(default=DEFAULT_KAPPA_RANGE)

    @property
    def kappa_constraint_mismatch(self) -> float:
        """κ* − √(1−e*²); nur Diagnose, κ bleibt freier Parameter"""
        if abs(self.e_star) >= 1.0:
            return math.nan
        return self.kappa_star - math.sqrt(1.0 - self.e_star ** 2)

    def trial_state(self) -> TrialState:
        return TrialState.normalized(self.alpha, self.kappa_star)

    def to_dict(self) -> dict:
        return {
            "e_star": self.e_star,
            "kappa_star": self.kappa_star,
            "branch": self.branch.value,
            "alpha": self.alpha,
            "discriminant": self.discriminant,
            "kappa_constraint_mismatch": self.kappa_constraint_mismatch,
            "at_boundary": self.at_boundary,
        }


def minimize_root(alpha: float, branch: RootBranch = RootBranch.ROOT2,
                  kappa_range: Tuple[float, float] = DEFAULT_KAPPA_RANGE,
                  tol: float = GOLDEN_SECTION_TOL,
                  curve_points: int = DEFAULT_CURVE_POINTS) -> VariationalResult:
    """
    Minimiert die gewählte Wurzel über κ

    Grobes Gitter für die Einschachtelung, danach goldener Schnitt im
    Nachbarschaftsintervall des Gitterminimums.

    Args:
        alpha: Kopplung α > 0
        branch: root1 (kleinere) oder root2 (größere Wurzel)
        kappa_range: (lo, hi) mit 0 < lo < hi
        tol: Zielbreite in κ
        curve_points: Auflösung der Wurzelkurven

    Returns:
        VariationalResult

    Raises:
        NoRealRootError: Ast im ganzen Bereich leer
    """
    branch = RootBranch(branch)
    lo, hi = kappa_range
    curves = sample_root_curves(alpha, (lo, hi), curve_points)
    column = "eps1" if branch is RootBranch.ROOT1 else "eps2"
    values = curves[column].to_numpy()

    if np.all(np.isnan(values)):
        logger.warning(f"⚠️ Ast {branch.value} ohne reelle Wurzel auf κ ∈ [{lo}, {hi}]")
        raise NoRealRootError(branch.value, lo, hi)

    def objective(kappa: float) -> float:
        root = branch_root(kappa, alpha, branch)
        return math.inf if root is None else root

    i = int(np.nanargmin(values))
    kappas = curves["kappa"].to_numpy()
    a = kappas[max(i - 1, 0)]
    b = kappas[min(i + 1, len(kappas) - 1)]
    kappa_star, e_star = golden_section(objective, a, b, tol)

    at_boundary = (kappa_star - lo) <= 2.0 * tol or (hi - kappa_star) <= 2.0 * tol
    if at_boundary:
        logger.warning(
            f"⚠️ Minimum am Rand des κ-Bereichs: κ*={kappa_star:.9f} in [{lo}, {hi}]"
        )

    result = VariationalResult(
        e_star=float(e_star),
        kappa_star=float(kappa_star),
        root_curves=curves,
        branch=branch,
        alpha=alpha,
        at_boundary=at_boundary,
        discriminant=discriminant(kappa_star, alpha),
        kappa_range=(lo, hi),
    )
    logger.debug(
        f"Ritz-Minimum ({branch.value}): e*={result.e_star:.9f} bei κ*={result.kappa_star:.9f}"
    )
    return result
