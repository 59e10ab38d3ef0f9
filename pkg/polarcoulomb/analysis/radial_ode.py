# polarcoulomb/analysis/radial_ode.py
"""
RadialODE - numerische Integration von f'' = −P²(r)·f
Zuständig für:
- Startwerte aus den Asymptotiken bei r→0 und r→∞
- Integration nach außen/innen mit Overflow-Abbruch
- Schießverfahren auf den Wronski-Defekt am Anschlusspunkt
- Rekonstruktion aller 15 Feldkomponenten aus C(r) = f(r)/r
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.integrate import solve_ivp, trapezoid
from scipy.optimize import brentq

from polarcoulomb.models.params import (
    Convention,
    PhysicalParams,
    derive,
    p_squared,
    quartic_coefficients,
)
from polarcoulomb.utils.constants import (
    DEFAULT_GRID_POINTS,
    EXP_UNDERFLOW_LIMIT,
    MIN_RADIUS,
    ODE_ATOL,
    ODE_METHOD,
    ODE_RTOL,
    RADIAL_OVERFLOW_LIMIT,
    SHOOTING_SCAN_POINTS,
    SHOOTING_XTOL,
    TAIL_EXPONENT,
)
from polarcoulomb.utils.exceptions import (
    NoSignChangeError,
    ParameterDomainError,
    PolarCoulombError,
    RadialOverflowError,
    RootRefinementError,
)

logger = logging.getLogger("RadialODE")


class Direction(str, Enum):
    OUTWARD = "outward"
    INWARD = "inward"


@dataclass
class RadialSolution:
    grid: np.ndarray
    f: np.ndarray
    df: np.ndarray
    e: float

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float)
        self.f = np.asarray(self.f, dtype=float)
        self.df = np.asarray(self.df, dtype=float)
        if np.any(self.grid <= 0) or np.any(np.diff(self.grid) <= 0):
            raise ParameterDomainError("Gitter muss streng steigend und positiv sein")
        if not (np.all(np.isfinite(self.f)) and np.all(np.isfinite(self.df))):
            raise ParameterDomainError("Radiallösung enthält nicht-endliche Werte")

    @property
    def C(self) -> np.ndarray:
        return self.f / self.grid

    def to_frame(self, p: Optional[PhysicalParams] = None) -> pd.DataFrame:
        frame = pd.DataFrame({"r": self.grid, "f": self.f, "C": self.C})
        if p is not None:
            frame["p_squared"] = p_squared(self.grid, p.with_energy(self.e))
        return frame


# === Asymptotiken ===
def asymptotic_origin(r: float, alpha: float) -> Tuple[float, float]:
    """
    Abklingender Zweig von f'' − α²f/r⁴ = 0: f = r·exp(−α/r)/(2α)

    Returns:
        (f, f'), beide 0 wenn der Exponent unter −700 liegt
    """
    if not (r > 0 and alpha > 0):
        raise ParameterDomainError(f"asymptotic_origin braucht r, α > 0 (r={r}, α={alpha})")
    exponent = -alpha / r
    if exponent < EXP_UNDERFLOW_LIMIT:
        return 0.0, 0.0
    value = r * math.exp(exponent) / (2.0 * alpha)
    return value, value * (1.0 / r + alpha / (r * r))


def asymptotic_infinity(r: float, e: float, mass: float = 1.0) -> Tuple[float, float]:
    """
    Führender Term bei r→∞: f = exp(−κr)/(2κ·r), κ = M·√(1−e²)

    Returns:
        (f, f')
    """
    if not abs(e) < 1.0:
        raise ParameterDomainError(f"asymptotic_infinity braucht |e| < 1 (e={e})")
    if not r > 0:
        raise ParameterDomainError(f"asymptotic_infinity braucht r > 0 (r={r})")
    kappa = mass * math.sqrt(1.0 - e * e)
    exponent = -kappa * r
    if exponent < EXP_UNDERFLOW_LIMIT:
        return 0.0, 0.0
    value = math.exp(exponent) / (2.0 * kappa * r)
    return value, -value * (kappa + 1.0 / r)


# === Integrationsbereich ===
def _decay_rate(p: PhysicalParams, e: float) -> float:
    if not abs(e) < 1.0:
        raise ParameterDomainError(f"Gebundene Zustände nur für |e| < 1 (e={e})")
    return p.mass_M * math.sqrt(1.0 - e * e)


def default_span(p: PhysicalParams, e: float) -> Tuple[float, float]:
    """r_min mit |Σ|/r_min ≈ 30, r_max mit κ·r_max ≈ 30"""
    r_max = TAIL_EXPONENT / _decay_rate(p, e)
    Sigma2 = derive(p).Sigma2
    if Sigma2 != 0:
        r_min = math.sqrt(abs(Sigma2)) / TAIL_EXPONENT
    else:
        r_min = r_max * 1e-4
    return r_min, r_max


def default_match_point(p: PhysicalParams, e: float) -> float:
    """Maximum der Testfunktion √(α/κ); ohne Kopplung die Mitte in log r"""
    kappa = _decay_rate(p, e)
    if p.alpha > 0:
        return math.sqrt(p.alpha / kappa)
    r_min, r_max = default_span(p, e)
    return math.sqrt(r_min * r_max)


def _outward_start(p: PhysicalParams, r: float) -> Tuple[float, float]:
    Sigma2 = derive(p).Sigma2
    if Sigma2 < 0:
        return asymptotic_origin(r, math.sqrt(-Sigma2))
    if Sigma2 == 0:
        # Ohne Polarisierbarkeit: reguläre Lösung r^(j+1)
        return r ** (p.j + 1), (p.j + 1) * r ** p.j
    raise ParameterDomainError("Kein abklingender Zweig bei r→0 für Σ² > 0")


def _scaled(y0: Tuple[float, float]) -> Tuple[float, float]:
    f0, df0 = y0
    scale = abs(f0) if f0 != 0 else abs(df0)
    if scale == 0 or not math.isfinite(scale):
        raise ParameterDomainError(f"Ungültige Startwerte {y0}")
    return f0 / scale, df0 / scale


# === Integration ===
def solve_radial(p: PhysicalParams, e: float, r_start: float, r_end: float,
                 initial: Tuple[float, float], grid: Optional[Sequence[float]] = None,
                 rtol: float = ODE_RTOL, atol: float = ODE_ATOL,
                 convention: Convention = Convention.SECTION2):
    """
    Rohes Anfangswertproblem für (f, f') von r_start nach r_end

    Returns:
        scipy OdeResult mit dichter Ausgabe
    """
    c4, c3, c2, _, c0 = quartic_coefficients(p.with_energy(e), convention)

    def rhs(r, y):
        inv2 = 1.0 / (r * r)
        return [y[1], -(c4 + c3 / r + c2 * inv2 + c0 * inv2 * inv2) * y[0]]

    def overflow(r, y):
        return RADIAL_OVERFLOW_LIMIT - abs(y[0])
    overflow.terminal = True

    sol = solve_ivp(
        rhs, (r_start, r_end), list(initial),
        method=ODE_METHOD, rtol=rtol, atol=atol,
        t_eval=None if grid is None else np.asarray(grid, dtype=float),
        dense_output=True, events=overflow,
    )
    if sol.status == 1:
        raise RadialOverflowError(float(sol.t_events[0][0]), e)
    if sol.status < 0:
        raise PolarCoulombError(f"Integration fehlgeschlagen bei e={e}: {sol.message}")
    return sol


def integrate_radial(p: PhysicalParams, e: float,
                     r_span: Optional[Tuple[float, float]] = None,
                     direction: Direction = Direction.OUTWARD,
                     grid: Optional[Sequence[float]] = None,
                     initial: Optional[Tuple[float, float]] = None,
                     rtol: float = ODE_RTOL, atol: float = ODE_ATOL,
                     convention: Convention = Convention.SECTION2) -> RadialSolution:
    """
    Integriert die reduzierte Radialgleichung

    Args:
        p: Physikalische Parameter
        e: dimensionslose Energie
        r_span: (r_min, r_max); Standard aus default_span
        direction: outward startet bei r_min, inward bei r_max
        grid: Auswertungspunkte in (r_min, r_max); Standard log-gleichmäßig
        initial: (f, f') am Startpunkt statt der Asymptotik
        rtol, atol: Toleranzpaar der Schrittweitensteuerung
        convention: r²-Koeffizient von P²

    Returns:
        RadialSolution auf steigendem Gitter

    Raises:
        RadialOverflowError: |f| > 1e100
    """
    direction = Direction(direction)
    r_min, r_max = r_span if r_span is not None else default_span(p, e)
    if not 0 < r_min < r_max:
        raise ParameterDomainError(f"Ungültiger Bereich [{r_min}, {r_max}]")
    points = np.geomspace(r_min, r_max, DEFAULT_GRID_POINTS) if grid is None else np.asarray(grid, dtype=float)

    if direction is Direction.OUTWARD:
        start, end, order = r_min, r_max, points
        y0 = initial if initial is not None else _scaled(_outward_start(p, r_min))
    else:
        start, end, order = r_max, r_min, points[::-1]
        y0 = initial if initial is not None else _scaled(asymptotic_infinity(r_max, e, p.mass_M))

    sol = solve_radial(p, e, start, end, y0, grid=order, rtol=rtol, atol=atol, convention=convention)
    r, f, df = sol.t, sol.y[0], sol.y[1]
    if direction is Direction.INWARD:
        r, f, df = r[::-1], f[::-1], df[::-1]
    return RadialSolution(grid=r, f=f, df=df, e=e)


def wronskian(sol_a: RadialSolution, sol_b: RadialSolution) -> np.ndarray:
    """f_a·f_b' − f_b·f_a' auf gemeinsamem Gitter"""
    if sol_a.grid.shape != sol_b.grid.shape or not np.allclose(sol_a.grid, sol_b.grid, rtol=0, atol=0):
        raise ParameterDomainError("Wronski-Determinante braucht identische Gitter")
    return sol_a.f * sol_b.df - sol_b.f * sol_a.df


def normalize(sol: RadialSolution) -> RadialSolution:
    """Skaliert f so, dass ∫f² dr = 1 (Trapezregel)"""
    norm2 = trapezoid(sol.f ** 2, sol.grid)
    if not norm2 > 0:
        raise ParameterDomainError("Lösung ist identisch null")
    scale = 1.0 / math.sqrt(norm2)
    return RadialSolution(grid=sol.grid, f=sol.f * scale, df=sol.df * scale, e=sol.e)


# === Schießverfahren ===
def _endpoint(p: PhysicalParams, e: float, r_from: float, r_to: float,
              y0: Tuple[float, float], rtol: float, atol: float) -> Tuple[float, float]:
    sol = solve_radial(p, e, r_from, r_to, y0, grid=[r_to], rtol=rtol, atol=atol)
    return float(sol.y[0][-1]), float(sol.y[1][-1])


def matching_defect(p: PhysicalParams, e: float, match_r: Optional[float] = None,
                    rtol: float = ODE_RTOL, atol: float = ODE_ATOL) -> float:
    """
    Normierter Wronski-Defekt am Anschlusspunkt

    (f_a·f_i' − f_a'·f_i) / (‖(f_a, f_a')‖·‖(f_i, f_i')‖); verschwindet genau
    dort, wo die logarithmischen Ableitungen übereinstimmen, ohne deren Pole.
    """
    r_min, r_max = default_span(p, e)
    if match_r is None:
        match_r = default_match_point(p, e)
    if not r_min < match_r < r_max:
        raise ParameterDomainError(f"Anschlusspunkt {match_r} nicht in ({r_min}, {r_max})")

    fo, dfo = _endpoint(p, e, r_min, match_r, _scaled(_outward_start(p, r_min)), rtol, atol)
    fi, dfi = _endpoint(p, e, r_max, match_r, _scaled(asymptotic_infinity(r_max, e, p.mass_M)), rtol, atol)
    return (fo * dfi - dfo * fi) / (math.hypot(fo, dfo) * math.hypot(fi, dfi))


def shoot_eigenvalue(p: PhysicalParams, e_bracket: Tuple[float, float],
                     match_r: Optional[float] = None,
                     rtol: float = ODE_RTOL, atol: float = ODE_ATOL,
                     scan_points: int = SHOOTING_SCAN_POINTS) -> float:
    """
    Niedrigster Eigenwert im Intervall über den Anschlussdefekt

    Der Defekt wird auf scan_points Energien abgetastet; der erste
    Vorzeichenwechsel (Grundzustand im Intervall) wird mit Brent verfeinert.

    Args:
        p: Physikalische Parameter
        e_bracket: (lo, hi) innerhalb (−1, 1)
        match_r: Anschlusspunkt; Standard √(α/κ) zur Intervallmitte
        rtol, atol: Integrationstoleranzen
        scan_points: Stützstellen der Vorabtastung (≥ 2)

    Returns:
        e mit verschwindendem Defekt (auf 1e-12)

    Raises:
        NoSignChangeError: Defekt wechselt nirgends im Intervall das Vorzeichen
    """
    lo, hi = e_bracket
    if not lo < hi:
        raise ParameterDomainError(f"Ungültiges Energieintervall [{lo}, {hi}]")
    if scan_points < 2:
        raise ParameterDomainError(f"scan_points muss ≥ 2 sein, erhalten: {scan_points}")
    if match_r is None:
        match_r = default_match_point(p, 0.5 * (lo + hi))

    def defect(e: float) -> float:
        return matching_defect(p, e, match_r, rtol, atol)

    energies = np.linspace(lo, hi, scan_points)
    values = [defect(float(e)) for e in energies]
    for i, value in enumerate(values):
        if value == 0.0:
            return float(energies[i])
        if i > 0 and np.sign(values[i - 1]) != np.sign(value):
            a, b = float(energies[i - 1]), float(energies[i])
            break
    else:
        logger.warning(f"⚠️ Kein Eigenwert in [{lo:.6f}, {hi:.6f}] (Defekt ohne Vorzeichenwechsel)")
        raise NoSignChangeError(lo, hi, values[0], values[-1], what="matching defect")

    root, info = brentq(defect, a, b, xtol=SHOOTING_XTOL, full_output=True, disp=False)
    if not info.converged:
        raise RootRefinementError("matching defect", info.iterations)
    logger.debug(
        f"Eigenwert e={root:.12f} in [{a:.6f}, {b:.6f}] "
        f"({info.iterations} Iterationen, r_match={match_r:.4f})"
    )
    return float(root)


def eigenfunction(p: PhysicalParams, e: float, match_r: Optional[float] = None,
                  n_points: int = DEFAULT_GRID_POINTS,
                  rtol: float = ODE_RTOL, atol: float = ODE_ATOL) -> RadialSolution:
    """
    Zusammengesetzte Lösung: außen-Lösung bis match_r, innen-Lösung ab match_r,
    stetig angeschlossen und auf ∫f² dr = 1 normiert
    """
    r_min, r_max = default_span(p, e)
    if match_r is None:
        match_r = default_match_point(p, e)
    half = max(n_points // 2, 2)
    left_grid = np.geomspace(r_min, match_r, half)
    right_grid = np.geomspace(match_r, r_max, half)

    left = integrate_radial(p, e, (r_min, match_r), Direction.OUTWARD, left_grid, rtol=rtol, atol=atol)
    right = integrate_radial(p, e, (match_r, r_max), Direction.INWARD, right_grid,
                             initial=_scaled(asymptotic_infinity(r_max, e, p.mass_M)),
                             rtol=rtol, atol=atol)
    if right.f[0] == 0:
        raise ParameterDomainError(f"Innen-Lösung verschwindet am Anschlusspunkt {match_r}")
    scale = left.f[-1] / right.f[0]

    grid = np.concatenate([left.grid, right.grid[1:]])
    f = np.concatenate([left.f, scale * right.f[1:]])
    df = np.concatenate([left.df, scale * right.df[1:]])
    return normalize(RadialSolution(grid=grid, f=f, df=df, e=e))


# === Feldkomponenten ===
_COMPONENTS = (
    "C", "C0", "C1", "C2", "C3",
    "Phi0", "Phi1", "Phi2", "Phi3",
    "E1", "E2", "E3", "H1", "H2", "H3",
)


@dataclass
class FieldComponents:
    r: np.ndarray
    dC: np.ndarray
    C: np.ndarray
    C0: np.ndarray
    C1: np.ndarray
    C2: np.ndarray
    C3: np.ndarray
    Phi0: np.ndarray
    Phi1: np.ndarray
    Phi2: np.ndarray
    Phi3: np.ndarray
    E1: np.ndarray
    E2: np.ndarray
    E3: np.ndarray
    H1: np.ndarray
    H2: np.ndarray
    H3: np.ndarray

    def constraint_residuals(self) -> Dict[str, float]:
        """Maximale Beträge der algebraischen Nebenbedingungen"""
        def worst(values: np.ndarray) -> float:
            return float(np.max(np.abs(values))) if values.size else 0.0

        return {
            "Phi3-Phi1": worst(self.Phi3 - self.Phi1),
            "C3-C1": worst(self.C3 - self.C1),
            "E3-E1": worst(self.E3 - self.E1),
            "H3+H1": worst(self.H3 + self.H1),
            "H2": worst(self.H2),
            "E1": worst(self.E1),
            "H1": worst(self.H1),
        }

    def to_frame(self) -> pd.DataFrame:
        """Komplexe Komponenten als Spaltenpaare <name>_re, <name>_im"""
        columns = {"r": self.r}
        for name in _COMPONENTS:
            values = np.asarray(getattr(self, name), dtype=complex)
            columns[f"{name}_re"] = values.real
            columns[f"{name}_im"] = values.imag
        return pd.DataFrame(columns)


def reconstruct_components(sol: RadialSolution, p: PhysicalParams,
                           mass: Optional[float] = None, sign: int = 1) -> FieldComponents:
    """
    Hilfskomponenten aus C = f/r

    Args:
        sol: Radiallösung (f, f')
        p: Physikalische Parameter (ε, α, j, σ)
        mass: Massenparameter m; Standard M
        sign: (±) der Feldgleichungen

    Returns:
        FieldComponents mit Φ, E, H und C_i
    """
    if sign not in (1, -1):
        raise ParameterDomainError(f"sign muss ±1 sein, erhalten: {sign}")
    m = p.mass_M if mass is None else mass
    if m == 0:
        raise ParameterDomainError("Massenparameter m darf nicht 0 sein")
    r = sol.grid
    if np.any(r < MIN_RADIUS):
        raise ParameterDomainError(f"Gitterpunkte unter {MIN_RADIUS} nicht zulässig")

    eps, alpha, sigma = sol.e * p.mass_M, p.alpha, p.sigma
    nu = math.sqrt(p.j * (p.j + 1) / 2.0)

    C = (sol.f / r).astype(complex)
    dC = (sol.df / r - sol.f / r ** 2).astype(complex)
    field_term = eps + alpha / r
    polar = alpha / (m * m * r * r)
    zero = np.zeros_like(C)

    C1 = -(nu / r) * C / m
    Phi1 = -nu * C / (r * m)
    return FieldComponents(
        r=r,
        dC=dC,
        C=C,
        C0=(-1j * field_term * C + sign * 1j * sigma * polar * dC) / m,
        C1=C1,
        C2=(dC + sign * sigma * polar * field_term * C) / m,
        C3=C1.copy(),
        Phi0=-1j * field_term * C / m,
        Phi1=Phi1,
        Phi2=dC / m,
        Phi3=Phi1.copy(),
        E1=zero.copy(),
        E2=sign * (-1j * polar) * C,
        E3=zero.copy(),
        H1=zero.copy(),
        H2=zero.copy(),
        H3=zero.copy(),
    )
