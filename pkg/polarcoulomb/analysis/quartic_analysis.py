# polarcoulomb/analysis/quartic_analysis.py
"""
QuarticAnalysis - Umkehrpunkte und Bewegungsregime
Zuständig für:
- Wurzeln der Quartik P²(r)·r⁴ (Begleitmatrix + Newton-Politur)
- Vieta-Kontrollen
- Regime-Einteilung und klassisch erlaubte Intervalle
- Brute-Force-Orakel über Vorzeichenscan
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from polarcoulomb.models.params import (
    Convention,
    PhysicalParams,
    Regime,
    derive,
    p_squared,
    quartic_coefficients,
)
from polarcoulomb.utils.constants import (
    BRUTE_FORCE_R_MAX_FACTOR,
    DEGENERATE_SHELL_TOLERANCE,
    DOUBLE_ROOT_TOLERANCE,
    REAL_ROOT_IMAG_TOLERANCE,
)
from polarcoulomb.utils.exceptions import DegenerateShellError, ParameterDomainError

logger = logging.getLogger("QuarticAnalysis")

Interval = Tuple[float, float]


@dataclass
class QuarticAnalysis:
    roots: np.ndarray
    regime: Regime
    motion_intervals: List[Interval]
    convention: Convention
    coefficients: np.ndarray
    double_roots: List[float] = field(default_factory=list)

    @property
    def real_roots(self) -> List[float]:
        return [float(z.real) for z in self.roots if z.imag == 0.0]

    @property
    def positive_roots(self) -> List[float]:
        """Positive reelle Wurzeln (mit Vielfachheit), aufsteigend"""
        return sorted(r for r in self.real_roots if r > 0.0)

    def backward_errors(self) -> np.ndarray:
        """|Q(r)| / Σ|c_k||r|^k je Wurzel"""
        return np.array([_backward_error(self.coefficients, z) for z in self.roots])

    def to_dict(self) -> dict:
        return {
            "regime": self.regime.value,
            "convention": self.convention.value,
            "coefficients": [float(c) for c in self.coefficients],
            "roots": [[float(z.real), float(z.imag)] for z in self.roots],
            "positive_roots": self.positive_roots,
            "double_roots": list(self.double_roots),
            "motion_intervals": [[a, b] for a, b in self.motion_intervals],
        }


# === Wurzeln ===
def _backward_error(coefficients: np.ndarray, z: complex) -> float:
    powers = np.abs(z) ** np.arange(len(coefficients) - 1, -1, -1)
    scale = float(np.sum(np.abs(coefficients) * powers))
    if scale == 0.0:
        return 0.0
    return float(abs(np.polyval(coefficients, z)) / scale)


def _newton_polish(coefficients: np.ndarray, z: complex) -> complex:
    """Ein Newton-Schritt, nur übernommen wenn |Q| kleiner wird"""
    dq = np.polyval(np.polyder(coefficients), z)
    q = np.polyval(coefficients, z)
    if dq == 0 or q == 0:
        return z
    candidate = z - q / dq
    if abs(np.polyval(coefficients, candidate)) < abs(q):
        return candidate
    return z


def solve_quartic(coefficients: Sequence[float]) -> Tuple[np.ndarray, List[float]]:
    """
    Wurzeln einer reellen Quartik

    Args:
        coefficients: 5 reelle Koeffizienten, höchste Potenz zuerst

    Returns:
        (roots, double_roots): roots sortiert nach (Re, Im), komplexe Paare
        exakt konjugiert; fast gleiche reelle Wurzeln als Doppelwurzel
    """
    c = np.asarray(coefficients, dtype=float)
    roots = [complex(_newton_polish(c, complex(z))) for z in np.roots(c)]

    # === Doppelwurzeln (auch als Paar mit winzigem Imaginärteil) ===
    double_roots: List[float] = []
    used = [False] * len(roots)
    for i in range(len(roots)):
        for k in range(i + 1, len(roots)):
            if used[i] or used[k]:
                continue
            zi, zk = roots[i], roots[k]
            tol = DOUBLE_ROOT_TOLERANCE * max(1.0, abs(zi))
            if abs(zi.imag) <= tol and abs(zk.imag) <= tol and abs(zi - zk) <= tol:
                mean = 0.5 * (zi.real + zk.real)
                roots[i] = roots[k] = complex(mean, 0.0)
                used[i] = used[k] = True
                double_roots.append(mean)

    # === Reelle Wurzeln säubern ===
    for i, z in enumerate(roots):
        if not used[i] and abs(z.imag) <= REAL_ROOT_IMAG_TOLERANCE * max(1.0, abs(z)):
            roots[i] = complex(z.real, 0.0)

    # === Konjugierte Paare erzwingen ===
    upper = [i for i, z in enumerate(roots) if z.imag > 0]
    lower = [i for i, z in enumerate(roots) if z.imag < 0]
    for i in upper:
        if not lower:
            break
        k = min(lower, key=lambda idx: abs(roots[idx] - roots[i].conjugate()))
        lower.remove(k)
        z = 0.5 * (roots[i] + roots[k].conjugate())
        roots[i], roots[k] = z, z.conjugate()

    ordered = np.array(sorted(roots, key=lambda z: (z.real, z.imag)), dtype=complex)
    return ordered, sorted(double_roots)


# === Bewegungsintervalle ===
def _segment_midpoint(a: float, b: float) -> float:
    if math.isinf(b):
        return 2.0 * a + 1.0
    return 0.5 * (a + b)


def motion_intervals_from_roots(p: PhysicalParams, positive_roots: Sequence[float],
                                convention: Convention = Convention.SECTION2) -> List[Interval]:
    """Intervalle auf r>0 mit P²>0, begrenzt durch 0, +∞ oder positive Wurzeln"""
    points = sorted(set(float(r) for r in positive_roots if r > 0.0))
    edges = [0.0] + points + [math.inf]

    intervals: List[Interval] = []
    for a, b in zip(edges[:-1], edges[1:]):
        if p_squared(_segment_midpoint(a, b), p, convention) <= 0.0:
            continue
        if intervals and intervals[-1][1] == a:
            # Berührpunkt (Doppelwurzel) → zusammenführen
            intervals[-1] = (intervals[-1][0], b)
        else:
            intervals.append((a, b))
    return intervals


def turning_points(p: PhysicalParams,
                   convention: Convention = Convention.SECTION2) -> QuarticAnalysis:
    """
    Löst die Umkehrpunkt-Quartik und klassifiziert das Regime

    Args:
        p: Physikalische Parameter
        convention: r²-Koeffizient (−J² oder −j(j+1))

    Returns:
        QuarticAnalysis

    Raises:
        DegenerateShellError: |ε²−M²| < tol·M²
    """
    convention = Convention(convention)
    d = derive(p)
    if abs(d.K2) < DEGENERATE_SHELL_TOLERANCE * p.mass_M ** 2:
        raise DegenerateShellError(p.epsilon, p.mass_M)

    coefficients = quartic_coefficients(p, convention)
    roots, double_roots = solve_quartic(coefficients)
    positive = sorted(float(z.real) for z in roots if z.imag == 0.0 and z.real > 0.0)
    intervals = motion_intervals_from_roots(p, positive, convention)

    logger.debug(
        f"Quartik {convention.value}: Regime {d.regime.value}, "
        f"{len(positive)} positive Wurzel(n), {len(intervals)} Intervall(e)"
    )
    return QuarticAnalysis(
        roots=roots,
        regime=d.regime,
        motion_intervals=intervals,
        convention=convention,
        coefficients=coefficients,
        double_roots=double_roots,
    )


# === Vieta ===
def vieta_residuals_for(roots: Sequence[complex], coefficients: Sequence[float]) -> np.ndarray:
    """
    Vieta-Residuen einer beliebigen Quartik

    Returns:
        4 Residuen |LHS − RHS| / max(1, |LHS|) für e1..e4
    """
    c = np.asarray(coefficients, dtype=float)
    z = np.asarray(roots, dtype=complex)
    lead = c[0]
    lhs = [-c[1] / lead, c[2] / lead, -c[3] / lead, c[4] / lead]
    rhs = [
        z.sum(),
        sum(z[i] * z[k] for i in range(4) for k in range(i + 1, 4)),
        sum(z[i] * z[k] * z[m] for i in range(4) for k in range(i + 1, 4) for m in range(k + 1, 4)),
        np.prod(z),
    ]
    return np.array([abs(l - r) / max(1.0, abs(l)) for l, r in zip(lhs, rhs)])


def vieta_residuals(qa: QuarticAnalysis, p: PhysicalParams) -> np.ndarray:
    return vieta_residuals_for(qa.roots, quartic_coefficients(p, qa.convention))


# === Geschlossene Formen für die inneren Wurzeln ===
def _inner_discriminant(r3: float, r4: float, p: PhysicalParams) -> Tuple[float, float]:
    d = derive(p)
    s = r3 + r4 - 2.0 * p.epsilon * p.alpha / d.K2
    disc = s * s + 4.0 * d.Sigma2 / (d.K2 * r3 * r4)
    return s, disc


def _check_inner_preconditions(r3: float, r4: float, p: PhysicalParams) -> None:
    if not (0.0 < r3 < r4):
        raise ParameterDomainError(f"Erwartet 0 < r3 < r4, erhalten r3={r3}, r4={r4}")
    if p.epsilon ** 2 >= p.mass_M ** 2:
        raise ParameterDomainError(
            f"Geschlossene Form nur für ε² < M² (ε={p.epsilon}, M={p.mass_M})"
        )


def inner_roots_from_outer(r3: float, r4: float, p: PhysicalParams) -> Tuple[complex, complex]:
    """
    Die zwei übrigen Wurzeln aus den Umkehrpunkten r3 < r4

    Args:
        r3, r4: positive Umkehrpunkte
        p: Physikalische Parameter mit ε² < M²

    Returns:
        (r1, r2); bei negativer Diskriminante ein konjugiertes Paar
    """
    _check_inner_preconditions(r3, r4, p)
    s, disc = _inner_discriminant(r3, r4, p)
    root = complex(disc) ** 0.5
    r1 = 0.5 * (-s - root)
    r2 = 0.5 * (-s + root)
    if disc >= 0:
        return complex(r1.real, 0.0), complex(r2.real, 0.0)
    return r1, r2


def inner_root_case(r3: float, r4: float, p: PhysicalParams) -> str:
    """'real' (zwei negative Wurzeln) oder 'complex' (konjugiertes Paar)"""
    _check_inner_preconditions(r3, r4, p)
    _, disc = _inner_discriminant(r3, r4, p)
    return "real" if disc >= 0 else "complex"


def fourth_root_from_three(ra: float, rb: float, rc: float) -> float:
    """Vierte Wurzel aus drei bekannten, über das verschwindende e3"""
    denominator = ra * rb + ra * rc + rb * rc
    if denominator == 0:
        raise ParameterDomainError("Summe der Paarprodukte verschwindet")
    return -ra * rb * rc / denominator


def root_pattern(qa: QuarticAnalysis) -> Dict[str, int]:
    """Anzahl positiver, negativer, verschwindender und komplexer Wurzeln"""
    counts = {"positive": 0, "negative": 0, "zero": 0, "complex": 0}
    for z in qa.roots:
        if z.imag != 0.0:
            counts["complex"] += 1
        elif z.real > 0.0:
            counts["positive"] += 1
        elif z.real < 0.0:
            counts["negative"] += 1
        else:
            counts["zero"] += 1
    return counts


# === Brute-Force-Orakel ===
def default_grid(qa: QuarticAnalysis, step: float = 1e-3,
                 r_max: Optional[float] = None) -> np.ndarray:
    """Gleichmäßiges Gitter auf (0, 2·r_max]"""
    if r_max is None:
        r_max = max(qa.positive_roots, default=1.0)
        r_max = max(r_max, 1.0)
    upper = BRUTE_FORCE_R_MAX_FACTOR * r_max
    n = int(math.ceil(upper / step))
    return step * np.arange(1, n + 1, dtype=float)


def _crossing(r0: float, r1: float, v0: float, v1: float) -> float:
    if v1 == v0:
        return 0.5 * (r0 + r1)
    return r0 - v0 * (r1 - r0) / (v1 - v0)


def classify_brute_force(p: PhysicalParams, grid: Sequence[float],
                         convention: Convention = Convention.SECTION2) -> List[Interval]:
    """
    Vorzeichenscan von P² auf einem dichten Gitter

    Args:
        p: Physikalische Parameter
        grid: aufsteigende positive Radien
        convention: r²-Koeffizient

    Returns:
        Intervalle mit P² > 0; Start 0 wenn schon der erste Gitterpunkt
        positiv ist, Ende +∞ wenn der letzte positiv ist

    Raises:
        ParameterDomainError: leeres Gitter oder r ≤ 0
    """
    r = np.asarray(grid, dtype=float)
    if r.ndim != 1 or r.size == 0:
        raise ParameterDomainError(f"Vorzeichenscan braucht ein nichtleeres 1D-Gitter, erhalten: Form {r.shape}")
    values = p_squared(r, p, convention)
    positive = values > 0.0

    intervals: List[Interval] = []
    start: Optional[float] = 0.0 if positive[0] else None
    for i in range(1, len(r)):
        if positive[i] and not positive[i - 1]:
            start = _crossing(r[i - 1], r[i], values[i - 1], values[i])
        elif positive[i - 1] and not positive[i]:
            intervals.append((start, _crossing(r[i - 1], r[i], values[i - 1], values[i])))
            start = None
    if start is not None:
        intervals.append((start, math.inf))
    return intervals


def p_squared_samples(p: PhysicalParams, r_grid: Sequence[float],
                      convention: Convention = Convention.SECTION2) -> pd.DataFrame:
    r = np.asarray(r_grid, dtype=float)
    return pd.DataFrame({"r": r, "p_squared": p_squared(r, p, convention)})
