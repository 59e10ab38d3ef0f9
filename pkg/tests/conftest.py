# tests/conftest.py
"""Gemeinsame Fixtures: kanonische Parameter, feste Zufallsquelle"""

import logging

import numpy as np
import pytest

from polarcoulomb.models.params import PhysicalParams

# e_min für j=0, σ=−1, α=1, M=1 (6 Stellen)
E_MIN_PRINTED = 0.614659
# Ritz-Minimum für α=1
E_STAR = 0.749279
KAPPA_STAR = 0.625342


@pytest.fixture
def canonical():
    """M=1, σ=−1, j=0, α=1, ε=0.75"""
    return PhysicalParams(epsilon=0.75, mass_M=1.0, alpha=1.0, j=0, sigma=-1.0)


@pytest.fixture
def regime_ii():
    """Σ² > 0, ε² < M²: drei positive und eine negative Wurzel"""
    return PhysicalParams(epsilon=0.95, mass_M=1.0, alpha=1.0, j=2, sigma=1.0)


@pytest.fixture
def scattering():
    """ε² > M², Σ² > 0: Bewegung nahe 0 und nach außen"""
    return PhysicalParams(epsilon=1.5, mass_M=1.0, alpha=1.0, j=3, sigma=1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_params(rng, shell_gap: float = 1e-3) -> PhysicalParams:
    """Zufällige Parameter über alle vier Vorzeichenkombinationen, |ε²−M²| > shell_gap"""
    while True:
        mass = float(rng.uniform(0.5, 2.0))
        epsilon = float(rng.uniform(-2.5, 2.5)) * mass
        if abs(epsilon ** 2 - mass ** 2) <= shell_gap:
            continue
        return PhysicalParams(
            epsilon=epsilon,
            mass_M=mass,
            alpha=float(rng.uniform(0.1, 3.0)),
            j=int(rng.integers(0, 5)),
            sigma=float(rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 2.0)),
        )


ANALYSIS_LOGGERS = ["POLAR-CLI", "QuarticAnalysis", "HeunMap", "Bifurcation", "Variational", "RadialODE"]


@pytest.fixture(autouse=True)
def isolated_logging():
    """setup_logging() der CLI-Tests darf spätere Tests nicht beeinflussen"""
    root = logging.getLogger()
    level, handlers = root.level, list(root.handlers)
    yield
    for name in ANALYSIS_LOGGERS:
        logger = logging.getLogger(name)
        logger.handlers.clear()
        logger.propagate = True
        logger.setLevel(logging.NOTSET)
    for handler in list(root.handlers):
        if handler not in handlers:
            root.removeHandler(handler)
    root.setLevel(level)
