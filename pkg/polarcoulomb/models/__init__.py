# polarcoulomb/models/__init__.py
"""
Pydantic Models für Parameter und Config-Validierung
"""

from .params import (
    Convention,
    DerivedParams,
    PhysicalParams,
    Regime,
    RootBranch,
    derive,
)

__all__ = [
    "Convention",
    "DerivedParams",
    "PhysicalParams",
    "Regime",
    "RootBranch",
    "derive",
]
