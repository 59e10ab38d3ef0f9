# polarcoulomb/__init__.py
"""Polarisierbares skalares Teilchen im Coulomb-Feld: Umkehrpunkte, Heun-Abbildung, e_min, Ritz-Verfahren, Radialgleichung"""

__version__ = "0.1.0"
