# polarcoulomb/utils/constants.py
"""
Zentrale Konstanten für die Coulomb-Analyse
Ersetzt Magic Numbers im Code
"""

# === Toleranzen ===
DEGENERATE_SHELL_TOLERANCE = 1e-12   # |ε²−M²| < tol·M² → Massenschale
DOUBLE_ROOT_TOLERANCE = 1e-6         # relativ, max(1, |r|)
REAL_ROOT_IMAG_TOLERANCE = 1e-7      # |Im r| darunter → reelle Wurzel
HEUN_CONSTRAINT_TOLERANCE = 1e-12
SINGULAR_TOLERANCE = 1e-14

# === Numerik ===
EXP_UNDERFLOW_LIMIT = -700.0         # exp() darunter → 0.0
RADIAL_OVERFLOW_LIMIT = 1e100
MIN_RADIUS = 1e-12                   # Division-Guard in der Rekonstruktion

# === Quartik ===
BRUTE_FORCE_R_MAX_FACTOR = 2.0       # Scan bis 2·größte positive Wurzel

# === Bifurkation ===
BIFURCATION_BRACKET_MARGIN = 1e-6
BIFURCATION_XTOL = 1e-15
BIFURCATION_MAX_ITER = 200

# === Variationsrechnung ===
DEFAULT_KAPPA_RANGE = (0.05, 3.0)
GOLDEN_SECTION_TOL = 1e-7
DEFAULT_CURVE_POINTS = 200
QUADRATURE_LIMIT = 200               # Subintervall-Budget von QUADPACK

# === Radial-ODE ===
ODE_METHOD = "DOP853"
ODE_RTOL = 1e-10
ODE_ATOL = 1e-12
TAIL_EXPONENT = 30.0                 # α/r_min ≈ 30, κ·r_max ≈ 30
DEFAULT_GRID_POINTS = 2000
SHOOTING_XTOL = 1e-12
SHOOTING_SCAN_POINTS = 40            # Vorabtastung des Anschlussdefekts

# === Ausgabe ===
FLOAT_FORMAT = "%.17g"
JSON_INDENT = 2

# === Logging ===
LOG_ROTATION_SIZE_MB = 10
LOG_ROTATION_BACKUP_COUNT = 5
