# polarcoulomb/utils/exceptions.py
"""
Custom Exceptions für die Coulomb-Analyse
Jede Exception trägt den Exit-Code, den die CLI zurückgibt
"""


class PolarCoulombError(Exception):
    """Basis-Exception für alle Analyse-Fehler"""
    exit_code = 1


class ConfigValidationError(PolarCoulombError):
    """Config-Validierung fehlgeschlagen"""
    exit_code = 1


class ParameterDomainError(PolarCoulombError, ValueError):
    """Eingabe außerhalb des Definitionsbereichs"""
    exit_code = 1


class RadicandError(ParameterDomainError):
    """Negativer Radikand in den Doppelwurzel-Formeln"""
    def __init__(self, e: float, radicand: float):
        self.e = e
        self.radicand = radicand
        super().__init__(f"Negative radicand {radicand:.6g} at e={e:.9g}")


class DegenerateShellError(PolarCoulombError):
    """Führender Koeffizient ε²−M² verschwindet (Massenschale)"""
    exit_code = 2

    def __init__(self, epsilon: float, mass: float):
        self.epsilon = epsilon
        self.mass = mass
        super().__init__(
            f"Degenerate mass shell: epsilon^2 = M^2 (epsilon={epsilon}, M={mass})"
        )


class DegenerateHeunError(PolarCoulombError):
    """A = 0, Heun-Abbildung nicht definiert"""
    exit_code = 2

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"Heun map undefined (A = 0): {reason}")


class SingularTransformError(PolarCoulombError):
    """Polstelle der Möbius-Transformation getroffen"""
    exit_code = 2


class NoSignChangeError(PolarCoulombError):
    """Intervall enthält keinen Vorzeichenwechsel"""
    exit_code = 3

    def __init__(self, lo: float, hi: float, f_lo: float, f_hi: float, what: str = "function"):
        self.lo = lo
        self.hi = hi
        self.f_lo = f_lo
        self.f_hi = f_hi
        super().__init__(
            f"No sign change of {what} on [{lo:.9g}, {hi:.9g}] "
            f"(f(lo)={f_lo:.6g}, f(hi)={f_hi:.6g})"
        )


class NoRealRootError(PolarCoulombError):
    """Gewählter Wurzelast hat im Intervall keine reellen Werte"""
    exit_code = 3

    def __init__(self, branch: str, lo: float, hi: float):
        self.branch = branch
        self.lo = lo
        self.hi = hi
        super().__init__(f"Branch {branch} has no real root on kappa in [{lo}, {hi}]")


class QuadratureConvergenceError(PolarCoulombError):
    """Adaptive Quadratur konvergiert nicht im Budget"""
    exit_code = 3


class RadialOverflowError(PolarCoulombError):
    """Radiallösung wächst über das Overflow-Limit"""
    exit_code = 3

    def __init__(self, r: float, e: float):
        self.r = r
        self.e = e
        super().__init__(f"Radial solution overflow at r={r:.6g} (e={e:.12g})")


class RootRefinementError(PolarCoulombError):
    """Nullstellensuche konvergiert nicht im Iterationsbudget"""
    exit_code = 3

    def __init__(self, what: str, iterations: int):
        self.what = what
        self.iterations = iterations
        super().__init__(f"Root refinement of {what} did not converge after {iterations} iterations")


class NoBifurcationError(PolarCoulombError):
    """Weder positiver noch negativer Energieast hat eine Nullstelle"""
    exit_code = 3

    def __init__(self, j: int, alpha: float, sigma: float):
        self.j = j
        self.alpha = alpha
        self.sigma = sigma
        super().__init__(
            f"no bifurcation in (-1,1) for j={j}, alpha={alpha}, sigma={sigma}"
        )
