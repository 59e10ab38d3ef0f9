#!/usr/bin/env python3
# polarcoulomb/cli.py
"""Kommandozeile für die Analyse des polarisierbaren Teilchens im Coulomb-Feld"""

import argparse
import logging
import math
import sys
from typing import Any, Callable, Dict, List, Optional

import numpy as np
import pandas as pd

from polarcoulomb.analysis.bifurcation import find_bifurcation, pi_curve, scan_residual
from polarcoulomb.analysis.heun_map import heun_params, verify_heun_reduction
from polarcoulomb.analysis.quartic_analysis import (
    p_squared_samples,
    root_pattern,
    turning_points,
    vieta_residuals,
)
from polarcoulomb.analysis.radial_ode import (
    RadialSolution,
    default_match_point,
    eigenfunction,
    reconstruct_components,
    shoot_eigenvalue,
)
from polarcoulomb.analysis.variational import minimize_root, trial_wavefunction
from polarcoulomb.models.config_models import RunConfig
from polarcoulomb.models.params import derive, p_squared
from polarcoulomb.utils.config_loader import load_config
from polarcoulomb.utils.constants import BRUTE_FORCE_R_MAX_FACTOR, TAIL_EXPONENT
from polarcoulomb.utils.exceptions import (
    ConfigValidationError,
    NoBifurcationError,
    NoSignChangeError,
    PolarCoulombError,
)
from polarcoulomb.utils.logging_setup import setup_logging
from polarcoulomb.utils.output import emit_csv, emit_json, sanitize

logger = logging.getLogger("POLAR-CLI")

# Stützstellen für die Heun-Kontrolle, abseits von x = ±1
HEUN_CHECK_POINTS = [0.5 * complex(math.cos(t), math.sin(t)) for t in np.linspace(0.1, 6.2, 8)]


class _Parser(argparse.ArgumentParser):
    """Usage-Fehler laufen über Exit-Code 1 statt argparse' 2"""

    def error(self, message: str):
        raise ConfigValidationError(f"{self.prog}: {message}")


def _sign(value: str) -> int:
    mapping = {"+": 1, "1": 1, "+1": 1, "-": -1, "-1": -1}
    if value not in mapping:
        raise argparse.ArgumentTypeError(f"sign muss + oder - sein, erhalten: {value}")
    return mapping[value]


# === Parser ===
def _add_common(sub: argparse.ArgumentParser) -> None:
    group = sub.add_argument_group("Parameter")
    group.add_argument("--config", help="Szenario aus configs/ oder YAML-Pfad")
    group.add_argument("--debug", action="store_true", help="Debug-Logging")
    group.add_argument("--epsilon", type=float, help="Energie ε")
    group.add_argument("--mass", type=float, help="Masse M")
    group.add_argument("--alpha", type=float, help="Coulomb-Kopplung α")
    group.add_argument("--j", type=int, help="Drehimpuls j")
    group.add_argument("--sigma", type=float, help="Polarisierbarkeit σ")
    group.add_argument("--format", choices=["json", "csv"], help="Ausgabeformat")
    group.add_argument("--out", help="Ausgabedatei statt stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="polarcoulomb",
        description="Polarisierbares skalares Teilchen im Coulomb-Feld",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="Beispiel: python -m polarcoulomb bifurcation --format json",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    regimes = commands.add_parser("regimes", help="Umkehrpunkte und Bewegungsregime")
    _add_common(regimes)
    regimes.add_argument("--convention", choices=["section2", "section4"], help="r²-Koeffizient")
    regimes.add_argument("--samples", type=int, help="N Stützstellen (r, P²) als Kurve")

    bifurcation = commands.add_parser("bifurcation", help="Untere Grenze e_min")
    _add_common(bifurcation)
    bifurcation.add_argument("--negative", action="store_true", help="Nur negativer Energieast")
    bifurcation.add_argument("--bracket", nargs=2, type=float, metavar=("LO", "HI"))
    bifurcation.add_argument("--scan", nargs=3, metavar=("LO", "HI", "N"), help="Residuenkurve")
    curve = bifurcation.add_argument_group("Kurven")
    curve.add_argument("--pi-curve", action="store_true", help="Π(r) bei e_min als Kurve")

    variational = commands.add_parser("variational", help="Ritz-Minimum über κ")
    _add_common(variational)
    variational.add_argument("--branch", choices=["root1", "root2"])
    variational.add_argument("--kappa-range", nargs=2, type=float, metavar=("LO", "HI"))
    curves = variational.add_mutually_exclusive_group()
    curves.add_argument("--curves", action="store_true", help="(κ, ε₁, ε₂) als Kurve")
    curves.add_argument("--wavefunction", action="store_true", help="(r, C, P²) als Kurve")

    heun = commands.add_parser("heun", help="Doppelt konfluente Heun-Parameter")
    _add_common(heun)
    heun.add_argument("--sign", type=_sign, help="+ oder - (D = ±4A)")

    for name, text in (("wavefunction", "Radiallösung f(r)"), ("reconstruct", "15 Feldkomponenten")):
        sub = commands.add_parser(name, help=text)
        _add_common(sub)
        sub.add_argument("--e", type=float, help="Energie; Standard e* aus dem Ritz-Verfahren")
        sub.add_argument("--shoot", nargs=2, type=float, metavar=("LO", "HI"),
                         help="Eigenwert per Schießverfahren im Intervall")
        sub.add_argument("--match-r", type=float, help="Anschlusspunkt")
        if name == "reconstruct":
            sub.add_argument("--sign", type=_sign, help="(±) der Feldgleichungen")
            sub.add_argument("--mass-parameter", type=float, help="m in den Feldgleichungen")

    return parser


# === Overrides aus den Flags ===
def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    """Nur explizit gesetzte Flags landen im Override-Dict"""
    out: Dict[str, Dict[str, Any]] = {}

    def put(section: str, key: str, value: Any) -> None:
        if value is not None:
            out.setdefault(section, {})[key] = value

    put("params", "epsilon", args.epsilon)
    put("params", "mass_M", args.mass)
    put("params", "alpha", args.alpha)
    put("params", "j", args.j)
    put("params", "sigma", args.sigma)
    put("output", "format", args.format)
    put("output", "out", args.out)
    if args.debug:
        put("system", "debug", True)

    command = args.command
    if command == "regimes":
        put("quartic", "convention", args.convention)
        put("quartic", "samples", args.samples)
    elif command == "bifurcation":
        if args.negative:
            put("bifurcation", "negative_branch", True)
        put("bifurcation", "bracket", args.bracket)
        if args.scan is not None:
            lo, hi, n = args.scan
            put("bifurcation", "scan", {"lo": lo, "hi": hi, "n": n})
        if args.pi_curve:
            put("bifurcation", "pi_curve", True)
    elif command == "variational":
        put("variational", "branch", args.branch)
        if args.kappa_range is not None:
            put("variational", "kappa_min", args.kappa_range[0])
            put("variational", "kappa_max", args.kappa_range[1])
        if args.curves:
            put("variational", "curves", True)
        if args.wavefunction:
            put("variational", "wavefunction", True)
    elif command == "heun":
        put("heun", "sign", args.sign)
    elif command in ("wavefunction", "reconstruct"):
        put("radial", "energy", args.e)
        put("radial", "shoot", args.shoot)
        put("radial", "match_r", args.match_r)
        if command == "reconstruct":
            put("radial", "sign", args.sign)
            put("radial", "mass_parameter", args.mass_parameter)
    return out


# === Ausgabe ===
def _scalar_row(report: Dict[str, Any]) -> pd.DataFrame:
    """Einzeilige CSV aus den skalaren Feldern eines Berichts"""
    clean = sanitize(report)
    return pd.DataFrame([{k: v for k, v in clean.items() if not isinstance(v, (list, dict))}])


def _finish(cfg: RunConfig, report: Dict[str, Any], curve: Optional[pd.DataFrame] = None) -> None:
    """
    json: Bericht, eine angeforderte Kurve steht unter "curve"
    csv: die Kurve, ohne Kurve eine Zeile mit den Skalaren
    """
    if cfg.output.format == "csv":
        emit_csv(curve if curve is not None else _scalar_row(report), cfg.output.out)
        return
    if curve is not None:
        report = {**report, "curve": curve.to_dict(orient="records")}
    emit_json(report, cfg.output.out)


# === Unterbefehle ===
def cmd_regimes(cfg: RunConfig) -> int:
    p = cfg.params
    qa = turning_points(p, cfg.quartic.convention)
    report = {
        "params": p.model_dump(),
        **qa.to_dict(),
        "root_pattern": root_pattern(qa),
        "vieta_residuals": vieta_residuals(qa, p),
        "max_backward_error": float(np.max(qa.backward_errors())),
    }
    curve = None
    n = cfg.quartic.samples
    if n > 0:
        r_max = cfg.quartic.sample_r_max or BRUTE_FORCE_R_MAX_FACTOR * max(qa.positive_roots + [1.0])
        curve = p_squared_samples(p, np.linspace(r_max / n, r_max, n), cfg.quartic.convention)
    logger.info(f"Regime {qa.regime.value}: {len(qa.motion_intervals)} Bewegungsintervall(e)")
    _finish(cfg, report, curve)
    return 0


def _bifurcation_result(cfg: RunConfig):
    p = cfg.params
    bc = cfg.bifurcation
    signs = [-1] if bc.negative_branch else [1, -1]
    for sign in signs:
        try:
            return find_bifurcation(p, bc.bracket, sign=sign)
        except NoSignChangeError:
            logger.info(f"Kein e_min auf dem Ast {'+' if sign > 0 else '-'}")
    raise NoBifurcationError(p.j, p.alpha, p.sigma)


def cmd_bifurcation(cfg: RunConfig) -> int:
    p = cfg.params
    bc = cfg.bifurcation
    scan = scan_residual(p, bc.scan.lo, bc.scan.hi, bc.scan.n) if bc.scan is not None else None
    try:
        result = _bifurcation_result(cfg)
    except NoBifurcationError:
        if scan is None:
            raise
        # Residuenkurve auch ohne Nullstelle ausgeben, Exit-Code bleibt 3
        _finish(cfg, {"e_min": None, "params": p.model_dump()}, scan)
        raise

    report = {**result.to_dict(), "params": p.model_dump()}
    curve = scan
    if curve is None and bc.pi_curve:
        curve = pi_curve(p, result.e_min, np.linspace(0.0, bc.pi_curve_r_max, bc.pi_curve_points))
    logger.info(f"e_min = {result.e_min:.9f} (r0 = {result.geometry.r0:.6f})")
    _finish(cfg, report, curve)
    return 0


def cmd_variational(cfg: RunConfig) -> int:
    vc = cfg.variational
    p = cfg.params
    result = minimize_root(p.alpha, vc.branch, vc.kappa_range, vc.tol, vc.curve_points)
    report = {**result.to_dict(), "kappa_range": list(vc.kappa_range)}

    curve = None
    if vc.curves:
        curve = result.root_curves
    elif vc.wavefunction:
        ts = result.trial_state()
        r_max = TAIL_EXPONENT / result.kappa_star
        r = np.linspace(r_max / vc.wavefunction_points, r_max, vc.wavefunction_points)
        curve = pd.DataFrame({
            "r": r,
            "C": trial_wavefunction(r, ts),
            "p_squared": p_squared(r, p.with_energy(result.e_star)),
        })
    logger.info(f"e* = {result.e_star:.6f} bei κ* = {result.kappa_star:.6f}")
    _finish(cfg, report, curve)
    return 0


def cmd_heun(cfg: RunConfig) -> int:
    p = cfg.params
    hp = heun_params(p, cfg.heun.sign)
    d = derive(p)
    report = {
        **hp.to_dict(),
        "regime": d.regime.value,
        "A": d.A,
        "reduction_residual": verify_heun_reduction(p, cfg.heun.sign, HEUN_CHECK_POINTS),
    }
    _finish(cfg, report)
    return 0


def _radial_energy(cfg: RunConfig) -> Dict[str, Any]:
    rc = cfg.radial
    p = cfg.params
    if rc.shoot is not None:
        e = shoot_eigenvalue(p, rc.shoot, rc.match_r, rc.rtol, rc.atol)
        return {"e": e, "source": "shooting"}
    if rc.energy is not None:
        return {"e": rc.energy, "source": "given"}
    vc = cfg.variational
    result = minimize_root(p.alpha, vc.branch, vc.kappa_range, vc.tol, vc.curve_points)
    return {"e": result.e_star, "source": "variational"}


def _radial_solution(cfg: RunConfig) -> tuple:
    energy = _radial_energy(cfg)
    rc = cfg.radial
    match_r = rc.match_r if rc.match_r is not None else default_match_point(cfg.params, energy["e"])
    sol = eigenfunction(cfg.params, energy["e"], match_r, rc.grid_points, rc.rtol, rc.atol)
    return sol, {**energy, "match_r": match_r}


def _solution_summary(sol: RadialSolution) -> Dict[str, Any]:
    return {
        "r_min": float(sol.grid[0]),
        "r_max": float(sol.grid[-1]),
        "points": int(sol.grid.size),
        "peak_r": float(sol.grid[int(np.argmax(np.abs(sol.f)))]),
    }


def cmd_wavefunction(cfg: RunConfig) -> int:
    sol, info = _radial_solution(cfg)
    report = {**info, **_solution_summary(sol)}
    _finish(cfg, report, sol.to_frame(cfg.params))
    return 0


def cmd_reconstruct(cfg: RunConfig) -> int:
    sol, info = _radial_solution(cfg)
    rc = cfg.radial
    fields = reconstruct_components(sol, cfg.params, rc.mass_parameter, rc.sign)
    report = {
        **info,
        "sign": "+" if rc.sign > 0 else "-",
        "mass_parameter": rc.mass_parameter if rc.mass_parameter is not None else cfg.params.mass_M,
        "constraint_residuals": fields.constraint_residuals(),
    }
    _finish(cfg, report, fields.to_frame())
    return 0


COMMANDS: Dict[str, Callable[[RunConfig], int]] = {
    "regimes": cmd_regimes,
    "bifurcation": cmd_bifurcation,
    "variational": cmd_variational,
    "heun": cmd_heun,
    "wavefunction": cmd_wavefunction,
    "reconstruct": cmd_reconstruct,
}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Einstiegspunkt

    Returns:
        0 bei Erfolg, 1 Validierung, 2 Entartung, 3 keine Lösung
    """
    try:
        args = build_parser().parse_args(argv)
        cfg = load_config(args.config, _overrides(args))
    except ConfigValidationError as e:
        print(f"❌ {e}", file=sys.stderr)
        return e.exit_code

    try:
        setup_logging(
            command=args.command,
            debug=cfg.system.debug,
            log_to_file=cfg.system.log_to_file,
            log_dir=cfg.logging.log_dir,
            filename_pattern=cfg.logging.filename_pattern,
            max_size_mb=cfg.logging.max_size_mb,
            backup_count=cfg.logging.backup_count,
            log_level=cfg.system.log_level,
        )
    except Exception as e:
        print(f"⚠️ Logging-Setup error: {e}", file=sys.stderr)

    try:
        return COMMANDS[args.command](cfg)
    except PolarCoulombError as e:
        logger.debug(f"{args.command} abgebrochen: {type(e).__name__}")
        print(f"❌ {e}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logger.exception(f"❌ Unerwarteter Fehler in {args.command}: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
