# polarcoulomb/utils/config_loader.py
"""
Config-Loader: base.yaml + optionales Szenario + CLI-Overrides.
Merged rekursiv und gibt ein validiertes RunConfig zurück.
"""

from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from pydantic import ValidationError

from polarcoulomb.models.config_models import RunConfig
from polarcoulomb.utils.error_format import format_validation_error
from polarcoulomb.utils.exceptions import ConfigValidationError

CONFIG_DIR = Path(__file__).parent.parent / "configs"


def merge_configs(base: Dict, override: Dict) -> Dict:
    """Merged zwei Configs rekursiv (override gewinnt)."""
    result = base.copy()
    for key, value in override.items():
        if key in result and isinstance(result[key], dict) and isinstance(value, dict):
            result[key] = merge_configs(result[key], value)
        else:
            result[key] = value
    return result


def _read_yaml(path: Path) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigValidationError(f"YAML-Fehler in {path.name}: {e}")
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigValidationError(f"{path.name} muss ein Mapping enthalten")
    return data


def resolve_scenario(name: str) -> Path:
    """Szenario-Name (configs/<name>.yaml) oder direkter Dateipfad"""
    candidate = Path(name)
    if candidate.suffix in (".yaml", ".yml") and candidate.exists():
        return candidate
    scenario = CONFIG_DIR / f"{name}.yaml"
    if not scenario.exists():
        available = sorted(p.stem for p in CONFIG_DIR.glob("*.yaml") if p.stem != "base")
        raise ConfigValidationError(
            f"Szenario-Config fehlt: {scenario}\nVerfügbare: {available}"
        )
    return scenario


def load_config(name: Optional[str] = None,
                overrides: Optional[Dict[str, Any]] = None) -> RunConfig:
    """
    Lädt base.yaml, optional ein Szenario und CLI-Overrides

    Args:
        name: Szenario-Name oder Pfad; None = nur base.yaml
        overrides: verschachteltes Dict aus den CLI-Flags

    Returns:
        RunConfig

    Raises:
        ConfigValidationError: fehlende Datei, YAML- oder Validierungsfehler
    """
    base_path = CONFIG_DIR / "base.yaml"
    if not base_path.exists():
        raise ConfigValidationError(f"Base-Config fehlt: {base_path}")

    merged = _read_yaml(base_path)
    if name:
        merged = merge_configs(merged, _read_yaml(resolve_scenario(name)))
    if overrides:
        merged = merge_configs(merged, overrides)

    try:
        return RunConfig(**merged)
    except ValidationError as e:
        raise ConfigValidationError(f"Ungültige Config:\n{format_validation_error(e)}")
