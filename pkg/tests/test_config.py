# tests/test_config.py
import pytest
from pydantic import BaseModel, Field, ValidationError

from polarcoulomb.models.config_models import BifurcationConfig, RadialConfig, RunConfig
from polarcoulomb.models.params import Convention, RootBranch
from polarcoulomb.utils.config_loader import load_config, merge_configs, resolve_scenario
from polarcoulomb.utils.error_format import format_validation_error
from polarcoulomb.utils.exceptions import ConfigValidationError


def test_base_defaults():
    cfg = load_config()
    assert isinstance(cfg, RunConfig)
    assert cfg.params.epsilon == 0.75
    assert cfg.params.sigma == -1.0
    assert cfg.quartic.convention is Convention.SECTION2
    assert cfg.variational.branch is RootBranch.ROOT2
    assert cfg.variational.kappa_range == (0.05, 3.0)
    assert cfg.output.format == "json"
    assert cfg.output.out is None
    assert cfg.system.log_to_file is False


@pytest.mark.parametrize("name, epsilon, j, sigma", [
    ("canonical", 0.75, 0, -1.0),
    ("regime_ii", 0.95, 2, 1.0),
    ("scattering", 1.5, 3, 1.0),
])
def test_scenarios(name, epsilon, j, sigma):
    cfg = load_config(name)
    assert (cfg.params.epsilon, cfg.params.j, cfg.params.sigma) == (epsilon, j, sigma)
    # Nicht gesetzte Sektionen kommen aus base.yaml
    assert cfg.radial.rtol == 1e-10


def test_canonical_uses_section4():
    assert load_config("canonical").quartic.convention is Convention.SECTION4


def test_overrides_win_over_scenario():
    cfg = load_config("regime_ii", {"params": {"alpha": 2.5}, "output": {"format": "csv"}})
    assert cfg.params.alpha == 2.5
    assert cfg.params.j == 2
    assert cfg.output.format == "csv"


def test_invalid_j_names_field():
    with pytest.raises(ConfigValidationError) as exc:
        load_config(overrides={"params": {"j": -1}})
    assert "params.j" in str(exc.value)


def test_zero_sigma_rejected():
    with pytest.raises(ConfigValidationError) as exc:
        load_config(overrides={"params": {"sigma": 0.0}})
    assert "sigma darf nicht 0 sein" in str(exc.value)


def test_unknown_scenario_lists_available():
    with pytest.raises(ConfigValidationError) as exc:
        load_config("does_not_exist")
    assert "canonical" in str(exc.value)


def test_scenario_path(tmp_path):
    path = tmp_path / "custom.yaml"
    path.write_text("params:\n  alpha: 0.5\n", encoding="utf-8")
    assert resolve_scenario(str(path)) == path
    assert load_config(str(path)).params.alpha == 0.5


def test_non_mapping_yaml_rejected(tmp_path):
    path = tmp_path / "list.yaml"
    path.write_text("- 1\n- 2\n", encoding="utf-8")
    with pytest.raises(ConfigValidationError):
        load_config(str(path))


def test_merge_configs_is_recursive_and_pure():
    base = {"a": {"x": 1, "y": 2}, "b": 3}
    merged = merge_configs(base, {"a": {"y": 5}, "c": 4})
    assert merged == {"a": {"x": 1, "y": 5}, "b": 3, "c": 4}
    assert base == {"a": {"x": 1, "y": 2}, "b": 3}


@pytest.mark.parametrize("model, data", [
    (BifurcationConfig, {"bracket": (0.7, 0.5)}),
    (BifurcationConfig, {"bracket": (0.5, 1.0)}),
    (RadialConfig, {"shoot": (-1.0, 0.5)}),
    (RadialConfig, {"mass_parameter": 0.0}),
    (RadialConfig, {"energy": 1.0}),
])
def test_section_validation(model, data):
    with pytest.raises(ValidationError):
        model(**data)


def test_format_validation_error():
    class Counter(BaseModel):
        count: int = Field(ge=1)
        name: str

    with pytest.raises(ValidationError) as exc:
        Counter(count=0)
    text = format_validation_error(exc.value)
    assert text.splitlines() == ["  • count: muss >= 1", "  • name: Field required"]
