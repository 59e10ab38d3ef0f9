# polarcoulomb/models/config_models.py
"""
Pydantic Config Models für die CLI-Läufe

base.yaml + Szenario-YAML + CLI-Flags werden zu einem RunConfig gemerged;
Physik-Parameter laufen über PhysicalParams mit dessen Invarianten.
"""
from typing import Literal, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from polarcoulomb.models.params import Convention, PhysicalParams, RootBranch


# === Config-Sektionen ===
class SystemConfig(BaseModel):
    debug: bool = False
    log_to_file: bool = False
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "WARNING"


class LoggingConfig(BaseModel):
    log_dir: str = "logs"
    filename_pattern: str = "{command}_{date}.log"
    max_size_mb: int = Field(default=10, ge=1, le=100)
    backup_count: int = Field(default=5, ge=0, le=50)


class ScanRange(BaseModel):
    lo: float
    hi: float
    n: int = Field(default=200, ge=2, le=1_000_000)

    @model_validator(mode="after")
    def validate_range(self):
        if self.lo >= self.hi:
            raise ValueError(f"lo ({self.lo}) muss < hi ({self.hi}) sein")
        return self


class QuarticConfig(BaseModel):
    convention: Convention = Convention.SECTION2
    samples: int = Field(default=0, ge=0, le=1_000_000, description="0 = keine P²-Stichprobe")
    sample_r_max: Optional[float] = Field(default=None, gt=0)


class BifurcationConfig(BaseModel):
    negative_branch: bool = False
    bracket: Optional[Tuple[float, float]] = None
    scan: Optional[ScanRange] = None
    pi_curve: bool = False
    pi_curve_points: int = Field(default=400, ge=2, le=1_000_000)
    pi_curve_r_max: float = Field(default=4.0, gt=0)

    @model_validator(mode="after")
    def validate_bracket(self):
        if self.bracket is not None:
            lo, hi = self.bracket
            if lo >= hi:
                raise ValueError(f"bracket lo ({lo}) muss < hi ({hi}) sein")
            if not (-1.0 < lo and hi < 1.0):
                raise ValueError("bracket muss in (-1, 1) liegen")
        return self


class VariationalConfig(BaseModel):
    branch: RootBranch = RootBranch.ROOT2
    kappa_min: float = Field(default=0.05, gt=0)
    kappa_max: float = Field(default=3.0, gt=0)
    tol: float = Field(default=1e-7, gt=0)
    curve_points: int = Field(default=200, ge=2, le=1_000_000)
    curves: bool = False
    wavefunction: bool = False
    wavefunction_points: int = Field(default=400, ge=2, le=1_000_000)

    @model_validator(mode="after")
    def validate_range(self):
        if self.kappa_min >= self.kappa_max:
            raise ValueError(
                f"kappa_min ({self.kappa_min}) muss < kappa_max ({self.kappa_max}) sein"
            )
        return self

    @property
    def kappa_range(self) -> Tuple[float, float]:
        return self.kappa_min, self.kappa_max


class HeunConfig(BaseModel):
    sign: Literal[1, -1] = 1


class RadialConfig(BaseModel):
    rtol: float = Field(default=1e-10, gt=0, lt=1)
    atol: float = Field(default=1e-12, gt=0)
    grid_points: int = Field(default=2000, ge=4, le=1_000_000)
    energy: Optional[float] = Field(default=None, gt=-1, lt=1)
    match_r: Optional[float] = Field(default=None, gt=0)
    shoot: Optional[Tuple[float, float]] = None
    sign: Literal[1, -1] = 1
    mass_parameter: Optional[float] = None

    @model_validator(mode="after")
    def validate_shoot(self):
        if self.shoot is not None:
            lo, hi = self.shoot
            if lo >= hi:
                raise ValueError(f"shoot lo ({lo}) muss < hi ({hi}) sein")
            if not (-1.0 < lo and hi < 1.0):
                raise ValueError("shoot-Intervall muss in (-1, 1) liegen")
        if self.mass_parameter is not None and self.mass_parameter == 0:
            raise ValueError("mass_parameter darf nicht 0 sein")
        return self


class OutputConfig(BaseModel):
    format: Literal["json", "csv"] = "json"
    out: Optional[str] = None


# === Haupt-Config ===
class RunConfig(BaseModel):
    """Vollständige Konfiguration eines CLI-Laufs"""
    params: PhysicalParams = PhysicalParams()
    system: SystemConfig = SystemConfig()
    logging: LoggingConfig = LoggingConfig()
    quartic: QuarticConfig = QuarticConfig()
    bifurcation: BifurcationConfig = BifurcationConfig()
    variational: VariationalConfig = VariationalConfig()
    heun: HeunConfig = HeunConfig()
    radial: RadialConfig = RadialConfig()
    output: OutputConfig = OutputConfig()
