"""Configuration management and shared data models for alexdec."""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from .constants import (
    DEFAULT_LEVEL,
    DEFAULT_PARALLEL,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    OUTPUT_FORMATS,
)
from .exactmath import Poly
from .metabelian import HomomorphismCheck, RepBuilder, RepMatrix
from .obstruction import Decomposition, FiltrationReport
from .seifert import NormalizedAlexanderPoly
from .snf_oracle import InvariantFactors

logger = logging.getLogger(__name__)


@dataclass
class KnotRecord:
    """One knot as read from a knot file."""

    name: str
    seifert: List[List[int]]
    expected: Optional[Decomposition] = None


@dataclass
class FactorAgreement:
    """Comparison of one root class between the filtration and the oracle."""

    factor: Poly
    filtration: Optional[tuple]
    oracle: Optional[tuple]
    status: str  # 'matched', 'mismatched', 'filtration_only', 'oracle_only'


@dataclass
class AgreementResult:
    factors: List[FactorAgreement]
    matched_count: int
    mismatched_count: int

    @property
    def agreed(self) -> bool:
        return self.mismatched_count == 0


@dataclass
class KnotReport:
    """Everything computed for one knot."""

    name: str
    genus: int
    alexander: NormalizedAlexanderPoly
    filtration: FiltrationReport
    decomposition: Decomposition
    oracle: Optional[Decomposition] = None
    invariant_factors: Optional[InvariantFactors] = None
    agreement: Optional[AgreementResult] = None
    expected_match: Optional[bool] = None
    seconds: Optional[float] = None

    @property
    def agrees(self) -> bool:
        """False when the oracle or the recorded expectation disagrees."""
        if self.agreement is not None and not self.agreement.agreed:
            return False
        return self.expected_match is not False


@dataclass
class RepresentationSet:
    """Representations built from every solution of one obstruction system."""

    knot: str
    factor: Poly
    modulus: Poly
    level: int
    builders: List[RepBuilder]
    images: List[Dict[str, RepMatrix]]
    checks: List[HomomorphismCheck]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


@dataclass
class Config:
    """Configuration for alexdec runs."""

    # Input
    knot_file: Optional[str] = None
    knots: List[str] = field(default_factory=list)

    # Output options
    output_format: str = "text"
    output_dir: Optional[str] = None
    no_timing: bool = False
    logfile_dir: Optional[str] = None

    # Computation options
    max_n: Optional[int] = None
    seed: int = DEFAULT_SEED
    trials: int = DEFAULT_TRIALS
    level: int = DEFAULT_LEVEL
    verify_snf: bool = False

    # Execution options
    debug: bool = False
    parallel: int = DEFAULT_PARALLEL

    # Config file path (not in config file itself)
    config_file: Optional[str] = None

    def __post_init__(self):
        """Validate configuration after initialization."""
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError("output_format must be 'text' or 'json'")

        if self.max_n is not None and self.max_n < 2:
            raise ValueError("max_n must be at least 2")

        if self.trials < 1:
            raise ValueError("trials must be at least 1")

        if self.level < 2:
            raise ValueError("level must be at least 2")

        if self.parallel < 1:
            raise ValueError("parallel must be at least 1")


_VALID_FIELDS = {
    "knot_file": (str, type(None)),
    "knots": (list, str),
    "output_format": str,
    "output_dir": (str, type(None)),
    "no_timing": bool,
    "logfile_dir": (str, type(None)),
    "max_n": (int, type(None)),
    "seed": int,
    "trials": int,
    "level": int,
    "verify_snf": bool,
    "debug": bool,
    "parallel": int,
}


def load_config_from_file(config_path: str) -> Dict[str, Any]:
    """Load configuration from JSON file."""
    config_file = Path(config_path)
    if not config_file.exists():
        raise FileNotFoundError(f"Config file not found: {config_path}")

    try:
        with open(config_file, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ValueError(f"Invalid JSON in config file: {e}")

    if not isinstance(data, dict):
        raise ValueError("Config file must contain a JSON object")

    unknown_fields = [key for key in data if key not in _VALID_FIELDS]
    if unknown_fields:
        logger.warning(f"Unknown fields in config file: {', '.join(unknown_fields)}")

    for key, expected in _VALID_FIELDS.items():
        if key in data and not isinstance(data[key], expected):
            raise ValueError(f"Field '{key}' has invalid type {type(data[key]).__name__}")

    # Accept both lists and comma-separated strings
    if "knots" in data:
        value = data["knots"]
        if isinstance(value, str):
            data["knots"] = [item.strip() for item in value.split(",") if item.strip()]
        else:
            data["knots"] = [str(item) for item in value]

    return data


def merge_configs(
    cli_args: Dict[str, Any], config_file_data: Optional[Dict[str, Any]] = None
) -> Config:
    """Merge CLI arguments with config file data (CLI takes precedence)."""
    merged: Dict[str, Any] = {
        "knot_file": None,
        "knots": [],
        "output_format": "text",
        "output_dir": None,
        "no_timing": False,
        "logfile_dir": None,
        "max_n": None,
        "seed": DEFAULT_SEED,
        "trials": DEFAULT_TRIALS,
        "level": DEFAULT_LEVEL,
        "verify_snf": False,
        "debug": False,
        "parallel": DEFAULT_PARALLEL,
        "config_file": cli_args.get("config"),
    }

    if config_file_data:
        for key, value in config_file_data.items():
            if key in merged:
                merged[key] = value

    # CLI args that weren't provided are None or absent
    for key, value in cli_args.items():
        if key in merged and value is not None:
            merged[key] = value

    return Config(**merged)  # type: ignore[arg-type]
