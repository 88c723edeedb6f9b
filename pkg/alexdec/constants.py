"""Constants for alexdec."""

import json
from pathlib import Path
from typing import Any, List

# Exit codes
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE_ERROR = 2
EXIT_VALIDATION_ERROR = 3
EXIT_DISAGREEMENT = 4

# Pipeline defaults
DEFAULT_SEED = 0
DEFAULT_TRIALS = 100
DEFAULT_LEVEL = 2
DEFAULT_PARALLEL = 1
OUTPUT_FORMATS = ("text", "json")
KNOT_FILE_FORMATS = ("json", "csv")

# Random sampling bounds for the homomorphism check
MAX_RANDOM_SHIFT = 5
MAX_RANDOM_COEFF = 3

# Report schema version written into JSON reports
REPORT_SCHEMA_VERSION = 1

SAMPLES_DIR = Path(__file__).parent / "samples"
BUNDLED_CORPUS_PATH = SAMPLES_DIR / "knots.json"


def _load_bundled_corpus() -> List[Any]:
    """Load the raw bundled knot corpus, falling back to the trefoil alone."""
    try:
        with open(BUNDLED_CORPUS_PATH, "r", encoding="utf-8") as f:
            return json.load(f)
    except (FileNotFoundError, json.JSONDecodeError):
        print(f"Warning: Could not load bundled corpus from {BUNDLED_CORPUS_PATH}")
        return [{"name": "3_1", "seifert": [[-1, 1], [0, -1]]}]


BUNDLED_CORPUS = _load_bundled_corpus()
