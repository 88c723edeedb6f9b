"""Knot table ingestion: JSON and KnotInfo-style CSV files of Seifert matrices."""

import csv
import io
import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from . import logger
from .config import KnotRecord
from .constants import BUNDLED_CORPUS, KNOT_FILE_FORMATS
from .exactmath import Poly
from .obstruction import Decomposition
from .utils import KnotParseError, UnknownKnotError, normalize_minus

MATRIX_COLUMNS = ("seifert_matrix", "seifert")
NAME_COLUMNS = ("name", "knot")

Location = Union[int, str]


def _parse_matrix(raw: Any, location: Location) -> List[List[int]]:
    if not isinstance(raw, list) or not all(isinstance(row, list) for row in raw):
        raise KnotParseError("Seifert matrix must be a list of rows", location)
    widths = {len(row) for row in raw}
    if len(widths) > 1:
        raise KnotParseError(f"ragged matrix with row lengths {sorted(widths)}", location)
    for row in raw:
        for value in row:
            if isinstance(value, bool) or not isinstance(value, int):
                raise KnotParseError(f"non-integer entry {value!r}", location)
    return [list(row) for row in raw]


def _parse_expected(raw: Any, location: Location) -> Decomposition:
    if not isinstance(raw, dict):
        raise KnotParseError("'expected' must map factors to exponent lists", location)
    exponents = {}
    for factor_text, values in raw.items():
        try:
            factor = Poly.parse(factor_text)
        except ValueError as e:
            raise KnotParseError(f"bad factor {factor_text!r}: {e}", location)
        if not isinstance(values, list) or not all(
            isinstance(v, int) and not isinstance(v, bool) and v > 0 for v in values
        ):
            raise KnotParseError(f"bad exponents for {factor_text!r}", location)
        exponents[factor] = tuple(sorted(values))
    return Decomposition(exponents=exponents, provenance="expected")


def records_from_data(data: Any) -> List[KnotRecord]:
    """Validate an already-decoded JSON array of knot objects.

    Args:
        data: Decoded JSON value

    Returns:
        List of KnotRecord objects

    Raises:
        KnotParseError: If the structure is invalid; location is the record index
    """
    if not isinstance(data, list):
        raise KnotParseError("Knot file must contain a JSON array")

    records = []
    for index, item in enumerate(data):
        location = f"record {index}"
        if not isinstance(item, dict):
            raise KnotParseError("Each knot must be a JSON object", location)
        name = item.get("name")
        if not isinstance(name, str) or not name:
            raise KnotParseError("Each knot must have a non-empty 'name' string", location)
        if "seifert" not in item:
            raise KnotParseError(f"Knot {name} has no 'seifert' matrix", location)
        matrix = _parse_matrix(item["seifert"], location)
        expected = None
        if item.get("expected") is not None:
            expected = _parse_expected(item["expected"], location)
        records.append(KnotRecord(name=name, seifert=matrix, expected=expected))
    return records


def _parse_json(text: str) -> List[KnotRecord]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise KnotParseError(f"Invalid JSON in knot file: {e.msg}", f"line {e.lineno}")
    return records_from_data(data)


def _find_column(fieldnames: Sequence[str], candidates: Sequence[str]) -> Optional[str]:
    lowered = {name.strip().lower(): name for name in fieldnames}
    for candidate in candidates:
        if candidate in lowered:
            return lowered[candidate]
    return None


def _parse_csv(text: str) -> List[KnotRecord]:
    reader = csv.DictReader(io.StringIO(text))
    fieldnames = reader.fieldnames or []
    name_column = _find_column(fieldnames, NAME_COLUMNS)
    matrix_column = _find_column(fieldnames, MATRIX_COLUMNS)
    if name_column is None or matrix_column is None:
        raise KnotParseError(
            f"CSV needs a name column and one of {', '.join(MATRIX_COLUMNS)}", "line 1"
        )

    records = []
    for row in reader:
        location = f"line {reader.line_num}"
        name = (row.get(name_column) or "").strip()
        cell = (row.get(matrix_column) or "").strip()
        if not name:
            raise KnotParseError("missing knot name", location)
        cell = cell.replace("{", "[").replace("}", "]")
        try:
            raw = json.loads(cell)
        except json.JSONDecodeError:
            raise KnotParseError(f"cannot read Seifert matrix {cell!r}", location)
        records.append(KnotRecord(name=name, seifert=_parse_matrix(raw, location)))
    return records


def parse_knot_file(path: str, file_format: Optional[str] = None) -> List[KnotRecord]:
    """Load knot records from a JSON or CSV file.

    Args:
        path: Path to the knot file
        file_format: 'json' or 'csv'; inferred from the extension when None

    Returns:
        List of KnotRecord objects, in file order

    Raises:
        FileNotFoundError: If file not found
        KnotParseError: If the file is malformed
    """
    log = logger.get_logger(__name__)
    knot_path = Path(path)
    if not knot_path.exists():
        raise FileNotFoundError(f"Knot file not found: {path}")

    fmt = file_format or ("csv" if knot_path.suffix.lower() == ".csv" else "json")
    if fmt not in KNOT_FILE_FORMATS:
        raise KnotParseError(f"Unsupported knot file format: {fmt}")

    with open(knot_path, "r", encoding="utf-8-sig") as f:
        text = normalize_minus(f.read())

    records = _parse_csv(text) if fmt == "csv" else _parse_json(text)
    log.info(f"Loaded {len(records)} knots from {path}")
    return records


def load_bundled_corpus() -> List[KnotRecord]:
    """The knots shipped in ``alexdec/samples/knots.json``."""
    return records_from_data(BUNDLED_CORPUS)


def select_knots(records: List[KnotRecord], names: Sequence[str]) -> List[KnotRecord]:
    """Restrict to ``names`` (in the order given); all records when empty.

    Raises:
        UnknownKnotError: If a name is not in the corpus
    """
    if not names:
        return records
    by_name: Dict[str, KnotRecord] = {r.name: r for r in records}
    missing = [n for n in names if n not in by_name]
    if missing:
        raise UnknownKnotError(
            f"Unknown knot(s): {', '.join(missing)}; available: {', '.join(by_name)}"
        )
    return [by_name[n] for n in names]
