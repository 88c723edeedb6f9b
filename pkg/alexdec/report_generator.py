"""Text, JSON and CSV reports."""

import csv
import json
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import sympy

from . import logger
from .config import KnotReport, RepresentationSet
from .constants import REPORT_SCHEMA_VERSION
from .exactmath import Poly
from .metabelian import RepMatrix
from .obstruction import Decomposition, RootClassFiltration
from .utils import format_exponents

FILTRATION_CSV_FIELDS = [
    "knot",
    "factor",
    "modulus",
    "multiplicity",
    "n",
    "solution_dim",
    "projection_dim",
    "cocycle_dim",
]


def generate_timestamp() -> str:
    """Generate timestamp string for filenames."""
    return datetime.now().strftime("%Y%m%d_%H%M%S")


def poly_key(p: Poly) -> str:
    """Canonical report spelling: ASCII, ascending degree."""
    return p.to_string(ascending=True)


def decomposition_to_dict(d: Optional[Decomposition]) -> Optional[Dict[str, List[int]]]:
    return None if d is None else d.as_strings(ascending=True)


def _filtration_to_dict(c: RootClassFiltration) -> Dict[str, Any]:
    return {
        "factor": poly_key(c.factor),
        "modulus": poly_key(c.modulus),
        "multiplicity": c.multiplicity,
        "splits": [
            {"parent": poly_key(e.parent), "factors": [poly_key(f) for f in e.factors]}
            for e in c.splits
        ],
        "levels": [
            {
                "n": level.level,
                "solution_dim": level.solution_dim,
                "projection_dim": level.projection_dim,
                "cocycle_dim": level.cocycle_dim,
            }
            for level in c.levels
        ],
        "cohomology_dim": c.cohomology_dim,
        "cocycle_dim": c.cocycle_dim,
    }


def knot_report_to_dict(report: KnotReport, include_timing: bool = True) -> Dict[str, Any]:
    """JSON-ready view of one knot report."""
    data: Dict[str, Any] = {
        "name": report.name,
        "genus": report.genus,
        "alexander": poly_key(report.alexander.delta),
        "alexander_unit": {
            "sign": report.alexander.sign,
            "t_power": report.alexander.t_power,
        },
        "root_classes": _root_classes(report),
        "filtration": [_filtration_to_dict(c) for c in report.filtration.classes],
        "decomposition": decomposition_to_dict(report.decomposition),
        "oracle": decomposition_to_dict(report.oracle),
        "invariant_factors": (
            None
            if report.invariant_factors is None
            else [poly_key(d) for d in report.invariant_factors.factors]
        ),
        "snf_verified": (
            report.invariant_factors.verified if report.invariant_factors else False
        ),
        "agreement": None if report.agreement is None else report.agreement.agreed,
        "expected_match": report.expected_match,
    }
    if include_timing:
        data["seconds"] = None if report.seconds is None else round(report.seconds, 6)
    return data


def _root_classes(report: KnotReport) -> List[Dict[str, Any]]:
    """Yun classes in order, once each even when they split into branches."""
    seen: List[Poly] = []
    result = []
    for c in report.filtration.classes:
        if c.factor not in seen:
            seen.append(c.factor)
            result.append({"factor": poly_key(c.factor), "multiplicity": c.multiplicity})
    return result


def build_report_document(
    reports: Sequence[KnotReport], command: str, seed: int, include_timing: bool = True
) -> Dict[str, Any]:
    return {
        "schema_version": REPORT_SCHEMA_VERSION,
        "command": command,
        "seed": seed,
        "knots": [knot_report_to_dict(r, include_timing) for r in reports],
        "all_agree": all(r.agrees for r in reports),
    }


def render_json(document: Dict[str, Any]) -> str:
    return json.dumps(document, indent=2) + "\n"


def _load_decomposition(raw: Optional[Dict[str, List[int]]]) -> Optional[Decomposition]:
    if raw is None:
        return None
    return Decomposition({Poly.parse(k): tuple(v) for k, v in raw.items()}, "report")


def load_report(text: str) -> Dict[str, Any]:
    """Parse a JSON report, turning polynomial strings into Poly and exponent maps into Decomposition."""
    document = json.loads(text)
    for knot in document.get("knots", []):
        knot["alexander"] = Poly.parse(knot["alexander"])
        knot["decomposition"] = _load_decomposition(knot["decomposition"])
        knot["oracle"] = _load_decomposition(knot.get("oracle"))
        if knot.get("invariant_factors") is not None:
            knot["invariant_factors"] = [Poly.parse(d) for d in knot["invariant_factors"]]
        for entry in knot.get("root_classes", []):
            entry["factor"] = Poly.parse(entry["factor"])
        for entry in knot.get("filtration", []):
            entry["factor"] = Poly.parse(entry["factor"])
            entry["modulus"] = Poly.parse(entry["modulus"])
    return document


def dump_loaded_report(document: Dict[str, Any]) -> str:
    """Inverse of :func:`load_report`."""
    out = json.loads(json.dumps(document, default=_encode_loaded))
    return render_json(out)


def _encode_loaded(value: Any) -> Any:
    if isinstance(value, Poly):
        return poly_key(value)
    if isinstance(value, Decomposition):
        return decomposition_to_dict(value)
    raise TypeError(f"cannot encode {type(value).__name__}")


def write_csv_report(filename: str, data: List[dict], fieldnames: List[str]) -> None:
    """Write data to CSV file with UTF-8 BOM encoding.

    Args:
        filename: Output filename
        data: List of dictionaries to write
        fieldnames: CSV column names
    """
    try:
        with open(filename, "w", encoding="utf-8-sig", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=fieldnames)
            writer.writeheader()
            writer.writerows(data)
        logger.get_logger(__name__).info(f"Generated CSV report: {filename}")
    except Exception as e:
        logger.get_logger(__name__).error(f"Failed to write CSV report {filename}: {e}")
        raise


def generate_filtration_csv(reports: Sequence[KnotReport], output_dir: str, timestamp: str) -> str:
    """One row per (knot, branch modulus, level)."""
    filename = f"{output_dir}/alexdec_filtration_{timestamp}.csv"
    data = []
    for report in reports:
        for c in report.filtration.classes:
            for level in c.levels:
                data.append(
                    {
                        "knot": report.name,
                        "factor": poly_key(c.factor),
                        "modulus": poly_key(c.modulus),
                        "multiplicity": c.multiplicity,
                        "n": level.level,
                        "solution_dim": level.solution_dim,
                        "projection_dim": level.projection_dim,
                        "cocycle_dim": level.cocycle_dim,
                    }
                )
    write_csv_report(filename, data, FILTRATION_CSV_FIELDS)
    return filename


def generate_all_reports(document: Dict[str, Any], reports: Sequence[KnotReport], output_dir: str) -> List[str]:
    """Write the JSON report and the filtration CSV into ``output_dir``.

    Returns:
        List of generated filenames
    """
    timestamp = generate_timestamp()
    json_name = write_json_report(document, output_dir, "alexdec_report", timestamp)
    return [json_name, generate_filtration_csv(reports, output_dir, timestamp)]


def write_json_report(
    document: Dict[str, Any], output_dir: str, prefix: str, timestamp: Optional[str] = None
) -> str:
    """Write ``<prefix>_<timestamp>.json`` into ``output_dir`` and return its path."""
    Path(output_dir).mkdir(parents=True, exist_ok=True)
    filename = f"{output_dir}/{prefix}_{timestamp or generate_timestamp()}.json"
    with open(filename, "w", encoding="utf-8") as f:
        f.write(render_json(document))
    logger.get_logger(__name__).info(f"Generated JSON report: {filename}")
    return filename


def complex_roots(f: Poly) -> List[str]:
    """Roots of ``f`` in C, as radicals when sympy finds them, numerically otherwise."""
    t = sympy.Symbol("t")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * t**i for i, c in enumerate(f.coeffs))
    found = sympy.roots(expr, t)
    if sum(found.values()) == f.degree:
        values = list(found)
    else:
        values = sympy.Poly(expr, t).nroots()
    values.sort(key=lambda r: (float(sympy.re(r)), float(sympy.im(r))))
    return [sympy.sstr(r) for r in values]


def _over_c(factor: Poly, exponents: Sequence[int]) -> List[str]:
    roots = complex_roots(factor)
    summands = [
        f"L/(t - r{index})^{q}" if q > 1 else f"L/(t - r{index})"
        for index in range(1, len(roots) + 1)
        for q in exponents
    ]
    lines = ["    over C: " + " (+) ".join(summands)]
    lines += [f"      r{index} = {root}" for index, root in enumerate(roots, 1)]
    return lines


def format_knot_report(report: KnotReport) -> str:
    """Human-readable report for one knot."""
    lines = [f"Knot {report.name} (genus {report.genus})"]
    lines.append(f"  Alexander polynomial: {report.alexander.delta}")
    if not report.filtration.classes:
        lines.append("  Alexander module is trivial")
    for c in report.filtration.classes:
        header = f"  Root class {c.modulus} (multiplicity {c.multiplicity})"
        if c.splits:
            header += f", branch of {c.factor}"
        lines.append(header)
        lines.append("       n   d_n   c_n   dim C_n")
        for level in c.levels:
            lines.append(
                f"    {level.level:4d}  {level.solution_dim:4d}  "
                f"{level.projection_dim:4d}  {level.cocycle_dim:8d}"
            )
        lines.append(f"    dim H^1 = {c.cohomology_dim}, dim Z^1 = {c.cocycle_dim}")
        exponents = report.decomposition.exponents[c.modulus]
        lines.append(f"    exponents: {format_exponents(exponents)}")
        lines.extend(_over_c(c.modulus, exponents))
    if report.oracle is not None:
        for factor, exponents in report.oracle.exponents.items():
            lines.append(f"  Oracle: {factor} -> {format_exponents(exponents)}")
        lines.append(f"  Agreement: {'yes' if report.agrees else 'NO'}")
    if report.invariant_factors is not None:
        nontrivial = ", ".join(str(d) for d in report.invariant_factors.nontrivial())
        lines.append(f"  Invariant factors: {nontrivial or '1'}")
    if report.expected_match is not None:
        lines.append(f"  Matches recorded expectation: {'yes' if report.expected_match else 'NO'}")
    if report.seconds is not None:
        lines.append(f"  Time: {report.seconds:.3f}s")
    return "\n".join(lines)


def print_summary_report(reports: Sequence[KnotReport], generated_files: List[str]) -> None:
    """Print the text report of every knot to stdout."""
    for index, report in enumerate(reports):
        if index:
            print()
        print(format_knot_report(report))
    if generated_files:
        print()
        print("Reports Generated:")
        for file_path in generated_files:
            print(f"  - {Path(file_path).name}")


def _matrix_lines(matrix: RepMatrix, indent: str) -> List[str]:
    cells = matrix.to_strings()
    width = max(len(cell) for row in cells for cell in row)
    return [indent + "[ " + "  ".join(cell.rjust(width) for cell in row) + " ]" for row in cells]


def representation_to_dict(rep: RepresentationSet) -> Dict[str, Any]:
    return {
        "knot": rep.knot,
        "factor": poly_key(rep.factor),
        "modulus": poly_key(rep.modulus),
        "level": rep.level,
        "solutions": [
            {
                "phi": [[str(x) for x in row] for row in builder.phi],
                "images": {name: m.to_strings() for name, m in images.items()},
                "homomorphism_check": {
                    "passed": check.passed,
                    "trials": check.trials_run,
                    "failure": check.failure,
                },
            }
            for builder, images, check in zip(rep.builders, rep.images, rep.checks)
        ],
    }


def format_representations(reps: Sequence[RepresentationSet]) -> str:
    lines: List[str] = []
    for rep in reps:
        lines.append(
            f"Knot {rep.knot}, root class {rep.modulus}, level {rep.level}: "
            f"{len(rep.builders)} solution(s)"
        )
        for index, (builder, images, check) in enumerate(
            zip(rep.builders, rep.images, rep.checks), 1
        ):
            lines.append(f"  Solution {index}")
            lines.append("    Phi:")
            for row in builder.phi:
                lines.append("      (" + ", ".join(str(x) for x in row) + ")")
            for name, matrix in images.items():
                lines.append(f"    rho({name}):")
                lines.extend(_matrix_lines(matrix, "      "))
            status = "passed" if check.passed else f"FAILED ({check.failure})"
            lines.append(f"    homomorphism check: {status} after {check.trials_run} trials")
    return "\n".join(lines) if lines else "No root classes: every representation is abelian"
