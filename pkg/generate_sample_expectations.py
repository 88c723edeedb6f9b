#!/usr/bin/env python3
"""
Script to fill the "expected" decompositions of alexdec/samples/knots.json.

Each expectation is read off the Smith normal form of A(t), independently of
the filtration, so the bundled corpus doubles as a regression suite.
"""

import json
import sys
from pathlib import Path

from alexdec.knot_io import parse_knot_file
from alexdec.obstruction import run_filtration
from alexdec.report_generator import poly_key
from alexdec.seifert import alexander_matrix, validate_seifert
from alexdec.snf_oracle import oracle_decomposition, oracle_moduli, smith_normal_form
from alexdec.utils import AlexdecError

SAMPLES_PATH = Path(__file__).parent / "alexdec" / "samples" / "knots.json"


def expected_for(name: str, matrix: list) -> dict:
    """Oracle exponents at every root class (branch moduli if the filtration split)."""
    s = validate_seifert(name, matrix)
    report, _ = run_filtration(s)
    inv = smith_normal_form(alexander_matrix(s), verify=True)
    moduli = oracle_moduli(inv, [c.modulus for c in report.classes])
    oracle = oracle_decomposition(inv, moduli)
    return {poly_key(f): list(q) for f, q in oracle.exponents.items()}


def main() -> int:
    """Main entry point."""
    print("alexdec sample expectations generator")
    print("=" * 40)

    try:
        records = parse_knot_file(str(SAMPLES_PATH))
    except (FileNotFoundError, AlexdecError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1

    output = []
    for record in records:
        try:
            expected = expected_for(record.name, record.seifert)
        except AlexdecError as e:
            print(f"Error: {record.name}: {e}", file=sys.stderr)
            return 1
        print(f"  {record.name}: {expected}")
        output.append({"name": record.name, "seifert": record.seifert, "expected": expected})

    with open(SAMPLES_PATH, "w", encoding="utf-8") as f:
        json.dump(output, f, indent=2)
        f.write("\n")

    print(f"\nWrote {len(output)} knots to {SAMPLES_PATH}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
