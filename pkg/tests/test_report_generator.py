"""Tests for report_generator module."""

import csv
import json

import pytest

from alexdec.config import Config
from alexdec.exactmath import Poly
from alexdec.knot_io import load_bundled_corpus
from alexdec.pipeline import analyze_corpus, build_representations
from alexdec.report_generator import (
    build_report_document,
    complex_roots,
    dump_loaded_report,
    format_knot_report,
    format_representations,
    generate_all_reports,
    knot_report_to_dict,
    load_report,
    poly_key,
    print_summary_report,
    render_json,
    representation_to_dict,
)

EISENSTEIN = Poly.parse("t^2 - t + 1")


@pytest.fixture(scope="module")
def reports():
    """Reports for the whole bundled corpus, without timings."""
    return analyze_corpus(load_bundled_corpus(), Config(no_timing=True))


class TestJsonReport:
    """Test the JSON report document."""

    def test_knot_entry(self, reports):
        """Test the 10_99 entry."""
        data = knot_report_to_dict(reports[2], include_timing=False)
        assert data["name"] == "10_99"
        assert data["alexander"] == poly_key(EISENSTEIN**4)
        assert data["alexander_unit"] == {"sign": 1, "t_power": 0}
        assert data["root_classes"] == [{"factor": "1 - t + t^2", "multiplicity": 4}]
        assert data["decomposition"] == {"1 - t + t^2": [2, 2]}
        assert data["oracle"] == {"1 - t + t^2": [2, 2]}
        levels = data["filtration"][0]["levels"]
        assert [level["projection_dim"] for level in levels] == [2, 2, 0]
        assert [level["solution_dim"] for level in levels] == [2, 4, 4]
        assert data["filtration"][0]["cohomology_dim"] == 2
        assert data["agreement"] is True
        assert "seconds" not in data

    def test_document(self, reports):
        """Test the top-level fields."""
        document = build_report_document(reports, "verify", 0, include_timing=False)
        assert document["schema_version"] == 1
        assert document["command"] == "verify"
        assert document["all_agree"] is True
        assert [k["name"] for k in document["knots"]] == ["3_1", "4_1", "10_99"]

    def test_render_is_deterministic(self, reports):
        """Test two renders of fresh analyses are byte-identical."""
        again = analyze_corpus(load_bundled_corpus(), Config(no_timing=True))
        first = render_json(build_report_document(reports, "verify", 0, include_timing=False))
        second = render_json(build_report_document(again, "verify", 0, include_timing=False))
        assert first == second
        assert first.endswith("}\n")

    def test_round_trip(self, reports):
        """Test loading and re-dumping gives the same JSON."""
        text = render_json(build_report_document(reports, "verify", 0, include_timing=False))
        loaded = load_report(text)
        assert loaded["knots"][2]["alexander"] == EISENSTEIN**4
        assert loaded["knots"][2]["decomposition"].exponents == {EISENSTEIN: (2, 2)}
        assert dump_loaded_report(loaded) == text


class TestReportFiles:
    """Test files written to the output directory."""

    def test_generate_all_reports(self, reports, tmp_path):
        """Test the JSON report and the filtration CSV."""
        document = build_report_document(reports, "verify", 0, include_timing=False)
        output_dir = str(tmp_path / "reports")
        generated_files = generate_all_reports(document, reports, output_dir)

        assert len(generated_files) == 2
        json_file, csv_file = generated_files
        assert "alexdec_report_" in json_file
        assert "alexdec_filtration_" in csv_file
        with open(json_file, encoding="utf-8") as f:
            assert json.load(f) == document

        with open(csv_file, "r", encoding="utf-8-sig") as f:
            rows = list(csv.DictReader(f))
        # 3_1: n = 2, 3; 4_1: n = 2, 3; 10_99: n = 2, 3, 4
        assert len(rows) == 7
        assert rows[-1] == {
            "knot": "10_99",
            "factor": "1 - t + t^2",
            "modulus": "1 - t + t^2",
            "multiplicity": "4",
            "n": "4",
            "solution_dim": "4",
            "projection_dim": "0",
            "cocycle_dim": "1",
        }


class TestTextReport:
    """Test the human-readable report."""

    def test_complex_roots(self):
        """Test the roots of t^2 - t + 1 in radicals."""
        roots = complex_roots(EISENSTEIN)
        assert len(roots) == 2
        assert all("sqrt(3)" in root for root in roots)

    def test_knot_report(self, reports):
        """Test the 10_99 text block."""
        text = format_knot_report(reports[2])
        assert "Knot 10_99 (genus 4)" in text
        assert "Root class t^2 - t + 1 (multiplicity 4)" in text
        assert "dim H^1 = 2, dim Z^1 = 3" in text
        assert "exponents: {2, 2}" in text
        assert "L/(t - r1)^2 (+) L/(t - r1)^2 (+) L/(t - r2)^2 (+) L/(t - r2)^2" in text
        assert "Agreement: yes" in text
        assert "Time:" not in text

    def test_print_summary_report(self, reports, capsys):
        """Test every knot and the generated files are printed."""
        print_summary_report(reports, ["/tmp/reports/alexdec_report_1.json"])
        captured = capsys.readouterr()
        assert "Knot 3_1" in captured.out
        assert "Knot 4_1" in captured.out
        assert "- alexdec_report_1.json" in captured.out


class TestRepresentationReport:
    """Test representation output."""

    def test_representation_to_dict(self):
        """Test the trefoil representation entry."""
        records = {r.name: r for r in load_bundled_corpus()}
        (rep,) = build_representations(records["3_1"], Config(trials=5))
        data = representation_to_dict(rep)
        assert data["modulus"] == "1 - t + t^2"
        assert data["level"] == 2
        (solution,) = data["solutions"]
        assert set(solution["images"]) == {"mu", "e1", "e2"}
        assert solution["images"]["mu"] == [["a", "0"], ["0", "1"]]
        assert solution["homomorphism_check"] == {"passed": True, "trials": 5, "failure": None}
        assert "homomorphism check: passed after 5 trials" in format_representations([rep])

    def test_no_root_classes(self):
        """Test the message for knots without root classes."""
        assert "abelian" in format_representations([])
