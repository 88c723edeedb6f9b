"""Tests for knot_io module."""

import json

import pytest

from alexdec.exactmath import Poly
from alexdec.knot_io import load_bundled_corpus, parse_knot_file, records_from_data, select_knots
from alexdec.utils import KnotParseError, UnknownKnotError


def write_json(path, data):
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f)
    return str(path)


class TestJsonKnotFiles:
    """Test JSON knot files."""

    def test_load_valid_file(self, tmp_path):
        """Test loading records with and without expectations."""
        path = write_json(
            tmp_path / "knots.json",
            [
                {"name": "3_1", "seifert": [[-1, 1], [0, -1]], "expected": {"1 - t + t^2": [1]}},
                {"name": "4_1", "seifert": [[1, 1], [0, -1]]},
            ],
        )
        records = parse_knot_file(path)
        assert [r.name for r in records] == ["3_1", "4_1"]
        assert records[0].seifert == [[-1, 1], [0, -1]]
        assert records[0].expected.exponents == {Poly.parse("t^2 - t + 1"): (1,)}
        assert records[1].expected is None

    def test_missing_file(self):
        """Test a missing file raises FileNotFoundError."""
        with pytest.raises(FileNotFoundError, match="Knot file not found"):
            parse_knot_file("nonexistent.json")

    def test_invalid_json(self, tmp_path):
        """Test malformed JSON reports the line."""
        path = tmp_path / "bad.json"
        path.write_text('[\n{"name": }', encoding="utf-8")
        with pytest.raises(KnotParseError, match="Invalid JSON") as exc_info:
            parse_knot_file(str(path))
        assert exc_info.value.location == "line 2"
        assert exc_info.value.exit_code == 2

    def test_not_an_array(self, tmp_path):
        """Test the top level must be an array."""
        path = write_json(tmp_path / "knots.json", {"name": "3_1"})
        with pytest.raises(KnotParseError, match="JSON array"):
            parse_knot_file(path)

    def test_ragged_matrix(self):
        """Test ragged matrices are parse errors with the record index."""
        with pytest.raises(KnotParseError, match=r"ragged matrix.*\(at record 1\)"):
            records_from_data(
                [
                    {"name": "3_1", "seifert": [[-1, 1], [0, -1]]},
                    {"name": "bad", "seifert": [[1, 2], [3]]},
                ]
            )

    def test_non_integer_entry(self):
        """Test non-integer entries are parse errors."""
        with pytest.raises(KnotParseError, match="non-integer"):
            records_from_data([{"name": "bad", "seifert": [[1.5, 0], [0, 1]]}])

    def test_missing_name(self):
        """Test every record needs a name."""
        with pytest.raises(KnotParseError, match="name"):
            records_from_data([{"seifert": [[1]]}])

    def test_bad_expectation(self):
        """Test exponents must be positive integers."""
        with pytest.raises(KnotParseError, match="bad exponents"):
            records_from_data(
                [{"name": "3_1", "seifert": [[-1, 1], [0, -1]], "expected": {"1 - t + t^2": [0]}}]
            )


class TestCsvKnotFiles:
    """Test KnotInfo-style CSV files."""

    def test_braces_and_unicode_minus(self, tmp_path):
        """Test brace matrices, U+2212 and a UTF-8 BOM."""
        path = tmp_path / "knots.csv"
        path.write_text(
            'name,seifert_matrix\n3_1,"{{−1,1},{0,−1}}"\n4_1,"[[1,1],[0,-1]]"\n',
            encoding="utf-8-sig",
        )
        records = parse_knot_file(str(path))
        assert [r.name for r in records] == ["3_1", "4_1"]
        assert records[0].seifert == [[-1, 1], [0, -1]]

    def test_alternative_column_names(self, tmp_path):
        """Test 'knot' and 'seifert' headers."""
        path = tmp_path / "knots.csv"
        path.write_text('Knot,Seifert\n3_1,"[[-1,1],[0,-1]]"\n', encoding="utf-8")
        assert parse_knot_file(str(path))[0].name == "3_1"

    def test_missing_columns(self, tmp_path):
        """Test a CSV without a matrix column."""
        path = tmp_path / "knots.csv"
        path.write_text("name,genus\n3_1,1\n", encoding="utf-8")
        with pytest.raises(KnotParseError, match="name column"):
            parse_knot_file(str(path))

    def test_unreadable_cell(self, tmp_path):
        """Test the line number of a bad matrix cell."""
        path = tmp_path / "knots.csv"
        path.write_text('name,seifert\n3_1,"[[-1,1],[0,-1]]"\n4_1,"[[1,1],"\n', encoding="utf-8")
        with pytest.raises(KnotParseError, match="line 3"):
            parse_knot_file(str(path))

    def test_explicit_format(self, tmp_path):
        """Test the format overrides the extension."""
        path = tmp_path / "knots.txt"
        path.write_text('name,seifert\n3_1,"[[-1,1],[0,-1]]"\n', encoding="utf-8")
        assert len(parse_knot_file(str(path), "csv")) == 1
        with pytest.raises(KnotParseError, match="Unsupported"):
            parse_knot_file(str(path), "xml")


class TestCorpus:
    """Test the bundled corpus and knot selection."""

    def test_bundled_corpus(self):
        """Test the shipped knots carry expectations."""
        records = load_bundled_corpus()
        assert [r.name for r in records] == ["3_1", "4_1", "10_99"]
        assert all(r.expected is not None for r in records)
        assert records[2].expected.exponents == {Poly.parse("t^2 - t + 1"): (2, 2)}

    def test_select_in_requested_order(self):
        """Test selection keeps the requested order."""
        records = load_bundled_corpus()
        assert [r.name for r in select_knots(records, ["10_99", "3_1"])] == ["10_99", "3_1"]
        assert select_knots(records, []) == records

    def test_unknown_knot(self):
        """Test unknown names are usage errors."""
        with pytest.raises(UnknownKnotError, match="8_20") as exc_info:
            select_knots(load_bundled_corpus(), ["8_20"])
        assert exc_info.value.exit_code == 1
