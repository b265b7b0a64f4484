"""
Unit tests for text and CSV rendering.
"""

from fractions import Fraction

from app.models.schemas import CaseReport, Status
from app.services.padic import AnValue
from app.utils.table_formatter import (
    format_as_ascii_table,
    format_cell,
    format_fraction,
    report_rows,
    residue_rows,
    to_csv,
)


class TestCells:
    """Single values."""

    def test_fractions(self):
        """Test num/den and bare integers."""
        assert format_fraction(Fraction(-9, 2)) == "-9/2"
        assert format_fraction(Fraction(4)) == "4"

    def test_tuples_and_none(self):
        """Test index tuples and missing values."""
        assert format_cell((2, 3)) == "(2,3)"
        assert format_cell(None) == ""


class TestCsv:
    """CSV output."""

    def test_rows(self):
        """Test rational cells and quoting of commas."""
        text = to_csv([{"a": Fraction(1, 3), "b": "e(2,3)"}])
        assert text == 'a,b\n1/3,"e(2,3)"\n'

    def test_column_selection(self):
        """Test that only the selected columns appear, in order."""
        assert to_csv([{"a": 1, "b": 2, "c": 3}], ["c", "a"]) == "c,a\n3,1\n"

    def test_empty_selection(self):
        """Test that no rows gives the header line only."""
        assert to_csv([], ["a", "b"]) == "a,b\n"


class TestAsciiTable:
    """Bordered text tables."""

    def test_table(self):
        """Test borders, values and the row count."""
        text = format_as_ascii_table([{"k": 1, "value": Fraction(1, 2)}, {"k": 2, "value": 3}])
        assert "| k | value |" in text
        assert "1/2" in text
        assert text.endswith("Total: 2 rows")

    def test_truncation(self):
        """Test the row limit and column clipping."""
        rows = [{"text": "x" * 40} for _ in range(5)]
        text = format_as_ascii_table(rows, max_width=10, max_rows=2)
        assert "xxxxxxx..." in text
        assert "... 3 more rows ..." in text

    def test_empty(self):
        """Test the empty table."""
        assert format_as_ascii_table([]) == "No rows"


class TestRows:
    """Row builders."""

    def test_residue_rows_show_skips(self):
        """Test one row per prime with skip reasons."""
        value = AnValue.constant(Fraction(1, 7), (5, 7, 11), 1)
        rows = residue_rows({"q": value}, (5, 7, 11))
        assert [row["p"] for row in rows] == [5, 7, 11]
        assert str(rows[0]["q"]) == "3 mod 5^1"
        assert rows[1]["q"].startswith("skip: ")

    def test_report_rows(self):
        """Test the flattened report columns."""
        case = CaseReport(case="c", theorem_id="depth2", side="A", n=2, status=Status.PASS,
                          primes_compared=12, skipped={7: "p < 8"})
        row = report_rows([case])[0]
        assert row["status"] == "pass"
        assert row["skipped"] == 1
