"""
Integration tests for the fmzv command line.
"""

import json

import pytest

from app.cli import main


@pytest.fixture(autouse=True)
def single_worker(mock_settings):
    """Keep CLI runs in-process."""
    return mock_settings


class TestVerifyCommand:
    """fmzv verify."""

    def test_list(self, capsys):
        """Test that --list prints the registered statements."""
        assert main(["verify", "--list"]) == 0
        out = capsys.readouterr().out
        assert "depth2-star" in out
        assert "appendix" in out

    def test_single_case_json(self, capsys):
        """Test a passing single case and the JSON report."""
        code = main(["verify", "--id", "depth2", "--k1", "1", "--k2", "3", "--n", "2"])
        document = json.loads(capsys.readouterr().out)
        assert code == 0
        assert document["schema"] == 1
        assert document["cases"][0]["case"] == "depth2[n=2](k1=1,k2=3)"
        assert document["cases"][0]["status"] == "pass"

    def test_comma_separated_ids(self, capsys):
        """Test repeated and comma-separated ids with a limit."""
        code = main(["verify", "--id", "depth2,depth2-star", "--kmax", "2", "--format", "csv"])
        lines = capsys.readouterr().out.strip().splitlines()
        assert code == 0
        assert lines[0].startswith("case,theorem_id")
        assert len(lines) == 3

    def test_text_report(self, capsys):
        """Test the text table and window note."""
        assert main(["verify", "--id", "pfd", "--format", "text"]) == 0
        out = capsys.readouterr().out
        assert "pfd" in out
        assert "residues compared on primes 7..97" in out

    def test_recurrence_case(self, capsys):
        """Test the (8,4,2) recurrence from p = 7 with the small prime skipped."""
        code = main(["verify", "--id", "recurrence", "--n", "2", "--k", "8", "--r", "4", "--i", "2",
                     "--primes", "7:97", "--format", "csv"])
        lines = capsys.readouterr().out.strip().splitlines()
        assert code == 0
        assert len(lines) == 2
        assert ",pass," in lines[1]

    def test_inconclusive_exit_code(self, capsys):
        """Test exit code 3 when the window is too small."""
        code = main(["verify", "--id", "depth2", "--k1", "1", "--k2", "3", "--n", "2", "--primes", "7:29"])
        assert code == 3
        assert json.loads(capsys.readouterr().out)["summary"]["inconclusive"] == 1

    @pytest.mark.parametrize("argv", [
        ["verify", "--id", "nope"],
        ["verify", "--id", "depth2", "--k1", "1", "--k2", "2", "--n", "2"],
        ["verify", "--n", "4"],
        ["verify", "--primes", "3:97"],
        ["verify", "--k", "3"],
        ["verify", "--bogus"],
    ])
    def test_usage_errors(self, argv, capsys):
        """Test exit code 2 for bad ids, hypotheses, levels and flags."""
        assert main(argv) == 2


class TestEvalCommand:
    """fmzv eval."""

    def test_word_product(self, capsys):
        """Test the harmonic product in index form."""
        assert main(["eval", "word", "--op", "harmonic", "--left", "2", "--right", "3"]) == 0
        assert capsys.readouterr().out == "e(2,3)+e(3,2)+e(5)\n"

    def test_residues(self, capsys):
        """Test per-prime residues of ζ_A(1) modulo p^2."""
        assert main(["eval", "a", "--index", "1", "--n", "2", "--primes", "7:13"]) == 0
        out = capsys.readouterr().out
        assert "0 mod 7^2" in out
        assert "0 mod 13^2" in out

    def test_symmetric(self, capsys):
        """Test the t-coefficients of ζ_Ŝ(2)."""
        assert main(["eval", "s", "--index", "2", "--n", "2", "--digits", "20"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].startswith("t^0: 3.2898681336964528729")
        assert lines[1].startswith("t^1: 2.4041138063191885708")

    def test_invalid_index(self, capsys):
        """Test that a zero part is a usage error."""
        assert main(["eval", "a", "--index", "0,1"]) == 2


class TestTableCommand:
    """fmzv table."""

    def test_appendix_csv(self, capsys):
        """Test 36 rows for a+b <= 10 with a+b even."""
        assert main(["table", "appendix", "--amax", "10"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "a,b,I,II,III,IV,V,VI,C_bruteforce,C_direct,C_closed,C_expected,status"
        assert len(lines) == 37
        assert lines[1] == "0,0,0,0,6,-2,0,0,4,4,4,4,pass"

    def test_out_file(self, tmp_path):
        """Test writing to --out."""
        target = tmp_path / "table.csv"
        assert main(["table", "sumF3", "--kmax", "3", "--out", str(target)]) == 0
        lines = target.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "k,r,size,t_terms,rhs"
        assert len(lines) == 1 + 6

    def test_sum_f2(self, capsys):
        """Test the sumF2 table with per-row status."""
        assert main(["table", "sumF2", "--kmax", "2"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 1 + 3
        assert all(line.endswith(",pass") for line in lines[1:])
