"""
Unit tests for case construction and execution.
"""

from fractions import Fraction

import pytest

from app.core.exceptions import HypothesisError
from app.models.schemas import Status, TheoremCase
from app.services.indices import Index
from app.services.theorems import THEOREMS, Side, Theorem, zfrak
from app.services.verifier import (
    build_cases,
    run_case,
    run_cases,
    verify,
    verify_suite,
    window_note,
)


def case(theorem_id, params, n=None, window=(7, 97), side="A", digits=20):
    return TheoremCase(theorem_id=theorem_id, params=params, n=n, window=window, side=side, digits=digits)


@pytest.fixture
def wrong_formula(monkeypatch):
    """A deliberately wrong right-hand side for ζ(1,3) modulo x^2."""
    theorem = Theorem(
        "wrong-depth2", "wrong coefficient", Side.A, ("k1", "k2"),
        hypothesis=lambda q: None, grid=lambda lim: [], levels=(2,),
        lhs_terms=lambda q: [(Fraction(1), Index((q["k1"], q["k2"])))],
        rhs=lambda q, n: zfrak(5, 1, power=1),
    )
    monkeypatch.setitem(THEOREMS, theorem.theorem_id, theorem)
    return theorem


class TestRunCase:
    """Dispatch and statuses of single cases."""

    def test_formula_passes(self, mock_settings):
        """Test ζ(1,3) modulo x^2 on the default window."""
        result = run_case(case("depth2", {"k1": 1, "k2": 3}, n=2))
        assert result.status is Status.PASS
        assert result.primes_compared >= 10
        assert result.wall_ms >= 0

    def test_threshold_skips_small_primes(self, mock_settings):
        """Test that primes below wt + n + 1 are reported as skipped."""
        result = run_case(case("sumF2", {"k": 8, "r": 3}, n=2))
        assert result.status is Status.PASS
        assert result.skipped[7] == "p < 11"

    def test_wrong_formula_fails(self, mock_settings, wrong_formula):
        """Test that mismatching residues fail with the offending primes listed."""
        result = run_case(case("wrong-depth2", {"k1": 1, "k2": 3}, n=2))
        assert result.status is Status.FAIL
        assert "p=" in result.detail

    def test_too_few_primes(self, mock_settings):
        """Test the ten-prime floor."""
        result = run_case(case("depth2", {"k1": 1, "k2": 3}, n=2, window=(7, 29)))
        assert result.status is Status.INCONCLUSIVE
        assert result.primes_compared == 7

    def test_relation(self, mock_settings):
        """Test a relation statement."""
        result = run_case(case("antipode", {"index": (2, 1, 3)}, n=3))
        assert result.status is Status.PASS

    def test_recurrence(self, mock_settings):
        """Test the recurrence together with its rational induction step."""
        result = run_case(case("recurrence", {"k": 4, "r": 2, "i": 1}, n=2))
        assert result.status is Status.PASS

    @pytest.mark.parametrize("theorem_id", ["recurrence", "recurrence-star"])
    @pytest.mark.parametrize("params,threshold", [
        ({"k": 8, "r": 4, "i": 2}, 11),
        ({"k": 10, "r": 5, "i": 2}, 13),
    ])
    def test_recurrence_skips_primes_up_to_weight(self, mock_settings, theorem_id, params, threshold):
        """Test that the recurrence passes from 7 upward with primes below k + n + 1 skipped."""
        result = run_case(case(theorem_id, params, n=2, window=(7, 97)))
        assert result.status is Status.PASS
        assert result.skipped[7] == f"p < {threshold}"
        assert all(p < threshold for p in result.skipped)
        assert result.primes_compared >= 10

    def test_real_identity(self, mock_settings):
        """Test an exact real identity."""
        result = run_case(case("zagier2", {"k1": 2, "k2": 3}, side="S"))
        assert result.status is Status.PASS
        assert result.max_abs_error is not None

    def test_symmetric_diagnostic(self, mock_settings):
        """Test that formula statements on the S side only report diagnostics."""
        result = run_case(case("depth2", {"k1": 1, "k2": 1}, n=2, side="S"))
        assert result.status is Status.DIAGNOSTIC
        assert "t^0" in result.detail and "t^1" in result.detail


class TestRunCases:
    """Parallel execution."""

    @pytest.mark.asyncio
    async def test_order_is_preserved(self, mock_settings):
        """Test that reports come back in input order across workers."""
        cases = [case("dep1", {"k": k}, n=2) for k in (1, 2, 3)]
        reports = await run_cases(cases, jobs=2)
        assert [r.case for r in reports] == [c.case_id for c in cases]
        assert all(r.status is Status.PASS for r in reports)

    @pytest.mark.asyncio
    async def test_sequential(self, mock_settings):
        """Test the single-worker path."""
        reports = await run_cases([case("dep1", {"k": 2}, n=1)], jobs=1)
        assert reports[0].status is Status.PASS


class TestBuildCases:
    """Expansion of ids into cases."""

    def test_grid(self):
        """Test the default levels and a limit override."""
        cases = build_cases(["depth2"], None, (7, 97), 20, {"kmax": 4})
        assert len(cases) == 4
        assert {c.n for c in cases} == {2}

    def test_explicit_wrong_level(self):
        """Test that a named statement at an uncovered level is an error."""
        with pytest.raises(HypothesisError):
            build_cases(["depth2"], 1, (7, 97), 20)

    def test_all_keeps_covered_levels(self):
        """Test that 'all' silently drops statements not stated at n."""
        cases = build_cases(["all"], 1, (7, 97), 20, {"kmax": 3, "amax": 1, "wmax": 2, "rmax": 2})
        assert cases
        assert all(c.n in (1, None) for c in cases)
        assert not any(c.theorem_id == "depth2" for c in cases)

    def test_symmetric_side_needs_closed_form(self):
        """Test that relations cannot be checked on the S side."""
        with pytest.raises(HypothesisError):
            build_cases(["antipode"], 1, (7, 97), 20, side="S")

    def test_single_parameter_set(self):
        """Test explicit parameters replacing the grid."""
        cases = build_cases(["sumF2"], None, (7, 97), 20, params={"k": 4, "r": 2})
        assert [c.params for c in cases] == [{"k": 4, "r": 2}]


class TestSuites:
    """Exact rational suites."""

    @pytest.mark.parametrize("name,limits", [("appendix", {"amax": 4}), ("ind-step", {"kmax": 6}),
                                             ("pfd", {"count": 20})])
    def test_suite_passes(self, name, limits):
        """Test that each suite passes on a small grid."""
        assert verify_suite(name, limits).status is Status.PASS

    def test_unknown_suite(self):
        """Test that unknown suite names are refused."""
        with pytest.raises(HypothesisError):
            verify_suite("nope")


class TestVerify:
    """End-to-end runs."""

    @pytest.mark.slow
    def test_verify(self, mock_settings):
        """Test a small run with a suite."""
        report = verify(["depth2", "pfd"], 2, (7, 97), 20, {"kmax": 4}, jobs=1)
        assert report.summary["pass"] == 5
        assert report.exit_code == 0
        assert report.window_note == window_note((7, 97))
