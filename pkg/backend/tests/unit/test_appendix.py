"""
Unit tests for the exact binomial sums behind the {1}^a,2,{1}^b evaluation.
"""

from fractions import Fraction

import pytest

from app.core.exceptions import DomainError
from app.services.appendix import (
    PARTS,
    appendix_grid,
    appendix_row,
    c_direct,
    closed_forms,
    compute_C_bruteforce,
    expected_C,
    ind_step_grid,
    ind_step_row,
    pfd_identity,
    pfd_samples,
    square_grid,
)


class TestConstantC:
    """The six sums and their total."""

    @pytest.mark.parametrize("a,b,value", [(0, 0, 4), (2, 0, 11), (1, 1, -9)])
    def test_known_values(self, a, b, value):
        """Test C(a,b) against tabulated values."""
        assert compute_C_bruteforce(a, b).C == value
        assert expected_C(a, b) == value

    def test_known_parts(self):
        """Test II(1,1) = 4 and III(2,2) = 42."""
        assert compute_C_bruteforce(1, 1).II == 4
        assert compute_C_bruteforce(2, 2).III == 42

    def test_total_is_sum_of_parts(self):
        """Test C = I + ... + VI."""
        decomposition = compute_C_bruteforce(3, 1)
        assert decomposition.C == sum(decomposition.parts().values())
        assert list(decomposition.parts()) == list(PARTS)

    @pytest.mark.slow
    @pytest.mark.parametrize("a,b", [(a, b) for a in range(7) for b in range(7)])
    def test_closed_forms(self, a, b):
        """Test each closed form and, for even a+b, the total."""
        brute = compute_C_bruteforce(a, b)
        closed = closed_forms(a, b)
        assert brute.parts() == closed.parts()
        assert brute.C == c_direct(a, b)
        if (a + b) % 2 == 0:
            assert brute.C == expected_C(a, b)

    def test_empty_sums(self):
        """Test that the sums over l+m = b-1 and m+n = a-1 vanish at b = 0 and a = 0."""
        assert compute_C_bruteforce(0, 0).I == compute_C_bruteforce(0, 0).II == 0
        assert compute_C_bruteforce(0, 3).V == compute_C_bruteforce(0, 3).VI == 0

    def test_negative_arguments(self):
        """Test that a and b must be non-negative."""
        with pytest.raises(DomainError):
            compute_C_bruteforce(-1, 0)


class TestTables:
    """Rows and grids."""

    def test_appendix_grid_size(self):
        """Test 36 rows for a+b <= 10 with a+b even."""
        rows = appendix_grid(10)
        assert len(rows) == 36
        assert all(row["status"] == "pass" for row in rows)

    def test_row_columns(self):
        """Test the columns of a table row."""
        row = appendix_row(2, 0)
        assert row["C_bruteforce"] == row["C_direct"] == row["C_expected"] == 11
        assert set(PARTS) <= set(row)

    def test_square_grid(self):
        """Test the a, b <= amax grid with a+b even."""
        grid = list(square_grid(2))
        assert grid == [(0, 0), (0, 2), (1, 1), (2, 0), (2, 2)]

    def test_ind_step_rows(self):
        """Test that every induction-step row vanishes."""
        for k, r, i in ind_step_grid(8):
            row = ind_step_row(k, r, i)
            assert row["step"] == row["step_star"] == 0
            assert row["first"] == row["second"] == row["third"] == row["fourth"] == 0


class TestPartialFractions:
    """Σ (-1)^k binom(n,k)/(x+k) = n!/(x(x+1)...(x+n))."""

    def test_known_value(self):
        """Test n = 2, x = 1: 1 - 1 + 1/3 = 2/6."""
        assert pfd_identity(2, 1) == (Fraction(1, 3), Fraction(1, 3))

    def test_samples(self):
        """Test the identity on the sampled grid."""
        samples = pfd_samples(50)
        assert len(samples) == 50
        for n, x in samples:
            lhs, rhs = pfd_identity(n, x)
            assert lhs == rhs

    def test_pole(self):
        """Test that x in {0, -1, ..., -n} is refused."""
        with pytest.raises(DomainError):
            pfd_identity(3, -2)
        with pytest.raises(DomainError):
            pfd_identity(-1, Fraction(1, 2))
