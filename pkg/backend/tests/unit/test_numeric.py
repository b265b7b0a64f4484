"""
Unit tests for real multiple zeta values.
"""

import pytest
from mpmath import mp, mpf

from app.core.exceptions import CapabilityError, DomainError
from app.services.numeric import (
    TSeriesNum,
    mzv,
    mzv_reg,
    mzv_star,
    precision,
    symmetric_hat,
    zagier_theorem1_exact,
    zagier_theorem1_mod_zeta2,
    zagier_theorem2_exact,
    zagier_theorem2_mod_zeta2,
)

TOL = mpf(10)**-25


class TestMzv:
    """Admissible values."""

    def test_single_values(self, digits):
        """Test ζ(2) and ζ(3) against mpmath."""
        with precision(digits):
            assert abs(mzv((2,), digits) - mp.pi**2 / 6) < TOL
            assert abs(mzv((3,), digits) - mp.zeta(3)) < TOL

    def test_euler(self, digits):
        """Test ζ(1,2) = ζ(3)."""
        with precision(digits):
            assert abs(mzv((1, 2), digits) - mp.zeta(3)) < TOL

    def test_twos(self, digits):
        """Test ζ(2,2) = π^4/120."""
        with precision(digits):
            assert abs(mzv((2, 2), digits) - mp.pi**4 / 120) < TOL

    def test_star(self, digits):
        """Test ζ*(1,2) = ζ(1,2) + ζ(3) = 2ζ(3)."""
        with precision(digits):
            assert abs(mzv_star((1, 2), digits) - 2 * mp.zeta(3)) < TOL

    def test_empty_index(self, digits):
        """Test ζ(∅) = 1."""
        assert mzv((), digits) == 1

    def test_non_admissible(self):
        """Test that the divergent ζ(1) is refused."""
        with pytest.raises(DomainError):
            mzv((1,))

    def test_weight_ceiling(self, monkeypatch):
        """Test FMZV_MAX_NUMERIC_WEIGHT."""
        from app.core.config import settings

        monkeypatch.setattr(settings, "max_numeric_weight", 4)
        with pytest.raises(CapabilityError):
            mzv((2, 3))


class TestRegularized:
    """Regularized and symmetric values."""

    def test_reg_of_one(self, digits):
        """Test ζ^ш(1) = ζ^*(1) = 0."""
        assert mzv_reg((1,), "sh", digits) == 0
        assert mzv_reg((1,), "st", digits) == 0

    @pytest.mark.parametrize("product", ["sh", "st"])
    def test_two_one(self, product, digits):
        """Test ζ^∙(2,1) = -2ζ(3) for both products."""
        with precision(digits):
            assert abs(mzv_reg((2, 1), product, digits) + 2 * mp.zeta(3)) < TOL

    def test_symmetric_depth_one(self, digits):
        """Test ζ_Ŝ(2) = 2ζ(2) + 2ζ(3)t."""
        series = symmetric_hat((2,), "sh", 2, digits)
        with precision(digits):
            assert abs(series[0] - 2 * mp.zeta(2)) < TOL
            assert abs(series[1] - 2 * mp.zeta(3)) < TOL

    def test_symmetric_level(self):
        """Test that the truncation level must be positive."""
        with pytest.raises(DomainError):
            symmetric_hat((2,), "sh", 0)

    def test_series_product(self):
        """Test truncated multiplication of t-series."""
        a = TSeriesNum([mpf(1), mpf(2)])
        b = TSeriesNum([mpf(3), mpf(4)])
        assert (a * b).coefficients == [3, 10]


class TestZagier:
    """Closed forms for ζ({2}^a,3,{2}^b) and odd-weight double values."""

    @pytest.mark.parametrize("a,b", [(0, 0), (1, 0), (0, 1), (1, 1)])
    def test_twos_three_twos(self, a, b, digits):
        """Test the expansion in ζ({2}^j)ζ(odd)."""
        lhs, rhs = zagier_theorem1_exact(a, b, digits)
        assert abs(lhs - rhs) < TOL

    @pytest.mark.parametrize("m,n", [(1, 2), (2, 3), (3, 2), (1, 4), (4, 3)])
    def test_double_values(self, m, n, digits):
        """Test ζ(m,n) for odd m+n."""
        lhs, rhs = zagier_theorem2_exact(m, n, digits)
        assert abs(lhs - rhs) < TOL

    def test_mod_zeta2_coefficients(self):
        """Test ζ(3) ≡ ζ(3) and ζ(1,2) ≡ ζ(3) modulo ζ(2)."""
        assert zagier_theorem1_mod_zeta2(0, 0) == 1
        assert zagier_theorem2_mod_zeta2(1, 2) == 1

    def test_even_weight_refused(self):
        """Test that m+n must be odd."""
        with pytest.raises(DomainError):
            zagier_theorem2_exact(1, 3)
