"""
Unit tests for the heuristic modulo-ζ(2) detector.
"""

from fractions import Fraction

import pytest
from mpmath import mp

from app.core.exceptions import CapabilityError
from app.services.modzeta2 import (
    ModZeta2Result,
    Verdict,
    reduce_mod_zeta2,
    reduce_with_confirmation,
    spanning_set,
)
from app.services.numeric import precision


def weight_seven(digits):
    with precision(digits):
        z2 = mp.zeta(2)
        return 2 * z2 * mp.zeta(5) - z2**2 * mp.zeta(3) / 3


class TestSpanningSet:
    """Generators of ζ(2)𝒵 by weight."""

    def test_sizes(self):
        """Test the number of generators per weight."""
        assert spanning_set(3).generators == []
        assert spanning_set(5).labels == ["ζ(2)ζ(3)"]
        assert len(spanning_set(9).generators) == 3

    def test_unsupported_weight(self):
        """Test that weights above 9 are out of reach."""
        with pytest.raises(CapabilityError):
            spanning_set(10)


class TestReduce:
    """Single runs of the detector."""

    def test_single_generator(self):
        """Test recovery of 3/7·ζ(2)ζ(3)."""
        with precision(40):
            x = mp.mpf(3) / 7 * mp.zeta(2) * mp.zeta(3)
        result = reduce_mod_zeta2(x, 5, 40)
        assert result.verdict is Verdict.RESIDUE_ZERO
        assert result.coefficients == {"ζ(2)ζ(3)": Fraction(3, 7)}

    def test_integer_relation(self):
        """Test recovery of two coefficients at weight 7."""
        result = reduce_mod_zeta2(weight_seven(40), 7, 40)
        assert result.verdict is Verdict.RESIDUE_ZERO
        assert result.coefficients == {"ζ(2)ζ(5)": Fraction(2), "ζ(2)^2ζ(3)": Fraction(-1, 3)}

    def test_odd_zeta_is_not_detected(self):
        """Test that ζ(3) is inconclusive at weight 3."""
        with precision(40):
            x = mp.zeta(3)
        assert reduce_mod_zeta2(x, 3, 40).verdict is Verdict.INCONCLUSIVE

    def test_zero_at_weight_three(self):
        """Test that 0 is residue-zero with no coefficients."""
        result = reduce_mod_zeta2(mp.mpf(0), 3, 40)
        assert result.verdict is Verdict.RESIDUE_ZERO
        assert result.describe() == "≡ 0 mod ζ(2) (heuristic)"


class TestConfirmation:
    """Two-precision confirmation."""

    def test_confirmed(self):
        """Test that a genuine relation survives doubling the precision."""
        result = reduce_with_confirmation(weight_seven, 7, 30)
        assert result.verdict is Verdict.RESIDUE_ZERO
        assert "ζ(2)ζ(5)" in result.describe()

    def test_inconclusive_description(self):
        """Test the wording of an inconclusive verdict."""
        assert ModZeta2Result(verdict=Verdict.INCONCLUSIVE, weight=5).describe() == "inconclusive (heuristic)"
