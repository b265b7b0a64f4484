"""
Unit tests for Bernoulli numbers and the 𝔷 residues.
"""

from fractions import Fraction
from math import comb

import pytest

from app.core.exceptions import CapabilityError, DomainError, SkipPrime
from app.services.bernoulli import (
    bernoulli,
    bernoulli_akiyama_tanigawa,
    bernoulli_hat,
    zfrak_A,
    zfrak_direct,
)
from app.services.modular import reduce_fraction


class TestBernoulli:
    """Exact Bernoulli numbers with B_1 = +1/2."""

    @pytest.mark.parametrize("j,value", [
        (0, Fraction(1)),
        (1, Fraction(1, 2)),
        (2, Fraction(1, 6)),
        (3, Fraction(0)),
        (4, Fraction(-1, 30)),
        (12, Fraction(-691, 2730)),
    ])
    def test_known_values(self, j, value):
        """Test a few tabulated values."""
        assert bernoulli(j) == value

    def test_matches_akiyama_tanigawa(self):
        """Test the recurrence table against an independent algorithm."""
        assert bernoulli_akiyama_tanigawa(30) == [bernoulli(j) for j in range(31)]

    @pytest.mark.parametrize("e", [1, 2, 3, 6])
    def test_power_sum_convention(self, e):
        """Test 1^e + ... + N^e = 1/(e+1) Σ binom(e+1,j) B_j N^(e+1-j)."""
        n = 10
        closed = sum(comb(e + 1, j) * bernoulli(j) * n**(e + 1 - j) for j in range(e + 1)) / (e + 1)
        assert closed == sum(m**e for m in range(1, n + 1))

    def test_negative_index(self):
        """Test that negative indices are refused."""
        with pytest.raises(DomainError):
            bernoulli(-1)
        with pytest.raises(DomainError):
            bernoulli_hat(0)


class TestZfrak:
    """𝔷(k)·p^l residues."""

    def test_shifted_matches_direct(self):
        """Test 𝔷(k)·p mod p^2 against p times 𝔷(k) mod p."""
        p, k = 13, 3
        shifted = zfrak_A(p, 2, k - 1, 1)
        direct = zfrak_direct(p, 1, k)
        assert shifted.argument == k
        assert shifted.residue.value == direct.value * p % p**2

    def test_even_argument_vanishes_mod_p(self):
        """Test that 𝔷(2m) mod p is 0 since B_(p-2m) has odd index."""
        assert zfrak_direct(11, 1, 4).value == 0

    def test_shift_bounds(self):
        """Test that l must lie in 1..n-1."""
        with pytest.raises(DomainError):
            zfrak_A(13, 2, 3, 0)
        with pytest.raises(DomainError):
            zfrak_A(13, 2, 3, 2)

    def test_direct_reduces_the_defining_quotient(self):
        """Test 𝔷(3) mod 11 as B_8/3 reduced modulo 11."""
        assert zfrak_direct(11, 1, 3).value == reduce_fraction(bernoulli(8) / 3, 11, 1)

    def test_direct_skips_denominator_prime(self):
        """Test that B_0/7 for p = k = 7 skips the prime."""
        with pytest.raises(SkipPrime):
            zfrak_direct(7, 1, 7)

    def test_p_minus_one_divides(self):
        """Test that p-1 | k+l-1 skips the prime."""
        with pytest.raises(SkipPrime):
            zfrak_A(5, 2, 4, 1)

    def test_direct_level_cap(self):
        """Test that direct evaluation stops at n = 2."""
        with pytest.raises(CapabilityError):
            zfrak_direct(7, 3, 3)

    def test_direct_ceiling(self, monkeypatch):
        """Test the configured Bernoulli ceiling."""
        from app.core.config import settings

        monkeypatch.setattr(settings, "bernoulli_max_index", 50)
        with pytest.raises(CapabilityError):
            zfrak_direct(11, 2, 3)
