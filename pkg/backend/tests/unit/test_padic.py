"""
Unit tests for multiple harmonic sums and per-prime values.
"""

from fractions import Fraction
from itertools import combinations, combinations_with_replacement

import pytest

from app.core.exceptions import DomainError
from app.services.modular import reduce_fraction
from app.services.padic import (
    AnValue,
    Z_A,
    mhs,
    mhs_star,
    prime_window,
    shuffle_rhs_A,
    star_by_contractions,
    zetaA,
    zetaA_star,
)
from app.services.words import LinComb


def brute_force(p, n, index, star=False):
    choose = combinations_with_replacement if star else combinations
    total = Fraction(0)
    for ms in choose(range(1, p), len(index)):
        term = Fraction(1)
        for m, k in zip(ms, index):
            term /= m**k
        total += term
    return reduce_fraction(total, p, n)


class TestHarmonicSums:
    """Truncated sums at a single prime."""

    def test_prime_window(self):
        """Test the primes of a window."""
        assert prime_window(5, 30) == (5, 7, 11, 13, 17, 19, 23, 29)

    @pytest.mark.parametrize("p,n,index", [(7, 2, (1, 2)), (11, 3, (2, 1, 1)), (13, 1, (3, 2))])
    def test_against_brute_force(self, p, n, index):
        """Test the prefix-sum evaluation against exact rational sums."""
        assert mhs(p, n, index).value == brute_force(p, n, index)
        assert mhs_star(p, n, index).value == brute_force(p, n, index, star=True)

    def test_empty_index(self):
        """Test that the empty index gives 1."""
        assert mhs(7, 2, ()).value == 1

    def test_fermat(self):
        """Test Σ 1/m^4 ≡ -1 mod 5."""
        assert mhs(5, 1, (4,)).value == 4

    def test_non_prime(self):
        """Test that composite moduli are refused."""
        with pytest.raises(DomainError):
            mhs(9, 1, (1,))


class TestAnValue:
    """Per-prime values over a window."""

    def test_wolstenholme(self, small_window):
        """Test ζ_A(1) = 0 modulo p^2."""
        assert zetaA((1,), small_window, 2).is_zero()

    def test_constant_skips_denominator_prime(self):
        """Test that 1/7 skips p = 7."""
        value = AnValue.constant(Fraction(1, 7), prime_window(5, 13), 1)
        assert 7 in value.skipped
        assert value.primes == [5, 11, 13]

    def test_combine_over_different_windows(self):
        """Test that sums keep the shared primes in order along with their skips."""
        left = AnValue.constant(1, (5, 7, 11, 13), 1)
        right = AnValue.constant(Fraction(1, 7), (7, 11, 13, 17), 1)
        total = left + right
        assert total.window == (7, 11, 13)
        assert total.primes == [11, 13]
        assert 7 in total.skipped
        assert total.residue(11).value == (1 + 8) % 11

    def test_arithmetic(self, small_window):
        """Test linearity of Z_A against the sum of values."""
        x = LinComb.from_index((2, 1)) * 3 - LinComb.from_index((1, 2))
        expected = zetaA((2, 1), small_window, 2) * 3 - zetaA((1, 2), small_window, 2)
        assert Z_A(x, small_window, 2) == expected

    def test_compare_reports_mismatches(self, small_window):
        """Test that compare lists differing primes."""
        one = AnValue.constant(1, small_window, 1)
        two = AnValue.constant(2, small_window, 1)
        compared, mismatched = one.compare(two)
        assert compared == mismatched == list(small_window)

    def test_times_p_power(self, small_window):
        """Test that multiplying by p^n gives zero modulo p^n."""
        assert zetaA((3,), small_window, 2).times_p_power(2).is_zero()

    def test_star_by_contractions(self, small_window):
        """Test ζ* as the sum over comma/plus contractions."""
        for index in [(1, 2), (2, 1, 3)]:
            assert zetaA_star(index, small_window, 3) == star_by_contractions(index, small_window, 3)

    def test_shuffle_rhs_needs_second_index(self, small_window):
        """Test that the shuffle relation needs a nonempty second index."""
        with pytest.raises(DomainError):
            shuffle_rhs_A((1,), (), small_window, 1)
