"""
Unit tests for harmonic and shuffle regularization.
"""

import pytest

from app.core.exceptions import DomainError, NotInH1Error
from app.services.regularization import Product, decompose, reg, reg_sh_closed_form
from app.services.words import LinComb, Word


def e(*index):
    return Word.from_index(index)


class TestProduct:
    """Product name parsing."""

    def test_aliases(self):
        """Test the accepted spellings."""
        assert Product.parse("sh") is Product.SHUFFLE
        assert Product.parse("ш") is Product.SHUFFLE
        assert Product.parse("st") is Product.HARMONIC
        assert Product.parse("*") is Product.HARMONIC

    def test_unknown(self):
        """Test that an unknown name is a domain error."""
        with pytest.raises(DomainError):
            Product.parse("bogus")


class TestReg:
    """The regularization maps."""

    @pytest.mark.parametrize("product", ["sh", "st"])
    def test_identity_on_h0(self, product):
        """Test that admissible words are fixed."""
        assert reg(e(2, 3), product) == LinComb.of(e(2, 3))

    @pytest.mark.parametrize("product", ["sh", "st"])
    def test_e1_regularizes_to_zero(self, product):
        """Test reg(e1) = 0."""
        assert not reg(e(1), product)

    def test_shuffle_two_one(self):
        """Test reg_ш(e2 e1) = -2 e(1,2)."""
        assert reg(e(2, 1), "sh") == LinComb.from_index((1, 2), -2)

    def test_harmonic_two_one(self):
        """Test reg_*(e2 e1) = -e(1,2) - e(3)."""
        expected = -LinComb.from_index((1, 2)) - LinComb.from_index((3,))
        assert reg(e(2, 1), "st") == expected

    @pytest.mark.parametrize("index", [(3, 1), (2, 1, 1), (1, 2, 1)])
    def test_closed_form_agrees(self, index):
        """Test the closed form (-1)^m (w' ш e1^m) e0 against the recursion."""
        word = e(*index)
        m = word.trailing_e1()
        w_prime = Word(word[:len(word) - m - 1])
        assert reg(word, "sh") == reg_sh_closed_form(w_prime, m)

    @pytest.mark.parametrize("product", ["sh", "st"])
    @pytest.mark.parametrize("index", [(2, 1, 1), (1, 1), (3, 1, 2, 1)])
    def test_decomposition_reconstructs(self, product, index):
        """Test that Σ a_i ∙ e1^∙i gives back the input."""
        poly = decompose(e(*index), product)
        assert all(a.in_h0 for a in poly.coeffs)
        assert poly.reconstruct() == LinComb.of(e(*index))

    def test_requires_h1(self):
        """Test that words starting with e0 are rejected."""
        with pytest.raises(NotInH1Error):
            reg(Word((0, 1)), "sh")
