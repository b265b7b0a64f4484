"""
Unit tests for indices, binomials and the combinatorial enumerations.
"""

from fractions import Fraction
from math import comb

import pytest

from app.core.exceptions import DomainError
from app.services.indices import (
    Index,
    binom,
    binom0,
    bounded_weak_compositions,
    comma_plus_contractions,
    enumerate_Ikr,
    enumerate_Ikri,
    enumerate_set_partitions,
    falling,
    weak_compositions,
)


class TestIndex:
    """The Index type."""

    def test_parse(self):
        """Test the accepted textual forms."""
        assert Index.parse("2,3") == (2, 3)
        assert Index.parse("(1,2)") == (1, 2)
        assert Index.parse("") == ()
        assert Index.parse("∅") == ()

    def test_parse_rejects_garbage(self):
        """Test that non-integer parts are a domain error."""
        with pytest.raises(DomainError):
            Index.parse("2,x")

    def test_rejects_non_positive_parts(self):
        """Test that parts must be positive."""
        with pytest.raises(DomainError):
            Index((2, 0))

    def test_weight_depth_admissibility(self):
        """Test weight, depth and the last-part admissibility rule."""
        index = Index((1, 2, 3))
        assert index.weight == 6
        assert index.depth == 3
        assert index.is_admissible
        assert not Index((3, 1)).is_admissible
        assert Index().is_admissible

    def test_concat_and_str(self):
        """Test concatenation and rendering."""
        assert str(Index.repeat(2, 2).concat((3,))) == "(2,2,3)"
        assert str(Index()) == "∅"
        assert Index((1,)) + (2,) == Index((1, 2))
        assert Index((1, 2)).reversed() == (2, 1)


class TestBinomials:
    """Generalized binomial coefficients."""

    def test_negative_upper(self):
        """Test binom(-n, k) = (-1)^k binom(n+k-1, k)."""
        assert binom(-1, 3) == -1
        assert binom(-2, 2) == 3

    def test_rational_upper(self):
        """Test a rational upper argument."""
        assert binom(Fraction(1, 2), 2) == Fraction(-1, 8)

    def test_negative_lower(self):
        """Test that binom refuses and binom0 returns 0 for k < 0."""
        with pytest.raises(DomainError):
            binom(5, -1)
        assert binom0(5, -1) == 0

    def test_falling(self):
        """Test the falling factorial."""
        assert falling(5, 2) == 20
        assert falling(3, 0) == 1


class TestEnumerations:
    """I(k,r), I(k,r,i), set partitions and compositions."""

    def test_ikr_order_and_size(self):
        """Test lexicographic order and the count binom(k-1, r-1)."""
        assert enumerate_Ikr(4, 2) == [(1, 3), (2, 2), (3, 1)]
        assert len(enumerate_Ikr(8, 3)) == comb(7, 2)

    def test_ikr_bounds(self):
        """Test that r must lie in 1..k."""
        with pytest.raises(DomainError):
            enumerate_Ikr(3, 4)

    def test_ikri(self):
        """Test the filter on the i-th part."""
        assert enumerate_Ikri(4, 2, 1) == [(2, 2), (3, 1)]
        assert enumerate_Ikri(4, 2, 2) == [(1, 3), (2, 2)]

    @pytest.mark.parametrize("r,bell", [(1, 1), (2, 2), (3, 5), (4, 15), (5, 52)])
    def test_set_partitions_are_bell_many(self, r, bell):
        """Test that each set partition appears exactly once."""
        partitions = enumerate_set_partitions(r)
        assert len(partitions) == bell
        assert len({p.blocks for p in partitions}) == bell

    def test_set_partition_weights(self):
        """Test c(P) and block sums."""
        whole = [p for p in enumerate_set_partitions(3) if p.size == 1][0]
        assert whole.c() == 2
        assert whole.block_sums((1, 2, 3)) == (6,)

    def test_comma_plus_contractions(self):
        """Test the 2^(r-1) contractions."""
        assert comma_plus_contractions((1, 2, 3)) == [(1, 2, 3), (1, 5), (3, 3), (6,)]
        assert comma_plus_contractions(()) == [()]

    def test_weak_compositions(self):
        """Test weak compositions and their bounded union."""
        assert list(weak_compositions(2, 2)) == [(0, 2), (1, 1), (2, 0)]
        assert list(weak_compositions(0, 0)) == [()]
        assert list(weak_compositions(1, 0)) == []
        assert len(list(bounded_weak_compositions(2, 2))) == 1 + 2 + 3
