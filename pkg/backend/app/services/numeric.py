"""
High-precision real multiple zeta values.

Admissible values are computed by splitting the iterated integral at 1/2:

    ζ(w) = Σ_j Li_{a1...aj}(1/2) · Li_{τ(a_{j+1}...a_N)}(1/2),

where τ reverses a word and swaps e0 with e1.  Every factor is a multiple
polylogarithm at 1/2, a geometrically convergent nested sum, so the cutoff
needed for D digits is roughly 3.33·D terms.  Regularized values are
resolved symbolically by ``app.services.regularization`` first; only
admissible words ever reach the summation.
"""

import math
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from mpmath import mp, mpf

from app.core.config import settings
from app.core.exceptions import AccuracyError, CapabilityError, DomainError
from app.core.logging import app_logger
from app.services.indices import Index, binom, comma_plus_contractions, weak_compositions
from app.services.regularization import Product, reg
from app.services.words import LinComb, Word

GUARD_DIGITS = 10


def _digits(digits: Optional[int]) -> int:
    return settings.default_digits if digits is None else digits


@contextmanager
def precision(digits: Optional[int] = None) -> Iterator[int]:
    """Working precision for D requested digits (plus guard digits)."""
    dps = _digits(digits) + GUARD_DIGITS
    with mp.workdps(dps):
        yield dps


def to_mpf(q: Union[int, Fraction]) -> mpf:
    q = Fraction(q)
    return mpf(q.numerator) / q.denominator


def _cutoff(dps: int, depth: int) -> int:
    bits = math.ceil(dps * math.log2(10))
    terms = bits + 14 * depth + 10
    if terms > settings.max_series_terms:
        raise AccuracyError(
            f"{terms} terms needed for {dps} digits exceeds FMZV_MAX_SERIES_TERMS={settings.max_series_terms}")
    return terms


@lru_cache(maxsize=None)
def _li_half(parts: Tuple[int, ...], dps: int) -> mpf:
    """Li_{k1..kr}(1/2) = Σ_{0<n1<...<nr} 2^(-nr) / (n1^k1 ... nr^kr)."""
    if not parts:
        return mpf(1)
    with mp.workdps(dps):
        r = len(parts)
        cutoff = _cutoff(dps, r)
        # partial[j] = Σ_{n1<...<nj<=m} Π 1/n^k over the first j parts
        partial = [mpf(1)] + [mpf(0)] * (r - 1)
        half = mpf(1) / 2
        z = mpf(1)
        total = mpf(0)
        for m in range(1, cutoff + 1):
            z *= half
            total += z * partial[r - 1] / mpf(m) ** parts[r - 1]
            for j in range(r - 1, 0, -1):
                partial[j] += partial[j - 1] / mpf(m) ** parts[j - 1]
        return +total


def _dual_letters(word: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(1 - a for a in reversed(word))


@lru_cache(maxsize=None)
def _mzv_word(word: Tuple[int, ...], dps: int) -> mpf:
    with mp.workdps(dps):
        total = mpf(0)
        for j in range(len(word) + 1):
            left = Word(word[:j]).to_index() if j else Index()
            right = Word(_dual_letters(word[j:])).to_index() if j < len(word) else Index()
            total += _li_half(tuple(left), dps) * _li_half(tuple(right), dps)
        return +total


def mzv_word(word: Sequence[int], digits: Optional[int] = None) -> mpf:
    """
    ζ of an admissible word.

    Raises:
        DomainError: If the word is not in 𝔥⁰
        CapabilityError: If the weight exceeds FMZV_MAX_NUMERIC_WEIGHT
    """
    word = Word(word)
    if not word:
        return mpf(1)
    if not word.in_h0:
        raise DomainError(f"{word} is not an admissible word")
    if len(word) > settings.max_numeric_weight:
        raise CapabilityError(
            f"weight {len(word)} exceeds FMZV_MAX_NUMERIC_WEIGHT={settings.max_numeric_weight}")
    with precision(digits) as dps:
        return _mzv_word(tuple(word), dps)


def mzv(index: Sequence[int], digits: Optional[int] = None) -> mpf:
    """ζ(k) for an admissible index; ζ(∅) = 1."""
    index = Index(index)
    if not index.is_admissible:
        raise DomainError(f"index {index} is not admissible")
    return mzv_word(Word.from_index(index), digits)


def mzv_star(index: Sequence[int], digits: Optional[int] = None) -> mpf:
    """ζ*(k) through the comma/plus expansion."""
    index = Index(index)
    if not index.is_admissible:
        raise DomainError(f"index {index} is not admissible")
    with precision(digits):
        return mp.fsum(mzv(c, digits) for c in comma_plus_contractions(index))


def Z(x: LinComb, digits: Optional[int] = None) -> mpf:
    """The linear map e_k ↦ ζ(k) on 𝔥⁰."""
    x = LinComb.coerce(x)
    if not x.in_h0:
        raise DomainError(f"{x} is not in h0")
    with precision(digits):
        return mp.fsum(to_mpf(c) * mzv_word(word, digits) for word, c in x.items())


@lru_cache(maxsize=None)
def _mzv_reg(parts: Tuple[int, ...], product: Product, digits: int) -> mpf:
    regularized = reg(Word.from_index(parts), product)
    app_logger.debug(f"reg_{product.symbol}(e{Index(parts)}) has {len(regularized)} terms")
    return Z(regularized, digits)


def mzv_reg(index: Sequence[int], product: Union[Product, str], digits: Optional[int] = None) -> mpf:
    """The regularized value ζ^∙(k) = Z(reg_∙(e_k))."""
    return _mzv_reg(tuple(Index(index)), Product.parse(product), _digits(digits))


@dataclass
class TSeriesNum:
    """Σ c_l t^l mod t^n with real coefficients."""

    coefficients: List[mpf]

    @property
    def n(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, l: int) -> mpf:
        return self.coefficients[l]

    def __add__(self, other: "TSeriesNum") -> "TSeriesNum":
        return TSeriesNum([a + b for a, b in zip(self.coefficients, other.coefficients)])

    def __sub__(self, other: "TSeriesNum") -> "TSeriesNum":
        return TSeriesNum([a - b for a, b in zip(self.coefficients, other.coefficients)])

    def __mul__(self, other: "TSeriesNum") -> "TSeriesNum":
        n = min(self.n, other.n)
        out = [mpf(0)] * n
        for i in range(n):
            for j in range(n - i):
                out[i + j] += self.coefficients[i] * other.coefficients[j]
        return TSeriesNum(out)

    def max_abs(self) -> mpf:
        return max((abs(c) for c in self.coefficients), default=mpf(0))


def symmetric_hat(index: Sequence[int], product: Union[Product, str], n: int,
                  digits: Optional[int] = None) -> TSeriesNum:
    """
    The t-adic symmetric value ζ^∙_Ŝ(k) truncated below t^n:

        Σ_i (-1)^(k_{i+1}+...+k_r) ζ^∙(k1..ki) Σ_l Π binom(k_j+l_j-1, l_j) ζ^∙(k_r+l_r, ..., k_{i+1}+l_{i+1}) t^|l|.
    """
    if n < 1:
        raise DomainError(f"truncation level must be >= 1, got {n}")
    index = Index(index)
    product = Product.parse(product)
    r = index.depth
    with precision(digits):
        coefficients = [mpf(0)] * n
        for i in range(r + 1):
            head, tail = index[:i], index[i:]
            sign = -1 if sum(tail) % 2 else 1
            front = mzv_reg(head, product, digits)
            for level in range(n):
                inner = mpf(0)
                for extra in weak_compositions(level, len(tail)):
                    weight = 1
                    for kj, lj in zip(tail, extra):
                        weight *= binom(kj + lj - 1, lj)
                    shifted = Index(kj + lj for kj, lj in zip(tail, extra)).reversed()
                    inner += weight * mzv_reg(shifted, product, digits)
                coefficients[level] += sign * front * inner
        return TSeriesNum(coefficients)


def symmetric_hat_star(index: Sequence[int], product: Union[Product, str], n: int,
                       digits: Optional[int] = None) -> TSeriesNum:
    """ζ*_Ŝ(k) as the comma/plus sum of ζ^∙_Ŝ."""
    with precision(digits):
        total = TSeriesNum([mpf(0)] * n)
        for contracted in comma_plus_contractions(index):
            total = total + symmetric_hat(contracted, product, n, digits)
        return total


def zeta_twos(m: int, digits: Optional[int] = None) -> mpf:
    """ζ({2}^m), with ζ(∅) = 1."""
    return mzv(Index.repeat(2, m), digits)


def zagier_theorem1_exact(a: int, b: int, digits: Optional[int] = None) -> Tuple[mpf, mpf]:
    """ζ({2}^a,3,{2}^b) and its expansion in ζ({2}^j)ζ(odd)."""
    if a < 0 or b < 0:
        raise DomainError("a and b must be non-negative")
    with precision(digits):
        lhs = mzv(Index.repeat(2, a).concat((3,), Index.repeat(2, b)), digits)
        rhs = mpf(0)
        for r in range(1, a + b + 2):
            c = binom(2 * r, 2 * a + 2) - (1 - Fraction(1, 4**r)) * binom(2 * r, 2 * b + 1)
            rhs += 2 * (-1)**r * to_mpf(c) * zeta_twos(a + b - r + 1, digits) * mzv((2 * r + 1,), digits)
        return lhs, rhs


def zagier_theorem1_mod_zeta2(a: int, b: int) -> Fraction:
    """Rational q with ζ({2}^a,3,{2}^b) ≡ q·ζ(2a+2b+3) mod ζ(2)."""
    s = a + b + 1
    c = binom(2 * s, 2 * a + 2) - (1 - Fraction(1, 4**s)) * binom(2 * s, 2 * b + 1)
    return 2 * (-1)**s * Fraction(c)


def _check_zagier2(m: int, n: int) -> int:
    if m < 1 or n < 2:
        raise DomainError(f"need m >= 1 and n >= 2, got ({m}, {n})")
    if (m + n) % 2 == 0:
        raise DomainError(f"m+n must be odd, got {m + n}")
    return m + n


def _zeta_or_half(s: int, digits: Optional[int]) -> mpf:
    return mpf(-1) / 2 if s == 0 else mzv((s,), digits)


def zagier_theorem2_exact(m: int, n: int, digits: Optional[int] = None) -> Tuple[mpf, mpf]:
    """ζ(m,n) for odd m+n and its expansion in ζ(2s)ζ(k-2s), with ζ(0) = -1/2."""
    k = _check_zagier2(m, n)
    big_k = (k - 1) // 2
    with precision(digits):
        lhs = mzv((m, n), digits)
        rhs = mpf(0)
        for s in range(big_k):
            c = binom(k - 2 * s - 1, m - 1) + binom(k - 2 * s - 1, n - 1)
            c -= 1 if n == 2 * s else 0
            c += (-1)**m if s == 0 else 0
            rhs += c * _zeta_or_half(2 * s, digits) * mzv((k - 2 * s,), digits)
        return lhs, (-1)**m * rhs


def zagier_theorem2_mod_zeta2(m: int, n: int) -> Fraction:
    """Rational q with ζ(m,n) ≡ q·ζ(m+n) mod ζ(2)."""
    k = _check_zagier2(m, n)
    return Fraction((-1)**(m + 1) * (binom(k, m) + (-1)**m), 2)


def format_real(x: mpf, digits: Optional[int] = None) -> str:
    return mp.nstr(x, _digits(digits))


def clear_caches() -> None:
    _li_half.cache_clear()
    _mzv_word.cache_clear()
    _mzv_reg.cache_clear()
