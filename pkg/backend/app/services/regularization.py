"""
Regularization of words in 𝔥¹ with respect to the harmonic or shuffle product.

Every a in 𝔥¹ is uniquely a0 + a1∙e1 + a2∙e1^∙2 + ... with each ai in 𝔥⁰;
``reg`` returns a0.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple, Union

from app.core.exceptions import DomainError, NotInH1Error
from app.services.words import E0, E1, LinComb, Word, harmonic, power, shuffle


class Product(str, Enum):
    HARMONIC = "harmonic"
    SHUFFLE = "shuffle"

    @classmethod
    def parse(cls, text: Union[str, "Product"]) -> "Product":
        if isinstance(text, Product):
            return text
        key = text.strip().lower()
        if key in ("sh", "ш", "shuffle"):
            return cls.SHUFFLE
        if key in ("st", "*", "stuffle", "harmonic"):
            return cls.HARMONIC
        raise DomainError(f"unknown product {text!r}; use 'sh' or 'st'")

    @property
    def multiply(self):
        return shuffle if self is Product.SHUFFLE else harmonic

    @property
    def symbol(self) -> str:
        return "ш" if self is Product.SHUFFLE else "*"


@dataclass
class PolyInE1:
    """Coefficients a0, a1, ... of an element written as a polynomial in e1."""

    product: Product
    coeffs: List[LinComb]

    def reconstruct(self) -> LinComb:
        """Σ a_i ∙ e1^∙i with the fixed product ∙."""
        multiply = self.product.multiply
        out = LinComb()
        for i, a in enumerate(self.coeffs):
            if a:
                out = out + multiply(a, power(Word((E1,)), i, multiply))
        return out

    @property
    def constant(self) -> LinComb:
        return self.coeffs[0] if self.coeffs else LinComb()


def _combine(target: List[LinComb], source: Tuple[LinComb, ...], scale: Fraction, shift: int = 0) -> None:
    while len(target) < len(source) + shift:
        target.append(LinComb())
    for i, a in enumerate(source):
        if a:
            target[i + shift] = target[i + shift] + a * scale


@lru_cache(maxsize=None)
def _decompose_word(word: Word, product: Product) -> Tuple[LinComb, ...]:
    m = word.trailing_e1()
    if m == 0:
        return (LinComb.of(word),)
    prefix = Word(word[:-1])
    expanded = product.multiply(prefix, Word((E1,)))
    c = expanded.coefficient(word)
    lower = expanded - LinComb.of(word, c)
    # word = (prefix ∙ e1 - lower) / c; prefix ∙ e1 shifts the prefix's coefficients up by one
    coeffs: List[LinComb] = [LinComb()]
    _combine(coeffs, _decompose_word(prefix, product), Fraction(1, 1) / c, shift=1)
    for u, cu in lower.items():
        _combine(coeffs, _decompose_word(u, product), -cu / c)
    while len(coeffs) > 1 and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


def decompose(x: Union[LinComb, Word], product: Union[Product, str]) -> PolyInE1:
    """
    Write an element of 𝔥¹ as a polynomial in e1 over 𝔥⁰.

    Raises:
        NotInH1Error: If some word does not start with e1
    """
    product = Product.parse(product)
    x = LinComb.coerce(x)
    if not x.in_h1:
        raise NotInH1Error(f"{x} is not in h1")
    coeffs: List[LinComb] = []
    for word, c in x.items():
        _combine(coeffs, _decompose_word(word, product), c)
    while len(coeffs) > 1 and not coeffs[-1]:
        coeffs.pop()
    return PolyInE1(product=product, coeffs=coeffs or [LinComb()])


def reg(x: Union[LinComb, Word], product: Union[Product, str]) -> LinComb:
    """The regularized part a0 of ``x``; the identity on 𝔥⁰."""
    return decompose(x, product).constant


def reg_sh_closed_form(w_prime: Word, m: int) -> LinComb:
    """
    reg_ш(w' e0 e1^m) = (-1)^m (w' ш e1^m) e0.

    Raises:
        DomainError: If w' e0 is not admissible or m < 0
    """
    w_prime = Word(w_prime)
    if m < 0:
        raise DomainError(f"m must be non-negative, got {m}")
    if not (w_prime + Word((E0,))).in_h0 or not w_prime:
        raise DomainError(f"{w_prime}e0 is not an admissible word")
    sign = -1 if m % 2 else 1
    return shuffle(w_prime, Word((E1,) * m)).concat_right(Word((E0,))) * sign


def decomposition_cache_size() -> int:
    return _decompose_word.cache_info().currsize
