"""
Words in e0, e1 and the three products on them.

Letters are encoded as integers: 0 for e0 and 1 for e1, so that
e_k = e1 e0^(k-1) is ``(1, 0, ..., 0)``.  Linear combinations carry exact
rational coefficients.
"""

import re
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

from app.core.exceptions import DomainError, NotInH1Error
from app.services.indices import Index

E0, E1 = 0, 1

_LETTER = re.compile(r"e([01])")


class Word(tuple):
    """A word over {e0, e1}; ``Word()`` is the empty word 1."""

    __slots__ = ()

    def __new__(cls, letters: Iterable[int] = ()):
        letters = tuple(int(a) for a in letters)
        if any(a not in (E0, E1) for a in letters):
            raise DomainError(f"letters must be 0 (e0) or 1 (e1), got {letters}")
        return super().__new__(cls, letters)

    @classmethod
    def from_index(cls, index: Sequence[int]) -> "Word":
        """e_k for an index k."""
        letters = []
        for k in Index(index):
            letters.append(E1)
            letters.extend([E0] * (k - 1))
        return cls(letters)

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse ``"e1e0e0"`` (or ``"1"`` for the empty word)."""
        body = text.replace(" ", "")
        if body in ("", "1"):
            return cls()
        letters = _LETTER.findall(body)
        if "".join(f"e{a}" for a in letters) != body:
            raise DomainError(f"cannot parse word {text!r}")
        return cls(int(a) for a in letters)

    @property
    def in_h1(self) -> bool:
        return not self or self[0] == E1

    @property
    def in_h0(self) -> bool:
        return not self or (self[0] == E1 and self[-1] == E0)

    def trailing_e1(self) -> int:
        """Length of the final run of e1 letters."""
        run = 0
        for a in reversed(self):
            if a != E1:
                break
            run += 1
        return run

    def to_index(self) -> Index:
        if not self.in_h1:
            raise NotInH1Error(f"word {self} does not start with e1")
        parts = []
        for a in self:
            if a == E1:
                parts.append(1)
            else:
                parts[-1] += 1
        return Index(parts)

    def dual(self) -> "Word":
        """Reverse the word and swap e0 with e1."""
        if not self or not self.in_h0:
            raise NotInH1Error(f"duality needs a nonempty admissible word, got {self}")
        return Word(1 - a for a in reversed(self))

    def __add__(self, other):
        return Word(tuple(self) + tuple(other))

    def __str__(self) -> str:
        if not self:
            return "1"
        return "".join(f"e{a}" for a in self)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


def word_from_index(index: Sequence[int]) -> Word:
    return Word.from_index(index)


def index_from_word(word: Sequence[int]) -> Index:
    return Word(word).to_index()


def _sort_key(word: Word) -> Tuple[int, Tuple[int, ...]]:
    return len(word), tuple(word)


def _index_sort_key(word: Word):
    index = word.to_index()
    return index.weight, -index.depth, tuple(index)


def _format_coefficient(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class LinComb:
    """A finite Q-linear combination of words; zero coefficients are never stored."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Sequence[int], Union[int, Fraction]]] = None):
        self._terms: Dict[Word, Fraction] = {}
        for word, c in (terms or {}).items():
            self._add_term(Word(word), Fraction(c))

    def _add_term(self, word: Word, c: Fraction) -> None:
        if not c:
            return
        total = self._terms.get(word, 0) + c
        if total:
            self._terms[word] = total
        else:
            self._terms.pop(word, None)

    @classmethod
    def of(cls, word: Union[Word, Sequence[int]], coefficient: Union[int, Fraction] = 1) -> "LinComb":
        return cls({Word(word): coefficient})

    @classmethod
    def from_index(cls, index: Sequence[int], coefficient: Union[int, Fraction] = 1) -> "LinComb":
        return cls({Word.from_index(index): coefficient})

    @classmethod
    def one(cls) -> "LinComb":
        return cls({Word(): 1})

    @classmethod
    def zero(cls) -> "LinComb":
        return cls()

    @classmethod
    def coerce(cls, value: Union["LinComb", Word, Sequence[int]]) -> "LinComb":
        if isinstance(value, LinComb):
            return value
        return cls.of(value)

    def items(self) -> Iterator[Tuple[Word, Fraction]]:
        """Terms in canonical order: length, then lexicographic with e0 < e1."""
        for word in sorted(self._terms, key=_sort_key):
            yield word, self._terms[word]

    @property
    def words(self) -> Tuple[Word, ...]:
        return tuple(word for word, _ in self.items())

    def coefficient(self, word: Sequence[int]) -> Fraction:
        return self._terms.get(Word(word), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: "LinComb") -> "LinComb":
        out = LinComb(self._terms)
        for word, c in LinComb.coerce(other)._terms.items():
            out._add_term(word, c)
        return out

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + (-LinComb.coerce(other))

    def __neg__(self) -> "LinComb":
        return LinComb({word: -c for word, c in self._terms.items()})

    def __mul__(self, scalar: Union[int, Fraction]) -> "LinComb":
        if isinstance(scalar, (LinComb, Word)):
            raise TypeError("use harmonic/shuffle/muneta_shuffle to multiply words")
        scalar = Fraction(scalar)
        return LinComb({word: c * scalar for word, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, (Word, tuple)):
            other = LinComb.of(other)
        if not isinstance(other, LinComb):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def concat_right(self, word: Sequence[int]) -> "LinComb":
        """Append ``word`` to every term."""
        return LinComb({w + Word(word): c for w, c in self._terms.items()})

    def concat_left(self, word: Sequence[int]) -> "LinComb":
        """Prepend ``word`` to every term."""
        return LinComb({Word(word) + w: c for w, c in self._terms.items()})

    @property
    def in_h1(self) -> bool:
        return all(word.in_h1 for word in self._terms)

    @property
    def in_h0(self) -> bool:
        return all(word.in_h0 for word in self._terms)

    @staticmethod
    def _join(terms, show: Callable[[Word], str], separator: str) -> str:
        if not terms:
            return "0"
        out = ""
        for position, (word, c) in enumerate(terms):
            magnitude = abs(c)
            if not word:
                text = _format_coefficient(magnitude)
            elif magnitude == 1:
                text = show(word)
            else:
                text = f"{_format_coefficient(magnitude)}·{show(word)}"
            if position == 0:
                out = f"−{text}" if c < 0 else text
            else:
                sign = "−" if c < 0 else "+"
                out += separator.format(sign=sign) + text
        return out

    def render(self) -> str:
        """Plain-text form such as ``3/2·e1e0 − e1e1e0``."""
        return self._join(list(self.items()), str, " {sign} ")

    def render_indices(self) -> str:
        """Index form such as ``e(2,3)+e(3,2)+e(5)`` for elements of 𝔥¹."""
        if not self.in_h1:
            return self.render()
        terms = [(word, self._terms[word]) for word in sorted(self._terms, key=_index_sort_key)]
        return self._join(terms, lambda w: "e" + str(w.to_index()), "{sign}")

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"LinComb({self.render()!r})"


ProductTable = Tuple[Tuple[Tuple[int, ...], int], ...]


def _merge(out: Dict[Tuple[int, ...], int], head: Tuple[int, ...], table: ProductTable) -> None:
    for tail, c in table:
        key = head + tail
        out[key] = out.get(key, 0) + c


@lru_cache(maxsize=None)
def _stuffle(a: Tuple[int, ...], b: Tuple[int, ...]) -> ProductTable:
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    out: Dict[Tuple[int, ...], int] = {}
    _merge(out, a[:1], _stuffle(a[1:], b))
    _merge(out, b[:1], _stuffle(a, b[1:]))
    _merge(out, (a[0] + b[0],), _stuffle(a[1:], b[1:]))
    return tuple(out.items())


@lru_cache(maxsize=None)
def _muneta(a: Tuple[int, ...], b: Tuple[int, ...]) -> ProductTable:
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    out: Dict[Tuple[int, ...], int] = {}
    _merge(out, a[:1], _muneta(a[1:], b))
    _merge(out, b[:1], _muneta(a, b[1:]))
    return tuple(out.items())


@lru_cache(maxsize=None)
def _shuffle(u: Tuple[int, ...], v: Tuple[int, ...]) -> ProductTable:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    out: Dict[Tuple[int, ...], int] = {}
    _merge(out, u[:1], _shuffle(u[1:], v))
    _merge(out, v[:1], _shuffle(u, v[1:]))
    return tuple(out.items())


Operand = Union[LinComb, Word, Sequence[int]]


def _bilinear(x: Operand, y: Operand, on_words: Callable[[Word, Word], ProductTable],
              to_word: Callable[[Tuple[int, ...]], Word]) -> LinComb:
    x, y = LinComb.coerce(x), LinComb.coerce(y)
    out = LinComb()
    for u, cu in x.items():
        for v, cv in y.items():
            for key, c in on_words(u, v):
                out._add_term(to_word(key), cu * cv * c)
    return out


def _require_h1(*operands: LinComb) -> None:
    for operand in operands:
        if not operand.in_h1:
            raise NotInH1Error(f"operand {operand} is not in h1")


def harmonic(x: Operand, y: Operand) -> LinComb:
    """The harmonic (stuffle) product on 𝔥¹."""
    x, y = LinComb.coerce(x), LinComb.coerce(y)
    _require_h1(x, y)
    return _bilinear(x, y, lambda u, v: _stuffle(tuple(u.to_index()), tuple(v.to_index())),
                     Word.from_index)


def muneta_shuffle(x: Operand, y: Operand) -> LinComb:
    """Block interleaving of e_k letters without the stuffing term."""
    x, y = LinComb.coerce(x), LinComb.coerce(y)
    _require_h1(x, y)
    return _bilinear(x, y, lambda u, v: _muneta(tuple(u.to_index()), tuple(v.to_index())),
                     Word.from_index)


def shuffle(x: Operand, y: Operand) -> LinComb:
    """The letter-level shuffle product on all words."""
    return _bilinear(x, y, lambda u, v: _shuffle(tuple(u), tuple(v)), Word)


PRODUCTS = {
    "harmonic": harmonic,
    "shuffle": shuffle,
    "muneta": muneta_shuffle,
}


def power(x: Operand, m: int, product: Callable[[Operand, Operand], LinComb]) -> LinComb:
    """``x ∙ x ∙ ... ∙ x`` (m factors), with the empty product equal to 1."""
    if m < 0:
        raise DomainError(f"power must be non-negative, got {m}")
    out = LinComb.one()
    x = LinComb.coerce(x)
    for _ in range(m):
        out = product(out, x)
    return out


def cache_sizes() -> Dict[str, int]:
    """Current memo sizes of the three product tables."""
    return {
        "harmonic": _stuffle.cache_info().currsize,
        "shuffle": _shuffle.cache_info().currsize,
        "muneta": _muneta.cache_info().currsize,
    }
