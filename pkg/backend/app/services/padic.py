"""
Multiple harmonic sums modulo p^n and their assembly over a prime window.

An ``AnValue`` is the desk-scale stand-in for an element of 𝓐ₙ: one residue
per prime of a finite window, together with the primes that had to be
skipped and why.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Sequence, Tuple, Union

import sympy

from app.core.exceptions import DomainError, SkipPrime
from app.services.indices import Index, binom, bounded_weak_compositions, comma_plus_contractions
from app.services.modular import Residue, reduce_fraction
from app.services.words import LinComb

Scalar = Union[int, Fraction]


def prime_window(low: int, high: int) -> Tuple[int, ...]:
    """All primes p with low <= p <= high."""
    return tuple(int(p) for p in sympy.primerange(low, high + 1))


def _check_prime(p: int) -> None:
    if not sympy.isprime(p):
        raise DomainError(f"{p} is not prime")


@lru_cache(maxsize=256)
def _inverses(p: int, n: int) -> Tuple[int, ...]:
    """1/m mod p^n for 0 < m < p (index 0 unused), by batched inversion."""
    modulus = p**n
    prefix = [1] * p
    for m in range(1, p):
        prefix[m] = prefix[m - 1] * m % modulus
    inv_all = pow(prefix[p - 1], -1, modulus)
    out = [0] * p
    for m in range(p - 1, 0, -1):
        out[m] = inv_all * prefix[m - 1] % modulus
        inv_all = inv_all * m % modulus
    return tuple(out)


@lru_cache(maxsize=2048)
def _inverse_powers(p: int, n: int, k: int) -> Tuple[int, ...]:
    modulus = p**n
    return tuple(pow(x, k, modulus) for x in _inverses(p, n))


@lru_cache(maxsize=8192)
def _prefix_vector(p: int, n: int, parts: Tuple[int, ...], star: bool) -> Tuple[int, ...]:
    """
    Entry m holds the sum over n1 < ... < nr = m (or <= for star) of the
    truncated summand, for the index ``parts``.
    """
    modulus = p**n
    weights = _inverse_powers(p, n, parts[-1])
    if len(parts) == 1:
        return weights
    previous = _prefix_vector(p, n, parts[:-1], star)
    out = [0] * p
    running = 0
    for m in range(1, p):
        if star:
            running = (running + previous[m]) % modulus
            out[m] = weights[m] * running % modulus
        else:
            out[m] = weights[m] * running % modulus
            running = (running + previous[m]) % modulus
    return tuple(out)


def _harmonic_sum(p: int, n: int, index: Sequence[int], star: bool) -> int:
    _check_prime(p)
    if n < 1:
        raise DomainError(f"level n must be >= 1, got {n}")
    index = Index(index)
    if not index:
        return 1
    return sum(_prefix_vector(p, n, tuple(index), star)) % p**n


def mhs(p: int, n: int, index: Sequence[int]) -> Residue:
    """Σ_{0<n1<...<nr<p} 1/(n1^k1...nr^kr) mod p^n; the empty index gives 1."""
    return Residue(_harmonic_sum(p, n, index, False), p, n)


def mhs_star(p: int, n: int, index: Sequence[int]) -> Residue:
    """Σ_{1<=n1<=...<=nr<=p-1} 1/(n1^k1...nr^kr) mod p^n."""
    return Residue(_harmonic_sum(p, n, index, True), p, n)


@dataclass
class AnValue:
    """Residues mod p^n over a finite prime window, plus reported skips."""

    n: int
    window: Tuple[int, ...]
    entries: Dict[int, int] = field(default_factory=dict)
    skipped: Dict[int, str] = field(default_factory=dict)

    @classmethod
    def build(cls, window: Iterable[int], n: int, fn: Callable[[int], Union[int, Residue]]) -> "AnValue":
        """Evaluate ``fn`` at each prime, recording SkipPrime as a skip."""
        value = cls(n=n, window=tuple(window))
        for p in value.window:
            try:
                result = fn(p)
            except SkipPrime as skip:
                value.skipped[p] = skip.reason
                continue
            if isinstance(result, Residue):
                result = result.value
            value.entries[p] = result % p**n
        return value

    @classmethod
    def zero(cls, window: Iterable[int], n: int) -> "AnValue":
        return cls.build(window, n, lambda p: 0)

    @classmethod
    def constant(cls, q: Scalar, window: Iterable[int], n: int) -> "AnValue":
        return cls.build(window, n, lambda p: reduce_fraction(q, p, n))

    def residue(self, p: int) -> Residue:
        return Residue(self.entries[p], p, self.n)

    @property
    def primes(self) -> List[int]:
        return sorted(self.entries)

    def _combine(self, other: "AnValue", op: Callable[[int, int], int]) -> "AnValue":
        if self.n != other.n:
            raise DomainError(f"level mismatch: {self.n} vs {other.n}")
        shared = set(other.window)
        window = tuple(p for p in self.window if p in shared)
        skipped = {p: r for p, r in {**other.skipped, **self.skipped}.items() if p in window}
        entries = {
            p: op(self.entries[p], other.entries[p]) % p**self.n
            for p in window
            if p in self.entries and p in other.entries
        }
        return AnValue(n=self.n, window=window, entries=entries, skipped=skipped)

    def _scale(self, q: Scalar) -> "AnValue":
        out = AnValue(n=self.n, window=self.window, skipped=dict(self.skipped))
        for p, v in self.entries.items():
            try:
                out.entries[p] = v * reduce_fraction(q, p, self.n) % p**self.n
            except SkipPrime as skip:
                out.skipped[p] = skip.reason
        return out

    def __add__(self, other):
        if isinstance(other, AnValue):
            return self._combine(other, lambda a, b: a + b)
        return self + AnValue.constant(other, self.window, self.n)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, AnValue):
            return self._combine(other, lambda a, b: a - b)
        return self - AnValue.constant(other, self.window, self.n)

    def __neg__(self):
        return self._scale(-1)

    def __mul__(self, other):
        if isinstance(other, AnValue):
            return self._combine(other, lambda a, b: a * b)
        return self._scale(other)

    __rmul__ = __mul__

    def times_p_power(self, l: int) -> "AnValue":
        """Multiply by the element (p^l mod p^n)_p."""
        out = AnValue(n=self.n, window=self.window, skipped=dict(self.skipped))
        out.entries = {p: v * p**l % p**self.n for p, v in self.entries.items()}
        return out

    def compare(self, other: "AnValue") -> Tuple[List[int], List[int]]:
        """
        Compare on primes present in both values.

        Returns:
            (compared primes, primes where the residues differ)
        """
        compared = sorted(set(self.entries) & set(other.entries))
        mismatched = [p for p in compared if self.entries[p] != other.entries[p]]
        return compared, mismatched

    def all_skipped(self, other: "AnValue" = None) -> Dict[int, str]:
        merged = dict(self.skipped)
        if other is not None:
            for p, reason in other.skipped.items():
                merged.setdefault(p, reason)
        return dict(sorted(merged.items()))

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.entries.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, AnValue):
            return NotImplemented
        compared, mismatched = self.compare(other)
        return self.n == other.n and not mismatched

    __hash__ = None


def zetaA(index: Sequence[int], window: Iterable[int], n: int) -> AnValue:
    """ζ_𝓐ₙ(k) over the window."""
    index = Index(index)
    return AnValue.build(window, n, lambda p: _harmonic_sum(p, n, index, False))


def zetaA_star(index: Sequence[int], window: Iterable[int], n: int) -> AnValue:
    """ζ*_𝓐ₙ(k) over the window."""
    index = Index(index)
    return AnValue.build(window, n, lambda p: _harmonic_sum(p, n, index, True))


def _linear(x: LinComb, window: Iterable[int], n: int, star: bool) -> AnValue:
    x = LinComb.coerce(x)
    if not x.in_h1:
        raise DomainError(f"{x} is not in h1")
    terms = [(word.to_index(), c) for word, c in x.items()]

    def at_prime(p: int) -> int:
        total = 0
        for index, c in terms:
            total += reduce_fraction(c, p, n) * _harmonic_sum(p, n, index, star)
        return total

    return AnValue.build(window, n, at_prime)


def Z_A(x: LinComb, window: Iterable[int], n: int) -> AnValue:
    """The linear map e_k ↦ ζ_𝓐ₙ(k) on 𝔥¹."""
    return _linear(x, window, n, star=False)


def Z_A_star(x: LinComb, window: Iterable[int], n: int) -> AnValue:
    """The linear map e_k ↦ ζ*_𝓐ₙ(k) on 𝔥¹."""
    return _linear(x, window, n, star=True)


def star_by_contractions(index: Sequence[int], window: Iterable[int], n: int) -> AnValue:
    """Σ over comma/plus contractions of ζ_𝓐ₙ."""
    window = tuple(window)
    total = AnValue.zero(window, n)
    for contracted in comma_plus_contractions(index):
        total = total + zetaA(contracted, window, n)
    return total


def shuffle_rhs_A(k: Sequence[int], l: Sequence[int], window: Iterable[int], n: int) -> AnValue:
    """
    The right-hand side of the shuffle relation with x = p:

        (-1)^wt(l) Σ_{l', wt(l') <= n-1} Π binom(l_j+l'_j-1, l'_j) ζ(k, reverse(l+l')) p^wt(l').

    Raises:
        DomainError: If ``l`` is empty
    """
    k, l = Index(k), Index(l)
    if not l:
        raise DomainError("the shuffle relation needs a nonempty second index")
    sign = -1 if l.weight % 2 else 1
    shifts = []
    for extra in bounded_weak_compositions(n - 1, l.depth):
        coefficient = 1
        for lj, ej in zip(l, extra):
            coefficient *= binom(lj + ej - 1, ej)
        tail = Index(lj + ej for lj, ej in zip(l, extra)).reversed()
        shifts.append((coefficient, sum(extra), k.concat(tail)))

    def at_prime(p: int) -> int:
        total = 0
        for coefficient, power, index in shifts:
            total += coefficient * _harmonic_sum(p, n, index, False) * p**power
        return sign * total

    return AnValue.build(window, n, at_prime)
