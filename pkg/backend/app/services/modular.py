"""
Residues in Z/p^nZ.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from app.core.exceptions import DomainError, SkipPrime

Scalar = Union[int, Fraction]


def reduce_fraction(q: Scalar, p: int, n: int) -> int:
    """
    Reduce a rational number modulo p^n.

    Raises:
        SkipPrime: If p divides the reduced denominator
    """
    q = Fraction(q)
    modulus = p**n
    if q.denominator % p == 0:
        raise SkipPrime(p, f"p divides the denominator {q.denominator}")
    return q.numerator * pow(q.denominator, -1, modulus) % modulus


@dataclass(frozen=True)
class Residue:
    """An element of Z/p^nZ."""

    value: int
    p: int
    n: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.modulus)

    @classmethod
    def from_fraction(cls, q: Scalar, p: int, n: int) -> "Residue":
        return cls(reduce_fraction(q, p, n), p, n)

    @property
    def modulus(self) -> int:
        return self.p**self.n

    def _other(self, other) -> int:
        if isinstance(other, Residue):
            if (other.p, other.n) != (self.p, self.n):
                raise DomainError(f"modulus mismatch: {self.p}^{self.n} vs {other.p}^{other.n}")
            return other.value
        if isinstance(other, Fraction):
            return reduce_fraction(other, self.p, self.n)
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        value = self._other(other)
        if value is NotImplemented:
            return value
        return Residue(self.value + value, self.p, self.n)

    __radd__ = __add__

    def __sub__(self, other):
        value = self._other(other)
        if value is NotImplemented:
            return value
        return Residue(self.value - value, self.p, self.n)

    def __rsub__(self, other):
        value = self._other(other)
        if value is NotImplemented:
            return value
        return Residue(value - self.value, self.p, self.n)

    def __mul__(self, other):
        value = self._other(other)
        if value is NotImplemented:
            return value
        return Residue(self.value * value, self.p, self.n)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.p, self.n)

    def inverse(self) -> "Residue":
        if self.value % self.p == 0:
            raise DomainError(f"{self} is not invertible")
        return Residue(pow(self.value, -1, self.modulus), self.p, self.n)

    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self) -> str:
        return f"{self.value} mod {self.p}^{self.n}"
