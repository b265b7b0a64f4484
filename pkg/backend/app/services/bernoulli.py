"""
Exact Bernoulli numbers and the Bernoulli-quotient residues 𝔷.

Convention: B_1 = +1/2, so that

    1^e + 2^e + ... + N^e = 1/(e+1) Σ_j binom(e+1, j) B_j N^(e+1-j).
"""

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import List

from app.core.config import settings
from app.core.exceptions import CapabilityError, DomainError, SkipPrime
from app.core.logging import app_logger
from app.services.modular import Residue, reduce_fraction

_EVEN: List[Fraction] = [Fraction(1)]  # B_0, B_2, B_4, ...
_LOCK = threading.Lock()


def _extend_even_table(m: int) -> None:
    """Grow the table of even-index Bernoulli numbers up to B_2m."""
    with _LOCK:
        start = len(_EVEN)
        for step in range(start, m + 1):
            n = 2 * step
            s = Fraction(0)
            for j in range(step):
                s += comb(n + 1, 2 * j) * _EVEN[j]
            # the recurrence Σ binom(n+1, r) B_r = 0 is stated with B_1 = -1/2
            s += Fraction(-(n + 1), 2)
            _EVEN.append(-s / (n + 1))
        if m >= start:
            app_logger.debug(f"Bernoulli table extended to B_{2 * m}")


def bernoulli(j: int) -> Fraction:
    """
    The j-th Bernoulli number with B_1 = +1/2.

    Raises:
        DomainError: If j is negative
    """
    if j < 0:
        raise DomainError(f"Bernoulli index must be >= 0, got {j}")
    if j == 1:
        return Fraction(1, 2)
    if j % 2:
        return Fraction(0)
    if j // 2 >= len(_EVEN):
        _extend_even_table(j // 2)
    return _EVEN[j // 2]


def bernoulli_akiyama_tanigawa(n: int) -> List[Fraction]:
    """B_0..B_n by the Akiyama–Tanigawa algorithm; kept as an independent check."""
    if n < 0:
        raise DomainError("n must be >= 0")
    a = [Fraction(0)] * (n + 1)
    out: List[Fraction] = []
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    return out


def bernoulli_hat(j: int) -> Fraction:
    """B_j / j."""
    if j < 1:
        raise DomainError(f"B̂_j needs j >= 1, got {j}")
    return bernoulli(j) / j


@dataclass(frozen=True)
class ZfrakTerm:
    """𝔷(k+l)·p^l at a single prime, as a residue mod p^n."""

    p: int
    n: int
    k: int
    l: int
    residue: Residue

    @property
    def argument(self) -> int:
        return self.k + self.l


def zfrak_A(p: int, n: int, k: int, l: int) -> ZfrakTerm:
    """
    𝔷(k+l)·p^l mod p^n through small-index Bernoulli numbers:

        Σ_{j=1}^{n-l} (-1)^j binom(n-l, j) B̂_{j(p-1)-k-l+1} · p^l.

    Raises:
        DomainError: If l is outside 1..n-1 or a Bernoulli index is negative
        SkipPrime: If p-1 divides k+l-1 or p divides a denominator
    """
    if not (1 <= l <= n - 1):
        raise DomainError(f"shift l must satisfy 1 <= l <= n-1, got l={l}, n={n}")
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    if (k + l - 1) % (p - 1) == 0:
        raise SkipPrime(p, f"p-1 divides {k + l - 1}")
    total = Fraction(0)
    for j in range(1, n - l + 1):
        index = j * (p - 1) - k - l + 1
        if index < 0:
            raise DomainError(f"Bernoulli index {index} < 0 for p={p}, k={k}, l={l}")
        total += (-1)**j * comb(n - l, j) * bernoulli_hat(index)
    value = reduce_fraction(total * p**l, p, n)
    return ZfrakTerm(p=p, n=n, k=k, l=l, residue=Residue(value, p, n))


def zfrak_direct(p: int, n: int, k: int) -> Residue:
    """
    𝔷(k) mod p^n straight from its definition B_{p^(n-1)(p-1)-k+1}/(k-1+p^(n-1)).

    Raises:
        CapabilityError: For n > 2 or a Bernoulli index above the configured ceiling
        DomainError: If the Bernoulli index is negative
        SkipPrime: If p divides a denominator
    """
    if n not in (1, 2):
        raise CapabilityError(f"direct evaluation supports n <= 2, got {n}")
    index = p**(n - 1) * (p - 1) - k + 1
    if index < 0:
        raise DomainError(f"Bernoulli index {index} < 0 for p={p}, k={k}")
    if index > settings.bernoulli_max_index:
        raise CapabilityError(
            f"B_{index} exceeds the Bernoulli ceiling {settings.bernoulli_max_index}")
    q = bernoulli(index) / (k - 1 + p**(n - 1))
    return Residue(reduce_fraction(q, p, n), p, n)
