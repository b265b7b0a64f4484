"""
Exact binomial sums behind the {1}^a,2,{1}^b evaluation modulo x^2.

The constant C splits into six sums I..VI; each is summed term by term
and compared against its closed form.  Empty sums (l+m = b-1 with b = 0,
m+n = a-1 with a = 0) are 0.
"""

from dataclasses import asdict, dataclass
from fractions import Fraction
from math import factorial, prod
from typing import Dict, Iterator, List, Tuple, Union

from app.core.exceptions import DomainError
from app.services.indices import binom
from app.services.theorems import b_coefficient, b_star_coefficient, ind_step, ind_step_terms

Rational = Union[int, Fraction]

PARTS = ("I", "II", "III", "IV", "V", "VI")


@dataclass(frozen=True)
class CDecomposition:
    a: int
    b: int
    I: Fraction
    II: Fraction
    III: Fraction
    IV: Fraction
    V: Fraction
    VI: Fraction
    C: Fraction

    def parts(self) -> Dict[str, Fraction]:
        return {name: getattr(self, name) for name in PARTS}

    def as_dict(self) -> Dict[str, Union[int, Fraction]]:
        return asdict(self)


def _pairs(total: int) -> Iterator[Tuple[int, int]]:
    """(x, y) with x + y = total, x, y >= 0; nothing when total < 0."""
    for x in range(total + 1):
        yield x, total - x


def _check(a: int, b: int) -> None:
    if a < 0 or b < 0:
        raise DomainError(f"a and b must be non-negative, got ({a}, {b})")


def c_direct(a: int, b: int) -> Fraction:
    """C exactly as the triple sum that expresses B = C·ζ(a+b+3)/2."""
    _check(a, b)
    big = a + b + 3
    total = Fraction(0)
    for l, m in _pairs(b - 1):
        for r, s in _pairs(a):
            total += (-1)**a * binom(r + l + 1, r) * binom(s + m + 1, s) * (-1)**(s + m + 1) \
                * (binom(big, s + m + 2) + (-1)**(s + m))
    for r, s in _pairs(a):
        total += 2 * (-1)**a * binom(r + b + 1, r) * (-1)**s * (binom(big, s + 1) + (-1)**(s + 1))
    for m, n in _pairs(a - 1):
        for r, s in _pairs(n):
            total += (-1)**n * binom(r + b + 1, r) * binom(s + m + 1, s) * (-1)**(s + m + 1) \
                * (binom(big, s + m + 2) + (-1)**(s + m))
    return total


def compute_C_bruteforce(a: int, b: int) -> CDecomposition:
    """
    Sum I..VI term by term; C is their sum.

    Raises:
        DomainError: If a or b is negative
    """
    _check(a, b)
    big = a + b + 3
    parts = dict.fromkeys(PARTS, Fraction(0))
    for l, m in _pairs(b - 1):
        for r, s in _pairs(a):
            weight = binom(r + l + 1, r) * binom(s + m + 1, s)
            parts["I"] += (-1)**(a + 1) * (-1)**(s + m) * weight * binom(big, s + m + 2)
            parts["II"] += (-1)**(a + 1) * weight
    for r, s in _pairs(a):
        parts["III"] += 2 * (-1)**a * (-1)**s * binom(r + b + 1, r) * binom(big, s + 1)
        parts["IV"] += 2 * (-1)**(a + 1) * binom(r + b + 1, r)
    for m, n in _pairs(a - 1):
        for r, s in _pairs(n):
            weight = binom(r + b + 1, r) * binom(s + m + 1, s)
            parts["V"] += (-1)**n * (-1)**(s + m + 1) * weight * binom(big, s + m + 2)
            parts["VI"] += (-1)**(n + 1) * weight
    return CDecomposition(a=a, b=b, C=sum(parts.values(), Fraction(0)), **parts)


def closed_forms(a: int, b: int) -> CDecomposition:
    """
    The closed forms of I..VI.  I = 0 needs a+b even; for odd a+b the
    brute-force value of I is returned unchanged.
    """
    _check(a, b)
    sign = (-1)**a
    parts = {
        "I": Fraction(0) if (a + b) % 2 == 0 else compute_C_bruteforce(a, b).I,
        "II": Fraction(-sign * b * binom(a + b + 2, a)),
        "III": Fraction(2 + 2 * sign * binom(a + b + 2, a + 1)),
        "IV": Fraction(-2 * sign * binom(a + b + 2, a)),
        "V": Fraction(sign * a * binom(a + b + 2, a + 1) + sign * binom(a + b + 1, a) - 1),
        "VI": Fraction(sign * binom(a + b + 1, a - 1)) if a >= 1 else Fraction(0),
    }
    return CDecomposition(a=a, b=b, C=sum(parts.values(), Fraction(0)), **parts)


def expected_C(a: int, b: int) -> Fraction:
    """1 + (-1)^a binom(a+b+3, b+2)."""
    return Fraction(1 + (-1)**a * binom(a + b + 3, b + 2))


def pfd_identity(n: int, x: Rational) -> Tuple[Fraction, Fraction]:
    """
    Σ_{k=0}^{n} (-1)^k binom(n,k)/(x+k) and n!/(x(x+1)...(x+n)).

    Raises:
        DomainError: If n < 0 or x is one of 0, -1, ..., -n
    """
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    x = Fraction(x)
    if x.denominator == 1 and -n <= x <= 0:
        raise DomainError(f"x = {x} is a pole for n = {n}")
    lhs = sum((Fraction((-1)**k * binom(n, k)) / (x + k) for k in range(n + 1)), Fraction(0))
    rhs = Fraction(factorial(n)) / prod((x + j for j in range(n + 1)), start=Fraction(1))
    return lhs, rhs


def pfd_samples(count: int = 50) -> List[Tuple[int, Fraction]]:
    """A fixed list of (n, x) pairs away from the poles."""
    samples = []
    for j in range(count):
        n = j % 10
        x = Fraction(2 * j + 1, j % 7 + 2) * (-1 if j % 3 == 0 else 1)
        if x.denominator == 1 and -n <= x <= 0:
            x += Fraction(1, 2)
        samples.append((n, x))
    return samples


def appendix_row(a: int, b: int) -> Dict[str, Union[int, str, Fraction]]:
    """
    One row of the appendix table.  Status is "pass" when the six sums match
    the triple sum and their closed forms, and, for even a+b, C matches
    1 + (-1)^a binom(a+b+3, b+2).
    """
    brute = compute_C_bruteforce(a, b)
    closed = closed_forms(a, b)
    expected = expected_C(a, b)
    direct = c_direct(a, b)
    ok = brute.C == direct and all(brute.parts()[name] == closed.parts()[name] for name in PARTS)
    if (a + b) % 2 == 0:
        ok = ok and brute.C == closed.C == expected
    row: Dict[str, Union[int, str, Fraction]] = {"a": a, "b": b}
    row.update(brute.parts())
    row.update({"C_bruteforce": brute.C, "C_direct": direct, "C_closed": closed.C, "C_expected": expected,
                "status": "pass" if ok else "fail"})
    return row


def appendix_grid(amax: int) -> List[Dict[str, Union[int, str, Fraction]]]:
    """Rows for every (a, b) with a+b <= amax and a+b even."""
    return [appendix_row(a, s - a) for s in range(0, amax + 1, 2) for a in range(s + 1)]


def square_grid(amax: int) -> Iterator[Tuple[int, int]]:
    """(a, b) with 0 <= a, b <= amax and a+b even."""
    for a in range(amax + 1):
        for b in range(amax + 1):
            if (a + b) % 2 == 0:
                yield a, b


def ind_step_grid(kmax: int) -> Iterator[Tuple[int, int, int]]:
    """(k, r, i) with 2 <= i+1 <= r <= k-1 and k <= kmax."""
    for k in range(3, kmax + 1):
        for r in range(2, k):
            for i in range(1, r):
                yield k, r, i


def ind_step_row(k: int, r: int, i: int) -> Dict[str, int]:
    row = {"k": k, "r": r, "i": i,
           "b": b_coefficient(k, r, i), "b_star": b_star_coefficient(k, r, i),
           "step": ind_step(k, r, i), "step_star": ind_step(k, r, i, star=True)}
    row.update(ind_step_terms(k, r, i))
    return row
