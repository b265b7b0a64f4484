"""
Indices and the combinatorics used by the sum formulas.

An index is stored left to right as written, ``(k1, ..., kr)``, with
admissibility decided by the last part.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb, factorial, prod
from typing import Iterator, List, Sequence, Tuple, Union

from app.core.exceptions import DomainError


class Index(tuple):
    """A finite tuple of positive integers; ``Index()`` is the empty index."""

    __slots__ = ()

    def __new__(cls, parts: Sequence[int] = ()):
        parts = tuple(int(k) for k in parts)
        for k in parts:
            if k < 1:
                raise DomainError(f"index parts must be positive, got {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> "Index":
        """Parse ``"2,3"``, ``"(2,3)"`` or ``""``/``"∅"`` for the empty index."""
        body = text.strip().strip("()").strip()
        if body in ("", "∅", "empty"):
            return cls()
        try:
            return cls(int(part) for part in body.split(","))
        except ValueError as exc:
            raise DomainError(f"cannot parse index {text!r}") from exc

    @classmethod
    def repeat(cls, k: int, r: int) -> "Index":
        """The index ``{k}^r``."""
        return cls((k,) * r)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def depth(self) -> int:
        return len(self)

    @property
    def is_admissible(self) -> bool:
        return not self or self[-1] >= 2

    def reversed(self) -> "Index":
        return Index(self[::-1])

    def concat(self, *others: Sequence[int]) -> "Index":
        parts = list(self)
        for other in others:
            parts.extend(other)
        return Index(parts)

    def __add__(self, other):
        return self.concat(other)

    def __str__(self) -> str:
        if not self:
            return "∅"
        return "(" + ",".join(str(k) for k in self) + ")"

    def __repr__(self) -> str:
        return f"Index{tuple(self)!r}"


def binom(n: Union[int, Fraction], k: int) -> Union[int, Fraction]:
    """
    Generalized binomial coefficient n(n-1)...(n-k+1)/k!.

    Args:
        n: Any integer (negative allowed) or rational upper argument
        k: Non-negative lower argument

    Returns:
        An int for integer ``n``, a Fraction otherwise

    Raises:
        DomainError: If ``k`` is negative
    """
    if k < 0:
        raise DomainError(f"binomial lower argument must be >= 0, got {k}")
    if isinstance(n, int):
        if n >= 0:
            return comb(n, k)
        return (-1)**k * comb(k - n - 1, k)
    value = Fraction(1)
    for j in range(k):
        value *= (n - j)
    return value / factorial(k)


def binom0(n: int, k: int) -> int:
    """Binomial coefficient that is 0 for a negative lower argument."""
    return 0 if k < 0 else binom(n, k)


def falling(n: int, m: int) -> int:
    """Falling factorial (n)_m = n(n-1)...(n-m+1)."""
    if m < 0:
        raise DomainError(f"falling factorial length must be >= 0, got {m}")
    return prod(n - j for j in range(m))


def enumerate_Ikr(k: int, r: int) -> List[Index]:
    """
    All indices of weight k and depth r, in lexicographic order.

    Raises:
        DomainError: Unless 1 <= r <= k
    """
    if r < 1 or r > k:
        raise DomainError(f"I(k,r) needs 1 <= r <= k, got k={k}, r={r}")
    out = []
    for cuts in combinations(range(1, k), r - 1):
        bounds = (0,) + cuts + (k,)
        out.append(Index(bounds[j + 1] - bounds[j] for j in range(r)))
    return out


def enumerate_Ikri(k: int, r: int, i: int) -> List[Index]:
    """Members of I(k,r) whose i-th part (1-based) is at least 2."""
    if not (1 <= i <= r < k):
        raise DomainError(f"I(k,r,i) needs 1 <= i <= r < k, got k={k}, r={r}, i={i}")
    return [index for index in enumerate_Ikr(k, r) if index[i - 1] >= 2]


@dataclass(frozen=True)
class SetPartition:
    """A partition of {1..r} into nonempty blocks, ordered by least element."""

    blocks: Tuple[Tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.blocks)

    def c(self) -> int:
        """Product of (#B - 1)! over the blocks."""
        return prod(factorial(len(block) - 1) for block in self.blocks)

    def block_sums(self, index: Sequence[int]) -> Tuple[int, ...]:
        """The block sums b_i(k) of an index of depth r."""
        return tuple(sum(index[j - 1] for j in block) for block in self.blocks)


def _restricted_growth(r: int) -> Iterator[List[int]]:
    labels = [0] * r

    def extend(pos: int, top: int):
        if pos == r:
            yield list(labels)
            return
        for label in range(top + 2):
            labels[pos] = label
            yield from extend(pos + 1, max(top, label))

    yield from extend(1, 0)


def enumerate_set_partitions(r: int) -> List[SetPartition]:
    """
    Every set partition of {1..r} exactly once (Bell(r) of them).

    Raises:
        DomainError: If ``r < 1``
    """
    if r < 1:
        raise DomainError(f"set partitions need r >= 1, got {r}")
    out = []
    for labels in _restricted_growth(r):
        blocks = {}
        for element, label in enumerate(labels, start=1):
            blocks.setdefault(label, []).append(element)
        out.append(SetPartition(tuple(tuple(blocks[label]) for label in sorted(blocks))))
    return out


def comma_plus_contractions(index: Sequence[int]) -> List[Index]:
    """
    All indices k1 □ k2 □ ... □ kr with □ a comma or a plus.

    Used for the star values.
    """
    index = tuple(index)
    if not index:
        return [Index()]
    out = []
    for signs in product((False, True), repeat=len(index) - 1):
        parts = [index[0]]
        for plus, k in zip(signs, index[1:]):
            if plus:
                parts[-1] += k
            else:
                parts.append(k)
        out.append(Index(parts))
    return out


def weak_compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Tuples of ``parts`` non-negative integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for cuts in combinations(range(total + parts - 1), parts - 1):
        bounds = (-1,) + cuts + (total + parts - 1,)
        yield tuple(bounds[j + 1] - bounds[j] - 1 for j in range(parts))


def bounded_weak_compositions(limit: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Weak compositions of every total from 0 to ``limit``."""
    for total in range(limit + 1):
        yield from weak_compositions(total, parts)
