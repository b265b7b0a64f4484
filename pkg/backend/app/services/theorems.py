"""
Closed-form right-hand sides of the 𝓕ₙ evaluations and the registry of
checkable statements.

Every statement is a ``Theorem``.  Formula statements give their
left-hand side as a list of (coefficient, index) pairs of plain or star
values and their right-hand side as a ``ZfrakPoly``, a polynomial in the
symbols 𝔷(k) and x.  Relation statements compute both sides directly.
Statements about real numbers live in ``app.services.real_identities`` and
register themselves here.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import factorial, prod
from typing import Any, Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from mpmath import mpf
from sympy.utilities.iterables import multiset_permutations

from app.core.exceptions import CapabilityError, DomainError, HypothesisError, SkipPrime
from app.services.bernoulli import zfrak_A, zfrak_direct
from app.services.indices import (
    Index,
    binom,
    binom0,
    enumerate_Ikr,
    enumerate_Ikri,
    enumerate_set_partitions,
    falling,
    weak_compositions,
)
from app.services.modular import reduce_fraction
from app.services.numeric import TSeriesNum, mzv, precision, symmetric_hat, symmetric_hat_star, to_mpf
from app.services.padic import AnValue, Z_A, Z_A_star, mhs, shuffle_rhs_A, star_by_contractions, zetaA, zetaA_star
from app.services.words import LinComb, Word, harmonic, muneta_shuffle, shuffle

Params = Dict[str, Any]
Scalar = Union[int, Fraction]
Monomial = Tuple[Tuple[int, ...], int]
Window = Sequence[int]


class Side(str, Enum):
    A = "A"
    S = "S"


def _format_fraction(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class ZfrakPoly:
    """A polynomial in the symbols 𝔷(k) and x with rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, Scalar]] = None):
        self._terms: Dict[Monomial, Fraction] = {}
        for (args, power), c in (terms or {}).items():
            self._add((tuple(sorted(args)), power), Fraction(c))

    def _add(self, key: Monomial, c: Fraction) -> None:
        total = self._terms.get(key, 0) + c
        if total:
            self._terms[key] = total
        else:
            self._terms.pop(key, None)

    @classmethod
    def term(cls, coefficient: Scalar, *args: int, power: int = 0) -> "ZfrakPoly":
        """coefficient·𝔷(args[0])𝔷(args[1])...·x^power"""
        return cls({(args, power): coefficient})

    def items(self) -> List[Tuple[Monomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: (kv[0][1], len(kv[0][0]), kv[0][0]))

    def coefficient(self, *args: int, power: int = 0) -> Fraction:
        return self._terms.get((tuple(sorted(args)), power), Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: "ZfrakPoly") -> "ZfrakPoly":
        out = ZfrakPoly(self._terms)
        for key, c in other._terms.items():
            out._add(key, c)
        return out

    def __sub__(self, other: "ZfrakPoly") -> "ZfrakPoly":
        return self + (-other)

    def __neg__(self) -> "ZfrakPoly":
        return self * -1

    def __mul__(self, other: Union[Scalar, "ZfrakPoly"]) -> "ZfrakPoly":
        if isinstance(other, ZfrakPoly):
            out = ZfrakPoly()
            for (a1, p1), c1 in self._terms.items():
                for (a2, p2), c2 in other._terms.items():
                    out._add((tuple(sorted(a1 + a2)), p1 + p2), c1 * c2)
            return out
        scale = Fraction(other)
        return ZfrakPoly({key: c * scale for key, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, ZfrakPoly):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def truncate(self, n: int) -> "ZfrakPoly":
        """Drop every term divisible by x^n."""
        return ZfrakPoly({key: c for key, c in self._terms.items() if key[1] < n})

    def render(self) -> str:
        """Text such as ``−9/2·𝔷(5)x + 3·𝔷(3)𝔷(3)x^2``."""
        if not self._terms:
            return "0"
        out = ""
        for position, ((args, power), c) in enumerate(self.items()):
            symbols = "".join(f"𝔷({a})" for a in args)
            if power == 1:
                symbols += "x"
            elif power > 1:
                symbols += f"x^{power}"
            magnitude = abs(c)
            if not symbols:
                text = _format_fraction(magnitude)
            elif magnitude == 1:
                text = symbols
            else:
                text = f"{_format_fraction(magnitude)}·{symbols}"
            if position == 0:
                out = f"−{text}" if c < 0 else text
            else:
                out += (" − " if c < 0 else " + ") + text
        return out

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"ZfrakPoly({self.render()!r})"

    def evaluate_A(self, window: Window, n: int) -> AnValue:
        """Substitute 𝔷(k) by Bernoulli-quotient residues and x by p, modulo p^n."""
        terms = [(args, power, c) for (args, power), c in self._terms.items() if power < n]

        def at_prime(p: int) -> int:
            total = 0
            for args, power, c in terms:
                try:
                    value = _monomial_at_prime(args, power, p, n)
                except DomainError as exc:
                    raise SkipPrime(p, str(exc)) from exc
                total += reduce_fraction(c, p, n) * value
            return total

        return AnValue.build(window, n, at_prime)

    def evaluate_S(self, n: int, digits: Optional[int] = None) -> TSeriesNum:
        """Substitute 𝔷(k) by ζ(k) and x by t; coefficients below t^n."""
        with precision(digits):
            coefficients = [mpf(0)] * n
            for (args, power), c in self._terms.items():
                if power >= n:
                    continue
                value = to_mpf(c)
                for a in args:
                    value *= mzv((a,), digits)
                coefficients[power] += value
            return TSeriesNum(coefficients)


def _monomial_at_prime(args: Tuple[int, ...], power: int, p: int, n: int) -> int:
    if not args:
        return p**power
    if power == 0:
        if len(args) != 1:
            raise CapabilityError("products of 𝔷 without a power of x are not evaluated")
        return zfrak_direct(p, n, args[0]).value
    if power < len(args):
        raise CapabilityError(f"x^{power} cannot be shared by {len(args)} factors")
    shifts = [power - len(args) + 1] + [1] * (len(args) - 1)
    value = 1
    for a, l in zip(args, shifts):
        value *= zfrak_A(p, n, a - l, l).residue.value
    return value


def zfrak(k: int, coefficient: Scalar = 1, power: int = 0) -> ZfrakPoly:
    return ZfrakPoly.term(coefficient, k, power=power)


# Rational coefficients shared by several statements


def b_coefficient(k: int, r: int, i: int) -> int:
    """b_{k,r,i} of the F2 sum formula over I(k,r,i)."""
    return binom(k - 1, r) + (-1)**(r - i) * (
        (k - r) * binom0(k, i - 1) + binom0(k - 1, i - 1) + (-1)**(r - 1) * binom0(k - 1, r - i))


def b_star_coefficient(k: int, r: int, i: int) -> int:
    """b*_{k,r,i} of the F2 sum formula over I(k,r,i)."""
    return binom(k - 1, r) + (-1)**(i - 1) * (
        (k - r) * binom0(k, r - i) + binom0(k - 1, r - i) + (-1)**(r - 1) * binom0(k - 1, i - 1))


def ind_step(k: int, r: int, i: int, star: bool = False) -> int:
    """(r-i)b_{k,r,i} + i·b_{k,r,i+1} - (k-r)b_{k,r-1,i}; vanishes for 2 <= i+1 <= r <= k-1."""
    b = b_star_coefficient if star else b_coefficient
    return (r - i) * b(k, r, i) + i * b(k, r, i + 1) - (k - r) * b(k, r - 1, i)


def ind_step_terms(k: int, r: int, i: int) -> Dict[str, int]:
    """The four binomial identities the induction step splits into; each is 0."""
    return {
        "first": (r - i) * binom(k - 1, r) + i * binom(k - 1, r) - (k - r) * binom(k - 1, r - 1),
        "second": (r - i) * (k - r) * binom(k, i - 1) - i * (k - r) * binom(k, i)
                  + (k - r) * (k - r + 1) * binom(k, i - 1),
        "third": (r - i) * binom(k - 1, i - 1) - i * binom(k - 1, i) + (k - r) * binom(k - 1, i - 1),
        "fourth": (r - i) * binom(k - 1, r - i) - i * binom0(k - 1, r - i - 1)
                  - (k - r) * binom0(k - 1, r - i - 1),
    }


def t_poly(k: int, r: int) -> ZfrakPoly:
    """
    T_{k,r}·x^2: the sum over two-block set partitions {B1, B2} of {1..r} and
    b1+b2 = k with b_i >= #B_i of (b1)_{#B1}(b2)_{#B2}𝔷(b1+1)𝔷(b2+1).
    """
    poly = ZfrakPoly()
    if r < 2:
        return poly
    for partition in enumerate_set_partitions(r):
        if partition.size != 2:
            continue
        s1, s2 = (len(block) for block in partition.blocks)
        for b1 in range(s1, k - s2 + 1):
            b2 = k - b1
            poly += ZfrakPoly.term(falling(b1, s1) * falling(b2, s2), b1 + 1, b2 + 1, power=2)
    return poly


def bb_indices(l: int, m: int) -> Iterator[Index]:
    """{2}^m0,1,{2}^m1,3,...,1,{2}^m_{2l-1},3,{2}^m_{2l} over m0+...+m_{2l} = m."""
    separators = [1, 3] * l
    for parts in weak_compositions(m, 2 * l + 1):
        index = [2] * parts[0]
        for separator, mj in zip(separators, parts[1:]):
            index.append(separator)
            index.extend([2] * mj)
        yield Index(index)


def ones_two_ones(a: int, b: int) -> Index:
    return Index.repeat(1, a).concat((2,), Index.repeat(1, b))


def twos_around(a: int, middle: int, b: int) -> Index:
    return Index.repeat(2, a).concat((middle,), Index.repeat(2, b))


# Registry


Hypothesis = Callable[[Params], Optional[str]]
Grid = Callable[[Dict[str, int]], Iterable[Params]]
Terms = List[Tuple[Fraction, Index]]


@dataclass(frozen=True)
class Theorem:
    theorem_id: str
    title: str
    side: Side
    parameters: Tuple[str, ...]
    hypothesis: Hypothesis
    grid: Grid
    levels: Tuple[int, ...] = ()
    limits: Dict[str, int] = field(default_factory=dict)
    star: bool = False
    lhs_terms: Optional[Callable[[Params], Terms]] = None
    rhs: Optional[Callable[[Params, int], ZfrakPoly]] = None
    relation: Optional[Callable[[Params, Window, int], Tuple[AnValue, AnValue]]] = None
    real_identity: Optional[Callable[[Params, Optional[int]], Tuple[mpf, mpf]]] = None
    threshold: Optional[Callable[[Params, int], int]] = None

    @property
    def is_formula(self) -> bool:
        return self.rhs is not None

    def check(self, params: Params, n: Optional[int] = None) -> None:
        """
        Raises:
            HypothesisError: If a parameter is missing, the level is not covered
                by the statement or its hypothesis fails
        """
        missing = [name for name in self.parameters if name not in params]
        if missing:
            raise HypothesisError(f"{self.theorem_id}: missing parameters {missing}")
        if self.side is Side.A and n not in self.levels:
            raise HypothesisError(f"{self.theorem_id} is stated for n in {self.levels}, got n={n}")
        problem = self.hypothesis(params)
        if problem:
            raise HypothesisError(f"{self.theorem_id}: {problem}")

    def cases(self, overrides: Optional[Mapping[str, Optional[int]]] = None) -> List[Params]:
        limits = dict(self.limits)
        for name, value in (overrides or {}).items():
            if value is not None and name in limits:
                limits[name] = value
        return list(self.grid(limits))

    def weight(self, params: Params) -> int:
        if self.lhs_terms is None:
            return 0
        return max((index.weight for _, index in self.lhs_terms(params)), default=0)

    def min_prime(self, params: Params, n: int) -> int:
        """Smallest prime checked: wt + n + 1 for formula statements, 5 for plain relations."""
        if self.threshold is not None:
            return self.threshold(params, n)
        if not self.is_formula:
            return 5
        return self.weight(params) + n + 1

    def lhs_lincomb(self, params: Params) -> LinComb:
        out = LinComb()
        for c, index in self.lhs_terms(params):
            out = out + LinComb.from_index(index, c)
        return out

    def lhs_A(self, params: Params, window: Window, n: int) -> AnValue:
        evaluate = Z_A_star if self.star else Z_A
        return evaluate(self.lhs_lincomb(params), window, n)

    def lhs_S(self, params: Params, n: int, digits: Optional[int] = None) -> TSeriesNum:
        evaluate = symmetric_hat_star if self.star else symmetric_hat
        with precision(digits):
            total = TSeriesNum([mpf(0)] * n)
            for c, index in self.lhs_terms(params):
                series = evaluate(index, "sh", n, digits)
                total = total + TSeriesNum([to_mpf(c) * v for v in series.coefficients])
            return total


THEOREMS: Dict[str, Theorem] = {}


def register(theorem: Theorem) -> Theorem:
    if theorem.theorem_id in THEOREMS:
        raise DomainError(f"duplicate theorem id {theorem.theorem_id}")
    THEOREMS[theorem.theorem_id] = theorem
    return theorem


def get_theorem(theorem_id: str) -> Theorem:
    try:
        return THEOREMS[theorem_id]
    except KeyError:
        raise DomainError(f"unknown theorem id {theorem_id!r}") from None


def theorem_ids(side: Optional[Side] = None) -> List[str]:
    return [tid for tid, theorem in THEOREMS.items() if side is None or theorem.side is side]


def rhs_eval(theorem_id: str, params: Params, n: int) -> ZfrakPoly:
    """
    The closed-form right-hand side of a formula statement.

    Raises:
        HypothesisError: If the parameters violate the statement's hypotheses
        CapabilityError: If the statement is a relation without closed form
    """
    theorem = get_theorem(theorem_id)
    theorem.check(params, n)
    if not theorem.is_formula:
        raise CapabilityError(f"{theorem_id} is a relation without a closed-form right-hand side")
    return theorem.rhs(params, n).truncate(n)


def _single(index: Sequence[int]) -> Terms:
    return [(Fraction(1), Index(index))]


def _require(*conditions: Tuple[bool, str]) -> Optional[str]:
    for ok, message in conditions:
        if not ok:
            return message
    return None


def _formula_pair(theorem_id: str, title: str, *, levels, parameters, hypothesis, grid, limits,
                  lhs_terms, plain_rhs, star_rhs) -> None:
    register(Theorem(theorem_id, title, Side.A, parameters, hypothesis, grid, levels, dict(limits),
                         star=False, lhs_terms=lhs_terms, rhs=plain_rhs))
    register(Theorem(f"{theorem_id}-star", f"{title} (star)", Side.A, parameters, hypothesis, grid,
                         levels, dict(limits), star=True, lhs_terms=lhs_terms, rhs=star_rhs))


# depth one

def _dep1_rhs(q: Params, n: int) -> ZfrakPoly:
    k = q["k"]
    poly = ZfrakPoly()
    for l in range(1, n):
        poly += zfrak(k + l, (-1)**k * binom(k + l - 1, l), power=l)
    return poly


register(Theorem(
    "dep1", "depth-one values through Bernoulli quotients", Side.A, ("k",),
    hypothesis=lambda q: _require((q["k"] >= 1, "k must be positive")),
    grid=lambda lim: ({"k": k} for k in range(1, lim["kmax"] + 1)),
    levels=(1, 2, 3), limits={"kmax": 8},
    lhs_terms=lambda q: _single((q["k"],)), rhs=_dep1_rhs,
))


# depth two, n = 2

def _depth2_hypothesis(q: Params) -> Optional[str]:
    return _require((q["k1"] >= 1 and q["k2"] >= 1, "k1 and k2 must be positive"),
                    ((q["k1"] + q["k2"]) % 2 == 0, "k = k1+k2 must be even"))


def _depth2_rhs(star: bool):
    def rhs(q: Params, n: int) -> ZfrakPoly:
        k1, k2 = q["k1"], q["k2"]
        k = k1 + k2
        c = (-1)**k1 * k2 * binom(k + 1, k1) - (-1)**k2 * k1 * binom(k + 1, k2) + (k if star else -k)
        return zfrak(k + 1, Fraction(c, 2), power=1)
    return rhs


def _depth2_grid(lim):
    for k in range(2, lim["kmax"] + 1, 2):
        for k1 in range(1, k):
            yield {"k1": k1, "k2": k - k1}


_formula_pair("depth2", "double values of even weight", levels=(2,), parameters=("k1", "k2"),
              hypothesis=_depth2_hypothesis, grid=_depth2_grid, limits={"kmax": 12},
              lhs_terms=lambda q: _single((q["k1"], q["k2"])),
              plain_rhs=_depth2_rhs(False), star_rhs=_depth2_rhs(True))


# depth three, n = 1

def _depth3_hypothesis(q: Params) -> Optional[str]:
    return _require((min(q["k1"], q["k2"], q["k3"]) >= 1, "k1, k2, k3 must be positive"),
                    ((q["k1"] + q["k2"] + q["k3"]) % 2 == 1, "k = k1+k2+k3 must be odd"))


def _depth3_rhs(star: bool):
    def rhs(q: Params, n: int) -> ZfrakPoly:
        k1, k3 = q["k1"], q["k3"]
        k = k1 + q["k2"] + k3
        c = Fraction((-1)**k1 * binom(k, k1) - (-1)**k3 * binom(k, k3), 2)
        return zfrak(k, -c if star else c)
    return rhs


def _depth3_grid(lim):
    for k in range(3, lim["kmax"] + 1, 2):
        for index in enumerate_Ikr(k, 3):
            yield {"k1": index[0], "k2": index[1], "k3": index[2]}


_formula_pair("depth3", "triple values of odd weight", levels=(1,), parameters=("k1", "k2", "k3"),
              hypothesis=_depth3_hypothesis, grid=_depth3_grid, limits={"kmax": 13},
              lhs_terms=lambda q: _single((q["k1"], q["k2"], q["k3"])),
              plain_rhs=_depth3_rhs(False), star_rhs=_depth3_rhs(True))


# repeated index {k}^r

def _rep_hypothesis(q: Params) -> Optional[str]:
    return _require((q["r"] >= 1 and q["k"] >= 1, "r and k must be positive"))


def _rep_odd_hypothesis(q: Params) -> Optional[str]:
    return _rep_hypothesis(q) or _require(((q["r"] * q["k"]) % 2 == 1, "rk must be odd"))


def _rep_grid(odd_only: bool = False):
    def grid(lim):
        for w in range(1, lim["rmax"] + 1):
            if odd_only and w % 2 == 0:
                continue
            for k in range(1, w + 1):
                if w % k == 0:
                    yield {"r": w // k, "k": k}
    return grid


def _rep_f2_rhs(star: bool):
    def rhs(q: Params, n: int) -> ZfrakPoly:
        r, k = q["r"], q["k"]
        return zfrak(r * k + 1, k if star else (-1)**(r - 1) * k, power=1)
    return rhs


def _rep_cross_terms(r: int, k: int) -> ZfrakPoly:
    # unordered two-block partitions: each pair l, r-l is counted twice in the sum over l
    poly = ZfrakPoly()
    for l in range(1, r):
        poly += ZfrakPoly.term(Fraction(k * k, 2), l * k + 1, (r - l) * k + 1, power=2)
    return poly


def _rep_f3_rhs(star: bool):
    def rhs(q: Params, n: int) -> ZfrakPoly:
        r, k = q["r"], q["k"]
        w = r * k
        head = zfrak(w + 1, k, power=1) + zfrak(w + 2, Fraction(k * (w + 1), 2), power=2)
        cross = _rep_cross_terms(r, k)
        if star:
            return (head + cross) * (-1)**w
        return (head - cross) * (-1)**(w + r - 1)
    return rhs


def _rep_f3_odd_rhs(star: bool):
    def rhs(q: Params, n: int) -> ZfrakPoly:
        r, k = q["r"], q["k"]
        c = Fraction(k * (r * k + 1), 2)
        return zfrak(r * k + 2, -c if star else (-1)**r * c, power=2)
    return rhs


_rep_terms = lambda q: _single(Index.repeat(q["k"], q["r"]))  # noqa: E731

_formula_pair("repk-F2", "repeated index modulo x^2", levels=(2,), parameters=("r", "k"),
              hypothesis=_rep_hypothesis, grid=_rep_grid(), limits={"rmax": 12},
              lhs_terms=_rep_terms, plain_rhs=_rep_f2_rhs(False), star_rhs=_rep_f2_rhs(True))
_formula_pair("repk-F3", "repeated index modulo x^3", levels=(3,), parameters=("r", "k"),
              hypothesis=_rep_hypothesis, grid=_rep_grid(), limits={"rmax": 12},
              lhs_terms=_rep_terms, plain_rhs=_rep_f3_rhs(False), star_rhs=_rep_f3_rhs(True))
_formula_pair("repk-F3-odd", "repeated index of odd weight modulo x^3", levels=(3,), parameters=("r", "k"),
              hypothesis=_rep_odd_hypothesis, grid=_rep_grid(odd_only=True), limits={"rmax": 12},
              lhs_terms=_rep_terms, plain_rhs=_rep_f3_odd_rhs(False), star_rhs=_rep_f3_odd_rhs(True))


# one 2 or 3 among ones or twos, n = 1

def _ab_hypothesis(q: Params) -> Optional[str]:
    return _require((q["a"] >= 0 and q["b"] >= 0, "a and b must be non-negative"))


def _ab_even_hypothesis(q: Params) -> Optional[str]:
    return _ab_hypothesis(q) or _require(((q["a"] + q["b"]) % 2 == 0, "a+b must be even"))


def _ab_grid(even_only: bool = False):
    def grid(lim):
        for s in range(lim["amax"] + 1):
            if even_only and s % 2:
                continue
            for a in range(s + 1):
                yield {"a": a, "b": s - a}
    return grid


def _ones_two_ones_rhs(q: Params, n: int) -> ZfrakPoly:
    a, b = q["a"], q["b"]
    return zfrak(a + b + 2, (-1)**b * binom(a + b + 2, a + 1))


def _twos_three_twos_rhs(star: bool):
    def rhs(q: Params, n: int) -> ZfrakPoly:
        a, b = q["a"], q["b"]
        c = Fraction(2 * (b - a), a + 1) if star else Fraction((-1)**(a + b) * 2 * (a - b), a + 1)
        return zfrak(2 * a + 2 * b + 3, c * binom(2 * a + 2 * b + 3, 2 * b + 2))
    return rhs


def _twos_one_twos_rhs(star: bool):
    def rhs(q: Params, n: int) -> ZfrakPoly:
        a, b = q["a"], q["b"]
        c = Fraction(4 * (b - a), 2 * a + 1) if star else Fraction(4 * (-1)**(a + b) * (a - b), 2 * a + 1)
        c *= (1 - Fraction(1, 4**(a + b))) * binom(2 * a + 2 * b + 1, 2 * b + 1)
        return zfrak(2 * a + 2 * b + 1, c)
    return rhs


def _ones_two_ones_f2_rhs(star: bool):
    def rhs(q: Params, n: int) -> ZfrakPoly:
        a, b = q["a"], q["b"]
        lower = a + 2 if star else b + 2
        c = Fraction(1 + (-1)**a * binom(a + b + 3, lower), 2)
        return zfrak(a + b + 3, c, power=1)
    return rhs


_formula_pair("ones-2-ones", "{1}^a,2,{1}^b", levels=(1,), parameters=("a", "b"),
              hypothesis=_ab_hypothesis, grid=_ab_grid(), limits={"amax": 8},
              lhs_terms=lambda q: _single(ones_two_ones(q["a"], q["b"])),
              plain_rhs=_ones_two_ones_rhs, star_rhs=_ones_two_ones_rhs)
_formula_pair("twos-3-twos", "{2}^a,3,{2}^b", levels=(1,), parameters=("a", "b"),
              hypothesis=_ab_hypothesis, grid=_ab_grid(), limits={"amax": 8},
              lhs_terms=lambda q: _single(twos_around(q["a"], 3, q["b"])),
              plain_rhs=_twos_three_twos_rhs(False), star_rhs=_twos_three_twos_rhs(True))
_formula_pair("twos-1-twos", "{2}^a,1,{2}^b", levels=(1,), parameters=("a", "b"),
              hypothesis=_ab_hypothesis, grid=_ab_grid(), limits={"amax": 8},
              lhs_terms=lambda q: _single(twos_around(q["a"], 1, q["b"])),
              plain_rhs=_twos_one_twos_rhs(False), star_rhs=_twos_one_twos_rhs(True))
_formula_pair("ones-2-ones-F2", "{1}^a,2,{1}^b modulo x^2", levels=(2,), parameters=("a", "b"),
              hypothesis=_ab_even_hypothesis, grid=_ab_grid(even_only=True), limits={"amax": 8},
              lhs_terms=lambda q: _single(ones_two_ones(q["a"], q["b"])),
              plain_rhs=_ones_two_ones_f2_rhs(False), star_rhs=_ones_two_ones_f2_rhs(True))


# Bowman-Bradley type sums, n = 2

def _lm_hypothesis(q: Params) -> Optional[str]:
    return _require((q["l"] >= 0 and q["m"] >= 0, "l and m must be non-negative"),
                    ((q["l"], q["m"]) != (0, 0), "(l, m) must not be (0, 0)"))


def _lm_grid(lim):
    for l in range(lim["wmax"] // 4 + 1):
        for m in range((lim["wmax"] - 4 * l) // 2 + 1):
            if (l, m) != (0, 0):
                yield {"l": l, "m": m}


def _bb_rhs(star: bool):
    def rhs(q: Params, n: int) -> ZfrakPoly:
        l, m = q["l"], q["m"]
        first = (-1)**l * Fraction(2, 4**l) * binom(l + m, l)
        c = first if star else (-1)**m * (first - 4 * binom(2 * l + m, 2 * l))
        return zfrak(4 * l + 2 * m + 1, c, power=1)
    return rhs


_formula_pair("BB", "Bowman-Bradley type sum", levels=(2,), parameters=("l", "m"),
              hypothesis=_lm_hypothesis, grid=_lm_grid, limits={"wmax": 12},
              lhs_terms=lambda q: [(Fraction(1), index) for index in bb_indices(q["l"], q["m"])],
              plain_rhs=_bb_rhs(False), star_rhs=_bb_rhs(True))


def _two_shuffle_two_terms(q: Params) -> Terms:
    l, m = q["l"], q["m"]
    x = shuffle(Word.from_index(Index.repeat(2, l + m)), Word.from_index(Index.repeat(2, l)))
    return [(c, word.to_index()) for word, c in x.items()]


def _two_shuffle_two_rhs(q: Params, n: int) -> ZfrakPoly:
    l, m = q["l"], q["m"]
    return zfrak(4 * l + 2 * m + 1, (-1)**m * 2 * (1 - 2 * binom(4 * l + 2 * m, 2 * l)), power=1)


register(Theorem(
    "lemma-2sh2", "shuffle of two runs of twos", Side.A, ("l", "m"),
    hypothesis=_lm_hypothesis, grid=_lm_grid, levels=(2,), limits={"wmax": 10},
    lhs_terms=_two_shuffle_two_terms, rhs=_two_shuffle_two_rhs,
))


def _e13(i: int) -> Word:
    return Word.from_index((1, 3) * i)


def _e2(j: int) -> Word:
    return Word.from_index(Index.repeat(2, j))


def _yamamoto_relation(q: Params, window: Window, n: int) -> Tuple[AnValue, AnValue]:
    l, m = q["l"], q["m"]
    lhs = Z_A_star(muneta_shuffle(_e13(l), _e2(m)), window, n)
    twos_star = {j: zetaA_star(Index.repeat(2, j), window, n) for j in range(2 * l + m + 1)}
    rhs = AnValue.zero(window, n)
    for i in range(l + 1):
        for k in range(2 * l - 2 * i + 1):
            u = 2 * l - 2 * i - k
            for j in range(m + 1):
                plain = Z_A(muneta_shuffle(_e13(i), _e2(j)), window, n)
                for nn in range(m - j + 1):
                    v = m - j - nn
                    c = (-1)**(j + k) * binom(k + nn, k) * binom(u + v, u)
                    rhs = rhs + plain * twos_star[k + nn] * twos_star[u + v] * c
    return lhs, rhs


register(Theorem(
    "lemma-yamamoto", "star values of (e1e3)^l ш̃ e2^m", Side.A, ("l", "m"),
    hypothesis=lambda q: _require((q["l"] >= 0 and q["m"] >= 0, "l and m must be non-negative")),
    grid=lambda lim: ({"l": l, "m": m} for l in range(lim["wmax"] // 2 + 1)
                      for m in range(lim["wmax"] - 2 * l + 1)),
    levels=(1, 2, 3), limits={"wmax": 5}, relation=_yamamoto_relation,
))


# sum formulas

def _index_hypothesis(q: Params) -> Optional[str]:
    try:
        index = Index(q["index"])
    except DomainError as exc:
        return str(exc)
    return _require((len(index) >= 1, "the index must be nonempty"))


def _index_grid(lim):
    for w in range(1, lim["wmax"] + 1):
        for r in range(1, w + 1):
            for index in enumerate_Ikr(w, r):
                yield {"index": tuple(index)}


def _symsum_relation(star: bool):
    def relation(q: Params, window: Window, n: int) -> Tuple[AnValue, AnValue]:
        index = Index(q["index"])
        r = index.depth
        multiplicity = prod(factorial(index.count(k)) for k in set(index))
        orbit = LinComb()
        for perm in multiset_permutations(list(index)):
            orbit = orbit + LinComb.from_index(perm, multiplicity)
        lhs = (Z_A_star if star else Z_A)(orbit, window, n)
        partitions = [(part.size, part.c(), part.block_sums(index)) for part in enumerate_set_partitions(r)]

        def at_prime(p: int) -> int:
            total = 0
            for size, c, sums in partitions:
                sign = 1 if star else (-1)**(r - size)
                term = sign * c
                for b in sums:
                    term *= mhs(p, n, (b,)).value
                total += term
            return total

        return lhs, AnValue.build(window, n, at_prime)
    return relation


for _star in (False, True):
    register(Theorem(
        "symsum-star" if _star else "symsum", "symmetric sum formula", Side.A, ("index",),
        hypothesis=_index_hypothesis, grid=_index_grid, levels=(1, 2, 3), limits={"wmax": 7},
        star=_star, relation=_symsum_relation(_star),
    ))


def _kr_hypothesis(q: Params) -> Optional[str]:
    return _require((1 <= q["r"] <= q["k"], "need 1 <= r <= k"))


def _kr_odd_hypothesis(q: Params) -> Optional[str]:
    return _kr_hypothesis(q) or _require((q["k"] % 2 == 1, "k must be odd"))


def _kr_grid(odd_only: bool = False):
    def grid(lim):
        for k in range(1, lim["kmax"] + 1):
            if odd_only and k % 2 == 0:
                continue
            for r in range(1, k + 1):
                yield {"k": k, "r": r}
    return grid


def _ikr_terms(q: Params) -> Terms:
    return [(Fraction(1), index) for index in enumerate_Ikr(q["k"], q["r"])]


def _sum_f2_rhs(star: bool):
    def rhs(q: Params, n: int) -> ZfrakPoly:
        k, r = q["k"], q["r"]
        return zfrak(k + 1, binom(k, r) if star else (-1)**(r - 1) * binom(k, r), power=1)
    return rhs


def _sum_f3_rhs(star: bool):
    def rhs(q: Params, n: int) -> ZfrakPoly:
        k, r = q["k"], q["r"]
        head = zfrak(k + 1, binom(k, r), power=1) + zfrak(k + 2, Fraction(k + 1, 2) * binom(k, r), power=2)
        cross = t_poly(k, r) * Fraction(1, factorial(r))
        if star:
            return (head + cross) * (-1)**k
        return (head - cross) * (-1)**(k + r - 1)
    return rhs


def _sum_f3_odd_rhs(star: bool):
    def rhs(q: Params, n: int) -> ZfrakPoly:
        k, r = q["k"], q["r"]
        c = Fraction(k + 1, 2) * binom(k, r)
        return zfrak(k + 2, -c if star else (-1)**r * c, power=2)
    return rhs


_formula_pair("sumF2", "sum over I(k,r) modulo x^2", levels=(2,), parameters=("k", "r"),
              hypothesis=_kr_hypothesis, grid=_kr_grid(), limits={"kmax": 10},
              lhs_terms=_ikr_terms, plain_rhs=_sum_f2_rhs(False), star_rhs=_sum_f2_rhs(True))
_formula_pair("sumF3", "sum over I(k,r) modulo x^3", levels=(3,), parameters=("k", "r"),
              hypothesis=_kr_hypothesis, grid=_kr_grid(), limits={"kmax": 8},
              lhs_terms=_ikr_terms, plain_rhs=_sum_f3_rhs(False), star_rhs=_sum_f3_rhs(True))
_formula_pair("sumF3-odd", "sum over I(k,r) of odd weight modulo x^3", levels=(3,), parameters=("k", "r"),
              hypothesis=_kr_odd_hypothesis, grid=_kr_grid(odd_only=True), limits={"kmax": 8},
              lhs_terms=_ikr_terms, plain_rhs=_sum_f3_odd_rhs(False), star_rhs=_sum_f3_odd_rhs(True))


def _kri_hypothesis(even: bool):
    def hypothesis(q: Params) -> Optional[str]:
        k, r, i = q["k"], q["r"], q["i"]
        return _require((1 <= i <= r < k, "need 1 <= i <= r < k"),
                        (not even or k % 2 == 0, "k must be even"))
    return hypothesis


def _kri_grid(even: bool):
    def grid(lim):
        for k in range(2, lim["kmax"] + 1):
            if even and k % 2:
                continue
            for r in range(1, k):
                for i in range(1, r + 1):
                    yield {"k": k, "r": r, "i": i}
    return grid


def _ikri_terms(q: Params) -> Terms:
    return [(Fraction(1), index) for index in enumerate_Ikri(q["k"], q["r"], q["i"])]


def _sum_f2_i_rhs(star: bool):
    def rhs(q: Params, n: int) -> ZfrakPoly:
        k, r, i = q["k"], q["r"], q["i"]
        if star:
            c = Fraction(b_star_coefficient(k, r, i), 2)
        else:
            c = (-1)**(r - 1) * Fraction(b_coefficient(k, r, i), 2)
        return zfrak(k + 1, c, power=1)
    return rhs


def _sum_f1_i_rhs(star: bool):
    def rhs(q: Params, n: int) -> ZfrakPoly:
        k, r, i = q["k"], q["r"], q["i"]
        first, second = (binom(k - 1, r - i), binom(k - 1, i - 1)) if star else \
            (binom(k - 1, i - 1), binom(k - 1, r - i))
        return zfrak(k, (-1)**i * (first + (-1)**r * second))
    return rhs


_formula_pair("sumF2-i", "sum over I(k,r,i) modulo x^2", levels=(2,), parameters=("k", "r", "i"),
              hypothesis=_kri_hypothesis(True), grid=_kri_grid(True), limits={"kmax": 10},
              lhs_terms=_ikri_terms, plain_rhs=_sum_f2_i_rhs(False), star_rhs=_sum_f2_i_rhs(True))
_formula_pair("F1-i-sum", "sum over I(k,r,i) modulo x", levels=(1,), parameters=("k", "r", "i"),
              hypothesis=_kri_hypothesis(False), grid=_kri_grid(False), limits={"kmax": 10},
              lhs_terms=_ikri_terms, plain_rhs=_sum_f1_i_rhs(False), star_rhs=_sum_f1_i_rhs(True))


def sum_over_ikri(k: int, r: int, i: int, window: Window, n: int, star: bool = False) -> AnValue:
    """S_{k,r,i} on the 𝓐 side; zero when I(k,r,i) is empty."""
    if not (1 <= i <= r < k):
        return AnValue.zero(window, n)
    x = LinComb()
    for index in enumerate_Ikri(k, r, i):
        x = x + LinComb.from_index(index)
    return (Z_A_star if star else Z_A)(x, window, n)


def _recurrence_hypothesis(even: bool):
    def hypothesis(q: Params) -> Optional[str]:
        k, r, i = q["k"], q["r"], q["i"]
        return _require((2 <= i + 1 <= r <= k - 1, "need 2 <= i+1 <= r <= k-1"),
                        (not even or k % 2 == 0, "k must be even"))
    return hypothesis


def _recurrence_grid(even: bool):
    def grid(lim):
        for k in range(3, lim["kmax"] + 1):
            if even and k % 2:
                continue
            for r in range(2, k):
                for i in range(1, r):
                    yield {"k": k, "r": r, "i": i}
    return grid


def _recurrence_lhs(q: Params, window: Window, n: int, star: bool) -> AnValue:
    k, r, i = q["k"], q["r"], q["i"]
    sign = -1 if star else 1
    return (sum_over_ikri(k, r, i, window, n, star) * (r - i)
            + sum_over_ikri(k, r, i + 1, window, n, star) * i
            + sum_over_ikri(k, r - 1, i, window, n, star) * (sign * (k - r)))


def _recurrence_relation(star: bool):
    def relation(q: Params, window: Window, n: int) -> Tuple[AnValue, AnValue]:
        return _recurrence_lhs(q, window, n, star), AnValue.zero(window, n)
    return relation


def _recurrence_lemma_relation(star: bool):
    def relation(q: Params, window: Window, n: int) -> Tuple[AnValue, AnValue]:
        k, r, i = q["k"], q["r"], q["i"]
        rhs = AnValue.zero(window, n)
        for l in range(1, k - r + 1):
            rhs = rhs + zetaA((l,), window, n) * sum_over_ikri(k - l, r - 1, i, window, n, star)
        return _recurrence_lhs(q, window, n, star), rhs
    return relation


def _recurrence_threshold(q: Params, n: int) -> int:
    # both sides are assembled from sum formulas of weight k
    return q["k"] + n + 1


for _star in (False, True):
    suffix = "-star" if _star else ""
    register(Theorem(
        f"recurrence{suffix}", "recurrence of S(k,r,i) for even k", Side.A, ("k", "r", "i"),
        hypothesis=_recurrence_hypothesis(True), grid=_recurrence_grid(True),
        levels=(2,), limits={"kmax": 10}, star=_star, relation=_recurrence_relation(_star),
        threshold=_recurrence_threshold,
    ))
    register(Theorem(
        f"recurrence-lemma{suffix}", "recurrence of S(k,r,i) with the depth-one correction", Side.A,
        ("k", "r", "i"), hypothesis=_recurrence_hypothesis(False), grid=_recurrence_grid(False),
        levels=(2,), limits={"kmax": 9}, star=_star, relation=_recurrence_lemma_relation(_star),
        threshold=_recurrence_threshold,
    ))


# double shuffle, antipode, star expansion

def _pair_hypothesis(q: Params) -> Optional[str]:
    try:
        Index(q["k"])
        l = Index(q["l"])
    except (DomainError, TypeError) as exc:
        return str(exc)
    return _require((len(l) >= 1, "the second index must be nonempty"))


def _pair_grid(lim):
    wmax = lim["wmax"]
    for w1 in range(1, wmax):
        for w2 in range(1, wmax - w1 + 1):
            for r1 in range(1, w1 + 1):
                for k in enumerate_Ikr(w1, r1):
                    for r2 in range(1, w2 + 1):
                        for l in enumerate_Ikr(w2, r2):
                            yield {"k": tuple(k), "l": tuple(l)}


def _harmonic_relation(q: Params, window: Window, n: int) -> Tuple[AnValue, AnValue]:
    k, l = Index(q["k"]), Index(q["l"])
    lhs = Z_A(harmonic(Word.from_index(k), Word.from_index(l)), window, n)
    return lhs, zetaA(k, window, n) * zetaA(l, window, n)


def _shuffle_relation(q: Params, window: Window, n: int) -> Tuple[AnValue, AnValue]:
    k, l = Index(q["k"]), Index(q["l"])
    lhs = Z_A(shuffle(Word.from_index(k), Word.from_index(l)), window, n)
    return lhs, shuffle_rhs_A(k, l, window, n)


def _antipode_relation(q: Params, window: Window, n: int) -> Tuple[AnValue, AnValue]:
    index = Index(q["index"])
    total = AnValue.zero(window, n)
    for i in range(index.depth + 1):
        term = zetaA(index[:i], window, n) * zetaA_star(Index(index[i:]).reversed(), window, n)
        total = total + term * (-1)**i
    return total, AnValue.zero(window, n)


def _star_expansion_relation(q: Params, window: Window, n: int) -> Tuple[AnValue, AnValue]:
    index = Index(q["index"])
    return zetaA_star(index, window, n), star_by_contractions(index, window, n)


register(Theorem(
    "dsr-harmonic", "harmonic relation", Side.A, ("k", "l"),
    hypothesis=_pair_hypothesis, grid=_pair_grid, levels=(1, 2, 3), limits={"wmax": 6},
    relation=_harmonic_relation,
))
register(Theorem(
    "dsr-shuffle", "shuffle relation with x = p", Side.A, ("k", "l"),
    hypothesis=_pair_hypothesis, grid=_pair_grid, levels=(1, 2, 3), limits={"wmax": 6},
    relation=_shuffle_relation,
))
register(Theorem(
    "antipode", "antipode relation", Side.A, ("index",),
    hypothesis=_index_hypothesis, grid=_index_grid, levels=(1, 2, 3), limits={"wmax": 7},
    relation=_antipode_relation,
))
register(Theorem(
    "star-expansion", "star values as comma/plus sums", Side.A, ("index",),
    hypothesis=_index_hypothesis, grid=_index_grid, levels=(1, 2, 3), limits={"wmax": 7},
    relation=_star_expansion_relation,
))

# real-number identities register themselves on import
from app.services import real_identities  # noqa: E402,F401
