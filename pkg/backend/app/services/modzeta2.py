"""
Heuristic detection of membership in ζ(2)·𝒵 at low weight.

A real number of weight w is tested against ζ(2) times products of odd zeta
values of total weight w.  A residue-zero verdict comes with rational
coefficients; failure to find them is reported as inconclusive and never as
non-membership.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from mpmath import mp, mpf

from app.core.config import settings
from app.core.exceptions import CapabilityError
from app.core.logging import app_logger
from app.services.numeric import precision, to_mpf

# generators per weight as exponent tuples over (ζ2, ζ3, ζ5, ζ7)
_GENERATORS: Dict[int, List[Tuple[str, Dict[int, int]]]] = {
    2: [("ζ(2)", {2: 1})],
    3: [],
    4: [("ζ(2)^2", {2: 2})],
    5: [("ζ(2)ζ(3)", {2: 1, 3: 1})],
    6: [("ζ(2)^3", {2: 3})],
    7: [("ζ(2)ζ(5)", {2: 1, 5: 1}), ("ζ(2)^2ζ(3)", {2: 2, 3: 1})],
    8: [("ζ(2)^4", {2: 4}), ("ζ(2)ζ(3)^2", {2: 1, 3: 2})],
    9: [("ζ(2)ζ(7)", {2: 1, 7: 1}), ("ζ(2)^2ζ(5)", {2: 2, 5: 1}), ("ζ(2)^3ζ(3)", {2: 3, 3: 1})],
}

SUPPORTED_WEIGHTS = tuple(sorted(_GENERATORS))


class Verdict(str, Enum):
    RESIDUE_ZERO = "residue-zero"
    INCONCLUSIVE = "inconclusive"


@dataclass
class SpanningSet:
    weight: int
    generators: List[Tuple[str, mpf]]

    @property
    def labels(self) -> List[str]:
        return [label for label, _ in self.generators]

    @property
    def values(self) -> List[mpf]:
        return [value for _, value in self.generators]


@dataclass
class ModZeta2Result:
    verdict: Verdict
    weight: int
    coefficients: Dict[str, Fraction] = field(default_factory=dict)
    residual: Optional[mpf] = None

    def describe(self) -> str:
        if self.verdict is Verdict.INCONCLUSIVE:
            return "inconclusive (heuristic)"
        if not self.coefficients:
            return "≡ 0 mod ζ(2) (heuristic)"
        terms = " + ".join(f"({q})·{label}" for label, q in self.coefficients.items())
        return f"= {terms}, ≡ 0 mod ζ(2) (heuristic)"


def spanning_set(weight: int, digits: Optional[int] = None) -> SpanningSet:
    """
    ζ(2)·(products of odd zeta values) of the given weight.

    Raises:
        CapabilityError: For weights outside 2..9
    """
    if weight not in _GENERATORS:
        raise CapabilityError(f"no spanning set for weight {weight}; supported: {SUPPORTED_WEIGHTS}")
    with precision(digits):
        generators = []
        for label, exponents in _GENERATORS[weight]:
            value = mpf(1)
            for s, e in exponents.items():
                value *= mp.zeta(s) ** e
            generators.append((label, value))
        return SpanningSet(weight=weight, generators=generators)


def tolerance(digits: Optional[int] = None) -> mpf:
    d = settings.default_digits if digits is None else digits
    return 10 * mpf(10) ** (1 - d)


def _residual(x: mpf, coefficients: List[Fraction], values: List[mpf]) -> mpf:
    return abs(x - mp.fsum(to_mpf(q) * v for q, v in zip(coefficients, values)))


def reduce_mod_zeta2(x: mpf, weight: int, digits: Optional[int] = None,
                     bound: Optional[int] = None) -> ModZeta2Result:
    """
    Look for rationals q_i with x = Σ q_i·gen_i within 10·10^(1-D).

    One generator is fitted by continued-fraction rounding of the quotient;
    two or more by an integer relation search on (x, gen_1, ..., gen_g).
    """
    bound = settings.modzeta2_max_denominator if bound is None else bound
    span = spanning_set(weight, digits)
    with precision(digits) as dps:
        tol = tolerance(digits)
        x = mpf(x)
        values = span.values
        coefficients: Optional[List[Fraction]] = None
        if not values:
            coefficients = []
        elif len(values) == 1:
            quotient = x / values[0]
            coefficients = [Fraction(mp.nstr(quotient, dps, strip_zeros=False)).limit_denominator(bound)]
        else:
            relation = mp.pslq([x] + values, maxcoeff=bound, maxsteps=10**5)
            if relation is not None and relation[0] != 0:
                coefficients = [Fraction(-c, relation[0]) for c in relation[1:]]
                if any(q.denominator > bound for q in coefficients):
                    coefficients = None
        if coefficients is None:
            app_logger.debug(f"modzeta2: no relation found at weight {weight}")
            return ModZeta2Result(verdict=Verdict.INCONCLUSIVE, weight=weight)
        residual = _residual(x, coefficients, values)
        if residual > tol:
            return ModZeta2Result(verdict=Verdict.INCONCLUSIVE, weight=weight, residual=residual)
        return ModZeta2Result(
            verdict=Verdict.RESIDUE_ZERO,
            weight=weight,
            coefficients={label: q for label, q in zip(span.labels, coefficients) if q},
            residual=residual,
        )


def reduce_with_confirmation(evaluate: Callable[[int], mpf], weight: int,
                             digits: Optional[int] = None) -> ModZeta2Result:
    """
    Run the detector at D and 2D digits; residue-zero survives only if both
    runs agree on the coefficients.
    """
    d = settings.default_digits if digits is None else digits
    first = reduce_mod_zeta2(evaluate(d), weight, d)
    if first.verdict is Verdict.INCONCLUSIVE:
        return first
    second = reduce_mod_zeta2(evaluate(2 * d), weight, 2 * d)
    if second.verdict is Verdict.RESIDUE_ZERO and second.coefficients == first.coefficients:
        return second
    app_logger.warning(f"modzeta2 verdict at weight {weight} did not persist at {2 * d} digits")
    return ModZeta2Result(verdict=Verdict.INCONCLUSIVE, weight=weight)
