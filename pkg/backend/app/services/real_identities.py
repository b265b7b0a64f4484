"""
Exact identities between real multiple zeta values used by the symmetric
side.  Each one registers as an S-side statement whose check is
|lhs - rhs| <= FMZV_NUMERIC_TOLERANCE.
"""

from fractions import Fraction
from typing import Optional, Tuple

from mpmath import mp, mpf

from app.services.indices import Index, binom, enumerate_Ikr
from app.services.numeric import (
    mzv,
    mzv_reg,
    precision,
    symmetric_hat,
    to_mpf,
    zagier_theorem1_exact,
    zagier_theorem1_mod_zeta2,
    zagier_theorem2_exact,
    zagier_theorem2_mod_zeta2,
    zeta_twos,
)
from app.services.theorems import Params, Side, Theorem, _require, register
from app.services.words import Word

Pair = Tuple[mpf, mpf]


def _zeta_sh(index, digits: Optional[int]) -> mpf:
    return mzv_reg(index, "sh", digits)


def _ones(a: int) -> Index:
    return Index.repeat(1, a)


def _twos(a: int) -> Index:
    return Index.repeat(2, a)


def s_by_def(q: Params, digits: Optional[int] = None) -> Pair:
    """t-coefficient of ζ^ш_Ŝ(1,k2) against k2·ζ^ш(k2+1,1) + ζ(k2,2) for odd k2."""
    k2 = q["k2"]
    with precision(digits):
        lhs = symmetric_hat((1, k2), "sh", 2, digits)[1]
        rhs = k2 * _zeta_sh((k2 + 1, 1), digits) + mzv((k2, 2), digits)
        return lhs, rhs


def s_calc_zeta_sh(q: Params, digits: Optional[int] = None) -> Pair:
    """ζ^ш(k2+1,1) = -ζ(k2,2) - ... - ζ(2,k2) - 2ζ(1,k2+1)."""
    k2 = q["k2"]
    with precision(digits):
        lhs = _zeta_sh((k2 + 1, 1), digits)
        rhs = -2 * mzv((1, k2 + 1), digits)
        for j in range(2, k2 + 1):
            rhs -= mzv((j, k2 + 2 - j), digits)
        return lhs, rhs


def s_by_duality(q: Params, digits: Optional[int] = None) -> Pair:
    """
    ζ^ш_Ŝ({2}^a,1) at t^0 through duality.  The products ζ({2}^i)ζ(1,{2}^(a-i))
    with 1 <= i < a lie in ζ(2)𝒵 and appear explicitly.
    """
    a = q["a"]
    with precision(digits):
        lhs = symmetric_hat(_twos(a).concat((1,)), "sh", 1, digits)[0]
        rhs = -mzv(_twos(a - 1).concat((3,)), digits)
        for j in range(a):
            rhs -= 2 * mzv(_twos(a - j - 1).concat((3,), _twos(j)), digits)
        for i in range(1, a):
            rhs -= zeta_twos(i, digits) * mzv(Index((1,)).concat(_twos(a - i)), digits)
        return lhs, rhs


def s_by_def_ab(q: Params, digits: Optional[int] = None) -> Pair:
    """ζ^ш_Ŝ({1}^a,2,{1}^b) at t^0 = ζ^ш({1}^a,2,{1}^b) + (-1)^(a+b)ζ^ш({1}^b,2,{1}^a)."""
    a, b = q["a"], q["b"]
    with precision(digits):
        lhs = symmetric_hat(_ones(a).concat((2,), _ones(b)), "sh", 1, digits)[0]
        rhs = _zeta_sh(_ones(a).concat((2,), _ones(b)), digits) \
            + (-1)**(a + b) * _zeta_sh(_ones(b).concat((2,), _ones(a)), digits)
        return lhs, rhs


def s_reg_form(q: Params, digits: Optional[int] = None) -> Pair:
    a, b = q["a"], q["b"]
    with precision(digits):
        lhs = _zeta_sh(_ones(a).concat((2,), _ones(b)), digits)
        return lhs, (-1)**b * binom(a + b + 1, b) * mzv((a + b + 2,), digits)


def s_reg_sum(q: Params, digits: Optional[int] = None) -> Pair:
    big_n = q["k"]
    with precision(digits):
        lhs = mp.fsum(_zeta_sh(_ones(i - 1).concat((2,), _ones(big_n - i)), digits)
                      for i in range(1, big_n + 1))
        return lhs, (-1)**(big_n - 1) * mzv((big_n + 1,), digits)


def s_reg_two_twos(q: Params, digits: Optional[int] = None) -> Pair:
    """ζ^ш({1}^a,2,{1}^b,2,{1}^c) expanded into admissible values."""
    a, b, c = q["a"], q["b"], q["c"]
    with precision(digits):
        lhs = _zeta_sh(_ones(a).concat((2,), _ones(b), (2,), _ones(c)), digits)
        rhs = mpf(0)
        for r in range(c + 1):
            s = c - r
            weight = binom(r + a + 1, r) * binom(s + b + 1, s)
            rhs += weight * mzv(_ones(r + a).concat((2,), _ones(s + b), (2,)), digits)
        return lhs, (-1)**c * rhs


def s_reg_three(q: Params, digits: Optional[int] = None) -> Pair:
    """ζ^ш({1}^a,3,{1}^b) expanded into admissible values."""
    a, b = q["a"], q["b"]
    with precision(digits):
        lhs = _zeta_sh(_ones(a).concat((3,), _ones(b)), digits)
        rhs = mpf(0)
        for r in range(b + 1):
            s = b - r
            tail = (3,) if s == 0 else Index((2,)).concat(_ones(s - 1), (2,))
            rhs += binom(r + a + 1, r) * mzv(_ones(r + a).concat(tail), digits)
        return lhs, (-1)**b * rhs


def zagier1(q: Params, digits: Optional[int] = None) -> Pair:
    return zagier_theorem1_exact(q["a"], q["b"], digits)


def zagier1_mod(q: Params, digits: Optional[int] = None) -> Pair:
    """ζ({2}^a,3,{2}^b) - q·ζ(2a+2b+3) against the terms carrying some ζ({2}^j), j >= 1."""
    a, b = q["a"], q["b"]
    s = a + b + 1
    with precision(digits):
        lhs = mzv(_twos(a).concat((3,), _twos(b)), digits) \
            - to_mpf(zagier_theorem1_mod_zeta2(a, b)) * mzv((2 * s + 1,), digits)
        rhs = mpf(0)
        for r in range(1, s):
            c = binom(2 * r, 2 * a + 2) - (1 - Fraction(1, 4**r)) * binom(2 * r, 2 * b + 1)
            rhs += 2 * (-1)**r * to_mpf(c) * zeta_twos(s - r, digits) * mzv((2 * r + 1,), digits)
        return lhs, rhs


def zagier2(q: Params, digits: Optional[int] = None) -> Pair:
    return zagier_theorem2_exact(q["k1"], q["k2"], digits)


def zagier2_mod(q: Params, digits: Optional[int] = None) -> Pair:
    """ζ(m,n) - q·ζ(m+n) against the terms ζ(2s)ζ(k-2s) with s >= 1."""
    m, n = q["k1"], q["k2"]
    k = m + n
    with precision(digits):
        lhs = mzv((m, n), digits) - to_mpf(zagier_theorem2_mod_zeta2(m, n)) * mzv((k,), digits)
        rhs = mpf(0)
        for s in range(1, (k - 1) // 2):
            c = binom(k - 2 * s - 1, m - 1) + binom(k - 2 * s - 1, n - 1) - (1 if n == 2 * s else 0)
            rhs += c * mzv((2 * s,), digits) * mzv((k - 2 * s,), digits)
        return lhs, (-1)**m * rhs


def duality(q: Params, digits: Optional[int] = None) -> Pair:
    index = Index(q["index"])
    dual = Word.from_index(index).dual().to_index()
    with precision(digits):
        return mzv(index, digits), mzv(dual, digits)


def depth2_sum(q: Params, digits: Optional[int] = None) -> Pair:
    """Σ_{a+b=k, b>=2} ζ(a,b) = ζ(k)."""
    k = q["k"]
    with precision(digits):
        lhs = mp.fsum(mzv((a, k - a), digits) for a in range(1, k - 1))
        return lhs, mzv((k,), digits)


def _admissible_grid(lim):
    for w in range(2, lim["wmax"] + 1):
        for r in range(1, w):
            for index in enumerate_Ikr(w, r):
                if index.is_admissible:
                    yield {"index": tuple(index)}


def _odd_k2_grid(lim):
    return ({"k2": k2} for k2 in range(1, lim["wmax"] - 1, 2))


def _ab_grid(lim):
    for s in range(lim["wmax"] + 1):
        for a in range(s + 1):
            yield {"a": a, "b": s - a}


def _zagier2_grid(lim):
    for k in range(3, lim["wmax"] + 1, 2):
        for m in range(1, k - 1):
            yield {"k1": m, "k2": k - m}


def _zagier2_hypothesis(q: Params) -> Optional[str]:
    return _require((q["k1"] >= 1 and q["k2"] >= 2, "need k1 >= 1 and k2 >= 2"),
                    ((q["k1"] + q["k2"]) % 2 == 1, "k1+k2 must be odd"))


def _non_negative(*names: str):
    return lambda q: _require((all(q[name] >= 0 for name in names), f"{', '.join(names)} must be non-negative"))


def _admissible_hypothesis(q: Params) -> Optional[str]:
    index = Index(q["index"])
    return _require((bool(index) and index.is_admissible, "the index must be nonempty and admissible"))


def _real(theorem_id: str, title: str, parameters, hypothesis, grid, limits, identity) -> None:
    register(Theorem(theorem_id, title, Side.S, tuple(parameters), hypothesis, grid,
                         limits=dict(limits), real_identity=identity))


_real("s-by-def", "t-coefficient of the symmetric value at (1,k2)", ("k2",),
      lambda q: _require((q["k2"] >= 1 and q["k2"] % 2 == 1, "k2 must be odd and positive")),
      _odd_k2_grid, {"wmax": 9}, s_by_def)
_real("s-calc-zeta-sh", "shuffle-regularized ζ(k2+1,1)", ("k2",),
      lambda q: _require((q["k2"] >= 1, "k2 must be positive")),
      lambda lim: ({"k2": k2} for k2 in range(1, lim["wmax"] - 1)), {"wmax": 9}, s_calc_zeta_sh)
_real("s-by-duality", "symmetric value at ({2}^a,1) through duality", ("a",),
      lambda q: _require((q["a"] >= 1, "a must be positive")),
      lambda lim: ({"a": a} for a in range(1, (lim["wmax"] - 1) // 2 + 1)), {"wmax": 9}, s_by_duality)
_real("s-by-def-ab", "symmetric value at ({1}^a,2,{1}^b)", ("a", "b"), _non_negative("a", "b"),
      _ab_grid, {"wmax": 7}, s_by_def_ab)
_real("s-reg-form", "shuffle-regularized ζ({1}^a,2,{1}^b)", ("a", "b"), _non_negative("a", "b"),
      _ab_grid, {"wmax": 7}, s_reg_form)
_real("s-reg-sum", "sum of shuffle-regularized ζ({1}^(i-1),2,{1}^(N-i))", ("k",),
      lambda q: _require((q["k"] >= 1, "N must be positive")),
      lambda lim: ({"k": k} for k in range(1, lim["wmax"])), {"wmax": 9}, s_reg_sum)
_real("s-reg-two-twos", "shuffle-regularized ζ({1}^a,2,{1}^b,2,{1}^c)", ("a", "b", "c"),
      _non_negative("a", "b", "c"),
      lambda lim: ({"a": a, "b": b, "c": c} for a in range(lim["wmax"] - 3) for b in range(lim["wmax"] - 3 - a)
                   for c in range(lim["wmax"] - 3 - a - b)),
      {"wmax": 8}, s_reg_two_twos)
_real("s-reg-three", "shuffle-regularized ζ({1}^a,3,{1}^b)", ("a", "b"), _non_negative("a", "b"),
      lambda lim: ({"a": a, "b": s - a} for s in range(lim["wmax"] - 2) for a in range(s + 1)),
      {"wmax": 8}, s_reg_three)
_real("zagier1", "ζ({2}^a,3,{2}^b) in ζ({2}^j)ζ(odd)", ("a", "b"), _non_negative("a", "b"),
      _ab_grid, {"wmax": 3}, zagier1)
_real("zagier1-mod", "ζ({2}^a,3,{2}^b) modulo ζ(2)", ("a", "b"), _non_negative("a", "b"),
      _ab_grid, {"wmax": 3}, zagier1_mod)
_real("zagier2", "ζ(k1,k2) of odd weight in products of single values", ("k1", "k2"), _zagier2_hypothesis,
      _zagier2_grid, {"wmax": 11}, zagier2)
_real("zagier2-mod", "ζ(k1,k2) of odd weight modulo ζ(2)", ("k1", "k2"), _zagier2_hypothesis,
      _zagier2_grid, {"wmax": 11}, zagier2_mod)
_real("duality", "ζ(w) = ζ(dual w)", ("index",), _admissible_hypothesis,
      _admissible_grid, {"wmax": 8}, duality)
_real("depth2-sum", "depth-two sum formula", ("k",),
      lambda q: _require((q["k"] >= 3, "k must be at least 3")),
      lambda lim: ({"k": k} for k in range(3, lim["wmax"] + 1)), {"wmax": 9}, depth2_sum)
