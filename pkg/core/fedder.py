# core/fedder.py
"""
Fedder-type tests at a point that has been moved to the origin.

The maximal ideal m of the point is generated by a set of variables, so
m^[q] is a monomial ideal and membership reduces to looking at exponents:
a polynomial lies in m^[q] exactly when every term has some listed
exponent >= q.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import List, Mapping, Optional, Sequence, Tuple

from .errors import (
    BoundaryCoefficientError,
    FrobeniusBoundError,
    NotInMaximalIdealError,
    OracleMismatchError,
    ZeroPolynomialError,
)
from .field import FieldCtx, Monomial, Q_BOUND
from .groebner import DEFAULT_DEGREE_CAP, Ideal, bracket_power, buchberger, colon, member
from .poly import (
    MultiPoly,
    format_monomial,
    in_monomial_bracket,
    mul_mod_bracket,
    pow_mod_bracket,
    substitute_shift,
    truncate_mod_bracket,
)


@dataclass(frozen=True)
class FrobeniusLevel:
    """q = p^e with e >= 1, kept under the Frobenius guard."""
    field: FieldCtx
    e: int = 1
    q_bound: int = Q_BOUND
    q: int = dc_field(init=False)

    def __post_init__(self) -> None:
        if self.e < 1:
            raise FrobeniusBoundError(f"e must be a positive integer, got {self.e}")
        q = self.field.p ** self.e
        if q > self.q_bound:
            raise FrobeniusBoundError(f"q = {self.field.p}^{self.e} exceeds the guard {self.q_bound}")
        object.__setattr__(self, "q", q)

    @property
    def p(self) -> int:
        return self.field.p

    def scaled(self, n: int) -> "FrobeniusLevel":
        return FrobeniusLevel(self.field, self.e * n, self.q_bound)


@dataclass(frozen=True)
class FedderReport:
    q: int
    fpure: bool
    witness: Optional[Monomial]
    witness_text: Optional[str]
    test_poly_digest: str


def poly_digest(f: MultiPoly) -> str:
    return hashlib.sha256(str(f).encode("utf-8")).hexdigest()


def translate(f: MultiPoly, point: Mapping[str, int]) -> MultiPoly:
    """Move `point` to the origin: x ↦ x + c for every (x, c)."""
    return substitute_shift(f, point)


def _report(test: MultiPoly, level: FrobeniusLevel) -> FedderReport:
    """`test` is already reduced mod m^[q]; any surviving term is a witness."""
    if test.is_zero():
        return FedderReport(level.q, False, None, None, poly_digest(test))
    m, _ = test.leading()
    text = format_monomial(m, test.vars.names) or "1"
    return FedderReport(level.q, True, m, text, poly_digest(test))


def _check_names(f: MultiPoly, m_vars: Sequence[str]) -> Tuple[str, ...]:
    names = tuple(m_vars)
    if not names:
        raise NotInMaximalIdealError("the point ideal needs at least one variable")
    f.vars.indices(names)
    return names


def fpure_hypersurface(a: MultiPoly, m_vars: Sequence[str], level: FrobeniusLevel) -> FedderReport:
    """S/(a) is F-pure at the origin of m_vars ⟺ a^{q-1} ∉ m^[q]."""
    if a.is_zero():
        raise ZeroPolynomialError("Fedder's criterion needs a nonzero hypersurface")
    names = _check_names(a, m_vars)
    test = pow_mod_bracket(a, level.q - 1, names, level.q)
    return _report(test, level)


def fpure_pair(a: MultiPoly, boundary: Sequence[Tuple[MultiPoly, Fraction]], m_vars: Sequence[str],
               level: FrobeniusLevel) -> FedderReport:
    """
    The pair (S/(a), Σ c_i·div(b_i)) at the origin: F-pure ⟺
    a^{q-1}·∏ b_i^{(q-1)c_i} ∉ m^[q]. Each (q-1)c_i must be a nonnegative integer.
    """
    if a.is_zero():
        raise ZeroPolynomialError("Fedder's criterion needs a nonzero hypersurface")
    names = _check_names(a, m_vars)
    q = level.q
    test = pow_mod_bracket(a, q - 1, names, q)
    for b, c in boundary:
        c = Fraction(c)
        if c < 0:
            raise BoundaryCoefficientError(f"boundary coefficient {c} of {b} is negative")
        k = c * (q - 1)
        if k.denominator != 1:
            raise BoundaryCoefficientError(f"(q-1)·{c} is not an integer at q = {q}")
        if b.is_zero():
            raise ZeroPolynomialError("a boundary component is the zero polynomial")
        if not test.is_zero():
            test = mul_mod_bracket(test, pow_mod_bracket(b, int(k), names, q), names, q)
    return _report(test, level)


def fpure_general(I: Ideal, m_vars: Sequence[str], level: FrobeniusLevel,
                  degree_cap: int = DEFAULT_DEGREE_CAP) -> FedderReport:
    """S/I is F-pure at the origin ⟺ (I^[q] : I) ⊄ m^[q]; the colon goes through Gröbner bases."""
    names = tuple(m_vars)
    if not names:
        raise NotInMaximalIdealError("the point ideal needs at least one variable")
    I.vars.indices(names)
    q = level.q
    if I.is_zero():
        one = MultiPoly.one(I.field, I.vars)
        return _report(truncate_mod_bracket(one, names, q), level)
    col = colon(bracket_power(I, q, level.q_bound), I, degree_cap=degree_cap, verify=False)
    for g in col.basis(degree_cap=degree_cap):
        survivor = truncate_mod_bracket(g, names, q)
        if not survivor.is_zero():
            return _report(survivor, level)
    return FedderReport(q, False, None, None, poly_digest(MultiPoly.zero(I.field, I.vars)))


def center_test(f: MultiPoly, J: Ideal, level: FrobeniusLevel, degree_cap: int = DEFAULT_DEGREE_CAP) -> bool:
    """f ∈ (J^[q] : J) and f ∉ J^[q]: the map given by f is compatible with V(J)."""
    q = level.q
    names = J.variable_names()
    if names is not None:
        if in_monomial_bracket(f, names, q):
            return False
        return all(in_monomial_bracket(f * g, names, q) for g in J.gens)
    bracket = buchberger(bracket_power(J, q, level.q_bound), degree_cap=degree_cap)
    if member(f, bracket, degree_cap=degree_cap):
        return False
    return all(member(f * g, bracket, degree_cap=degree_cap) for g in J.gens)


# ---------- ν-invariants and F-pure thresholds ----------
@dataclass(frozen=True)
class NuEntry:
    e: int
    q: int
    nu: int
    ratio: Fraction


@dataclass(frozen=True)
class NuSequence:
    f_digest: str
    point: Tuple[str, ...]
    entries: Tuple[NuEntry, ...]

    def supermultiplicative(self, p: int) -> bool:
        return all(b.nu >= p * a.nu for a, b in zip(self.entries, self.entries[1:]))

    def monotone(self) -> bool:
        return all(b.ratio >= a.ratio for a, b in zip(self.entries, self.entries[1:]))

    def check(self, p: int) -> None:
        if not self.supermultiplicative(p):
            raise OracleMismatchError(f"ν is not super-multiplicative: {[x.nu for x in self.entries]}")
        if not self.monotone():
            raise OracleMismatchError(f"ν/q is not monotone: {[str(x.ratio) for x in self.entries]}")

    @property
    def bounds(self) -> Tuple[Fraction, Fraction]:
        """ν(q)/q ≤ fpt ≤ (ν(q)+1)/q at the deepest level computed."""
        last = self.entries[-1]
        return last.ratio, Fraction(last.nu + 1, last.q)


def nu(f: MultiPoly, m_vars: Sequence[str], level: FrobeniusLevel) -> int:
    """
    ν(q) = max{a : f^a ∉ m^[q]}. Binary lifting over a ladder f, f^2, f^4, ...
    (each reduced mod m^[q]); the predicate is monotone in a.
    """
    names = _check_names(f, m_vars)
    if not in_monomial_bracket(f, names, 1):
        raise NotInMaximalIdealError(f"{f} does not vanish at the origin of ({', '.join(names)})")
    q = level.q
    if f.is_zero():
        return 0
    hi = len(names) * (q - 1)
    ladder: List[MultiPoly] = [truncate_mod_bracket(f, names, q, _checked=True)]
    while (1 << len(ladder)) <= hi:
        prev = ladder[-1]
        ladder.append(mul_mod_bracket(prev, prev, names, q))
    cur = truncate_mod_bracket(MultiPoly.one(f.field, f.vars), names, q, _checked=True)
    a = 0
    for k in range(len(ladder) - 1, -1, -1):
        step = 1 << k
        if a + step > hi or ladder[k].is_zero():
            continue
        cand = mul_mod_bracket(cur, ladder[k], names, q)
        if not cand.is_zero():
            cur, a = cand, a + step
    return a


def fpt_estimate(f: MultiPoly, m_vars: Sequence[str], e_max: int, q_bound: int = Q_BOUND) -> NuSequence:
    if e_max < 1:
        raise FrobeniusBoundError(f"e_max must be positive, got {e_max}")
    names = tuple(m_vars)
    entries = []
    for e in range(1, e_max + 1):
        level = FrobeniusLevel(f.field, e, q_bound)
        v = nu(f, names, level)
        entries.append(NuEntry(e, level.q, v, Fraction(v, level.q)))
    return NuSequence(poly_digest(f), names, tuple(entries))


def stability_check(a: MultiPoly, m_vars: Sequence[str], level: FrobeniusLevel, n: int) -> bool:
    """F-pure at q = p^e implies F-pure at p^{ne}."""
    if n < 1:
        raise FrobeniusBoundError(f"n must be positive, got {n}")
    deeper = level.scaled(n)
    if not fpure_hypersurface(a, m_vars, level).fpure:
        return True
    return fpure_hypersurface(a, m_vars, deeper).fpure

