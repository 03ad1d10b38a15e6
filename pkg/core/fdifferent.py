# core/fdifferent.py
"""
Restricting a Fedder polynomial f to a complete-intersection center V(J):
f = h·g_e + g with g in J^[q] and g_e = (g_1···g_r)^{q-1}; the induced map on
the center is given by h mod J, and its divisor is div(h̄)/(q-1).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .divisor import QDivisor
from .errors import FieldError, ZeroSplittingError
from .fedder import FrobeniusLevel, center_test, poly_digest
from .groebner import DEFAULT_DEGREE_CAP, Ideal, buchberger, ci_colon_shortcut, extended_division, normal_form
from .poly import MultiPoly, coeff_of, drop_vars, substitute_shift, to_unipoly, truncate_mod_bracket


@dataclass(frozen=True)
class CenterProblem:
    f: MultiPoly
    J: Ideal


@dataclass(frozen=True)
class FDifferentResult:
    level: FrobeniusLevel
    h: MultiPoly                    # cofactor of g_e, ambient variables
    g_e: MultiPoly
    h_bar: MultiPoly                # residual variables on the fast path, ambient otherwise
    divisor: Optional[QDivisor]     # only when the center is a line
    compat_ok: bool
    center_ok: bool
    leftover_digest: Optional[str]


def translate_center(problem: CenterProblem, point: Sequence[int]) -> CenterProblem:
    """x ↦ x + c on f and every generator of J, so that `point` becomes the origin."""
    f, J = problem.f, problem.J
    if len(point) != f.vars.arity:
        raise FieldError(f"arity mismatch: {f.vars.arity} variables, {len(point)} coordinates")
    shift = dict(zip(f.vars.names, point))
    gens = tuple(substitute_shift(g, shift) for g in J.gens)
    return CenterProblem(substitute_shift(f, shift),
                         Ideal(J.field, J.vars, gens, complete_intersection=J.complete_intersection))


def _g_e_monomial(f: MultiPoly, names: Sequence[str], q: int) -> MultiPoly:
    idx = set(f.vars.indices(names))
    m = tuple(q - 1 if i in idx else 0 for i in range(f.vars.arity))
    return MultiPoly.monomial(f.field, f.vars, m)


def _divisor_of(h_bar: MultiPoly, q: int) -> Optional[QDivisor]:
    if h_bar.vars.arity != 1:
        return None
    var = h_bar.vars.names[0]
    return QDivisor.from_poly(to_unipoly(h_bar, var), Fraction(1, q - 1), var)


def compute_fdifferent(f: MultiPoly, J: Ideal, level: FrobeniusLevel,
                       degree_cap: int = DEFAULT_DEGREE_CAP) -> FDifferentResult:
    if f.field != J.field or f.vars != J.vars:
        raise FieldError("Fedder polynomial and center live in different contexts")
    q = level.q
    center_ok = center_test(f, J, level, degree_cap)
    names = J.variable_names()
    if names is not None:
        return _variable_center(f, J, names, level, center_ok)
    ci = ci_colon_shortcut(J, q, level.q_bound)
    bracket = buchberger(ci.bracket, degree_cap=degree_cap)
    div = extended_division(f, ci.g_e, bracket, degree_cap)
    h_bar = normal_form(div.quotient, J, degree_cap=degree_cap)
    if h_bar.is_zero():
        raise ZeroSplittingError("h reduces to 0 on the center: the restricted map vanishes")
    compat = div.remainder.is_zero()
    return FDifferentResult(level, div.quotient, ci.g_e, h_bar, None, compat, center_ok,
                            None if compat else poly_digest(div.remainder))


def _variable_center(f: MultiPoly, J: Ideal, names: Sequence[str], level: FrobeniusLevel,
                     center_ok: bool) -> FDifferentResult:
    q = level.q
    g_e = _g_e_monomial(f, names, q)
    trunc = truncate_mod_bracket(f, names, q)
    h = coeff_of(trunc, {n: q - 1 for n in names})
    leftover = trunc - h * g_e
    if h.is_zero():
        raise ZeroSplittingError("f has no (q-1, ..., q-1) part along the center: the restricted map vanishes")
    divisor = None
    if len(names) < f.vars.arity:
        h_bar = drop_vars(h, names)
        divisor = _divisor_of(h_bar, q)
    else:
        h_bar = h
    compat = leftover.is_zero()
    return FDifferentResult(level, h, g_e, h_bar, divisor, compat, center_ok,
                            None if compat else poly_digest(leftover))
