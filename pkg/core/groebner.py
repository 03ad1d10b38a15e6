# core/groebner.py
"""
Ideal arithmetic over F_p[x_1..x_n]: Buchberger with the normal selection
strategy and both of Buchberger's criteria, normal forms, membership,
intersections and colon ideals by elimination, bracket powers and the
complete-intersection colon shortcut.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import DegreeCapExceeded, FieldError, NotCompleteIntersectionError
from .field import (
    FieldCtx,
    Monomial,
    Q_BOUND,
    VarCtx,
    grevlex_key,
    guard_q,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    mono_one,
    power_of_p,
)
from .poly import MultiPoly, embed, frobenius, in_monomial_bracket, poly_pow

DEFAULT_DEGREE_CAP = 60

TermDict = Dict[Monomial, int]


@dataclass(frozen=True)
class MonomialOrder:
    """grevlex or lex on the variables listed most-significant first by `perm`."""
    tag: str = "grevlex"
    perm: Optional[Tuple[int, ...]] = None

    def __post_init__(self) -> None:
        if self.tag not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.tag!r}")

    def check(self, arity: int) -> None:
        if self.perm is not None and sorted(self.perm) != list(range(arity)):
            raise ValueError(f"order permutation {self.perm} is not a bijection on {arity} variables")

    def key(self, m: Monomial):
        if self.perm is not None:
            m = tuple(m[i] for i in self.perm)
        if self.tag == "lex":
            return m
        return grevlex_key(m)

GREVLEX = MonomialOrder("grevlex")


@dataclass(frozen=True)
class Ideal:
    """
    Generators in one context (zero generators stripped). A computed reduced basis
    is carried in `gb_cache`; computing one produces a new Ideal value.
    """
    field: FieldCtx
    vars: VarCtx
    gens: Tuple[MultiPoly, ...]
    gb_cache: Optional[Tuple[MonomialOrder, Tuple[MultiPoly, ...]]] = dc_field(default=None, compare=False)
    complete_intersection: bool = dc_field(default=False, compare=False)

    def __post_init__(self) -> None:
        gens = tuple(g for g in self.gens if not g.is_zero())
        for g in gens:
            if g.field != self.field or g.vars != self.vars:
                raise FieldError(f"generator {g} lives outside {self.field}[{self.vars}]")
        object.__setattr__(self, "gens", gens)

    @classmethod
    def of(cls, gens: Sequence[MultiPoly], field: Optional[FieldCtx] = None, vars: Optional[VarCtx] = None,
           complete_intersection: bool = False) -> "Ideal":
        if field is None or vars is None:
            if not gens:
                raise FieldError("an empty generator list needs an explicit context")
            field, vars = gens[0].field, gens[0].vars
        return cls(field, vars, tuple(gens), complete_intersection=complete_intersection)

    @classmethod
    def of_vars(cls, field: FieldCtx, vars: VarCtx, names: Iterable[str]) -> "Ideal":
        return cls(field, vars, tuple(MultiPoly.variable(field, vars, n) for n in names), complete_intersection=True)

    def is_zero(self) -> bool:
        return not self.gens

    def variable_names(self) -> Optional[Tuple[str, ...]]:
        """Names if every generator is a distinct variable (up to a unit), else None."""
        names = []
        for g in self.gens:
            if len(g) != 1:
                return None
            m, _ = g.leading()
            if sum(m) != 1:
                return None
            names.append(self.vars.names[m.index(1)])
        if len(set(names)) != len(names):
            return None
        return tuple(names)

    def basis(self, order: MonomialOrder = GREVLEX, degree_cap: int = DEFAULT_DEGREE_CAP) -> Tuple[MultiPoly, ...]:
        if self.gb_cache is not None and self.gb_cache[0] == order:
            return self.gb_cache[1]
        return buchberger(self, order, degree_cap).gb_cache[1]  # type: ignore[index]

    def __str__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.gens) + ")"


# ---------- dict-level kernels ----------
def _lead(d: TermDict, order: MonomialOrder) -> Monomial:
    return max(d, key=order.key)


def _sub_scaled(a: TermDict, b: TermDict, c: int, shift: Monomial, p: int) -> TermDict:
    """a - c * x^shift * b."""
    out = dict(a)
    for m, v in b.items():
        mm = mono_mul(m, shift)
        nv = (out.get(mm, 0) - c * v) % p
        if nv:
            out[mm] = nv
        else:
            out.pop(mm, None)
    return out


def _monic(d: TermDict, order: MonomialOrder, p: int) -> TermDict:
    if not d:
        return d
    inv = pow(d[_lead(d, order)], -1, p)
    return {m: v * inv % p for m, v in d.items()}


class _Elem:
    """Basis element with its leading monomial and an optional tracked cofactor."""
    __slots__ = ("d", "lm", "cof")

    def __init__(self, d: TermDict, lm: Monomial, cof: Optional[TermDict] = None) -> None:
        self.d = d
        self.lm = lm
        self.cof = cof


def _reduce(d: TermDict, basis: Sequence[_Elem], order: MonomialOrder, p: int,
            cof: Optional[TermDict] = None, full: bool = True) -> Tuple[TermDict, Optional[TermDict]]:
    """Multivariate division; returns the remainder (and the updated cofactor)."""
    rem: TermDict = {}
    cur = dict(d)
    while cur:
        lm = _lead(cur, order)
        lc = cur[lm]
        for b in basis:
            if mono_divides(b.lm, lm):
                shift = mono_div(lm, b.lm)
                c = lc * pow(b.d[b.lm], -1, p) % p
                cur = _sub_scaled(cur, b.d, c, shift, p)
                if cof is not None and b.cof is not None:
                    cof = _sub_scaled(cof, b.cof, c, shift, p)
                break
        else:
            if not full:
                rem.update(cur)
                return rem, cof
            rem[lm] = lc
            del cur[lm]
    return rem, cof


def _spoly(a: _Elem, b: _Elem, p: int) -> Tuple[TermDict, Optional[TermDict]]:
    lcm = mono_lcm(a.lm, b.lm)
    sa, sb = mono_div(lcm, a.lm), mono_div(lcm, b.lm)
    ia = pow(a.d[a.lm], -1, p)
    ib = pow(b.d[b.lm], -1, p)
    s = _sub_scaled({mono_mul(m, sa): v * ia % p for m, v in a.d.items()}, b.d, ib, sb, p)
    cof = None
    if a.cof is not None and b.cof is not None:
        cof = _sub_scaled({mono_mul(m, sa): v * ia % p for m, v in a.cof.items()}, b.cof, ib, sb, p)
    return s, cof


def _gb_core(polys: Sequence[Tuple[TermDict, Optional[TermDict]]], order: MonomialOrder, p: int,
             arity: int, degree_cap: int) -> List[_Elem]:
    basis: List[_Elem] = []
    for d, cof in polys:
        if d:
            basis.append(_Elem(dict(d), _lead(d, order), cof))
    pairs = {(i, j) for j in range(len(basis)) for i in range(j)}

    def lcm_deg(pr: Tuple[int, int]) -> Tuple[int, int, int]:
        i, j = pr
        return (sum(mono_lcm(basis[i].lm, basis[j].lm)), j, i)

    while pairs:
        # normal strategy: smallest lcm degree first
        pr = min(pairs, key=lcm_deg)
        pairs.discard(pr)
        i, j = pr
        a, b = basis[i], basis[j]
        lcm = mono_lcm(a.lm, b.lm)
        if sum(lcm) > degree_cap:
            raise DegreeCapExceeded(f"S-pair of degree {sum(lcm)} exceeds the cap {degree_cap}")
        # first criterion: coprime leading monomials
        if lcm == mono_mul(a.lm, b.lm):
            continue
        # second criterion: some k with lm_k | lcm and both (i,k), (j,k) already treated
        if any(
            k != i and k != j
            and mono_divides(basis[k].lm, lcm)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(basis))
        ):
            continue
        s, scof = _spoly(a, b, p)
        r, rcof = _reduce(s, basis, order, p, scof)
        if r:
            n = len(basis)
            basis.append(_Elem(r, _lead(r, order), rcof))
            pairs.update((k, n) for k in range(n))
    return basis


def _interreduce(basis: List[_Elem], order: MonomialOrder, p: int) -> List[_Elem]:
    # minimal: drop elements whose leading monomial is divisible by another's
    keep: List[_Elem] = []
    for k, b in enumerate(basis):
        if any(mono_divides(o.lm, b.lm) and (o.lm != b.lm or idx < k)
               for idx, o in enumerate(basis) if idx != k):
            continue
        keep.append(b)
    out: List[_Elem] = []
    for k, b in enumerate(keep):
        others = [o for idx, o in enumerate(keep) if idx != k]
        r, rcof = _reduce(b.d, [o for o in others], order, p, b.cof) if others else (b.d, b.cof)
        # leading term survives reduction since no other lm divides it
        lm = _lead(r, order)
        inv = pow(r[lm], -1, p)
        r = {m: v * inv % p for m, v in r.items()}
        if rcof is not None:
            rcof = {m: v * inv % p for m, v in rcof.items()}
        out.append(_Elem(r, lm, rcof))
    out.sort(key=lambda e: order.key(e.lm), reverse=True)
    return out


# ---------- public operations ----------
def buchberger(I: Ideal, order: MonomialOrder = GREVLEX, degree_cap: int = DEFAULT_DEGREE_CAP) -> Ideal:
    """Reduced Gröbner basis of I for `order`, returned as a new Ideal carrying it."""
    order.check(I.vars.arity)
    if I.gb_cache is not None and I.gb_cache[0] == order:
        return I
    p = I.field.p
    core = _gb_core([(dict(g.term_dict), None) for g in I.gens], order, p, I.vars.arity, degree_cap)
    reduced = _interreduce(core, order, p)
    gb = tuple(MultiPoly._raw(I.field, I.vars, e.d) for e in reduced)
    return Ideal(I.field, I.vars, I.gens, gb_cache=(order, gb), complete_intersection=I.complete_intersection)


def is_groebner(basis: Sequence[MultiPoly], order: MonomialOrder = GREVLEX) -> bool:
    """Every S-polynomial of the basis reduces to zero."""
    if not basis:
        return True
    p = basis[0].field.p
    elems = [_Elem(dict(g.term_dict), _lead(g.term_dict, order)) for g in basis if not g.is_zero()]
    for j in range(len(elems)):
        for i in range(j):
            s, _ = _spoly(elems[i], elems[j], p)
            r, _ = _reduce(s, elems, order, p)
            if r:
                return False
    return True


def normal_form(f: MultiPoly, I: Ideal, order: MonomialOrder = GREVLEX,
                degree_cap: int = DEFAULT_DEGREE_CAP) -> MultiPoly:
    if f.field != I.field or f.vars != I.vars:
        raise FieldError("polynomial and ideal live in different contexts")
    gb = I.basis(order, degree_cap)
    if not gb:
        return f
    elems = [_Elem(dict(g.term_dict), _lead(g.term_dict, order)) for g in gb]
    r, _ = _reduce(dict(f.term_dict), elems, order, I.field.p)
    return MultiPoly._raw(f.field, f.vars, r)


def member(f: MultiPoly, I: Ideal, order: MonomialOrder = GREVLEX, degree_cap: int = DEFAULT_DEGREE_CAP) -> bool:
    if f.is_zero():
        return True
    names = I.variable_names()
    if names is not None:
        return in_monomial_bracket(f, names, 1)
    return normal_form(f, I, order, degree_cap).is_zero()


def ideal_contains(I: Ideal, J: Ideal, degree_cap: int = DEFAULT_DEGREE_CAP) -> bool:
    """J ⊆ I."""
    if J.gens and I.is_zero():
        return False
    gb = buchberger(I, GREVLEX, degree_cap) if J.gens else I
    return all(member(g, gb, GREVLEX, degree_cap) for g in J.gens)


def ideal_equal(I: Ideal, J: Ideal, degree_cap: int = DEFAULT_DEGREE_CAP) -> bool:
    """Equality by mutual generator membership."""
    return ideal_contains(I, J, degree_cap) and ideal_contains(J, I, degree_cap)


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    if I.field != J.field or I.vars != J.vars:
        raise FieldError("ideals live in different contexts")
    return Ideal(I.field, I.vars, I.gens + J.gens)


def bracket_power(I: Ideal, q: int, q_bound: int = Q_BOUND) -> Ideal:
    """I^[q] = (g^q : g in gens I)."""
    power_of_p(q, I.field.p)
    guard_q(q, q_bound)
    return Ideal(I.field, I.vars, tuple(frobenius(g, q) for g in I.gens),
                 complete_intersection=I.complete_intersection)


def exact_divide(f: MultiPoly, g: MultiPoly) -> Optional[MultiPoly]:
    """f / g when g divides f, else None."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    p = f.field.p
    lm = _lead(g.term_dict, GREVLEX)
    elem = _Elem(dict(g.term_dict), lm)
    quot: TermDict = {}
    cur = dict(f.term_dict)
    inv = pow(g.term_dict[lm], -1, p)
    while cur:
        m = _lead(cur, GREVLEX)
        if not mono_divides(lm, m):
            return None
        shift = mono_div(m, lm)
        c = cur[m] * inv % p
        quot[shift] = (quot.get(shift, 0) + c) % p
        cur = _sub_scaled(cur, elem.d, c, shift, p)
    return MultiPoly._raw(f.field, f.vars, {m: c for m, c in quot.items() if c})


def _fresh_name(vars: VarCtx) -> str:
    k = 0
    while f"_w{k}" in vars.names:
        k += 1
    return f"_w{k}"


def intersect(I: Ideal, J: Ideal, degree_cap: int = DEFAULT_DEGREE_CAP) -> Ideal:
    """I ∩ J = (w·I + (1 - w)·J) ∩ k[x], w eliminated with lex (w first)."""
    if I.field != J.field or I.vars != J.vars:
        raise FieldError("ideals live in different contexts")
    field, vars = I.field, I.vars
    if I.is_zero() or J.is_zero():
        return Ideal(field, vars, ())
    w = _fresh_name(vars)
    big = VarCtx((w,) + vars.names)
    wp = MultiPoly.variable(field, big, w)
    one_minus_w = MultiPoly.one(field, big) - wp
    gens = [wp * embed(g, big) for g in I.gens] + [one_minus_w * embed(h, big) for h in J.gens]
    elim = buchberger(Ideal(field, big, tuple(gens)), MonomialOrder("lex"), degree_cap)
    kept = []
    for g in elim.gb_cache[1]:  # type: ignore[index]
        if g.degree_in(w) <= 0:
            kept.append(_drop_first(g, vars))
    return buchberger(Ideal(field, vars, tuple(kept)), GREVLEX, degree_cap)


def _drop_first(g: MultiPoly, vars: VarCtx) -> MultiPoly:
    return MultiPoly._raw(g.field, vars, {m[1:]: c for m, c in g.term_dict.items()})


def colon_principal(I: Ideal, f: MultiPoly, degree_cap: int = DEFAULT_DEGREE_CAP,
                    shortcut: bool = True) -> Ideal:
    """(I : f) = (I ∩ (f)) / f."""
    if f.is_zero():
        raise ZeroDivisionError("colon by the zero polynomial")
    field, vars = I.field, I.vars
    if f.is_constant():
        return buchberger(I, GREVLEX, degree_cap)
    if shortcut and I.gens:
        # in a domain (f·K : f) = K
        quots = [exact_divide(g, f) for g in I.gens]
        if all(q is not None for q in quots):
            return buchberger(Ideal(field, vars, tuple(quots)), GREVLEX, degree_cap)  # type: ignore[arg-type]
    inter = intersect(I, Ideal(field, vars, (f,)), degree_cap)
    gens = []
    for g in inter.gens:
        q = exact_divide(g, f)
        if q is None:
            raise ArithmeticError(f"{g} in I ∩ (f) is not divisible by {f}")
        gens.append(q)
    return buchberger(Ideal(field, vars, tuple(gens)), GREVLEX, degree_cap)


def colon(I: Ideal, J: Ideal, order: MonomialOrder = GREVLEX, degree_cap: int = DEFAULT_DEGREE_CAP,
          shortcut: bool = True, verify: bool = True) -> Ideal:
    """(I : J) = ∩_j (I : g_j)."""
    if J.is_zero():
        raise ZeroDivisionError("colon by the zero ideal")
    result: Optional[Ideal] = None
    for g in J.gens:
        part = colon_principal(I, g, degree_cap, shortcut)
        result = part if result is None else intersect(result, part, degree_cap)
    assert result is not None
    if verify and not I.is_zero():
        gb = buchberger(I, GREVLEX, degree_cap)
        for c in result.gens:
            for g in J.gens:
                if not member(c * g, gb, GREVLEX, degree_cap):
                    raise ArithmeticError(f"colon verification failed: {c}·{g} not in I")
    if order != GREVLEX:
        return buchberger(Ideal(result.field, result.vars, result.gens), order, degree_cap)
    return result


@dataclass(frozen=True)
class CIColon:
    ideal: Ideal        # J^[q] + (g_e)
    g_e: MultiPoly      # (g_1···g_r)^{q-1}
    bracket: Ideal      # J^[q]


def ci_colon_shortcut(J: Ideal, q: int, q_bound: int = Q_BOUND) -> CIColon:
    """For a complete intersection J: (J^[q] : J) = J^[q] + ((g_1···g_r)^{q-1})."""
    if not J.complete_intersection and J.variable_names() is None:
        raise NotCompleteIntersectionError(f"{J} is not flagged as a complete intersection")
    if J.is_zero():
        raise NotCompleteIntersectionError("the zero ideal has no complete-intersection colon")
    power_of_p(q, J.field.p)
    guard_q(q, q_bound)
    prod = MultiPoly.one(J.field, J.vars)
    for g in J.gens:
        prod = prod * g
    g_e = poly_pow(prod, q - 1)
    bracket = bracket_power(J, q, q_bound)
    return CIColon(Ideal(J.field, J.vars, bracket.gens + (g_e,)), g_e, bracket)


@dataclass(frozen=True)
class Division:
    quotient: MultiPoly     # cofactor of the distinguished element
    remainder: MultiPoly


def extended_division(f: MultiPoly, g_e: MultiPoly, K: Ideal, degree_cap: int = DEFAULT_DEGREE_CAP) -> Division:
    """
    Write f = h·g_e + k + r with k in K, tracking h through a Gröbner basis of
    (g_e) + K. r = 0 exactly when f lies in (g_e) + K.
    """
    p = f.field.p
    arity = f.vars.arity
    one = {mono_one(arity): 1}
    seeds: List[Tuple[TermDict, Optional[TermDict]]] = [(dict(g_e.term_dict), dict(one))]
    seeds += [(dict(g.term_dict), {}) for g in K.gens]
    core = _gb_core(seeds, GREVLEX, p, arity, degree_cap)
    reduced = _interreduce(core, GREVLEX, p)
    r, cof = _reduce(dict(f.term_dict), reduced, GREVLEX, p, {})
    # f - r = sum q_b · b, and each b = cof_b · g_e + (element of K); _reduce tracked -sum q_b·cof_b
    h = {m: (-v) % p for m, v in (cof or {}).items() if v % p}
    return Division(MultiPoly._raw(f.field, f.vars, h), MultiPoly._raw(f.field, f.vars, r))
