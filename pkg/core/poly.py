# core/poly.py
from __future__ import annotations

from typing import Callable, Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

from .errors import ExponentOverflowError, FieldError, FrobeniusBoundError
from .field import (
    EXP_LIMIT,
    FieldCtx,
    Monomial,
    VarCtx,
    check_exponents,
    digits_base,
    grevlex_key,
    mono_mul,
    mono_one,
    power_of_p,
)
from .unipoly import UniPoly

TermDict = Dict[Monomial, int]


class MultiPoly:
    """
    Sparse polynomial over F_p in a fixed variable context.

    Canonical form: no zero coefficients, no repeated monomials, terms sorted
    by graded reverse lexicographic order, largest first. Values are immutable;
    every operation returns a new polynomial.
    """

    __slots__ = ("field", "vars", "_d", "_terms", "_hash")

    def __init__(
        self,
        field: FieldCtx,
        vars: VarCtx,
        terms: Union[Mapping[Monomial, int], Iterable[Tuple[int, Monomial]]] = (),
    ) -> None:
        self.field = field
        self.vars = vars
        p = field.p
        n = vars.arity
        acc: TermDict = {}
        items = terms.items() if isinstance(terms, Mapping) else ((m, c) for c, m in terms)
        for m, c in items:
            m = tuple(int(e) for e in m)
            if len(m) != n:
                raise FieldError(f"monomial {m} does not match arity {n}")
            if any(e < 0 for e in m):
                raise ExponentOverflowError(f"negative exponent in {m}")
            check_exponents(m)
            acc[m] = (acc.get(m, 0) + int(c)) % p
        self._d: TermDict = {m: c for m, c in acc.items() if c}
        self._terms: Optional[Tuple[Tuple[Monomial, int], ...]] = None
        self._hash: Optional[int] = None

    # ---------- constructors ----------
    @classmethod
    def _raw(cls, field: FieldCtx, vars: VarCtx, d: TermDict) -> "MultiPoly":
        """Trusted constructor: d is already reduced with no zero values."""
        obj = cls.__new__(cls)
        obj.field = field
        obj.vars = vars
        obj._d = d
        obj._terms = None
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, field: FieldCtx, vars: VarCtx) -> "MultiPoly":
        return cls._raw(field, vars, {})

    @classmethod
    def constant(cls, field: FieldCtx, vars: VarCtx, c: int) -> "MultiPoly":
        c %= field.p
        return cls._raw(field, vars, {mono_one(vars.arity): c} if c else {})

    @classmethod
    def one(cls, field: FieldCtx, vars: VarCtx) -> "MultiPoly":
        return cls.constant(field, vars, 1)

    @classmethod
    def variable(cls, field: FieldCtx, vars: VarCtx, name: str) -> "MultiPoly":
        i = vars.index(name)
        m = tuple(1 if k == i else 0 for k in range(vars.arity))
        return cls._raw(field, vars, {m: 1})

    @classmethod
    def monomial(cls, field: FieldCtx, vars: VarCtx, m: Monomial, c: int = 1) -> "MultiPoly":
        return cls(field, vars, {tuple(m): c})

    # ---------- views ----------
    @property
    def term_dict(self) -> Mapping[Monomial, int]:
        return self._d

    def sorted_terms(self) -> Tuple[Tuple[Monomial, int], ...]:
        if self._terms is None:
            self._terms = tuple(sorted(self._d.items(), key=lambda t: grevlex_key(t[0]), reverse=True))
        return self._terms

    @property
    def terms(self) -> Tuple[Tuple[int, Monomial], ...]:
        """(coefficient, monomial) pairs in canonical order."""
        return tuple((c, m) for m, c in self.sorted_terms())

    def __iter__(self) -> Iterator[Tuple[int, Monomial]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self._d)

    def is_zero(self) -> bool:
        return not self._d

    def is_constant(self) -> bool:
        return not self._d or (len(self._d) == 1 and not any(next(iter(self._d))))

    def constant_term(self) -> int:
        return self._d.get(mono_one(self.vars.arity), 0)

    def coeff(self, m: Monomial) -> int:
        return self._d.get(tuple(m), 0)

    def total_degree(self) -> int:
        return max((sum(m) for m in self._d), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        return max((m[i] for m in self._d), default=-1)

    def support_vars(self) -> Tuple[str, ...]:
        used = [False] * self.vars.arity
        for m in self._d:
            for i, e in enumerate(m):
                if e:
                    used[i] = True
        return tuple(n for n, u in zip(self.vars.names, used) if u)

    def leading(self) -> Tuple[Monomial, int]:
        return self.sorted_terms()[0]

    # ---------- comparisons ----------
    def same_ctx(self, other: "MultiPoly") -> None:
        if self.field != other.field or self.vars != other.vars:
            raise FieldError(f"context mismatch: {self.field}[{self.vars}] vs {other.field}[{other.vars}]")

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self == MultiPoly.constant(self.field, self.vars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.field == other.field and self.vars == other.vars and self._d == other._d

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field.p, self.vars.names, self.sorted_terms()))
        return self._hash

    # ---------- ring operations ----------
    def _lift(self, other: Union["MultiPoly", int]) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self.same_ctx(other)
            return other
        if isinstance(other, int):
            return MultiPoly.constant(self.field, self.vars, other)
        raise TypeError(f"cannot combine MultiPoly with {type(other).__name__}")

    def __add__(self, other: Union["MultiPoly", int]) -> "MultiPoly":
        other = self._lift(other)
        p = self.field.p
        d = dict(self._d)
        for m, c in other._d.items():
            v = (d.get(m, 0) + c) % p
            if v:
                d[m] = v
            else:
                d.pop(m, None)
        return MultiPoly._raw(self.field, self.vars, d)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        p = self.field.p
        return MultiPoly._raw(self.field, self.vars, {m: p - c for m, c in self._d.items()})

    def __sub__(self, other: Union["MultiPoly", int]) -> "MultiPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other: int) -> "MultiPoly":
        return self._lift(other) - self

    def scale(self, c: int) -> "MultiPoly":
        p = self.field.p
        c %= p
        if not c:
            return MultiPoly.zero(self.field, self.vars)
        return MultiPoly._raw(self.field, self.vars, {m: (v * c) % p for m, v in self._d.items()})

    def __mul__(self, other: Union["MultiPoly", int]) -> "MultiPoly":
        if isinstance(other, int):
            return self.scale(other)
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        return poly_pow(self, n)

    def monic(self) -> "MultiPoly":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.leading()[1]))

    # ---------- printing ----------
    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"MultiPoly({self}, {self.field}, vars={self.vars})"


# ---------- printing ----------
def format_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(f: MultiPoly) -> str:
    if f.is_zero():
        return "0"
    out = []
    for m, c in f.sorted_terms():
        mono = format_monomial(m, f.vars.names)
        if not mono:
            out.append(str(c))
        elif c == 1:
            out.append(mono)
        else:
            out.append(f"{c}*{mono}")
    return "+".join(out)


# ---------- multiplication kernels ----------
Keep = Optional[Callable[[Monomial], bool]]


def _mul_dicts(a: TermDict, b: TermDict, p: int, keep: Keep = None) -> TermDict:
    if len(a) < len(b):
        a, b = b, a
    acc: Dict[Monomial, int] = {}
    get = acc.get
    for mb, cb in b.items():
        for ma, ca in a.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            if keep is not None and not keep(m):
                continue
            acc[m] = get(m, 0) + ca * cb
    return {m: c % p for m, c in acc.items() if c % p}


def _bracket_keep(idx: Sequence[int], q: int) -> Callable[[Monomial], bool]:
    return lambda m: all(m[i] < q for i in idx)


def poly_mul(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    f.same_ctx(g)
    if f.is_zero() or g.is_zero():
        return MultiPoly.zero(f.field, f.vars)
    return MultiPoly._raw(f.field, f.vars, _mul_dicts(f._d, g._d, f.field.p))


def mul_mod_bracket(f: MultiPoly, g: MultiPoly, names: Iterable[str], q: int) -> MultiPoly:
    """f·g modulo the monomial ideal (x^q : x in names)."""
    f.same_ctx(g)
    keep = _bracket_keep(f.vars.indices(names), q)
    return MultiPoly._raw(f.field, f.vars, _mul_dicts(f._d, g._d, f.field.p, keep))


# ---------- powers ----------
def frobenius(f: MultiPoly, q: int) -> MultiPoly:
    """f^q for q a power of p: exponents scale by q, coefficients are fixed."""
    power_of_p(q, f.field.p)
    if any(e * q >= EXP_LIMIT for m in f._d for e in m):
        raise ExponentOverflowError(f"f^{q} overflows the exponent bound")
    return MultiPoly._raw(f.field, f.vars, {tuple(e * q for e in m): c for m, c in f._d.items()})


def pow_by_squaring(f: MultiPoly, n: int, keep: Keep = None) -> MultiPoly:
    p = f.field.p
    result: TermDict = {mono_one(f.vars.arity): 1}
    base = dict(f._d)
    while n:
        if n & 1:
            result = _mul_dicts(result, base, p, keep)
        n >>= 1
        if n:
            base = _mul_dicts(base, base, p, keep)
    return MultiPoly._raw(f.field, f.vars, result)


def _check_pow(f: MultiPoly, n: int) -> None:
    if n < 0:
        raise ValueError("negative exponent")
    if n * max(f.total_degree(), 0) >= EXP_LIMIT:
        raise ExponentOverflowError(f"f^{n} overflows the exponent bound")


def poly_pow(f: MultiPoly, n: int) -> MultiPoly:
    """
    f^n. n = p^k takes the Frobenius path; other n are split into base-p digits,
    f^n = prod_i (f^{d_i})^{p^i}, each f^{d_i} by binary exponentiation.
    """
    _check_pow(f, n)
    if n == 0:
        return MultiPoly.one(f.field, f.vars)
    if f.is_zero():
        return f
    p = f.field.p
    digits = digits_base(n, p)
    if sum(digits) == 1:
        return frobenius(f, n)
    result = MultiPoly.one(f.field, f.vars)
    for i, d in enumerate(digits):
        if d:
            result = poly_mul(result, frobenius(pow_by_squaring(f, d), p ** i))
    return result


def pow_mod_bracket(f: MultiPoly, n: int, names: Iterable[str], q: int) -> MultiPoly:
    """f^n modulo (x^q : x in names); truncation commutes with every product."""
    _check_pow(f, n)
    names = tuple(names)
    idx = f.vars.indices(names)
    keep = _bracket_keep(idx, q)
    if n == 0:
        return truncate_mod_bracket(MultiPoly.one(f.field, f.vars), names, q, _checked=True)
    p = f.field.p
    base = truncate_mod_bracket(f, names, q, _checked=True)
    result: TermDict = {mono_one(f.vars.arity): 1}
    for i, d in enumerate(digits_base(n, p)):
        if not d:
            continue
        part = pow_by_squaring(base, d, keep)
        scale = p ** i
        lifted = {tuple(e * scale for e in m): c for m, c in part._d.items()}
        lifted = {m: c for m, c in lifted.items() if keep(m)}
        result = _mul_dicts(result, lifted, p, keep)
        if not result:
            break
    return MultiPoly._raw(f.field, f.vars, result)


# ---------- coefficient extraction and truncation ----------
def coeff_of(f: MultiPoly, partial: Mapping[str, int]) -> MultiPoly:
    """Polynomial in the other variables multiplying prod x_i^{partial[i]} exactly."""
    idx = [(f.vars.index(n), e) for n, e in partial.items()]
    d: TermDict = {}
    for m, c in f._d.items():
        if all(m[i] == e for i, e in idx):
            mm = list(m)
            for i, _ in idx:
                mm[i] = 0
            d[tuple(mm)] = c
    return MultiPoly._raw(f.field, f.vars, d)


def truncate_mod_bracket(f: MultiPoly, names: Iterable[str], q: int, _checked: bool = False) -> MultiPoly:
    """Drop every term with some listed exponent >= q (reduction mod (x_i^q))."""
    if not _checked and power_of_p(q, f.field.p) < 1:
        raise FrobeniusBoundError(f"q = {q} must be p^e with e >= 1")
    keep = _bracket_keep(f.vars.indices(names), q)
    return MultiPoly._raw(f.field, f.vars, {m: c for m, c in f._d.items() if keep(m)})


def in_monomial_bracket(f: MultiPoly, names: Iterable[str], q: int) -> bool:
    """f in (x^q : x in names)?"""
    idx = f.vars.indices(names)
    return all(any(m[i] >= q for i in idx) for m in f._d)


# ---------- evaluation and substitution ----------
def evaluate(f: Union[MultiPoly, UniPoly], point: Sequence[int]) -> int:
    if isinstance(f, UniPoly):
        if len(point) != 1:
            raise FieldError(f"arity mismatch: univariate polynomial at {len(point)} values")
        return f(point[0])
    if len(point) != f.vars.arity:
        raise FieldError(f"arity mismatch: {f.vars.arity} variables, {len(point)} values")
    p = f.field.p
    pt = [v % p for v in point]
    total = 0
    for m, c in f._d.items():
        v = c
        for x, e in zip(pt, m):
            if e:
                v = v * pow(x, e, p) % p
        total += v
    return total % p


def substitute_shift(f: MultiPoly, shift: Mapping[str, int]) -> MultiPoly:
    """Apply x ↦ x + c for each (x, c) in shift."""
    field, vars = f.field, f.vars
    shifts = {vars.index(n): c % field.p for n, c in shift.items() if c % field.p}
    if not shifts:
        return f
    cache: Dict[Tuple[int, int], MultiPoly] = {}

    def lin_pow(i: int, e: int) -> MultiPoly:
        key = (i, e)
        if key not in cache:
            lin = MultiPoly.variable(field, vars, vars.names[i]) + shifts[i]
            cache[key] = poly_pow(lin, e)
        return cache[key]

    out = MultiPoly.zero(field, vars)
    for m, c in f._d.items():
        rest = tuple(0 if i in shifts else e for i, e in enumerate(m))
        term = MultiPoly._raw(field, vars, {rest: c})
        for i in shifts:
            if m[i]:
                term = poly_mul(term, lin_pow(i, m[i]))
        out = out + term
    return out


def specialize(f: MultiPoly, assign: Mapping[str, int]) -> MultiPoly:
    """Set the named variables to F_p values (their exponent slots become 0)."""
    p = f.field.p
    idx = [(f.vars.index(n), v % p) for n, v in assign.items()]
    acc: TermDict = {}
    for m, c in f._d.items():
        mm = list(m)
        for i, v in idx:
            if mm[i]:
                c = c * pow(v, mm[i], p) % p
                mm[i] = 0
        if c:
            k = tuple(mm)
            acc[k] = (acc.get(k, 0) + c) % p
    return MultiPoly._raw(f.field, f.vars, {m: c for m, c in acc.items() if c})


def derivative(f: MultiPoly, name: str) -> MultiPoly:
    i = f.vars.index(name)
    p = f.field.p
    d: TermDict = {}
    for m, c in f._d.items():
        e = m[i]
        if e % p:
            mm = list(m)
            mm[i] = e - 1
            d[tuple(mm)] = c * e % p
    return MultiPoly._raw(f.field, f.vars, d)


def drop_vars(f: MultiPoly, names: Iterable[str]) -> MultiPoly:
    """Restrict to the context without `names`; f must not involve them."""
    names = tuple(names)
    idx = set(f.vars.indices(names))
    new_vars = f.vars.without(names)
    d: TermDict = {}
    for m, c in f._d.items():
        if any(m[i] for i in idx):
            raise FieldError(f"{f} involves a dropped variable among {names}")
        d[tuple(e for i, e in enumerate(m) if i not in idx)] = c
    return MultiPoly._raw(f.field, new_vars, d)


def embed(f: MultiPoly, vars: VarCtx) -> MultiPoly:
    """Re-express f in a larger (or reordered) context containing its variables."""
    pos = [vars.index(n) for n in f.vars.names]
    d: TermDict = {}
    for m, c in f._d.items():
        mm = [0] * vars.arity
        for i, e in zip(pos, m):
            mm[i] = e
        d[tuple(mm)] = c
    return MultiPoly._raw(f.field, vars, d)


def to_unipoly(f: MultiPoly, name: Optional[str] = None) -> UniPoly:
    used = f.support_vars()
    if name is None:
        if len(used) > 1:
            raise FieldError(f"{f} is not univariate")
        name = used[0] if used else f.vars.names[0]
    elif any(u != name for u in used):
        raise FieldError(f"{f} involves variables other than {name}")
    i = f.vars.index(name)
    deg = max((m[i] for m in f._d), default=-1)
    coeffs = [0] * (deg + 1)
    for m, c in f._d.items():
        coeffs[m[i]] = c
    return UniPoly(f.field, coeffs)


def from_unipoly(u: UniPoly, vars: VarCtx, name: str) -> MultiPoly:
    i = vars.index(name)
    d: TermDict = {}
    for k, c in enumerate(u.coeffs):
        if c:
            d[tuple(k if j == i else 0 for j in range(vars.arity))] = c
    return MultiPoly._raw(u.field, vars, d)
