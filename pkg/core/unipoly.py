# core/unipoly.py
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from .errors import PthRootError, ZeroPolynomialError
from .field import FieldCtx


class UniPoly:
    """Dense univariate polynomial over F_p, coefficients low to high."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldCtx, coeffs: Iterable[int] = ()) -> None:
        p = field.p
        c = [int(a) % p for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.coeffs: Tuple[int, ...] = tuple(c)

    @classmethod
    def x(cls, field: FieldCtx) -> "UniPoly":
        return cls(field, (0, 1))

    @classmethod
    def constant(cls, field: FieldCtx, c: int) -> "UniPoly":
        return cls(field, (c,))

    @classmethod
    def linear_root(cls, field: FieldCtx, r: int) -> "UniPoly":
        """The monic factor t - r."""
        return cls(field, (-r, 1))

    # ---------- basics ----------
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def monic(self) -> "UniPoly":
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field.p, self.coeffs))

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (self.degree(), tuple(reversed(self.coeffs)))

    # ---------- arithmetic ----------
    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return UniPoly(self.field, ((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)))

    def __neg__(self) -> "UniPoly":
        return UniPoly(self.field, (-c for c in self.coeffs))

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def scale(self, c: int) -> "UniPoly":
        return UniPoly(self.field, (a * c for a in self.coeffs))

    def __mul__(self, other: "UniPoly | int") -> "UniPoly":
        if isinstance(other, int):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly(self.field)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return UniPoly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        result = UniPoly.constant(self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, other: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        p = self.field.p
        r = list(self.coeffs)
        db = other.degree()
        inv = self.field.inv(other.lead())
        q = [0] * max(len(r) - db, 0)
        b = other.coeffs
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k] % p
            if not c:
                continue
            f = c * inv % p
            q[k - db] = f
            for j in range(db + 1):
                r[k - db + j] -= f * b[j]
        return UniPoly(self.field, q), UniPoly(self.field, r[:db] if db > 0 else ())

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[1]

    def derivative(self) -> "UniPoly":
        return UniPoly(self.field, (k * c for k, c in enumerate(self.coeffs) if k))

    def __call__(self, x: int) -> int:
        p = self.field.p
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % p
        return acc

    def compose(self, g: "UniPoly") -> "UniPoly":
        """self(g(s))."""
        acc = UniPoly(self.field)
        for c in reversed(self.coeffs):
            acc = acc * g + UniPoly.constant(self.field, c)
        return acc

    def pow_mod(self, n: int, modulus: "UniPoly") -> "UniPoly":
        result = UniPoly.constant(self.field, 1) % modulus
        base = self % modulus
        while n:
            if n & 1:
                result = (result * base) % modulus
            n >>= 1
            if n:
                base = (base * base) % modulus
        return result

    # ---------- printing ----------
    def format(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        out = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if not mono:
                out.append(str(c))
            elif c == 1:
                out.append(mono)
            else:
                out.append(f"{c}*{mono}")
        return "+".join(out)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"UniPoly({self}, {self.field})"


# ---------- gcd and radicals ----------
def uni_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd by Euclid; gcd(0, 0) = 0."""
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def pth_root(f: UniPoly) -> UniPoly:
    """Divide every exponent by p; coefficients of F_p are Frobenius-fixed."""
    p = f.field.p
    for k, c in enumerate(f.coeffs):
        if c and k % p:
            raise PthRootError(f"exponent {k} of {f} is not divisible by {p}")
    return UniPoly(f.field, f.coeffs[::p])


def squarefree_part(f: UniPoly) -> UniPoly:
    """Monic radical of f."""
    if f.is_zero():
        raise ZeroPolynomialError("radical of the zero polynomial")
    f = f.monic()
    if f.degree() <= 0:
        return UniPoly.constant(f.field, 1)
    df = f.derivative()
    if df.is_zero():
        return squarefree_part(pth_root(f))
    g = uni_gcd(f, df)
    rad = f // g
    # what remains of g has multiplicities divisible by p
    c = uni_gcd(g, rad)
    while c.degree() > 0:
        g = g // c
        c = uni_gcd(g, rad)
    if g.degree() > 0:
        rad = rad * squarefree_part(pth_root(g))
    return rad.monic()


def squarefree_decomposition(f: UniPoly) -> List[Tuple[UniPoly, int]]:
    """[(g_i, m_i)] with f = lead * prod g_i^{m_i}, g_i squarefree, monic, coprime."""
    if f.is_zero():
        raise ZeroPolynomialError("decomposition of the zero polynomial")
    field = f.field
    f = f.monic()
    if f.degree() <= 0:
        return []
    out: List[Tuple[UniPoly, int]] = []
    c = uni_gcd(f, f.derivative()) if not f.derivative().is_zero() else f
    w = f // c
    i = 1
    while w.degree() > 0:
        y = uni_gcd(w, c)
        fac = w // y
        if fac.degree() > 0:
            out.append((fac.monic(), i))
        w = y
        c = c // y
        i += 1
    if c.degree() > 0:
        for g, m in squarefree_decomposition(pth_root(c)):
            out.append((g, m * field.p))
    return out


# ---------- factorization over F_p ----------
@dataclass(frozen=True)
class Factor:
    poly: UniPoly
    multiplicity: int
    certified: bool = True


def distinct_degree_factor(f: UniPoly, d_max: int = 3) -> Tuple[List[Tuple[UniPoly, int, bool]], UniPoly]:
    """
    f monic squarefree. Returns ([(g, d, certified)], rest): g is the product of
    the irreducible factors of degree d; rest collects factors of degree > d_max.
    """
    field = f.field
    x = UniPoly.x(field)
    one = UniPoly.constant(field, 1)
    rest = f.monic()
    out: List[Tuple[UniPoly, int, bool]] = []
    h = x
    d = 0
    while rest.degree() >= 2 * (d + 1):
        if d + 1 > d_max:
            return out, rest
        d += 1
        h = h.pow_mod(field.p, rest)
        g = uni_gcd(h - x, rest)
        if g.degree() > 0:
            out.append((g, d, True))
            rest = rest // g
            h = h % rest
    if rest.degree() > 0:
        # every factor of degree <= d is gone and deg(rest) < 2(d+1): rest is irreducible
        out.append((rest, rest.degree(), True))
    return out, one


def equal_degree_split(f: UniPoly, d: int, seed: int = 0) -> List[UniPoly]:
    """Split a monic squarefree f whose irreducible factors all have degree d."""
    if f.degree() <= d:
        return [f.monic()]
    field = f.field
    p = field.p
    rng = random.Random(seed * 1000003 + f.degree())
    while True:
        a = UniPoly(field, [rng.randrange(p) for _ in range(f.degree())])
        if a.degree() <= 0:
            continue
        if p == 2:
            b = UniPoly(field)
            t = a % f
            for _ in range(d):
                b = b + t
                t = (t * t) % f
        else:
            b = a.pow_mod((p ** d - 1) // 2, f) - UniPoly.constant(field, 1)
        g = uni_gcd(b, f)
        if 0 < g.degree() < f.degree():
            return equal_degree_split(g, d, seed + 1) + equal_degree_split(f // g, d, seed + 2)


def factor(f: UniPoly, d_max: int = 3) -> List[Factor]:
    """Monic irreducible factors with multiplicities, sorted by (degree, coefficients)."""
    out: List[Factor] = []
    for g, m in squarefree_decomposition(f):
        parts, rest = distinct_degree_factor(g, d_max)
        for prod, d, cert in parts:
            for piece in equal_degree_split(prod, d):
                out.append(Factor(piece.monic(), m, cert))
        if rest.degree() > 0:
            out.append(Factor(rest.monic(), m, False))
    out.sort(key=lambda fc: fc.poly.sort_key())
    return out


def roots(f: UniPoly) -> List[int]:
    """Distinct F_p-roots, ascending."""
    if f.is_zero():
        raise ZeroPolynomialError("roots of the zero polynomial")
    p = f.field.p
    return sorted((-fc.poly.coeffs[0]) % p for fc in factor(f) if fc.poly.degree() == 1)


def multiplicity_at(f: UniPoly, prime: UniPoly) -> int:
    """ord_prime(f) for a monic irreducible prime; f must be nonzero."""
    if f.is_zero():
        raise ZeroPolynomialError("order of vanishing of the zero polynomial")
    k = 0
    q, r = divmod(f, prime)
    while r.is_zero():
        k += 1
        f = q
        q, r = divmod(f, prime)
    return k


def from_roots(field: FieldCtx, rs: Sequence[int]) -> UniPoly:
    out = UniPoly.constant(field, 1)
    for r in rs:
        out = out * UniPoly.linear_root(field, r)
    return out
