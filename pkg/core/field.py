# core/field.py
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

from sympy import isprime

from .errors import ExponentOverflowError, FieldError, FrobeniusBoundError, UnknownVariableError

Monomial = Tuple[int, ...]

P_LIMIT = 1 << 31
EXP_LIMIT = 1 << 32
Q_BOUND = 1 << 20

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class FieldCtx:
    """The prime field F_p; elements are plain ints kept in [0, p)."""
    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or not (2 <= self.p < P_LIMIT):
            raise FieldError(f"characteristic must be an integer in [2, 2^31), got {self.p!r}")
        if not isprime(self.p):
            raise FieldError(f"{self.p} is not prime")

    def __call__(self, a: int) -> int:
        return a % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return pow(a, -1, self.p)

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def elements(self) -> range:
        return range(self.p)

    def __str__(self) -> str:
        return f"F_{self.p}"


@dataclass(frozen=True)
class VarCtx:
    """Ordered variable names; position i is exponent slot i."""
    names: Tuple[str, ...]

    def __post_init__(self) -> None:
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise FieldError("variable context must be nonempty")
        for n in names:
            if not isinstance(n, str) or not _IDENT.match(n):
                raise FieldError(f"bad variable name {n!r}")
        if len(set(names)) != len(names):
            raise FieldError(f"duplicate variable names in {names}")

    @classmethod
    def of(cls, names: str | Iterable[str]) -> "VarCtx":
        if isinstance(names, str):
            names = [s.strip() for s in names.split(",") if s.strip()]
        return cls(tuple(names))

    @property
    def arity(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownVariableError(name) from None

    def indices(self, names: Iterable[str]) -> Tuple[int, ...]:
        return tuple(self.index(n) for n in names)

    def without(self, names: Iterable[str]) -> "VarCtx":
        drop = set(names)
        return VarCtx(tuple(n for n in self.names if n not in drop))

    def __str__(self) -> str:
        return ",".join(self.names)


# ---------- monomial helpers ----------
def mono_one(arity: int) -> Monomial:
    return (0,) * arity


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


def check_exponents(m: Monomial) -> Monomial:
    if any(e >= EXP_LIMIT for e in m):
        raise ExponentOverflowError(f"exponent exceeds 2^32 in {m}")
    return m


def grevlex_key(m: Monomial):
    """Larger key = larger monomial (x_1 > x_2 > ... > x_n)."""
    return (sum(m), tuple(-e for e in reversed(m)))


# ---------- Frobenius levels ----------
def power_of_p(q: int, p: int) -> int:
    """Return e with q = p^e, or raise."""
    if q < 1:
        raise FrobeniusBoundError(f"q = {q} is not a power of {p}")
    e = 0
    while q % p == 0:
        q //= p
        e += 1
    if q != 1:
        raise FrobeniusBoundError(f"q is not a power of {p}")
    return e


def guard_q(q: int, bound: int = Q_BOUND) -> int:
    if q > bound:
        raise FrobeniusBoundError(f"q = {q} exceeds the guard {bound}")
    return q


def digits_base(n: int, p: int) -> Sequence[int]:
    out = []
    while n:
        n, r = divmod(n, p)
        out.append(r)
    return out
