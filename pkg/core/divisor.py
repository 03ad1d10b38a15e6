# core/divisor.py
"""
Q-divisors on the affine line over F_p.

A prime is a monic irreducible polynomial in one variable, so support that
is not F_p-rational (t^2+4*t+1 over F_5, say) is still a single prime.
Irreducibility is proved for degree <= 3; larger leftover factors carry an
`uncertified` mark.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from .errors import FieldError, WildRamificationError, ZeroPolynomialError
from .field import FieldCtx, VarCtx
from .parse import parse_poly
from .poly import to_unipoly
from .unipoly import UniPoly, factor

Rational = Union[Fraction, int]


def _key(u: UniPoly):
    return u.sort_key()


class QDivisor:
    """Formal sum Σ c_π·[π] with exact rational coefficients; zero coefficients are pruned."""

    __slots__ = ("field", "var", "_terms", "_uncertified")

    def __init__(self, field: FieldCtx, terms: Optional[Mapping[UniPoly, Rational]] = None, var: str = "t",
                 uncertified: Iterable[UniPoly] = ()) -> None:
        self.field = field
        self.var = var
        acc: Dict[UniPoly, Fraction] = {}
        for prime, c in (terms or {}).items():
            if prime.field != field:
                raise FieldError(f"prime {prime} lives over {prime.field}, divisor over {field}")
            if prime.degree() < 1:
                raise FieldError(f"a prime divisor needs positive degree, got {prime}")
            prime = prime.monic()
            acc[prime] = acc.get(prime, Fraction(0)) + Fraction(c)
        self._terms = {k: v for k, v in acc.items() if v}
        self._uncertified = frozenset(u.monic() for u in uncertified if u.monic() in self._terms)

    @classmethod
    def zero(cls, field: FieldCtx, var: str = "t") -> "QDivisor":
        return cls(field, {}, var)

    @classmethod
    def prime(cls, prime: UniPoly, coeff: Rational = 1, var: str = "t") -> "QDivisor":
        """coeff·[prime]; a label with a proper factor is refused."""
        if prime.degree() >= 2:
            parts = factor(prime)
            if len(parts) != 1 or parts[0].multiplicity != 1:
                raise FieldError(f"{prime.format(var)} is not irreducible")
        return cls(prime.field, {prime: coeff}, var)

    @classmethod
    def from_poly(cls, f: UniPoly, coeff: Rational = 1, var: str = "t") -> "QDivisor":
        """coeff·div(f): each irreducible factor weighted by its multiplicity."""
        if f.is_zero():
            raise ZeroPolynomialError("div(0) is undefined")
        terms: Dict[UniPoly, Fraction] = {}
        shaky = []
        for fc in factor(f):
            terms[fc.poly] = terms.get(fc.poly, Fraction(0)) + Fraction(coeff) * fc.multiplicity
            if not fc.certified:
                shaky.append(fc.poly)
        return cls(f.field, terms, var, shaky)

    # ---------- views ----------
    def items(self) -> List[Tuple[UniPoly, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: _key(kv[0]))

    def __iter__(self) -> Iterator[Tuple[UniPoly, Fraction]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_certified(self, prime: UniPoly) -> bool:
        return prime.monic() not in self._uncertified

    @property
    def uncertified(self) -> frozenset:
        return self._uncertified

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QDivisor):
            return NotImplemented
        return self.field == other.field and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.field.p, tuple(self.items())))

    def __add__(self, other: "QDivisor") -> "QDivisor":
        return div_add(self, other)

    def __sub__(self, other: "QDivisor") -> "QDivisor":
        return div_sub(self, other)

    def __neg__(self) -> "QDivisor":
        return div_scale(-1, self)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*[{u.format(self.var)}]" for u, c in self.items())

    def __repr__(self) -> str:
        return f"QDivisor({self}, {self.field})"


# ---------- arithmetic ----------
def _same_field(D1: QDivisor, D2: QDivisor) -> None:
    if D1.field != D2.field:
        raise FieldError(f"divisors over {D1.field} and {D2.field}")


def div_add(D1: QDivisor, D2: QDivisor) -> QDivisor:
    _same_field(D1, D2)
    terms: Dict[UniPoly, Fraction] = dict(D1._terms)
    for u, c in D2._terms.items():
        terms[u] = terms.get(u, Fraction(0)) + c
    return QDivisor(D1.field, terms, D1.var, D1._uncertified | D2._uncertified)


def div_scale(c: Rational, D: QDivisor) -> QDivisor:
    c = Fraction(c)
    return QDivisor(D.field, {u: c * v for u, v in D._terms.items()}, D.var, D._uncertified)


def div_sub(D1: QDivisor, D2: QDivisor) -> QDivisor:
    return div_add(D1, div_scale(-1, D2))


def coeff_at(D: QDivisor, prime: UniPoly) -> Fraction:
    if prime.field != D.field:
        raise FieldError(f"prime over {prime.field}, divisor over {D.field}")
    return D._terms.get(prime.monic(), Fraction(0))


def support(D: QDivisor) -> List[UniPoly]:
    return [u for u, _ in D.items()]


def degree(D: QDivisor) -> Fraction:
    """Σ c_π·deg π."""
    return sum((c * u.degree() for u, c in D._terms.items()), Fraction(0))


def dvr_subfpure_ok(coeff: Rational) -> bool:
    """Sub-F-purity of (Spec of a DVR, c·[π]) holds exactly when c <= 1."""
    return Fraction(coeff) <= 1


def threshold_at(D: QDivisor, prime: UniPoly) -> Fraction:
    """The largest s with (A^1, D + s·[π]) sub-F-pure near π: 1 - coeff_π(D)."""
    return 1 - coeff_at(D, prime)


# ---------- base change along a map of affine lines ----------
@dataclass(frozen=True)
class BaseMap:
    """s ↦ g(s) from the cover line (variable cover_var) to the base line (base_var)."""
    g: UniPoly
    base_var: str = "t"
    cover_var: str = "s"

    def __post_init__(self) -> None:
        if self.g.degree() < 1:
            raise FieldError(f"a base map needs positive degree, got {self.g.format(self.cover_var)}")
        if self.g.derivative().is_zero():
            raise WildRamificationError(
                f"g = {self.g.format(self.cover_var)} has vanishing derivative (inseparable)")

    @property
    def field(self) -> FieldCtx:
        return self.g.field


def pullback(D: QDivisor, phi: BaseMap) -> QDivisor:
    """Σ c_π·div_s(π(g(s))); a ramification index divisible by p is rejected as wild."""
    if D.field != phi.field:
        raise FieldError(f"divisor over {D.field}, map over {phi.field}")
    p = D.field.p
    terms: Dict[UniPoly, Fraction] = {}
    shaky: List[UniPoly] = []
    for prime, c in D.items():
        for fc in factor(prime.compose(phi.g)):
            if fc.multiplicity % p == 0:
                raise WildRamificationError(
                    f"[{prime.format(phi.base_var)}] pulls back with index {fc.multiplicity} "
                    f"at [{fc.poly.format(phi.cover_var)}], divisible by p = {p}")
            terms[fc.poly] = terms.get(fc.poly, Fraction(0)) + c * fc.multiplicity
            if not fc.certified:
                shaky.append(fc.poly)
    return QDivisor(D.field, terms, phi.cover_var, shaky)


def ramification_divisor(phi: BaseMap) -> QDivisor:
    dg = phi.g.derivative()
    if dg.degree() == 0:
        return QDivisor.zero(phi.field, phi.cover_var)
    return QDivisor.from_poly(dg, 1, phi.cover_var)


def base_change_transform(D: QDivisor, phi: BaseMap) -> QDivisor:
    """The boundary on the cover: pullback minus ramification."""
    return div_sub(pullback(D, phi), ramification_divisor(phi))


# ---------- JSON ----------
def encode_divisor(D: QDivisor) -> List[Dict[str, object]]:
    out: List[Dict[str, object]] = []
    for u, c in D.items():
        entry: Dict[str, object] = {"prime": u.format(D.var), "coeff": f"{c.numerator}/{c.denominator}"}
        if not D.is_certified(u):
            entry["certified"] = False
        out.append(entry)
    return out


def decode_divisor(data: Iterable[Mapping[str, object]], field: FieldCtx, var: str = "t") -> QDivisor:
    vars = VarCtx((var,))
    terms: Dict[UniPoly, Fraction] = {}
    shaky: List[UniPoly] = []
    for entry in data:
        try:
            text = str(entry["prime"])
            coeff = Fraction(str(entry["coeff"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise FieldError(f"bad divisor entry {entry!r}: {exc}") from None
        u = to_unipoly(parse_poly(text, vars, field), var)
        if u.degree() < 1 or u.lead() != 1:
            raise FieldError(f"prime label {text!r} must be monic of positive degree")
        # a reducible label stands for coeff·div(u)
        for fc in factor(u):
            terms[fc.poly] = terms.get(fc.poly, Fraction(0)) + coeff * fc.multiplicity
            if not fc.certified or entry.get("certified", True) is False:
                shaky.append(fc.poly)
    return QDivisor(field, terms, var, shaky)
