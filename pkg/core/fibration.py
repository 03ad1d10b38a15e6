# core/fibration.py
"""
One-parameter families of plane cubics a(x, y, z; t) = 0 over the t-line.

The fiberwise route: a fiber y^2 = f_λ(x) is Frobenius split exactly when its
Hasse invariant (coefficient of x^{p-1} in f_λ^{(p-1)/2}) is nonzero; for
p >= 5 that is also #E(F_p) != p + 1. The global route reads h(t), the
coefficient of (xyz)^{q-1} in a^{q-1}, and assembles div(h)/(q-1) on the base.
The scan checks that both routes agree fiber by fiber.
"""
from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import comb
from tqdm import tqdm

from .config import ConfigManager
from .divisor import QDivisor, support, threshold_at
from .errors import (
    DegenerateFiberError,
    FrobeniusBoundError,
    NotGenericallySplitError,
    NotWeierstrassError,
    OracleMismatchError,
    UnsupportedCharacteristicError,
)
from .fedder import FrobeniusLevel, fpure_pair
from .field import FieldCtx, VarCtx
from .log_utils import LogFile
from .parse import parse_poly
from .poly import MultiPoly, coeff_of, pow_mod_bracket, specialize, substitute_shift, to_unipoly
from .unipoly import UniPoly, factor, roots, squarefree_part, uni_gcd

FAMILY_VARS = VarCtx(("x", "y", "z", "t"))
FIBER_VARS = ("x", "y", "z")
LEGENDRE_CONE = "z*y^2-x*(x-z)*(x-t*z)"
DEFAULT_FAMILY_Q_CAP = 27
FAST_P_LIMIT = 13


def _require_odd(field: FieldCtx) -> None:
    if field.p == 2:
        raise UnsupportedCharacteristicError("the Weierstrass fiber tests need odd p")


@dataclass(frozen=True)
class CubicFamily:
    """a in F_p[x, y, z, t], homogeneous of degree 3 in (x, y, z)."""
    field: FieldCtx
    a: MultiPoly
    label: str = "custom"

    def __post_init__(self) -> None:
        if self.a.vars != FAMILY_VARS:
            raise NotWeierstrassError(f"a family lives in ({FAMILY_VARS}), got ({self.a.vars})")
        if self.a.is_zero():
            raise NotWeierstrassError("the zero polynomial is not a family of cubics")
        for _, m in self.a:
            if m[0] + m[1] + m[2] != 3:
                raise NotWeierstrassError(f"{self.a} is not homogeneous of degree 3 in x, y, z")

    @classmethod
    def legendre_cone(cls, field: FieldCtx) -> "CubicFamily":
        return cls(field, parse_poly(LEGENDRE_CONE, FAMILY_VARS, field), "legendre")

    @classmethod
    def from_text(cls, text: str, field: FieldCtx) -> "CubicFamily":
        return cls(field, parse_poly(text, FAMILY_VARS, field))

    def fiber(self, lam: int) -> MultiPoly:
        return specialize(self.a, {"t": lam})

    def affine_form(self, lam: int) -> UniPoly:
        """f_λ with the fiber at z = 1 written as y^2 = f_λ(x)."""
        g = specialize(self.a, {"z": 1, "t": lam})
        lead = 0
        rest: Dict[int, int] = {}
        for c, m in g:
            x, y = m[0], m[1]
            if y == 2 and x == 0:
                lead = c
            elif y == 0:
                rest[x] = c
            else:
                raise NotWeierstrassError(f"fiber at t = {lam} is not of the form c*y^2 = f(x): {g}")
        if not lead:
            raise NotWeierstrassError(f"fiber at t = {lam} has no y^2 term: {g}")
        p = self.field.p
        inv = self.field.inv(lead)
        deg = max(rest, default=0)
        return UniPoly(self.field, [-rest.get(k, 0) * inv % p for k in range(deg + 1)])

    def is_degenerate(self, lam: int) -> bool:
        f = self.affine_form(lam)
        return f.degree() != 3 or uni_gcd(f, f.derivative()).degree() > 0


# ---------- fiberwise oracles ----------
def hasse_value(family: CubicFamily, lam: int) -> int:
    """Coefficient of x^{p-1} in f_λ(x)^{(p-1)/2}."""
    field = family.field
    _require_odd(field)
    if family.is_degenerate(lam):
        raise DegenerateFiberError(f"fiber at t = {lam % field.p} is singular")
    p = field.p
    power = family.affine_form(lam) ** ((p - 1) // 2)
    return power.coeffs[p - 1] if power.degree() >= p - 1 else 0


@lru_cache(maxsize=64)
def _chi_table(p: int) -> np.ndarray:
    xs = np.arange(p, dtype=np.int64)
    chi = -np.ones(p, dtype=np.int64)
    chi[(xs * xs) % p] = 1
    chi[0] = 0
    return chi


def point_count(family: CubicFamily, lam: int) -> int:
    """#E(F_p) = 1 + Σ_x (1 + χ(f_λ(x))), the point at infinity included."""
    field = family.field
    _require_odd(field)
    if family.is_degenerate(lam):
        raise DegenerateFiberError(f"fiber at t = {lam % field.p} is singular")
    p = field.p
    xs = np.arange(p, dtype=np.int64)
    vals = np.zeros(p, dtype=np.int64)
    for c in reversed(family.affine_form(lam).coeffs):
        vals = (vals * xs + c) % p
    return int(1 + p + _chi_table(p)[vals].sum())


def fiber_is_reduced(family: CubicFamily, lam: int) -> bool:
    """
    Squarefreeness of the fiber cubic. A square factor divides every partial;
    on z = 1 the y-partial of c*y^2 - f_λ is 2c*y, so the only candidate is y,
    which is a double factor exactly when f_λ = 0. Nodal fibers stay reduced.
    """
    _require_odd(family.field)
    f = family.affine_form(lam)
    zi = FAMILY_VARS.names.index("z")
    # the line at infinity is a double component only if z^2 divides every term
    if all(m[zi] >= 2 for _, m in family.fiber(lam)):
        return False
    return not f.is_zero()


def fiber_pair_fpure(family: CubicFamily, lam: int, level: FrobeniusLevel) -> bool:
    """(X, div(t - λ)) at (0, 0, 0, λ); F-pure exactly when h(λ) != 0."""
    a = substitute_shift(family.a, {"t": lam})
    t = MultiPoly.variable(family.field, FAMILY_VARS, "t")
    return fpure_pair(a, [(t, Fraction(1))], FAMILY_VARS.names, level).fpure


# ---------- the polynomial h(t) and the base divisor ----------
def legendre_hasse_poly(field: FieldCtx) -> UniPoly:
    """Σ_i C(m, i)^2 t^i with m = (p-1)/2."""
    _require_odd(field)
    m = (field.p - 1) // 2
    return UniPoly(field, [comb(m, i, exact=True) ** 2 for i in range(m + 1)])


def h_poly_at_level(family: CubicFamily, level: FrobeniusLevel, q_cap: int = DEFAULT_FAMILY_Q_CAP) -> UniPoly:
    q = level.q
    if q > q_cap:
        raise FrobeniusBoundError(f"q = {q} exceeds the family cap {q_cap}")
    test = pow_mod_bracket(family.a, q - 1, FIBER_VARS, q)
    h = coeff_of(test, {v: q - 1 for v in FIBER_VARS})
    return to_unipoly(h, "t")


def cone_h_poly(field: FieldCtx) -> UniPoly:
    if field.p > FAST_P_LIMIT:
        warnings.warn(f"expanding a^{field.p - 1} at p = {field.p} may be slow", RuntimeWarning, stacklevel=2)
    family = CubicFamily.legendre_cone(field)
    return h_poly_at_level(family, FrobeniusLevel(field, 1), q_cap=field.p)


def assemble_moduli_divisor(family: CubicFamily, level: FrobeniusLevel,
                            q_cap: int = DEFAULT_FAMILY_Q_CAP) -> QDivisor:
    """div(h)/(q-1); the coefficient at λ is 1 - d_λ."""
    h = h_poly_at_level(family, level, q_cap)
    if h.is_zero():
        raise NotGenericallySplitError("h(t) = 0: the generic fiber is not Frobenius split")
    D = QDivisor.from_poly(h, Fraction(1, level.q - 1), "t")
    for prime, c in D.items():
        if c > 1:
            raise OracleMismatchError(f"coefficient {c} at [{prime.format('t')}] exceeds 1")
    return D


@dataclass(frozen=True)
class LocusComparison:
    h: UniPoly
    legendre: UniPoly
    h_radical: UniPoly
    legendre_radical: UniPoly
    equal: bool
    scalar: Optional[int]                       # h = scalar·legendre when proportional
    multiplicities: Tuple[Tuple[UniPoly, int, int], ...]


def compare_supersingular_loci(field: FieldCtx) -> LocusComparison:
    h = cone_h_poly(field)
    H = legendre_hasse_poly(field)
    hr, Hr = squarefree_part(h), squarefree_part(H)
    h_mult = {fc.poly: fc.multiplicity for fc in factor(h)}
    H_mult = {fc.poly: fc.multiplicity for fc in factor(H)}
    primes = sorted(set(h_mult) | set(H_mult), key=lambda u: u.sort_key())
    scalar = None
    if h.degree() == H.degree():
        c = h.lead() * field.inv(H.lead()) % field.p
        if h == H.scale(c):
            scalar = c
    mults = tuple((u, h_mult.get(u, 0), H_mult.get(u, 0)) for u in primes)
    return LocusComparison(h, H, hr, Hr, hr == Hr, scalar, mults)


# ---------- scans ----------
@dataclass(frozen=True)
class FiberReport:
    lam: int
    degenerate: bool
    h_value: int
    hasse_value: Optional[int] = None
    point_count: Optional[int] = None
    pair_fpure: Optional[bool] = None
    is_split: Optional[bool] = None


def fiber_report(family: CubicFamily, lam: int, h: UniPoly, level: FrobeniusLevel,
                 count: bool = True, pair: bool = False) -> FiberReport:
    """All oracles at one λ; any disagreement raises OracleMismatchError."""
    p = family.field.p
    lam %= p
    hv_t = h(lam)
    pair_ok = fiber_pair_fpure(family, lam, level) if pair else None
    if pair_ok is not None and pair_ok != (hv_t != 0):
        raise OracleMismatchError(f"λ = {lam}: pair test says {pair_ok}, h(λ) = {hv_t}")
    if family.is_degenerate(lam):
        return FiberReport(lam, True, hv_t, pair_fpure=pair_ok)
    hv = hasse_value(family, lam)
    if (hv == 0) != (hv_t == 0):
        raise OracleMismatchError(f"λ = {lam}: Hasse invariant {hv} but h(λ) = {hv_t}")
    pc = None
    if count and p >= 5:
        pc = point_count(family, lam)
        if (pc == p + 1) != (hv == 0):
            raise OracleMismatchError(f"λ = {lam}: #E = {pc} but Hasse invariant {hv}")
    return FiberReport(lam, False, hv_t, hv, pc, pair_ok, hv != 0)


def _run_pool(fn: Callable, items: Sequence, workers: int, progress: bool, desc: str) -> List:
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in tqdm(items, desc=desc, disable=not progress)]
    out = []
    with ThreadPoolExecutor(max_workers=workers) as ex:
        futures = [ex.submit(fn, it) for it in items]
        for fut in tqdm(as_completed(futures), total=len(futures), desc=desc, disable=not progress):
            out.append(fut.result())
    return out


@dataclass(frozen=True)
class ScanResult:
    h: UniPoly
    divisor: QDivisor
    reports: Tuple[FiberReport, ...]

    def non_split(self) -> List[int]:
        return [r.lam for r in self.reports if r.is_split is False]


def fiber_scan(family: CubicFamily, level: FrobeniusLevel, lambdas: Optional[Iterable[int]] = None,
               count: bool = True, pair: bool = False, workers: int = 1, progress: bool = False,
               q_cap: int = DEFAULT_FAMILY_Q_CAP) -> ScanResult:
    p = family.field.p
    _require_odd(family.field)
    lams = sorted({lam % p for lam in (range(p) if lambdas is None else lambdas)})
    h = h_poly_at_level(family, level, q_cap)
    D = assemble_moduli_divisor(family, level, q_cap)
    reports = _run_pool(lambda lam: fiber_report(family, lam, h, level, count, pair),
                        lams, workers, progress, f"fibers p={p}")
    reports.sort(key=lambda r: r.lam)
    return ScanResult(h, D, tuple(reports))


@dataclass(frozen=True)
class ModuliResult:
    h: UniPoly
    divisor: QDivisor
    thresholds: Tuple[Tuple[UniPoly, Fraction], ...]
    rational_support: Tuple[int, ...]


def moduli(family: CubicFamily, level: FrobeniusLevel, q_cap: int = DEFAULT_FAMILY_Q_CAP) -> ModuliResult:
    h = h_poly_at_level(family, level, q_cap)
    D = assemble_moduli_divisor(family, level, q_cap)
    th = tuple((u, threshold_at(D, u)) for u in support(D))
    return ModuliResult(h, D, th, tuple(roots(h)))


@dataclass(frozen=True)
class CharScanRow:
    p: int
    h: UniPoly
    divisor: QDivisor
    rational_points: Tuple[int, ...]
    lambda0: int
    lambda0_degenerate: bool
    lambda0_in_support: bool
    lambda0_hasse: Optional[int] = None
    lambda0_point_count: Optional[int] = None


def char_scan_row(p: int, lambda0: int, family_text: Optional[str] = None, count: bool = True,
                  q_cap: int = DEFAULT_FAMILY_Q_CAP) -> CharScanRow:
    field = FieldCtx(p)
    _require_odd(field)
    family = CubicFamily.legendre_cone(field) if family_text is None else CubicFamily.from_text(family_text, field)
    level = FrobeniusLevel(field, 1)
    h = h_poly_at_level(family, level, q_cap)
    D = assemble_moduli_divisor(family, level, q_cap)
    lam = lambda0 % p
    in_support = h(lam) == 0
    degenerate = family.is_degenerate(lam)
    hv = pc = None
    if not degenerate:
        hv = hasse_value(family, lam)
        if count and p >= 5:
            pc = point_count(family, lam)
    return CharScanRow(p, h, D, tuple(roots(h)), lam, degenerate, in_support, hv, pc)


def char_scan(primes: Iterable[int], lambda0: int, family_text: Optional[str] = None, count: bool = True,
              workers: int = 1, progress: bool = False, q_cap: int = DEFAULT_FAMILY_Q_CAP) -> List[CharScanRow]:
    ps = sorted(set(primes))
    rows = _run_pool(lambda p: char_scan_row(p, lambda0, family_text, count, q_cap),
                     ps, workers, progress, "primes")
    rows.sort(key=lambda r: r.p)
    return rows


class FibrationScanner:
    """
    Runs fiber, moduli and prime scans with the configured thread pool.
    Events: on_info(str). Writes a run log when the config asks for one.
    """

    def __init__(self, config: Optional[ConfigManager] = None,
                 on_info: Optional[Callable[[str], None]] = None) -> None:
        self.cfg = config or ConfigManager()
        self.on_info = on_info or (lambda s: None)
        self.log: Optional[LogFile] = LogFile(self.cfg.log_dir) if self.cfg.write_log else None
        self.log_path = self.log.path if self.log else None

    # ---------- публичный API ----------
    def scan(self, family: CubicFamily, level: FrobeniusLevel, lambdas: Optional[Iterable[int]] = None,
             count: bool = True, pair: bool = True) -> ScanResult:
        self._emit_info(f"[scan] {family.label} family over {family.field}, q = {level.q}")
        res = fiber_scan(family, level, lambdas, count, pair, self.cfg.workers, self.cfg.progress,
                         self.cfg.family_q_cap)
        self._emit_info(f"[scan] h = {res.h.format('t')}; non-split fibers: {res.non_split()}")
        return res

    def moduli(self, family: CubicFamily, level: FrobeniusLevel) -> ModuliResult:
        self._emit_info(f"[moduli] {family.label} family over {family.field}, q = {level.q}")
        res = moduli(family, level, self.cfg.family_q_cap)
        self._emit_info(f"[moduli] divisor = {res.divisor}")
        return res

    def charscan(self, primes: Iterable[int], lambda0: int, family_text: Optional[str] = None,
                 count: bool = True) -> List[CharScanRow]:
        primes = list(primes)
        self._emit_info(f"[charscan] primes {primes}, λ0 = {lambda0}")
        rows = char_scan(primes, lambda0, family_text, count, self.cfg.workers, self.cfg.progress,
                         self.cfg.family_q_cap)
        for r in rows:
            self._emit_info(f"[charscan] p = {r.p}: λ0 in support = {r.lambda0_in_support}")
        return rows

    # ---------- эмиттеры ----------
    def _emit_info(self, s: str) -> None:
        if self.log:
            self.log.write(s)
        try:
            self.on_info(s)
        except Exception:
            pass
