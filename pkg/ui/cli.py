# ui/cli.py
"""
Command-line front end.

Every subcommand builds a plain dict report; reports are printed as JSON with
sorted keys (or as a table with --text). Exit codes: 0 success, 1 domain
error or negative verdict, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, TextIO, Tuple

from core import __version__
from core.config import ConfigManager
from core.divisor import (
    BaseMap,
    QDivisor,
    base_change_transform,
    decode_divisor,
    degree,
    div_add,
    dvr_subfpure_ok,
    encode_divisor,
    pullback,
    ramification_divisor,
)
from core.errors import ConfigError, FieldError, FrobsplitError, ParseError, UnknownVariableError
from core.fdifferent import CenterProblem, compute_fdifferent, translate_center
from core.fedder import FrobeniusLevel, center_test, fpt_estimate, fpure_general, fpure_hypersurface, poly_digest, translate
from core.fibration import (
    CubicFamily,
    FibrationScanner,
    compare_supersingular_loci,
    hasse_value,
    legendre_hasse_poly,
    point_count,
)
from core.field import FieldCtx, VarCtx
from core.groebner import Ideal
from core.log_utils import LogFile, RunManifest
from core.parse import parse_poly
from core.poly import MultiPoly, poly_pow, to_unipoly
from ui.i18n import I18N, tr

Report = Dict[str, Any]


class UsageError(Exception):
    pass


@dataclass
class _Run:
    args: argparse.Namespace
    cfg: ConfigManager
    manifest: RunManifest
    degree_cap: int

    def level(self, field: FieldCtx) -> FrobeniusLevel:
        return FrobeniusLevel(field, self.args.e, self.cfg.q_bound)


# ---------- formatting ----------
def frac(c: Fraction) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def _uni(u, var: str = "t") -> str:
    return u.format(var)


def _dump(report: Report) -> str:
    return json.dumps(report, sort_keys=True, ensure_ascii=False)


def _cell(v: Any) -> str:
    if v is True:
        return tr("verdict.yes")
    if v is False:
        return tr("verdict.no")
    if v is None:
        return tr("verdict.none")
    if isinstance(v, list) and all(not isinstance(x, dict) for x in v):
        return ", ".join(_cell(x) for x in v) or tr("verdict.none")
    if isinstance(v, list):
        return "; ".join(" ".join(f"{k}={_cell(x[k])}" for k in sorted(x)) for x in v) or tr("verdict.none")
    return str(v)


def _table(rows: List[Dict[str, Any]]) -> List[str]:
    cols = sorted({k for r in rows for k in r})
    cells = [[I18N.label(c) for c in cols]] + [[_cell(r.get(c)) for c in cols] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(cols))]
    return ["  ".join(s.ljust(w) for s, w in zip(row, widths)).rstrip() for row in cells]


def render_text(report: Report) -> str:
    lines: List[str] = []
    tables: List[Tuple[str, List[Dict[str, Any]]]] = []
    for k in sorted(report):
        v = report[k]
        if isinstance(v, list) and v and all(isinstance(x, dict) for x in v) and k not in ("divisor", "ramification"):
            tables.append((k, v))
            continue
        lines.append(f"{I18N.label(k)}: {_cell(v)}")
    for k, rows in tables:
        lines.append("")
        lines.append(f"{I18N.label(k)}:")
        lines.extend("  " + s for s in _table(rows))
    return "\n".join(lines)


# ---------- argument helpers ----------
def _field(args: argparse.Namespace) -> FieldCtx:
    return _prime(args.p)


def _prime(p: Optional[int]) -> FieldCtx:
    if p is None:
        raise UsageError("-p is required")
    try:
        return FieldCtx(p)
    except FieldError as exc:
        raise UsageError(f"-p: {exc}") from None


def _int_list(text: str) -> List[int]:
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise UsageError(tr("err.bad_int_list").format(text)) from None


def _vars(args: argparse.Namespace) -> VarCtx:
    if not args.vars:
        raise UsageError("--vars is required")
    try:
        return VarCtx.of(args.vars)
    except FieldError as exc:
        raise UsageError(f"--vars: {exc}") from None


def _poly(run: _Run, name: str, text: str, vars: VarCtx, field: FieldCtx) -> MultiPoly:
    f = parse_poly(text, vars, field)
    run.manifest.add_input(name, str(f))
    return f


def _point(args: argparse.Namespace, vars: VarCtx) -> Optional[Dict[str, int]]:
    if args.at is None:
        return None
    coords = _int_list(args.at)
    if len(coords) != vars.arity:
        raise UsageError(f"--at needs {vars.arity} coordinates, got {len(coords)}")
    return dict(zip(vars.names, coords))


def _center(run: _Run, vars: VarCtx, field: FieldCtx) -> Ideal:
    if not run.args.center:
        raise UsageError(tr("err.need_center"))
    gens = [_poly(run, f"center[{i}]", s.strip(), vars, field)
            for i, s in enumerate(run.args.center.split(",")) if s.strip()]
    # the caller asserts the generators form a regular sequence
    return Ideal.of(gens, field, vars, complete_intersection=True)


def _fedder_poly(run: _Run, vars: VarCtx, field: FieldCtx, level: FrobeniusLevel) -> MultiPoly:
    args = run.args
    if args.fedder:
        return _poly(run, "fedder", args.fedder, vars, field)
    if args.hypersurface:
        a = _poly(run, "hypersurface", args.hypersurface, vars, field)
        return poly_pow(a, level.q - 1)
    raise UsageError(tr("err.need_poly"))


def _positive(name: str, v: Optional[int]) -> None:
    if v is not None and v < 1:
        raise UsageError(f"{name} must be a positive integer, got {v}")


# ---------- subcommands ----------
def cmd_fpure(run: _Run) -> Tuple[Report, int]:
    args = run.args
    field = _field(args)
    vars = _vars(args)
    level = run.level(field)
    point = _point(args, vars)
    if args.hypersurface:
        a = _poly(run, "hypersurface", args.hypersurface, vars, field)
        if point:
            a = translate(a, point)
        rep = fpure_hypersurface(a, vars.names, level)
    elif args.ideal:
        gens = [_poly(run, f"ideal[{i}]", s, vars, field) for i, s in enumerate(args.ideal)]
        if point:
            gens = [translate(g, point) for g in gens]
        rep = fpure_general(Ideal.of(gens, field, vars), vars.names, level, run.degree_cap)
    else:
        raise UsageError(tr("err.need_poly"))
    report = {"p": field.p, "e": level.e, "q": rep.q, "fpure": rep.fpure,
              "witness": rep.witness_text, "test_poly_digest": rep.test_poly_digest}
    return report, 0 if rep.fpure else 1


def cmd_center(run: _Run) -> Tuple[Report, int]:
    args = run.args
    field = _field(args)
    vars = _vars(args)
    level = run.level(field)
    f = _fedder_poly(run, vars, field, level)
    J = _center(run, vars, field)
    point = _point(args, vars)
    if point:
        prob = translate_center(CenterProblem(f, J), [point[n] for n in vars.names])
        f, J = prob.f, prob.J
    ok = center_test(f, J, level, run.degree_cap)
    report = {"p": field.p, "e": level.e, "q": level.q, "compatible": ok, "fedder_digest": poly_digest(f)}
    return report, 0 if ok else 1


def cmd_fdiff(run: _Run) -> Tuple[Report, int]:
    args = run.args
    field = _field(args)
    vars = _vars(args)
    level = run.level(field)
    f = _fedder_poly(run, vars, field, level)
    J = _center(run, vars, field)
    point = _point(args, vars)
    if point:
        prob = translate_center(CenterProblem(f, J), [point[n] for n in vars.names])
        f, J = prob.f, prob.J
    res = compute_fdifferent(f, J, level, run.degree_cap)
    report = {
        "p": field.p, "e": level.e, "q": level.q,
        "h_bar": str(res.h_bar),
        "divisor": None if res.divisor is None else encode_divisor(res.divisor),
        "compat_ok": res.compat_ok,
        "center_ok": res.center_ok,
        "leftover_digest": res.leftover_digest,
    }
    return report, 0 if res.compat_ok else 1


def cmd_fpt(run: _Run) -> Tuple[Report, int]:
    args = run.args
    field = _field(args)
    vars = _vars(args)
    if not args.hypersurface:
        raise UsageError(tr("err.need_poly"))
    _positive("--e-max", args.e_max)
    f = _poly(run, "hypersurface", args.hypersurface, vars, field)
    point = _point(args, vars)
    if point:
        f = translate(f, point)
    seq = fpt_estimate(f, vars.names, args.e_max, run.cfg.q_bound)
    lo, hi = seq.bounds
    report = {
        "p": field.p,
        "nu": [{"e": x.e, "q": x.q, "nu": x.nu, "ratio": frac(x.ratio)} for x in seq.entries],
        "lower": frac(lo),
        "upper": frac(hi),
        "supermultiplicative": seq.supermultiplicative(field.p),
    }
    return report, 0


def _family(run: _Run, field: FieldCtx) -> CubicFamily:
    if run.args.family:
        fam = CubicFamily.from_text(run.args.family, field)
        run.manifest.add_input("family", str(fam.a))
        return fam
    return CubicFamily.legendre_cone(field)


def _scanner(run: _Run) -> FibrationScanner:
    return FibrationScanner(run.cfg, on_info=lambda s: print(s, file=sys.stderr) if run.args.verbose else None)


def cmd_fibration(run: _Run) -> Tuple[Report, int]:
    args = run.args
    action = args.action
    if action == "charscan":
        if not args.primes:
            raise UsageError("--primes is required")
        primes = _int_list(args.primes)
        for p in primes:
            _prime(p)
        rows = _scanner(run).charscan(primes, args.lambda0, args.family, count=not args.no_count)
        if args.family:
            run.manifest.add_input("family", args.family)
        report = {"lambda0": args.lambda0, "rows": [{
            "p": r.p,
            "h": _uni(r.h),
            "divisor": encode_divisor(r.divisor),
            "rational_points": list(r.rational_points),
            "lambda0_degenerate": r.lambda0_degenerate,
            "lambda0_in_support": r.lambda0_in_support,
            "hasse_value": r.lambda0_hasse,
            "point_count": r.lambda0_point_count,
        } for r in rows]}
        return report, 0

    field = _field(args)
    level = run.level(field)
    family = _family(run, field)
    scanner = _scanner(run)
    if action == "scan":
        lambdas = None if args.lam is None else _int_list(args.lam)
        res = scanner.scan(family, level, lambdas, count=not args.no_count)
        report = {
            "p": field.p, "e": level.e, "q": level.q,
            "h": _uni(res.h),
            "divisor": encode_divisor(res.divisor),
            "fibers": [{
                "lambda": r.lam,
                "degenerate": r.degenerate,
                "h_value": r.h_value,
                "hasse_value": r.hasse_value,
                "point_count": r.point_count,
                "pair_fpure": r.pair_fpure,
                "split": r.is_split,
            } for r in res.reports],
            "non_split": res.non_split(),
        }
        return report, 0

    res = scanner.moduli(family, level)
    report = {
        "p": field.p, "e": level.e, "q": level.q,
        "h": _uni(res.h),
        "divisor": encode_divisor(res.divisor),
        "thresholds": [{"prime": _uni(u), "threshold": frac(c)} for u, c in res.thresholds],
        "rational_support": list(res.rational_support),
        "subfpure": all(dvr_subfpure_ok(c) for _, c in res.divisor.items()),
    }
    return report, 0


def _divisors(run: _Run, field: FieldCtx, var: str) -> List[QDivisor]:
    if not run.args.div:
        raise UsageError(tr("err.need_div"))
    out = []
    for i, text in enumerate(run.args.div):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"--div: {exc}") from None
        if not isinstance(data, list):
            raise UsageError("--div expects a JSON list of {\"prime\", \"coeff\"} entries")
        D = decode_divisor(data, field, var)
        run.manifest.add_input(f"div[{i}]", str(D))
        out.append(D)
    return out


def _divisor_report(D: QDivisor) -> Report:
    return {
        "divisor": encode_divisor(D),
        "degree": frac(degree(D)),
        "subfpure": all(dvr_subfpure_ok(c) for _, c in D.items()),
    }


def cmd_divisor(run: _Run) -> Tuple[Report, int]:
    args = run.args
    field = _field(args)
    divs = _divisors(run, field, args.base_var)
    if args.action == "add":
        total = divs[0]
        for D in divs[1:]:
            total = div_add(total, D)
        return {"p": field.p, **_divisor_report(total)}, 0

    if not args.map:
        raise UsageError(tr("err.need_map"))
    cover = VarCtx((args.cover_var,))
    g = to_unipoly(_poly(run, "map", args.map, cover, field), args.cover_var)
    phi = BaseMap(g, args.base_var, args.cover_var)
    total = divs[0]
    for D in divs[1:]:
        total = div_add(total, D)
    if args.action == "pullback":
        return {"p": field.p, **_divisor_report(pullback(total, phi))}, 0
    report = {"p": field.p, **_divisor_report(base_change_transform(total, phi)),
              "ramification": encode_divisor(ramification_divisor(phi))}
    return report, 0


def cmd_hasse(run: _Run) -> Tuple[Report, int]:
    args = run.args
    field = _field(args)
    if args.lam is not None:
        lams = _int_list(args.lam)
        family = _family(run, field)
        rows = []
        for lam in lams:
            lam %= field.p
            degenerate = family.is_degenerate(lam)
            rows.append({
                "lambda": lam,
                "degenerate": degenerate,
                "hasse_value": None if degenerate else hasse_value(family, lam),
                "point_count": None if degenerate or field.p < 5 else point_count(family, lam),
            })
        return {"p": field.p, "legendre": _uni(legendre_hasse_poly(field)), "fibers": rows}, 0
    cmp = compare_supersingular_loci(field)
    report = {
        "p": field.p,
        "legendre": _uni(cmp.legendre),
        "cone_h": _uni(cmp.h),
        "radicals_equal": cmp.equal,
        "scalar": cmp.scalar,
        "multiplicities": [{"prime": _uni(u), "cone": a, "legendre": b} for u, a, b in cmp.multiplicities],
    }
    return report, 0


COMMANDS: Dict[str, Callable[[_Run], Tuple[Report, int]]] = {
    "fpure": cmd_fpure,
    "center": cmd_center,
    "fdiff": cmd_fdiff,
    "fpt": cmd_fpt,
    "fibration": cmd_fibration,
    "divisor": cmd_divisor,
    "hasse": cmd_hasse,
}


# ---------- parser ----------
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-p", type=int, default=None, help="characteristic (a prime)")
    common.add_argument("-e", type=int, default=1, help="Frobenius exponent, q = p^e")
    common.add_argument("--degree-cap", dest="degree_cap", type=int, default=None,
                        help="Buchberger pair-degree cap (also FROBSPLIT_DEGREE_CAP)")
    common.add_argument("--text", action="store_true", help="human-readable table instead of JSON")
    common.add_argument("--manifest", type=Path, default=None, help="write the run manifest JSON here")
    common.add_argument("--config", type=Path, default=None, help="config file (default: config.json)")
    common.add_argument("--lang", choices=("en", "ru", "zh"), default=None, help="language of --text output")
    common.add_argument("-v", "--verbose", action="store_true", help="progress messages on stderr")

    poly = argparse.ArgumentParser(add_help=False)
    poly.add_argument("--vars", help="comma-separated variable names, e.g. x,y,z,t")
    poly.add_argument("--hypersurface", help="the polynomial a of S/(a)")
    poly.add_argument("--at", help="point coordinates, comma-separated (default: origin)")

    ap = argparse.ArgumentParser(prog=tr("app.title"), description=tr("app.description"))
    ap.add_argument("--version", action="version", version=f"frobsplit {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("fpure", parents=[common, poly], help="Fedder F-purity test")
    s.add_argument("--ideal", action="append", help="an ideal generator (repeatable)")

    for name, help_ in (("center", "F-pure center compatibility test"),
                        ("fdiff", "F-different on a complete-intersection center")):
        s = sub.add_parser(name, parents=[common, poly], help=help_)
        s.add_argument("--center", help="center generators, comma-separated (assumed a regular sequence)")
        s.add_argument("--fedder", help="explicit Fedder polynomial (default: a^(q-1))")

    s = sub.add_parser("fpt", parents=[common, poly], help="ν-invariants and F-pure threshold bounds")
    s.add_argument("--e-max", dest="e_max", type=int, default=3, help="deepest level e (default 3)")

    fib = sub.add_parser("fibration", help="elliptic fibration scans")
    fsub = fib.add_subparsers(dest="action", required=True)
    for name, help_ in (("scan", "fiberwise oracles at every λ"),
                        ("moduli", "base divisor and thresholds"),
                        ("charscan", "one fixed λ0 across primes")):
        s = fsub.add_parser(name, parents=[common], help=help_)
        s.add_argument("--family", help="cubic family in x,y,z,t (default: Legendre cone)")
        s.add_argument("--no-count", dest="no_count", action="store_true", help="skip point counting")
        if name == "scan":
            s.add_argument("--lambda", dest="lam", help="λ values, comma-separated (default: all of F_p)")
        if name == "charscan":
            s.add_argument("--primes", help="comma-separated primes")
            s.add_argument("--lambda0", type=int, default=2, help="the fixed λ0 (default 2)")

    dv = sub.add_parser("divisor", help="Q-divisor arithmetic on the line")
    dsub = dv.add_subparsers(dest="action", required=True)
    for name, help_ in (("add", "sum of divisors"),
                        ("pullback", "pullback along s ↦ g(s)"),
                        ("basechange", "pullback minus ramification")):
        s = dsub.add_parser(name, parents=[common], help=help_)
        s.add_argument("--div", action="append", help='JSON list, e.g. [{"prime":"t+1","coeff":"1/2"}]')
        s.add_argument("--base-var", dest="base_var", default="t")
        s.add_argument("--cover-var", dest="cover_var", default="s")
        if name != "add":
            s.add_argument("--map", help="g(s), the base map")

    s = sub.add_parser("hasse", parents=[common], help="Hasse polynomial and supersingular locus")
    s.add_argument("--lambda", dest="lam", help="λ values, comma-separated: fiberwise Hasse invariants")
    s.add_argument("--family", help="cubic family in x,y,z,t (default: Legendre cone)")
    return ap


# ---------- entry ----------
def _error_report(exc: FrobsplitError) -> Report:
    return {"error": type(exc).__name__, "message": str(exc)}


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    started = time.perf_counter()
    try:
        cfg = ConfigManager(args.config)
        I18N.set_lang(args.lang or cfg.ui_language)
        degree_cap = cfg.resolve_degree_cap(args.degree_cap)
        _positive("-e", args.e)
        name = args.command + (f" {args.action}" if getattr(args, "action", None) else "")
        manifest = RunManifest(__version__, name, args.p, args.e)
        run = _Run(args, cfg, manifest, degree_cap)
        report, code = COMMANDS[args.command](run)
    except (UsageError, ParseError, UnknownVariableError, ConfigError) as exc:
        parser.print_usage(err)
        print(tr("err.usage").format(exc), file=err)
        return 2
    except FrobsplitError as exc:
        print(_dump(_error_report(exc)), file=out)
        print(tr("err.domain").format(exc, type(exc).__name__), file=err)
        return 1

    text = render_text(report) if args.text else _dump(report)
    print(text, file=out)
    manifest.seal(text, time.perf_counter() - started)
    if args.manifest is not None:
        manifest.write(args.manifest)
    if cfg.write_log:
        LogFile(cfg.log_dir).write(f"[manifest] {manifest.to_json()}")
    return code


def run_cli() -> None:
    sys.exit(main())
