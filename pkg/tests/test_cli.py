# tests/test_cli.py
"""End-to-end tests for the frobsplit command line."""

import hashlib
import json
from io import StringIO

import pytest

from ui.cli import main
from ui.i18n import I18N

CONE = "z*y^2-x*(x-z)*(x-t*z)"


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    monkeypatch.delenv("FROBSPLIT_DEGREE_CAP", raising=False)
    yield
    I18N.set_lang("en")


@pytest.fixture
def run(tmp_path):
    cfg = tmp_path / "config.json"

    def _run(*argv):
        out, err = StringIO(), StringIO()
        code = main([*argv, "--config", str(cfg)], out=out, err=err)
        return code, out.getvalue(), err.getvalue()

    return _run


def report(out):
    return json.loads(out)


def test_fdiff_golden_divisor(run):
    code, out, _ = run("fdiff", "-p", "3", "--vars", "x,y,z,t", "--hypersurface", CONE, "--center", "x,y,z")
    assert code == 0
    rep = report(out)
    assert rep["h_bar"] == "2*t+2"
    assert rep["compat_ok"] and rep["center_ok"]
    assert rep["leftover_digest"] is None
    assert '"divisor": [{"coeff": "1/2", "prime": "t+1"}]' in out


def test_fdiff_without_a_one_dimensional_residue(run):
    code, out, _ = run("fdiff", "-p", "3", "--vars", "x,y", "--fedder", "y*(x-y)^2", "--center", "x-y")
    assert code == 0
    assert report(out)["divisor"] is None


def test_fpure_cone(run):
    code, out, _ = run("fpure", "-p", "3", "--vars", "x,y,z,t", "--hypersurface", CONE)
    assert code == 0
    rep = report(out)
    assert rep["fpure"] is True
    assert set(rep) == {"p", "e", "q", "fpure", "witness", "test_poly_digest"}


def test_fpure_negative_verdict_exits_one(run):
    code, out, _ = run("fpure", "-p", "7", "--vars", "x,y", "--hypersurface", "x^2+y^3")
    assert code == 1
    assert report(out)["fpure"] is False
    assert report(out)["witness"] is None


def test_fpure_general_ideal(run):
    code, out, _ = run("fpure", "-p", "2", "--vars", "x,y,z", "--ideal", "x*y", "--ideal", "x*z")
    assert code == 0
    assert report(out)["fpure"] is True


def test_fpure_at_a_point(run):
    code, out, _ = run("fpure", "-p", "5", "--vars", "x,y", "--hypersurface", "(x-1)*(y-2)", "--at", "1,2")
    assert code == 0
    assert report(out)["witness"] == "x^4*y^4"


@pytest.mark.parametrize("argv", [
    ("fpure",),
    ("fpure", "-p", "3", "--vars", "x,y"),
    ("fpure", "-p", "4", "--vars", "x,y", "--hypersurface", "x*y"),
    ("fpure", "-p", "3", "--vars", "x,y", "--hypersurface", "x^^2"),
    ("fpure", "-p", "3", "--vars", "x,y", "--hypersurface", "x+w"),
    ("fpure", "-p", "3", "-e", "0", "--vars", "x,y", "--hypersurface", "x*y"),
    ("fpure", "-p", "3", "--degree-cap", "0", "--vars", "x,y", "--ideal", "x*y"),
    ("fpure", "-p", "3", "--vars", "x,y", "--hypersurface", "x*y", "--at", "1"),
    ("center", "-p", "3", "--vars", "x,y", "--hypersurface", "x*y"),
    ("divisor", "pullback", "-p", "3", "--div", '[{"prime": "t", "coeff": "1"}]'),
    ("divisor", "add", "-p", "3", "--div", "not json"),
    ("fibration", "charscan"),
    ("fibration", "charscan", "--primes", "3,x"),
    ("fibration", "charscan", "--primes", "3,9"),
    ("nonsense",),
])
def test_usage_errors_exit_two(run, argv):
    code, out, _ = run(*argv)
    assert code == 2
    assert out == ""


def test_usage_error_message(run):
    code, _, err = run("fpure", "-p", "3", "--vars", "x,y", "--hypersurface", "x+w")
    assert code == 2
    assert "usage error" in err and "'w'" in err
    assert err.startswith("usage: frobsplit")


def test_bad_environment_cap_is_a_usage_error(run, monkeypatch):
    monkeypatch.setenv("FROBSPLIT_DEGREE_CAP", "lots")
    code, _, err = run("fpure", "-p", "3", "--vars", "x,y", "--hypersurface", "x*y")
    assert code == 2
    assert "FROBSPLIT_DEGREE_CAP" in err


def test_domain_error_is_reported_as_json(run):
    code, out, err = run("fpure", "-p", "3", "--vars", "x,y", "--hypersurface", "0")
    assert code == 1
    rep = report(out)
    assert set(rep) == {"error", "message"}
    assert rep["error"] == "ZeroPolynomialError"
    assert err.startswith("error: ") and err.rstrip().endswith("(ZeroPolynomialError)")


def test_domain_error_message_is_localized(run):
    code, _, err = run("fpure", "-p", "3", "--vars", "x,y", "--hypersurface", "0", "--lang", "ru")
    assert code == 1
    assert err.startswith("ошибка: ")


def test_oversized_expansion_is_refused(run):
    code, out, _ = run("fpure", "-p", "3", "--vars", "x,y,z", "--hypersurface", "(x+y+z)^100000")
    assert code == 1
    assert report(out)["error"] == "ExponentOverflowError"


def test_degree_cap_flag_reaches_buchberger(run):
    code, out, _ = run("fpure", "-p", "3", "--degree-cap", "1", "--vars", "x,y",
                       "--ideal", "x^2-y", "--ideal", "x*y-1")
    assert code == 1
    assert report(out)["error"] == "DegreeCapExceeded"


def test_zero_splitting_is_a_domain_error(run):
    code, out, _ = run("fdiff", "-p", "3", "--vars", "x,y", "--fedder", "y^2", "--center", "x")
    assert code == 1
    assert report(out)["error"] == "ZeroSplittingError"


@pytest.mark.parametrize("argv", [
    ("fdiff", "-p", "3", "--vars", "x,y,z,t", "--hypersurface", CONE, "--center", "x,y,z"),
    ("fpure", "-p", "3", "--vars", "x,y,z,t", "--hypersurface", CONE),
    ("center", "-p", "3", "--vars", "x,y", "--fedder", "x^2*y^2", "--center", "x"),
    ("fpt", "-p", "3", "--vars", "x,y", "--hypersurface", "x*y"),
    ("fibration", "scan", "-p", "5"),
    ("fibration", "moduli", "-p", "3"),
    ("fibration", "charscan", "--primes", "3,5,7", "--lambda0", "2"),
    ("divisor", "add", "-p", "5", "--div", '[{"prime": "t^2-1", "coeff": "1/2"}]',
     "--div", '[{"prime": "t+1", "coeff": "1/3"}]'),
    ("divisor", "pullback", "-p", "3", "--div", '[{"prime": "t", "coeff": "1"}]', "--map", "s^2"),
    ("divisor", "basechange", "-p", "3", "--div", '[{"prime": "t", "coeff": "1"}]', "--map", "s^2"),
    ("hasse", "-p", "5"),
    ("hasse", "-p", "7", "--lambda", "2,3"),
])
def test_reports_are_byte_identical(run, argv):
    runs = [run(*argv) for _ in range(3)]
    assert {code for code, _, _ in runs} == {0}
    assert len({out for _, out, _ in runs}) == 1


def test_manifest(run, tmp_path):
    path = tmp_path / "manifest.json"
    code, out, _ = run("fpure", "-p", "3", "--vars", "x,y", "--hypersurface", "x*y", "--manifest", str(path))
    assert code == 0
    m = json.loads(path.read_text(encoding="utf-8"))
    assert m["subcommand"] == "fpure"
    assert m["p"] == 3 and m["e"] == 1
    assert set(m["input_digests"]) == {"hypersurface"}
    assert m["result_digest"] == hashlib.sha256(out.rstrip("\n").encode("utf-8")).hexdigest()
    assert "wall_clock" not in report(out)


def test_run_log(run, tmp_path):
    cfg = tmp_path / "config.json"
    cfg.write_text(json.dumps({"write_log": True, "log_dir": "runs"}), encoding="utf-8")
    code, _, _ = run("fpure", "-p", "3", "--vars", "x,y", "--hypersurface", "x*y")
    assert code == 0
    logs = list((tmp_path / "runs").glob("log_*.txt"))
    assert logs
    assert any("[manifest]" in p.read_text(encoding="utf-8") for p in logs)


def test_read_only_run_leaves_config_untouched(run, tmp_path):
    cfg = tmp_path / "config.json"
    cfg.write_text('{"ui_language": "en"}', encoding="utf-8")
    code, _, _ = run("hasse", "-p", "5")
    assert code == 0
    assert cfg.read_text(encoding="utf-8") == '{"ui_language": "en"}'


def test_text_output(run):
    code, out, _ = run("fpure", "-p", "3", "--vars", "x,y", "--hypersurface", "x*y", "--text")
    assert code == 0
    assert "F-pure: yes" in out
    assert "witness: x^2*y^2" in out


def test_text_output_in_russian(run):
    code, out, _ = run("fpure", "-p", "3", "--vars", "x,y", "--hypersurface", "x*y", "--text", "--lang", "ru")
    assert code == 0
    assert "F-чистота: да" in out


def test_divisor_add(run):
    D = '[{"prime": "t+1", "coeff": "1/2"}]'
    code, out, _ = run("divisor", "add", "-p", "3", "--div", D, "--div", D)
    assert code == 0
    assert report(out) == {"p": 3, "divisor": [{"prime": "t+1", "coeff": "1/1"}], "degree": "1/1", "subfpure": True}


def test_divisor_add_splits_reducible_labels(run):
    code, out, _ = run("divisor", "add", "-p", "5", "--div", '[{"prime": "t^2-1", "coeff": "1"}]',
                       "--div", '[{"prime": "t-1", "coeff": "1"}]')
    assert code == 0
    rep = report(out)
    assert rep["divisor"] == [{"prime": "t+1", "coeff": "1/1"}, {"prime": "t+4", "coeff": "2/1"}]
    assert rep["subfpure"] is False


def test_divisor_pullback_and_basechange(run):
    D = '[{"prime": "t", "coeff": "1"}]'
    code, out, _ = run("divisor", "pullback", "-p", "3", "--div", D, "--map", "s^2")
    assert code == 0
    rep = report(out)
    assert rep["divisor"] == [{"prime": "s", "coeff": "2/1"}]
    assert rep["subfpure"] is False

    code, out, _ = run("divisor", "basechange", "-p", "3", "--div", D, "--map", "s^2")
    assert code == 0
    rep = report(out)
    assert rep["divisor"] == [{"prime": "s", "coeff": "1/1"}]
    assert rep["ramification"] == [{"prime": "s", "coeff": "1/1"}]
    assert rep["subfpure"] is True


def test_divisor_wild_map(run):
    code, out, _ = run("divisor", "pullback", "-p", "3", "--div", '[{"prime": "t", "coeff": "1"}]', "--map", "s^3")
    assert code == 1
    assert report(out)["error"] == "WildRamificationError"


def test_hasse_comparison(run):
    code, out, _ = run("hasse", "-p", "5")
    assert code == 0
    rep = report(out)
    assert rep["legendre"] == "t^2+4*t+1"
    assert rep["radicals_equal"] is True
    assert rep["scalar"] is not None


def test_hasse_at_fibers(run):
    code, out, _ = run("hasse", "-p", "5", "--lambda", "1,2")
    assert code == 0
    fibers = report(out)["fibers"]
    assert fibers == [
        {"lambda": 1, "degenerate": True, "hasse_value": None, "point_count": None},
        {"lambda": 2, "degenerate": False, "hasse_value": 3, "point_count": 8},
    ]


def test_fpt(run):
    code, out, _ = run("fpt", "-p", "3", "--vars", "x,y", "--hypersurface", "x*y")
    assert code == 0
    rep = report(out)
    assert [x["nu"] for x in rep["nu"]] == [2, 8, 26]
    assert rep["lower"] == "26/27" and rep["upper"] == "1/1"
    assert rep["supermultiplicative"] is True


def test_fibration_scan(run):
    code, out, _ = run("fibration", "scan", "-p", "5")
    assert code == 0
    rep = report(out)
    assert [f["lambda"] for f in rep["fibers"]] == [0, 1, 2, 3, 4]
    assert rep["non_split"] == []
    assert rep["divisor"] == [{"prime": "t^2+4*t+1", "coeff": "1/4"}]


def test_fibration_scan_selected_lambdas(run):
    code, out, _ = run("fibration", "scan", "-p", "3", "--lambda", "2", "--no-count")
    assert code == 0
    rep = report(out)
    assert rep["fibers"] == [{"lambda": 2, "degenerate": False, "h_value": 0, "hasse_value": 0,
                              "point_count": None, "pair_fpure": False, "split": False}]
    assert rep["non_split"] == [2]


def test_fibration_moduli(run):
    code, out, _ = run("fibration", "moduli", "-p", "3")
    assert code == 0
    rep = report(out)
    assert rep["thresholds"] == [{"prime": "t+1", "threshold": "1/2"}]
    assert rep["rational_support"] == [2]
    assert rep["subfpure"] is True


def test_fibration_charscan(run):
    code, out, _ = run("fibration", "charscan", "--primes", "3,5,7", "--lambda0", "2")
    assert code == 0
    rows = {r["p"]: r for r in report(out)["rows"]}
    assert rows[3]["lambda0_in_support"] is True
    assert rows[5]["lambda0_in_support"] is False
    assert rows[5]["point_count"] == 8


def test_center(run):
    code, out, _ = run("center", "-p", "3", "--vars", "x,y", "--fedder", "x^2*y^2", "--center", "x")
    assert code == 0
    assert report(out)["compatible"] is True
    code, out, _ = run("center", "-p", "3", "--vars", "x,y", "--fedder", "y^2", "--center", "x")
    assert code == 1
    assert report(out)["compatible"] is False
