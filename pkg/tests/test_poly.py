# tests/test_poly.py
"""Tests for sparse polynomials over F_p."""

import numpy as np
import pytest
import sympy as sp

from core.errors import ExponentOverflowError, FieldError, FrobeniusBoundError
from core.field import FieldCtx, VarCtx
from core.parse import parse_poly
from core.poly import (
    MultiPoly,
    coeff_of,
    derivative,
    drop_vars,
    embed,
    evaluate,
    frobenius,
    from_unipoly,
    in_monomial_bracket,
    mul_mod_bracket,
    poly_pow,
    pow_mod_bracket,
    specialize,
    substitute_shift,
    to_unipoly,
    truncate_mod_bracket,
)
from core.unipoly import UniPoly

XYZ = VarCtx(("x", "y", "z"))
x, y, z = sp.symbols("x y z")


def P(text, p=5, vars=XYZ):
    return parse_poly(text, vars, FieldCtx(p))


def to_sympy(f):
    gens = sp.symbols(" ".join(f.vars.names))
    return sp.Poly(str(f).replace("^", "**"), *gens, modulus=f.field.p)


def random_poly(rng, p, vars=XYZ, terms=4, max_exp=3):
    d = {}
    for _ in range(terms):
        m = tuple(int(e) for e in rng.integers(0, max_exp + 1, size=vars.arity))
        d[m] = int(rng.integers(1, p))
    return MultiPoly(FieldCtx(p), vars, d)


@pytest.mark.parametrize("text,expected", [
    ("x*y + z^2", "x*y+z^2"),
    ("z^2 + x*y", "x*y+z^2"),
    ("x*z + y^2", "y^2+x*z"),
    ("x - 1", "x+4"),
    ("2*x*3", "x"),
    ("-x", "4*x"),
    ("(x + y)^5", "x^5+y^5"),
    ("5*x", "0"),
    ("x^3 + x^2*y + 1", "x^3+x^2*y+1"),
])
def test_canonical_print(text, expected):
    assert str(P(text)) == expected


def test_zero_coefficients_are_dropped():
    f = MultiPoly(FieldCtx(3), XYZ, {(1, 0, 0): 3, (0, 1, 0): 2})
    assert len(f) == 1
    assert str(f) == "2*y"


def test_arity_mismatch():
    with pytest.raises(FieldError):
        MultiPoly(FieldCtx(3), XYZ, {(1, 0): 1})


def test_mixed_contexts():
    with pytest.raises(FieldError):
        P("x", 5) + P("x", 7)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_multiplication_matches_sympy(p):
    rng = np.random.default_rng(p)
    for _ in range(10):
        f, g = random_poly(rng, p), random_poly(rng, p)
        assert to_sympy(f * g) == to_sympy(f) * to_sympy(g)
        assert to_sympy(f + g) == to_sympy(f) + to_sympy(g)
        assert to_sympy(f - g) == to_sympy(f) - to_sympy(g)


@pytest.mark.parametrize("p,n", [(2, 3), (3, 2), (3, 8), (5, 4), (5, 7), (7, 6), (3, 10)])
def test_power_matches_sympy(p, n):
    rng = np.random.default_rng(100 + n)
    f = random_poly(rng, p, terms=3, max_exp=2)
    assert to_sympy(poly_pow(f, n)) == to_sympy(f) ** n


@pytest.mark.parametrize("p,e", [(2, 1), (2, 3), (3, 2), (5, 1)])
def test_frobenius_is_the_q_th_power(p, e):
    rng = np.random.default_rng(p * e)
    f = random_poly(rng, p, terms=3, max_exp=2)
    q = p ** e
    assert frobenius(f, q) == poly_pow(f, q) == f ** q


def test_frobenius_needs_power_of_p():
    with pytest.raises(FrobeniusBoundError):
        frobenius(P("x+y", 3), 6)


@pytest.mark.parametrize("p,n,q", [(3, 2, 3), (3, 8, 9), (5, 4, 5), (2, 3, 4), (7, 6, 7)])
def test_pow_mod_bracket_matches_truncated_power(p, n, q):
    rng = np.random.default_rng(7 * n + q)
    names = ("x", "y", "z")
    for _ in range(5):
        f = random_poly(rng, p, terms=3, max_exp=2)
        assert pow_mod_bracket(f, n, names, q) == truncate_mod_bracket(poly_pow(f, n), names, q)


def test_pow_mod_bracket_on_a_subset_of_variables():
    f = P("x + y + z", 3)
    full = poly_pow(f, 4)
    assert pow_mod_bracket(f, 4, ("x",), 3) == truncate_mod_bracket(full, ("x",), 3)


def test_mul_mod_bracket():
    f, g = P("x^2 + y", 3), P("x + y^2", 3)
    assert mul_mod_bracket(f, g, ("x", "y"), 3) == truncate_mod_bracket(f * g, ("x", "y"), 3)


def test_truncate_requires_power_of_p():
    with pytest.raises(FrobeniusBoundError):
        truncate_mod_bracket(P("x", 3), ("x",), 4)


@pytest.mark.parametrize("text,names,q,expected", [
    ("x^3 + y^3", ("x", "y"), 3, True),
    ("x^3 + y^2", ("x", "y"), 3, False),
    ("x^2*y^2*z^5", ("x", "y", "z"), 5, True),
    ("0", ("x",), 3, True),
    ("1", ("x",), 3, False),
])
def test_in_monomial_bracket(text, names, q, expected):
    assert in_monomial_bracket(P(text, 5), names, q) is expected


def test_coeff_of():
    f = P("x^2*y + x^2 + x*y")
    assert coeff_of(f, {"x": 2}) == P("y + 1")
    assert coeff_of(f, {"x": 2, "y": 1}) == P("1")
    assert coeff_of(f, {"z": 3}).is_zero()


def test_substitute_shift():
    assert str(substitute_shift(P("x^2"), {"x": 1})) == "x^2+2*x+1"
    f = P("x*y + z")
    back = substitute_shift(substitute_shift(f, {"x": 2, "z": 3}), {"x": -2, "z": -3})
    assert back == f


def test_substitute_shift_matches_sympy():
    f = P("x^3*y + 2*x*z^2 + y", 7)
    got = to_sympy(substitute_shift(f, {"x": 3, "y": 5}))
    want = sp.Poly((x + 3) ** 3 * (y + 5) + 2 * (x + 3) * z ** 2 + (y + 5), x, y, z, modulus=7)
    assert got == want


def test_specialize_and_evaluate():
    f = P("x*y + y")
    assert specialize(f, {"x": 2}) == P("3*y")
    assert evaluate(f, (2, 3, 0)) == (2 * 3 + 3) % 5
    assert evaluate(P("x^4", 5), (3, 0, 0)) == 1


def test_evaluate_arity():
    with pytest.raises(FieldError):
        evaluate(P("x"), (1, 2))


def test_derivative_in_characteristic_p():
    assert derivative(P("x^5 + x^2"), "x") == P("2*x")
    assert derivative(P("x^5*y"), "x").is_zero()


def test_drop_vars_and_embed():
    f = P("2*t + 2", 3, VarCtx(("x", "t")))
    g = drop_vars(f, ("x",))
    assert g.vars == VarCtx(("t",))
    assert str(g) == "2*t+2"
    assert embed(g, VarCtx(("x", "t"))) == f
    with pytest.raises(FieldError):
        drop_vars(P("x*t", 3, VarCtx(("x", "t"))), ("x",))


def test_unipoly_conversion():
    vars = VarCtx(("t",))
    f = P("t^2 + 4*t + 1", 5, vars)
    u = to_unipoly(f, "t")
    assert u == UniPoly(FieldCtx(5), [1, 4, 1])
    assert from_unipoly(u, vars, "t") == f
    with pytest.raises(FieldError):
        to_unipoly(P("x*y"))


def test_exponent_overflow():
    with pytest.raises(ExponentOverflowError):
        poly_pow(P("x^65536"), 65536)
