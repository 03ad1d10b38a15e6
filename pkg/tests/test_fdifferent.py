# tests/test_fdifferent.py
"""Tests for the F-different of a complete-intersection center."""

from fractions import Fraction

import pytest

from core.divisor import QDivisor
from core.errors import FieldError, ZeroSplittingError
from core.fdifferent import CenterProblem, compute_fdifferent, translate_center
from core.fedder import FrobeniusLevel
from core.fibration import CubicFamily, assemble_moduli_divisor
from core.field import FieldCtx, VarCtx
from core.groebner import Ideal
from core.parse import parse_poly
from core.poly import poly_pow
from core.unipoly import UniPoly

CONE_VARS = VarCtx(("x", "y", "z", "t"))
CONE = "z*y^2-x*(x-z)*(x-t*z)"
XY = VarCtx(("x", "y"))


def cone_problem(p, e=1):
    field = FieldCtx(p)
    level = FrobeniusLevel(field, e)
    a = parse_poly(CONE, CONE_VARS, field)
    return poly_pow(a, level.q - 1), Ideal.of_vars(field, CONE_VARS, ("x", "y", "z")), level


def test_cone_fdifferent_at_three():
    f, J, level = cone_problem(3)
    res = compute_fdifferent(f, J, level)
    F3 = FieldCtx(3)
    assert str(res.h_bar) == "2*t+2"
    assert res.h_bar.vars == VarCtx(("t",))
    assert res.g_e == parse_poly("x^2*y^2*z^2", CONE_VARS, F3)
    assert res.divisor == QDivisor(F3, {UniPoly(F3, [1, 1]): Fraction(1, 2)})
    assert res.compat_ok and res.center_ok
    assert res.leftover_digest is None


@pytest.mark.parametrize("p", [3, 5, 7])
def test_adjunction_and_fibration_routes_agree(p):
    f, J, level = cone_problem(p)
    family = CubicFamily.legendre_cone(FieldCtx(p))
    assert compute_fdifferent(f, J, level).divisor == assemble_moduli_divisor(family, level)


def test_divisor_does_not_depend_on_e():
    f1, J, level1 = cone_problem(3, 1)
    f2, _, level2 = cone_problem(3, 2)
    d1 = compute_fdifferent(f1, J, level1).divisor
    d2 = compute_fdifferent(f2, J, level2).divisor
    assert d1 == d2


@pytest.mark.parametrize("p", [3, 5, 7])
def test_unit_multiple_of_f_gives_the_same_divisor(p):
    f, J, level = cone_problem(p)
    base = compute_fdifferent(f, J, level)
    for c in range(2, p):
        res = compute_fdifferent(f.scale(c), J, level)
        assert res.divisor == base.divisor
        assert res.h_bar == base.h_bar.scale(c)
        assert (res.compat_ok, res.center_ok) == (base.compat_ok, base.center_ok)


@pytest.mark.parametrize("c", [1, 2])
def test_unit_multiple_on_the_general_path(c):
    F3 = FieldCtx(3)
    level = FrobeniusLevel(F3, 1)
    J = Ideal.of([parse_poly("x - y", XY, F3)], F3, XY, complete_intersection=True)
    res = compute_fdifferent(parse_poly(f"{c}*y*(x-y)^2", XY, F3), J, level)
    assert res.h_bar == parse_poly(f"{c}*y", XY, F3)
    assert res.g_e == parse_poly("(x-y)^2", XY, F3)
    assert res.center_ok


def test_leftover_marks_an_incompatible_decomposition():
    F3 = FieldCtx(3)
    level = FrobeniusLevel(F3, 1)
    f = parse_poly("x^2*y^2 + x", XY, F3)
    res = compute_fdifferent(f, Ideal.of_vars(F3, XY, ("x",)), level)
    assert not res.compat_ok
    assert res.leftover_digest is not None
    assert str(res.h_bar) == "y^2"
    assert res.divisor == QDivisor(F3, {UniPoly(F3, [0, 1]): 1}, var="y")


def test_zero_splitting():
    F3 = FieldCtx(3)
    level = FrobeniusLevel(F3, 1)
    with pytest.raises(ZeroSplittingError):
        compute_fdifferent(parse_poly("y^2", XY, F3), Ideal.of_vars(F3, XY, ("x",)), level)


def test_center_covering_every_variable():
    F3 = FieldCtx(3)
    level = FrobeniusLevel(F3, 1)
    f = parse_poly("x^2*y^2", XY, F3)
    res = compute_fdifferent(f, Ideal.of_vars(F3, XY, ("x", "y")), level)
    assert res.h_bar == parse_poly("1", XY, F3)
    assert res.divisor is None


def test_general_complete_intersection_path():
    F3 = FieldCtx(3)
    level = FrobeniusLevel(F3, 1)
    J = Ideal.of([parse_poly("x - y", XY, F3)], F3, XY, complete_intersection=True)
    f = parse_poly("y*(x-y)^2", XY, F3)
    res = compute_fdifferent(f, J, level)
    assert res.h == parse_poly("y", XY, F3)
    assert res.h_bar == parse_poly("y", XY, F3)
    assert res.g_e == parse_poly("(x-y)^2", XY, F3)
    assert res.compat_ok and res.center_ok
    assert res.divisor is None


def test_general_path_zero_splitting():
    F3 = FieldCtx(3)
    level = FrobeniusLevel(F3, 1)
    J = Ideal.of([parse_poly("x - y", XY, F3)], F3, XY, complete_intersection=True)
    with pytest.raises(ZeroSplittingError):
        compute_fdifferent(parse_poly("(x-y)^3", XY, F3), J, level)


def test_translate_center():
    F3 = FieldCtx(3)
    f = parse_poly("(x-1)^2*(y-2)^2", XY, F3)
    J = Ideal.of([parse_poly("x - 1", XY, F3)], F3, XY, complete_intersection=True)
    moved = translate_center(CenterProblem(f, J), (1, 2))
    assert moved.f == parse_poly("x^2*y^2", XY, F3)
    assert moved.J.variable_names() == ("x",)
    assert moved.J.complete_intersection
    with pytest.raises(FieldError):
        translate_center(CenterProblem(f, J), (1,))


def test_context_mismatch():
    f, J, level = cone_problem(3)
    other = Ideal.of_vars(FieldCtx(5), CONE_VARS, ("x",))
    with pytest.raises(FieldError):
        compute_fdifferent(f, other, level)
