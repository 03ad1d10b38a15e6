# tests/test_unipoly.py
"""Tests for univariate polynomials: gcd, squarefree parts and factorization."""

import numpy as np
import pytest
import sympy as sp

from core.errors import PthRootError, ZeroPolynomialError
from core.field import FieldCtx
from core.unipoly import (
    UniPoly,
    factor,
    from_roots,
    multiplicity_at,
    pth_root,
    roots,
    squarefree_decomposition,
    squarefree_part,
    uni_gcd,
)

t = sp.symbols("t")


def U(p, *coeffs):
    """Coefficients high to low, as written."""
    return UniPoly(FieldCtx(p), list(reversed(coeffs)))


def sympy_factors(u):
    p = u.field.p
    poly = sp.Poly(list(reversed(u.coeffs)), t, modulus=p)
    _, facs = poly.factor_list()
    out = []
    for g, k in facs:
        cs = [int(c) % p for c in reversed(g.all_coeffs())]
        inv = pow(cs[-1], -1, p)
        out.append((tuple(c * inv % p for c in cs), k))
    return sorted(out)


def test_format():
    assert U(5, 1, 4, 1).format("t") == "t^2+4*t+1"
    assert U(3, 2, 2).format("s") == "2*s+2"
    assert UniPoly(FieldCtx(3)).format() == "0"


def test_division_and_gcd():
    f = U(5, 1, 0, 4)          # t^2 - 1
    g = U(5, 1, 1)             # t + 1
    q, r = divmod(f, g)
    assert q == U(5, 1, 4) and r.is_zero()
    assert uni_gcd(f, U(5, 1, 4)) == U(5, 1, 4)


def test_compose():
    f = U(3, 1, 0)             # t
    g = U(3, 1, 0, 0)          # s^2
    assert f.compose(g) == g
    assert U(3, 1, 1).compose(U(3, 1, 0, 0)) == U(3, 1, 0, 1)


def test_pth_root():
    assert pth_root(U(3, 1, 0, 0, 1)) == U(3, 1, 1)
    with pytest.raises(PthRootError):
        pth_root(U(3, 1, 1))


@pytest.mark.parametrize("p,coeffs,expected", [
    (3, (1, 0, 0, 1), (1, 1)),                              # (t+1)^3
    (3, (1, 2, 0, 1, 2), (1, 0, 2)),                        # (t+1)^3 (t+2)
    (5, (1, 0, 0, 0, 0, 4), (1, 4)),                        # (t-1)^5
    (5, (1, 4, 1), (1, 4, 1)),
    (2, (1, 0, 1), (1, 1)),                                 # (t+1)^2
])
def test_squarefree_part(p, coeffs, expected):
    assert squarefree_part(U(p, *coeffs)) == U(p, *expected)


def test_squarefree_part_zero():
    with pytest.raises(ZeroPolynomialError):
        squarefree_part(UniPoly(FieldCtx(3)))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_squarefree_part_random_products(p):
    field = FieldCtx(p)
    rng = np.random.default_rng(100 + p)
    for _ in range(20):
        f = UniPoly.constant(field, int(rng.integers(1, p)))
        for _ in range(int(rng.integers(1, 4))):
            deg = int(rng.integers(1, 4))
            g = UniPoly(field, [int(c) for c in rng.integers(0, p, size=deg)] + [1])
            f = f * g ** int(rng.choice([1, 2, p, p + 1]))
        sqf = squarefree_part(f)
        assert (f % sqf).is_zero()
        assert sqf.pow_mod(f.degree(), f).is_zero()
        assert uni_gcd(sqf, sqf.derivative()).degree() == 0
        assert {a for a in range(p) if sqf(a) == 0} == {a for a in range(p) if f(a) == 0}


def test_squarefree_decomposition_with_pth_powers():
    f = U(3, 1, 0, 0, 1) * U(3, 1, 2)        # (t+1)^3 (t+2)
    dec = {g.format(): m for g, m in squarefree_decomposition(f)}
    assert dec == {"t+2": 1, "t+1": 3}


def test_factor_irreducible_quadratic():
    facs = factor(U(5, 1, 4, 1))
    assert len(facs) == 1
    assert facs[0].poly == U(5, 1, 4, 1)
    assert facs[0].multiplicity == 1 and facs[0].certified


def test_factor_sorted_by_degree_then_coefficients():
    f = U(3, 1, 0, 0, 1) * U(3, 1, 2)
    assert [(fc.poly.format(), fc.multiplicity) for fc in factor(f)] == [("t+1", 3), ("t+2", 1)]


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_factor_matches_sympy(p):
    rng = np.random.default_rng(p)
    for _ in range(15):
        deg = int(rng.integers(1, 7))
        cs = [int(c) for c in rng.integers(0, p, size=deg)] + [int(rng.integers(1, p))]
        u = UniPoly(FieldCtx(p), cs)
        ours = sorted((fc.poly.coeffs, fc.multiplicity) for fc in factor(u))
        assert ours == sympy_factors(u)
        assert all(fc.certified for fc in factor(u))


def test_roots():
    assert roots(U(5, 1, 0, 4)) == [1, 4]
    assert roots(U(5, 1, 4, 1)) == []
    assert roots(from_roots(FieldCtx(7), [3, 1, 3])) == [1, 3]


def test_multiplicity_at():
    f = from_roots(FieldCtx(7), [3, 3, 3, 5])
    assert multiplicity_at(f, U(7, 1, 4)) == 3
    assert multiplicity_at(f, U(7, 1, 2)) == 1
    assert multiplicity_at(f, U(7, 1, 0)) == 0


def test_pow_mod():
    m = U(5, 1, 4, 1)
    x = U(5, 1, 0)
    assert x.pow_mod(25, m) == x ** 25 % m
