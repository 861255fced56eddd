import random
from fractions import Fraction

import pytest

from heis7.field import FF, QQ
from heis7.moduli import delta_ops
from heis7.poly import (
    Poly,
    REG_U,
    REG_X,
    VarRegistry,
    grevlex_key,
    kernel_of_operators,
    linear_form,
    monomial_basis,
    parse_poly,
    render_poly,
)


def rand_poly(rng, reg, deg, terms=4):
    out = Poly.zero(reg, QQ)
    for _ in range(terms):
        e = [0] * reg.n
        for _ in range(deg):
            e[rng.randrange(reg.n)] += 1
        out = out + Poly.monomial(reg, e, Fraction(rng.randint(-6, 6), rng.randint(1, 4)))
    return out


def test_grevlex_order():
    # x0^2 > x0 x1 > x1^2 > x0 x2 in three variables
    r = VarRegistry(["x0", "x1", "x2"])
    ms = [(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1)]
    assert sorted(ms, key=grevlex_key, reverse=True) == ms


def test_substitution_examples():
    sig = [Poly.var(REG_X, f"x{(j - 1) % 7}") for j in range(7)]
    assert parse_poly("x0*x1*x2", REG_X).substitute(sig) == parse_poly("x6*x0*x1", REG_X)
    ident = [Poly.var(REG_X, f"x{j}") for j in range(7)]
    f = rand_poly(random.Random(1), REG_X, 3)
    assert f.substitute(ident) == f


def test_substitution_composition_law():
    rng = random.Random(17)
    # images compose by substituting the inner map into the outer images
    g = [linear_form(REG_X, [Fraction(rng.randint(-3, 3)) for _ in range(7)]) for _ in range(7)]
    h = [linear_form(REG_X, [Fraction(rng.randint(-3, 3)) for _ in range(7)]) for _ in range(7)]
    gh = [hi.substitute(g) for hi in h]
    f = rand_poly(rng, REG_X, 2)
    assert f.substitute(gh) == f.substitute(h).substitute(g)


def test_substitution_respects_products():
    rng = random.Random(7)
    sig = [Poly.var(REG_X, f"x{(j - 1) % 7}") for j in range(7)]
    for _ in range(30):
        a, b = rand_poly(rng, REG_X, 2), rand_poly(rng, REG_X, 3)
        assert (a * b).substitute(sig) == a.substitute(sig) * b.substitute(sig)


def test_diffop_examples():
    d1, d2, d3 = delta_ops()
    u = lambda s: parse_poly(s, REG_U)
    assert d1.apply(u("u0*u1")) == Poly.const(REG_U, 1)
    assert d3.apply(u("u1^2+u0*u3")).is_zero()
    assert d1.apply(u("u2^2")) == Poly.const(REG_U, -1)


def test_diffop_bilinear_and_enumerated():
    d1, _, _ = delta_ops()
    rng = random.Random(23)
    f, g = rand_poly(rng, REG_U, 3), rand_poly(rng, REG_U, 3)
    assert d1.apply(f + g) == d1.apply(f) + d1.apply(g)
    assert d1.apply(f.scale(Fraction(3, 2))) == d1.apply(f).scale(Fraction(3, 2))
    # against brute-force monomial enumeration for all monomials of degree <= 4
    for d in range(5):
        for e in monomial_basis(REG_U, d):
            m = Poly.monomial(REG_U, e, 1)
            # d1 = d/du0 d/du1 - 1/2 d^2/du2^2 evaluated by hand
            manual = m.diff(0).diff(1) - m.diff(2, 2).scale(Fraction(1, 2))
            assert d1.apply(m) == manual


def test_kernel_dimensions():
    ops = delta_ops()
    assert len(kernel_of_operators(ops, 2)) == 7
    assert len(kernel_of_operators(ops, 1)) == 4
    assert len(kernel_of_operators([], 2, REG_U)) == 10


def test_homogeneity_preserved():
    rng = random.Random(4)
    a, b = rand_poly(rng, REG_X, 2), rand_poly(rng, REG_X, 3)
    if not a.is_zero() and not b.is_zero():
        assert (a * b).is_homogeneous()
        assert (a * b).degree() == 5


def test_parse_render():
    f = parse_poly("3*x0^2*x1 - x2*x3*x6 + 1/2*x4^3", REG_X)
    assert parse_poly(render_poly(f), REG_X) == f
    g = parse_poly("(z^2)*x4 - x0", REG_X, FF)
    assert parse_poly(render_poly(g), REG_X, FF) == g
    with pytest.raises(ValueError):
        parse_poly("x9", REG_X)


def test_registry_mismatch():
    f = parse_poly("u0*u1", REG_U)
    g = parse_poly("x0", REG_X)
    with pytest.raises(ValueError):
        _ = f + g


def test_bidegree():
    from heis7.poly import REG_TU

    p = parse_poly("t0*u1+t2*u2", REG_TU)
    assert p.bidegree() == (1, 1)
    q = parse_poly("t1*t2*u0", REG_TU)
    assert q.bidegree() == (2, 1)
    with pytest.raises(ValueError):
        (p + q).bidegree()
