import random
from fractions import Fraction

import pytest

from heis7.field import QQ, fp
from heis7.groebner import (
    GradedIdeal,
    buchberger,
    ideal_hf_oracle,
)
from heis7.moduli import f_basis, j_ideal
from heis7.poly import Poly, REG_U, VarRegistry, parse_poly, render_poly


def u(s):
    return parse_poly(s, REG_U)


def test_monomial_ideal_is_its_own_basis():
    I = GradedIdeal(REG_U, QQ, [u("u1*u2"), u("u2*u3"), u("u3*u1")])
    gb = I.gb()
    assert sorted(render_poly(p) for p in gb.as_polys()) == ["u1*u2", "u1*u3", "u2*u3"]


def brute_standard_monomials(lt_gens, reg, d):
    """Count degree-d monomials not divisible by any generator (oracle)."""
    from heis7.poly import monomial_basis

    count = 0
    for e in monomial_basis(reg, d):
        if not any(all(x >= y for x, y in zip(e, g)) for g in lt_gens):
            count += 1
    return count


def test_hilbert_function_against_enumeration():
    I = GradedIdeal(REG_U, QQ, [u("u1*u2"), u("u2*u3"), u("u3*u1")])
    hd = I.hilbert()
    lt = I.gb().leading_terms()
    for d in range(7):
        assert hd.hf(d) == brute_standard_monomials(lt, REG_U, d)
    assert hd.hf_range(1, 5) == [4, 7, 10, 13, 16]
    assert hd.dim == 2 and hd.degree == 3


def test_random_monomial_ideals_hilbert():
    rng = random.Random(77)
    reg = VarRegistry(["a", "b", "c", "d"])
    for _ in range(15):
        gens = []
        for _ in range(rng.randint(1, 5)):
            e = [0, 0, 0, 0]
            for _ in range(rng.randint(1, 4)):
                e[rng.randrange(4)] += 1
            gens.append(Poly.monomial(reg, e, 1))
        I = GradedIdeal(reg, QQ, gens)
        hd = I.hilbert()
        lt = I.gb().leading_terms()
        for d in range(6):
            assert hd.hf(d) == brute_standard_monomials(lt, reg, d)


def test_apolar_ideal_membership():
    J = j_ideal()
    gb = J.gb()
    assert gb.contains(u("u0^2"))
    assert gb.contains(u("u0^3"))  # every cubic is a member: hf(3) = 0
    assert gb.contains(u("u0^4"))
    assert not gb.contains(u("u2^2"))
    assert not gb.contains(u("u0*u1"))
    hd = J.hilbert()
    assert hd.hf_range(0, 4) == [1, 4, 3, 0, 0]
    assert hd.dim == 0 and hd.degree == 8


def test_hf_oracle_matches_groebner():
    J = j_ideal()
    hd = J.hilbert()
    for d in range(5):
        assert ideal_hf_oracle(J.gens, d) == hd.hf(d)


def test_normal_form_is_zero_exactly_for_members():
    J = j_ideal()
    gb = J.gb()
    f, _ = f_basis()
    rng = random.Random(5)
    # explicit membership certificates: random combinations of generators
    for _ in range(10):
        comb = Poly.zero(REG_U, QQ)
        for i in range(7):
            e = [0] * 4
            e[rng.randrange(4)] += 1
            comb = comb + Poly.monomial(REG_U, e, Fraction(rng.randint(-3, 3))) * f[i]
        assert gb.normal_form(comb).is_zero()


def test_deterministic_output():
    gens = [u("u1^2+u0*u3"), u("u3^2+u0*u2"), u("u2^2+u0*u1")]
    a1, _ = buchberger([dict(g.terms) for g in gens], QQ)
    a2, _ = buchberger([dict(g.terms) for g in gens], QQ)
    assert a1 == a2


def test_surface_cubics_form_groebner_basis():
    from heis7.moduli import surface_ideal

    F31 = fp(31)
    S = surface_ideal((1, 1, 1, 1))
    I = S.ideal(F31)
    gb = I.gb()
    assert len(gb.polys) == 21
    hd = I.hilbert()
    assert hd.hf_range(0, 7) == [1, 7, 28, 63, 112, 175, 252, 343]
    assert hd.dim == 3 and hd.degree == 14
    assert hd.numerator == {0: 1, 3: -21, 4: 49, 5: -42, 6: 14, 7: -1}


def test_inhomogeneous_rejected():
    with pytest.raises(ValueError):
        GradedIdeal(REG_U, QQ, [u("u0^2 + u1")])
