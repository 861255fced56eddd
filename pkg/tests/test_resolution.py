from fractions import Fraction

import pytest

from heis7.field import QQ, fp
from heis7.groebner import GradedIdeal
from heis7.linalg import rank
from heis7.moduli import j_ideal
from heis7.poly import Poly, REG_U, VarRegistry, monomial_basis, parse_poly
from heis7.resolution import (
    NotHilbertBurch,
    free_resolution,
    hb_minors,
    hilbert_burch,
    intersect,
    minimal_ideal_gens,
    syzygies_of_polys,
)


def u(s):
    return parse_poly(s, REG_U)


def test_twisted_cubic_resolution():
    I = GradedIdeal(REG_U, QQ, [u("u1*u2"), u("u2*u3"), u("u3*u1")])
    bt = free_resolution(I)
    assert bt.complete
    assert bt.entries == {(0, 0): 1, (1, 2): 3, (2, 3): 2}
    assert bt.render().splitlines()[0].split() == ["1", "-", "-"]


def test_apolar_ideal_resolution():
    J = j_ideal()
    bt = free_resolution(J)
    assert bt.complete
    assert bt.entries == {(0, 0): 1, (1, 2): 7, (2, 3): 8, (2, 4): 3, (3, 5): 8, (4, 6): 3}
    assert bt.alternating_sums() == J.hilbert().numerator


def test_syzygies_are_exact():
    gens = [u("u1*u2"), u("u2*u3"), u("u3*u1"), u("u1^2+u0*u3")]
    syz, truncated = syzygies_of_polys(gens, QQ)
    assert not truncated and syz
    for v in syz:
        acc = Poly.zero(REG_U, QQ)
        for (gi, e), c in v.items():
            acc = acc + Poly.monomial(REG_U, e, c) * gens[gi]
        assert acc.is_zero()


def test_single_form_has_no_syzygies():
    syz, truncated = syzygies_of_polys([u("u0^2 + u1*u2")], QQ)
    assert not truncated and syz == []


def test_hilbert_burch_roundtrip():
    gens = [u("u1*u2"), u("u2*u3"), u("u3*u1")]
    mat = hilbert_burch(gens)
    assert mat.nrows == 3 and mat.ncols == 2
    minors = hb_minors(mat)
    monos = monomial_basis(REG_U, 2)
    ix = {e: i for i, e in enumerate(monos)}

    def coords(ps):
        rows = []
        for p in ps:
            row = [Fraction(0)] * len(monos)
            for e, c in p.terms.items():
                row[ix[e]] = c
            rows.append(row)
        return rows

    assert rank(coords(minors)) == 3
    assert rank(coords(minors) + coords(gens)) == 3


def test_hilbert_burch_rejects():
    with pytest.raises(NotHilbertBurch):
        hilbert_burch([u("u0*u1"), u("u0*u2"), u("u0*u3")])
    with pytest.raises(NotHilbertBurch):
        hilbert_burch([u("u0^2"), u("u0^2"), u("u1^2")])
    with pytest.raises(NotHilbertBurch):
        hilbert_burch([u("u0^2"), u("u1^2")])


def test_plane_cubic_union_point():
    RW = VarRegistry(["w", "x", "y", "z"])
    w = lambda s: parse_poly(s, RW)
    A = GradedIdeal(RW, QQ, [w("w"), w("x^3+y^3+z^3")])
    B = GradedIdeal(RW, QQ, [w("x"), w("y"), w("z")])
    C = intersect(A, B)
    bt = free_resolution(C)
    assert bt.entries == {(0, 0): 1, (1, 2): 3, (1, 3): 1, (2, 3): 3, (2, 4): 1, (3, 4): 1}


def test_intersection_identities():
    I = GradedIdeal(REG_U, QQ, [u("u1*u2"), u("u2*u3"), u("u3*u1")])
    II = intersect(I, I)
    assert sorted(str(g) for g in II.gens) == sorted(str(g) for g in I.gens)
    ONE = GradedIdeal(REG_U, QQ, [Poly.const(REG_U, 1)])
    IO = intersect(I, ONE)
    gb1 = GradedIdeal(REG_U, QQ, IO.gens).gb().polys
    gb2 = I.gb().polys
    assert gb1 == gb2


def test_minimal_generator_trim():
    gens = [u("u0^2"), u("u0^2 + u1*u2"), u("u0^3"), u("u1*u2")]
    kept = minimal_ideal_gens(gens, QQ)
    assert len(kept) == 2
    assert all(g.degree() == 2 for g in kept)


def test_field_agreement_on_fixture():
    J = j_ideal()
    F31 = fp(31)
    J31 = GradedIdeal(REG_U, F31, [g.map_coeffs(F31.coerce, F31) for g in J.gens])
    assert free_resolution(J).entries == free_resolution(J31).entries


def test_truncation_flag():
    J = j_ideal()
    bt = free_resolution(J, degree_cap=3)
    assert not bt.complete
    assert bt.entries[(1, 2)] == 7
