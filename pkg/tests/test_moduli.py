import random
from fractions import Fraction

import pytest

from heis7.field import FF, QQ
from heis7.linalg import rank
from heis7.moduli import (
    AlphaMatrix,
    DegenerateParameter,
    Wedge3,
    alpha_compose,
    alpha_compose_is_zero,
    alpha_t,
    composition_table_report,
    compose_u,
    d_vector,
    delta_criterion,
    delta_ops,
    epsilon_identity_report,
    equational_point,
    eta_klein,
    f_basis,
    grass_membership,
    iota_x_images,
    klein_invariance_report,
    klein_quartic,
    minor_span_pairing,
    minors_and_independence,
    net_discriminant,
    net_discriminant_ratio,
    net_matrices,
    pfaffian_apolarity_report,
    printed_b_matrices,
    psi,
    sigma_x_images,
    surface_ideal,
    tau_x_images,
    wedge_reps,
    GrassPoint,
)
from heis7.poly import REG_U, REG_X, Poly, monomial_basis, parse_poly, render_poly


def test_wedge_rep_entries():
    reps, comp = wedge_reps()
    assert reps[1].entries[0] == Wedge3.term(0, 1, 6)
    assert reps[2].entries[0] == Wedge3.term(0, 2, 5)
    assert reps[3].entries[0] == Wedge3.term(0, 4, 3)
    assert reps[0].entries[0] == Wedge3.term(1, 4, 2) + (-Wedge3.term(6, 3, 5))
    assert all(r.check_shift_consistency() for r in reps.values())
    assert comp[0] == Wedge3.term(1, 4, 2) + Wedge3.term(6, 3, 5)


def test_composition_matrices():
    assert composition_table_report() == []
    b1, _, _ = printed_b_matrices()
    assert render_poly(b1[0, 1]) == "x4"
    assert render_poly(b1[0, 6]) == "-x3"
    assert compose_u(1, 2).is_zero()
    assert compose_u(0, 0).is_zero()


def test_displayed_matrices_rank_six_at_probe():
    from heis7.moduli import PROBE_POINT

    for b in printed_b_matrices():
        assert rank(b.evaluate(PROBE_POINT)) == 6


def test_block_rank_probe():
    a = alpha_t((1, 1, 1, 1))
    minors, indep, diag = minors_and_independence(a, l_coeffs=(1, 2, 3, 5))
    assert indep
    assert diag == [6, 6, 6, 6]
    dep = AlphaMatrix.from_coeffs(
        [[[1, 0, 0, 0], [0, 1, 0, 0]], [[1, 0, 0, 0], [0, 1, 0, 0]], [[0, 0, 0, 0], [0, 0, 0, 0]]]
    )
    _, indep2, _ = minors_and_independence(dep)
    assert not indep2


def test_delta_criterion_cases():
    # a single minor with the mixed term but no compensating square fails
    a = AlphaMatrix.from_coeffs(
        [[[1, 0, 0, 0], [0, 0, 0, 0]], [[0, 0, 0, 0], [0, 1, 0, 0]], [[0, 0, 0, 0], [0, 0, 0, 0]]]
    )
    assert not delta_criterion(a)  # minor u0*u1 alone
    z = AlphaMatrix.from_coeffs([[[0] * 4] * 2] * 3)
    assert delta_criterion(z)
    assert alpha_compose_is_zero(alpha_compose(z))


def test_pure_square_matrix_composes_to_zero():
    # rows (u0, 0), (0, u0), (0, 0): the only minor is the pure square,
    # whose self-composition vanishes, and the operators kill it too
    a = AlphaMatrix.from_coeffs(
        [[[1, 0, 0, 0], [0, 0, 0, 0]], [[0, 0, 0, 0], [1, 0, 0, 0]], [[0] * 4, [0] * 4]]
    )
    assert alpha_compose_is_zero(alpha_compose(a))
    assert delta_criterion(a)


def test_equivalence_on_seeded_matrices():
    rng = random.Random(42)
    for _ in range(60):
        coeffs = [
            [[Fraction(rng.randint(-5, 5)) for _ in range(4)] for _ in range(2)]
            for _ in range(3)
        ]
        a = AlphaMatrix.from_coeffs(coeffs)
        assert alpha_compose_is_zero(alpha_compose(a)) == delta_criterion(a)


def test_net_kernel_and_split():
    ops = delta_ops()
    f, v = f_basis()
    for i in range(7):
        for op in ops:
            assert op.apply(f[i]).is_zero()
    assert f[4] == parse_poly("u0*u3+u1^2", REG_U)
    assert v[3] == parse_poly("u0*u3-u1^2", REG_U)
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

    assert rank(coords([f[i] for i in range(7)] + [v[i] for i in (1, 2, 3)])) == 10


def test_net_matrices_entries():
    m1, m2, m3 = net_matrices()
    assert m3[0][3] == Fraction(1, 2)
    assert m3[1][1] == Fraction(-1, 2)
    assert m1[0][1] == Fraction(1, 2) and m1[2][2] == Fraction(-1, 2)


def test_psi_values():
    p = psi((1, 1, 1, 1))
    assert p.rows[0] == [Fraction(x) for x in (-1, 2, -1, 0, 1, -1, 0)]
    assert p.rank() == 3
    assert psi((1, 0, 0, 0)).rank() < 3
    with pytest.raises(ValueError):
        psi((0, 0, 0, 0))


def test_eta_membership():
    assert eta_klein().is_skew()
    ok, vals = grass_membership(equational_point())
    assert ok and all(v == 0 for v in vals) and len(vals) == 9
    ok, _ = grass_membership(psi((2, 1, 3, 5)))
    assert ok
    rng = random.Random(13)
    rows = [[Fraction(rng.randint(-9, 9)) for _ in range(7)] for _ in range(3)]
    p = GrassPoint(rows)
    if p.rank() == 3:
        ok, _ = grass_membership(p)
        assert not ok
    degenerate = GrassPoint([[Fraction(0)] * 7 for _ in range(3)])
    with pytest.raises(ValueError):
        grass_membership(degenerate)


def test_alpha_family():
    a = alpha_t((1, 1, 1, 1))
    assert delta_criterion(a)
    assert alpha_compose_is_zero(alpha_compose(a))
    assert minor_span_pairing(a, psi((1, 1, 1, 1))) == "generator-list-order"
    with pytest.raises(DegenerateParameter):
        alpha_t((1, 0, 0, 0))


def test_grass_quadrics_are_the_curve():
    # under the generator-list enumeration the rows cut out twisted cubics
    from heis7.resolution import hilbert_burch

    q = psi((1, 1, 1, 1)).quadrics()
    mat = hilbert_burch(q)
    assert mat.nrows == 3 and mat.ncols == 2
    # under the display enumeration the same rows give a generic (complete
    # intersection) net: the detected transposition of the two mixed squares
    from heis7.moduli import L_BASIS_ORDER
    from heis7.resolution import NotHilbertBurch

    qd = psi((1, 1, 1, 1)).quadrics(L_BASIS_ORDER)
    with pytest.raises(NotHilbertBurch):
        hilbert_burch(qd)


def test_d_vector_values():
    d = d_vector()
    assert d[1] == parse_poly("x0*x1*x6", REG_X)
    assert d[3] == parse_poly("x2^2*x3+x5^2*x4", REG_X)
    assert d[6] == parse_poly("x1*x2*x4+x3*x5*x6-x0^3", REG_X)
    taui = tau_x_images()
    for p in d:
        q = p.map_coeffs(FF.coerce, FF)
        assert q.substitute(taui) == q


def test_surface_ideal_at_ones():
    S = surface_ideal((1, 1, 1, 1))
    assert not S.degenerate
    assert len(S.basis) == 21
    taui = tau_x_images()
    for g in S.g:
        gq = g.map_coeffs(FF.coerce, FF)
        assert gq.substitute(taui) == gq
    data = S.to_json()
    assert len(data["generators"]) == 21


def test_surface_character(g7):
    from heis7.characters import subspace_character

    S = surface_ideal((1, 1, 1, 1))
    chi = subspace_character(S.basis, g7)
    assert g7.decompose(chi) == {"V4": 3}


def test_klein_quartic_suite():
    inv = klein_invariance_report()
    assert inv == {"mu": True, "nu": True, "delta": True}
    pa = pfaffian_apolarity_report()
    assert pa["annihilates"]
    assert pa["kernel_dim"] == 7
    assert pa["pfaffian_span_dim"] == 7
    assert pa["same_span"]
    assert pa["quotient_hf"] == [1, 3, 6, 3, 1, 0, 0]
    assert pa["gorenstein_symmetric"]


def test_net_discriminant():
    assert net_discriminant_ratio() == Fraction(-1, 16)
    det = net_discriminant()
    fy = klein_quartic().transport(det.reg)
    assert det == fy.scale(Fraction(-1, 16))
    # scaling the net by 3 scales the discriminant by 3^4
    from heis7.formmat import FormMatrix, det_form
    from heis7.poly import REG_Y

    ys = [Poly.var(REG_Y, n) for n in ("y1", "y2", "y3")]
    z = Poly.zero(REG_Y, QQ)
    entries = [[z] * 4 for _ in range(4)]
    for i in range(4):
        for j in range(4):
            acc = z
            for k, m in enumerate(net_matrices()):
                if m[i][j]:
                    acc = acc + ys[k].scale(m[i][j] * 3)
            entries[i][j] = acc
    scaled = det_form(FormMatrix(entries))
    assert scaled == fy.scale(Fraction(-81, 16))


def test_epsilon_identity():
    rep = epsilon_identity_report()
    assert rep == {
        "identity_holds": True,
        "eps0_part_vanishes": True,
        "single_term_ok": True,
    }


def test_iota_stability_of_surface():
    from heis7.characters import SpanSolver

    S = surface_ideal((2, 1, 3, 5))
    solver = SpanSolver(S.basis)
    assert solver.is_stable_under(iota_x_images())
    assert solver.is_stable_under(sigma_x_images())
