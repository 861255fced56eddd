import pytest

from heis7.field import Cyc7, FieldElem, alpha_minus, alpha_plus
from heis7.characters import (
    RepError,
    char_of_rep,
    h0_oa_decomposition,
    omega3_sections_char,
    subspace_character,
)
from heis7.heisenberg import IOTA, SIGMA, TAU, dense_galois


def test_degrees(g7, sl2):
    total = sum(
        int(g7.rows[lb].values[g7.identity_class].rational_value()) ** 2 for lb in g7.labels
    )
    assert total == 686
    assert len(g7.labels) == 38
    total = sum(int(sl2.rows[lb].values[0].rational_value()) ** 2 for lb in sl2.labels)
    assert total == 336
    assert len(sl2.labels) == 11


def test_central_column(g7):
    # the 7-dimensional rows take value 7 theta^i(alpha) on central classes
    for c in range(g7.classes.count):
        lb = g7.classes.labels[c]
        if lb[0] == "central":
            a = lb[1]
            want = FieldElem(Cyc7.from_int(7) * Cyc7.zeta(a), 0)
            assert g7.rows["V0"].values[c] == want


def test_sl2_table_values(sl2):
    nu = sl2.classes.labels.index("nu")
    assert sl2.rows["U"].values[nu] == FieldElem(alpha_minus(), 0)
    assert sl2.rows["U'"].values[nu] == FieldElem(alpha_plus(), 0)
    r8a = sl2.classes.labels.index("r8a")
    assert sl2.rows["T1"].values[r8a] == FieldElem.sqrt2()
    assert sl2.rows["T2"].values[r8a] == -FieldElem.sqrt2()


def test_char_of_rep_rows(g7):
    ch = char_of_rep(SIGMA, TAU, IOTA, g7)
    assert ch == g7.rows["V0"]
    tw = char_of_rep(dense_galois(SIGMA, 1), dense_galois(TAU, 1), dense_galois(IOTA, 1), g7)
    assert tw == g7.rows["V1"] and tw != ch


def test_char_of_rep_rejects_bad_images(g7):
    from heis7.heisenberg import MU

    with pytest.raises(RepError):
        char_of_rep(SIGMA, TAU, MU, g7)  # involution image has order 3


def test_key_decompositions(g7):
    V = [g7.rows[f"V{i}"] for i in range(6)]
    assert g7.decompose(V[0] * V[3]) == {"I": 1, "Z": 1}
    assert g7.decompose(g7.sym_power(V[0], 2)) == {"V2#": 4}
    assert g7.decompose(g7.ext_power(V[0], 7)) == {"I": 1}
    assert g7.decompose(g7.sym_power(V[0], 7)) == {"I": 8, "S": 28, "Z": 35}
    assert g7.decompose(g7.ext_power(V[0], 3)) == {"V1": 1, "V1#": 4}
    # the proof-step product: V4 (V1# + 4 V1) = 4I + S + 5Z
    chi = V[4] * (V[1] * g7.rows["S"] + V[1] * FieldElem(Cyc7.from_int(4), 0))
    assert g7.decompose(chi) == {"I": 4, "S": 1, "Z": 5}


def test_not_a_character_errors(g7):
    bad = g7.rows["V0"] - g7.rows["V1"]
    with pytest.raises(ValueError):
        g7.decompose(bad)


def test_omega3(g7):
    assert omega3_sections_char(3) == ({}, False)
    dec, flagged = omega3_sections_char(4)
    assert not flagged and dec == {"V1": 1, "V1#": 4}
    dec, flagged = omega3_sections_char(7)
    assert not flagged and dec == {"I": 24, "S": 24, "Z": 49}


def test_h0_oa():
    assert h0_oa_decomposition(1) == {"V3": 1}
    assert h0_oa_decomposition(4) == {"V1": 6, "V1#": 10}
    with pytest.raises(ValueError):
        h0_oa_decomposition(7)


def test_decomposition_aggregation(g7):
    V = [g7.rows[f"V{i}"] for i in range(6)]
    dec = g7.decompose(V[0] * V[3])
    assert dec.aggregated() == {"I": 1, "Z": 1}
    assert len(dec.mults) == 25  # I plus the 24 individual two-dimensional labels
    assert "Z(1,0)" in dec.mults


def test_subspace_character_of_coordinates(g7):
    # the span of the coordinate functions carries the dual representation
    from heis7.poly import Poly, REG_X

    basis = [Poly.var(REG_X, f"x{j}") for j in range(7)]
    chi = subspace_character(basis, g7)
    assert g7.decompose(chi) == {"V3": 1}


def test_subspace_character_instability(g7):
    from heis7.poly import Poly, REG_X

    basis = [Poly.var(REG_X, "x0")]
    with pytest.raises(ValueError):
        subspace_character(basis, g7)


def test_sl2_sym_powers(sl2):
    assert sl2.decompose(sl2.sym_power(sl2.rows["W'"], 4)) == {"I": 1, "M2": 1, "T": 1}
    assert sl2.decompose(sl2.rows["U"] * sl2.rows["U'"]) == {"I": 1, "M2": 1, "L": 1}
    assert sl2.decompose(sl2.rows["W"] * sl2.rows["W'"]) == {"I": 1, "M2": 1}
