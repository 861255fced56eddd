"""Wedge calculus, the quadric-net criterion, the Klein quartic models, and
the explicit rational family of Heisenberg-invariant abelian surface ideals.

Conventions fixed here (each one is verified by tests, not assumed):

* Lambda^6 V is identified with the dual of V by sending a wedge of six
  distinct basis vectors e_{i1} ^ ... ^ e_{i6} to sgn(pi) x_k, where k is the
  missing index and pi sorts (i1 .. i6 k) into (0 .. 6).  This calibration
  reproduces the three displayed composition matrices entry for entry.
* Seven-vectors over the net-kernel quadrics come in two classical
  enumerations differing by a transposition of the two mixed-square
  quadrics: the display order (f3, f1, f2, f4, f5, f6, f0), which the
  invariant-cubic pairing of the surface family uses, and the
  generator-list order (f3, f1, f2, f4, f6, f5, f0), under which the rows
  of the 3x7 parametrization cut out twisted cubics and match the minor
  span of the universal family matrix.  The tests detect, rather than
  assume, which identity holds in which enumeration.
* The plane-quartic variables are v1 = e1 - e6, v2 = e2 - e5, v3 = e4 - e3
  (the eigenbasis order that makes v1^3 v2 + v2^3 v3 + v3^3 v1 invariant);
  y1, y2, y3 are the dual coordinates, acting on v-polynomials as partial
  derivatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .field import QQ, FF, DualDomain, DualNum, FieldElem
from .formmat import FormMatrix, det_form, pfaffian_vector
from .groebner import GradedIdeal
from .linalg import rank as mat_rank
from .poly import (
    DiffOp,
    Poly,
    REG_T,
    REG_TU,
    REG_U,
    REG_V,
    REG_X,
    REG_Y,
    linear_form,
    monomial_basis,
    parse_poly,
)

# ---------------------------------------------------------------------------
# wedge representatives in Lambda^3 V


def _sort_triple(t):
    a, b, c = t
    sign = 1
    if a > b:
        a, b = b, a
        sign = -sign
    if b > c:
        b, c = c, b
        sign = -sign
    if a > b:
        a, b = b, a
        sign = -sign
    if a == b or b == c:
        return None, 0
    return (a, b, c), sign


class Wedge3(dict):
    """Element of Lambda^3 V: sorted index triples -> integer coefficients."""

    @staticmethod
    def term(a, b, c, coeff=1):
        key, sign = _sort_triple(((a % 7), (b % 7), (c % 7)))
        w = Wedge3()
        if key is not None and coeff:
            w[key] = sign * coeff
        return w

    def __add__(self, other):
        out = Wedge3(self)
        for k, v in other.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return out

    def __neg__(self):
        return Wedge3({k: -v for k, v in self.items()})

    def shift(self, s=1):
        out = Wedge3()
        for (a, b, c), v in self.items():
            out = out + Wedge3.term(a + s, b + s, c + s, v)
        return out


_PERM_SIGN_CACHE = {}


def _perm_sign(seq):
    seq = tuple(seq)
    if seq in _PERM_SIGN_CACHE:
        return _PERM_SIGN_CACHE[seq]
    s = list(seq)
    sign = 1
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] > s[j]:
                sign = -sign
    _PERM_SIGN_CACHE[seq] = sign
    return sign


def wedge_pair_to_dual(w1: Wedge3, w2: Wedge3) -> Poly:
    """Wedge product Lambda^3 x Lambda^3 -> Lambda^6 = V-dual, as a linear
    form in the x-variables."""
    out = Poly.zero(REG_X, QQ)
    for t1, c1 in w1.items():
        for t2, c2 in w2.items():
            if set(t1) & set(t2):
                continue
            missing = (set(range(7)) - set(t1) - set(t2)).pop()
            sign = _perm_sign(t1 + t2 + (missing,))
            e = [0] * 7
            e[missing] = 1
            out = out + Poly.monomial(REG_X, tuple(e), Fraction(sign * c1 * c2))
    return out


@dataclass
class WedgeRep:
    """sigma-equivariant 7-vector of Lambda^3 V elements."""

    label: int
    entries: list  # seven Wedge3 values, index k is the sigma^k shift

    def check_shift_consistency(self) -> bool:
        return all(self.entries[(k + 1) % 7] == self.entries[k].shift(1) for k in range(7))


def wedge_reps():
    """The four equivariant wedge vectors plus the invariant complement line."""
    seeds = {
        0: Wedge3.term(1, 4, 2) + (-Wedge3.term(6, 3, 5)),
        1: Wedge3.term(0, 1, 6),
        2: Wedge3.term(0, 2, 5),
        3: Wedge3.term(0, 4, 3),
    }
    reps = {}
    for lab, seed in seeds.items():
        entries = [seed]
        for _ in range(6):
            entries.append(entries[-1].shift(1))
        reps[lab] = WedgeRep(lab, entries)
    complement = Wedge3.term(1, 4, 2) + Wedge3.term(6, 3, 5)
    comp_vec = [complement]
    for _ in range(6):
        comp_vec.append(comp_vec[-1].shift(1))
    return reps, comp_vec


_COMPOSE_CACHE = {}


def compose_u(i: int, j: int) -> FormMatrix:
    """The 7x7 matrix of linear forms of the composition of wedge vectors."""
    if (i, j) in _COMPOSE_CACHE:
        return _COMPOSE_CACHE[(i, j)]
    reps, _ = wedge_reps()
    ui, uj = reps[i], reps[j]
    rows = []
    for r in range(7):
        rows.append([wedge_pair_to_dual(ui.entries[r], uj.entries[s]) for s in range(7)])
    m = FormMatrix(rows)
    _COMPOSE_CACHE[(i, j)] = m
    return m


def _b_from_pattern(pattern):
    """pattern: list of (row, col, var_index, sign) for the nonzero entries."""
    z = Poly.zero(REG_X, QQ)
    rows = [[z] * 7 for _ in range(7)]
    for r, c, v, s in pattern:
        e = [0] * 7
        e[v] = 1
        rows[r][c] = Poly.monomial(REG_X, tuple(e), Fraction(s))
    return FormMatrix(rows)


def printed_b_matrices():
    """The three displayed composition matrices, as fixtures."""
    b1 = _b_from_pattern(
        [(0, 1, 4, 1), (0, 6, 3, -1), (1, 0, 4, -1), (1, 2, 5, 1), (2, 1, 5, -1),
         (2, 3, 6, 1), (3, 2, 6, -1), (3, 4, 0, 1), (4, 3, 0, -1), (4, 5, 1, 1),
         (5, 4, 1, -1), (5, 6, 2, 1), (6, 0, 3, 1), (6, 5, 2, -1)]
    )
    b2 = _b_from_pattern(
        [(0, 2, 1, 1), (0, 5, 6, -1), (1, 3, 2, 1), (1, 6, 0, -1), (2, 0, 1, -1),
         (2, 4, 3, 1), (3, 1, 2, -1), (3, 5, 4, 1), (4, 2, 3, -1), (4, 6, 5, 1),
         (5, 0, 6, 1), (5, 3, 4, -1), (6, 1, 0, 1), (6, 4, 5, -1)]
    )
    b3 = _b_from_pattern(
        [(0, 3, 5, -1), (0, 4, 2, 1), (1, 4, 6, -1), (1, 5, 3, 1), (2, 5, 0, -1),
         (2, 6, 4, 1), (3, 0, 5, 1), (3, 6, 1, -1), (4, 0, 2, -1), (4, 1, 6, 1),
         (5, 1, 3, -1), (5, 2, 0, 1), (6, 2, 4, -1), (6, 3, 1, 1)]
    )
    return b1, b2, b3


def composition_table_report():
    """Verify the full 4x4 composition table against the displayed matrices."""
    b1, b2, b3 = printed_b_matrices()
    expected = {
        (0, 1): b1, (1, 0): b1, (2, 2): -b1,
        (0, 2): b2, (2, 0): b2, (3, 3): -b2,
        (0, 3): b3, (3, 0): b3, (1, 1): -b3,
    }
    failures = []
    for i in range(4):
        for j in range(4):
            got = compose_u(i, j)
            want = expected.get((i, j))
            if want is None:
                if not got.is_zero():
                    failures.append(f"u{i}u{j} expected 0")
            elif got != want:
                failures.append(f"u{i}u{j} does not match the displayed matrix")
    # commutativity across all pairs
    for i in range(4):
        for j in range(i + 1, 4):
            if compose_u(i, j) != compose_u(j, i):
                failures.append(f"u{i}u{j} != u{j}u{i}")
    return failures


# ---------------------------------------------------------------------------
# the quadric net and its kernel


def delta_ops():
    h = Fraction(-1, 2)
    d1 = DiffOp(REG_U, {(1, 1, 0, 0): 1, (0, 0, 2, 0): h})
    d2 = DiffOp(REG_U, {(1, 0, 1, 0): 1, (0, 0, 0, 2): h})
    d3 = DiffOp(REG_U, {(1, 0, 0, 1): 1, (0, 2, 0, 0): h})
    return [d1, d2, d3]


def net_matrices():
    """Symmetric 4x4 coefficient matrices of the net (1/2 on off-diagonals)."""
    h = Fraction(1, 2)
    m1 = [[0, h, 0, 0], [h, 0, 0, 0], [0, 0, -h, 0], [0, 0, 0, 0]]
    m2 = [[0, 0, h, 0], [0, 0, 0, 0], [h, 0, 0, 0], [0, 0, 0, -h]]
    m3 = [[0, 0, 0, h], [0, -h, 0, 0], [0, 0, 0, 0], [h, 0, 0, 0]]
    return [
        [[Fraction(x) for x in row] for row in m]
        for m in (m1, m2, m3)
    ]


def _u(s: str) -> Poly:
    return parse_poly(s, REG_U)


def f_basis():
    """f0..f6: the V22-net quadrics, plus the complementary triple v1..v3."""
    f = {
        0: _u("u0^2"),
        1: _u("u2*u3"),
        2: _u("u3*u1"),
        3: _u("u1*u2"),
        4: _u("u0*u3+u1^2"),
        5: _u("u0*u1+u2^2"),
        6: _u("u0*u2+u3^2"),
    }
    v = {
        3: _u("u0*u3-u1^2"),
        2: _u("u0*u1-u2^2"),
        1: _u("u0*u2-u3^2"),
    }
    return f, v


L_BASIS_ORDER = (3, 1, 2, 4, 5, 6, 0)  # the fixed ordering (f3,f1,f2,f4,f5,f6,f0)
# the net-kernel generator list enumerates the two mixed-square quadrics the
# other way around; the family-matrix span identity holds in this order
L_GENLIST_ORDER = (3, 1, 2, 4, 6, 5, 0)


def l_basis(order=L_BASIS_ORDER):
    f, _ = f_basis()
    return [f[i] for i in order]


def j_ideal() -> GradedIdeal:
    f, _ = f_basis()
    return GradedIdeal(REG_U, QQ, [f[i] for i in range(7)])


# ---------------------------------------------------------------------------
# alpha matrices and the annihilation criterion


@dataclass
class AlphaMatrix:
    """3x2 matrix of linear forms in the u-variables."""

    entries: list  # 3x2 of Poly over REG_U

    def minors(self):
        e = self.entries
        out = []
        for r, s in ((0, 1), (0, 2), (1, 2)):
            out.append(e[r][0] * e[s][1] - e[r][1] * e[s][0])
        return out

    @staticmethod
    def from_coeffs(coeffs):
        """coeffs[r][c] is a length-4 rational coefficient vector."""
        return AlphaMatrix(
            [[linear_form(REG_U, coeffs[r][c]) for c in range(2)] for r in range(3)]
        )


def _lin_coeffs(p: Poly):
    out = [QQ.zero] * 4
    for e, c in p.terms.items():
        out[e.index(1)] = c
    return out


def alpha_compose(alpha: AlphaMatrix):
    """3x3 array of 7x7 form-matrix blocks of alpha alpha'.

    Block (r, s) is the composition attached to the quadric
    a_{r1} a_{s2} - a_{r2} a_{s1}, expanded through the wedge table.
    """
    comp = {(i, j): compose_u(i, j) for i in range(4) for j in range(4)}
    zero_block = FormMatrix(
        [[Poly.zero(REG_X, QQ)] * 7 for _ in range(7)]
    )
    e = alpha.entries
    blocks = []
    for r in range(3):
        row = []
        for s in range(3):
            a1 = _lin_coeffs(e[r][0])
            a2 = _lin_coeffs(e[s][1])
            b1 = _lin_coeffs(e[r][1])
            b2 = _lin_coeffs(e[s][0])
            acc = zero_block
            for k in range(4):
                for l in range(4):
                    c = a1[k] * a2[l] - b1[k] * b2[l]
                    if c:
                        acc = acc + comp[(k, l)].scale(c)
            row.append(acc)
        blocks.append(row)
    return blocks


def alpha_compose_is_zero(blocks) -> bool:
    return all(b.is_zero() for row in blocks for b in row)


def delta_criterion(alpha: AlphaMatrix) -> bool:
    ops = delta_ops()
    return all(op.apply(m).is_zero() for m in alpha.minors() for op in ops)


PROBE_POINT = [Fraction(k) for k in range(1, 8)]


def minors_and_independence(alpha: AlphaMatrix, l_coeffs=None):
    """Minors, their rank, and the rank table of the four block combinations
    l1 B1 + l2 B2 + l3 B3 | l0 B1 - l1 B3 | l0 B2 - l2 B1 | l0 B3 - l3 B2
    evaluated at the probe point (1, 2, ..., 7)."""
    minors = alpha.minors()
    monos = monomial_basis(REG_U, 2)
    ix = {e: i for i, e in enumerate(monos)}
    rows = []
    for m in minors:
        row = [QQ.zero] * len(monos)
        for e, c in m.terms.items():
            row[ix[e]] = c
        rows.append(row)
    rk = mat_rank(rows, QQ)
    diagnostics = []
    if l_coeffs is not None:
        b1, b2, b3 = printed_b_matrices()
        l0, l1, l2, l3 = [Fraction(x) for x in l_coeffs]
        combos = [
            b1.scale(l1) + b2.scale(l2) + b3.scale(l3),
            b1.scale(l0) - b3.scale(l1),
            b2.scale(l0) - b1.scale(l2),
            b3.scale(l0) - b2.scale(l3),
        ]
        for m in combos:
            if m.is_zero():
                diagnostics.append(0)
            else:
                diagnostics.append(mat_rank(m.evaluate(PROBE_POINT), QQ))
    return minors, rk == 3, diagnostics


# ---------------------------------------------------------------------------
# the explicit parametrization


def _t(s: str) -> Poly:
    return parse_poly(s, REG_T)


def psi_matrix() -> FormMatrix:
    rows = [
        ["-t0*t3", "t0*t1+t2^2", "-t3^2", "0", "t1*t3", "-t2*t3", "0"],
        ["t1^2+t0*t3", "-t2^2", "-t0*t2", "-t1*t2", "0", "t2*t3", "0"],
        [
            "t0*t1^2+t1*t2^2+t0^2*t3",
            "t2*t3^2",
            "t1^2*t3+t0*t3^2",
            "0",
            "0",
            "t0*t2*t3",
            "t1*t2*t3",
        ],
    ]
    return FormMatrix([[_t(s) for s in row] for row in rows])


@dataclass
class GrassPoint:
    """3x7 coordinate matrix over the fixed quadric basis (f3,f1,...,f0)."""

    rows: list  # 3x7 rationals
    t: tuple = None

    def rank(self) -> int:
        return mat_rank(self.rows, QQ)

    def quadrics(self, order=None):
        """The three quadrics spanned by the rows.

        The default enumeration is the net-kernel generator list; under it
        the rows of the explicit parametrization cut out twisted cubics (the
        display enumeration transposes the two mixed-square quadrics and
        would turn the same rows into complete-intersection nets).
        """
        basis = l_basis(order if order is not None else L_GENLIST_ORDER)
        out = []
        for row in self.rows:
            q = Poly.zero(REG_U, QQ)
            for c, f in zip(row, basis):
                q = q + f.scale(c)
            out.append(q)
        return out


def psi(t) -> GrassPoint:
    t = [Fraction(x) for x in t]
    if all(x == 0 for x in t):
        raise ValueError("t must be a point of projective 3-space")
    m = psi_matrix().evaluate(t)
    return GrassPoint(m, tuple(t))


def eta_klein() -> FormMatrix:
    rows = [
        ["0", "0", "0", "0", "0", "-y2", "y1"],
        ["0", "0", "0", "0", "-y3", "0", "y2"],
        ["0", "0", "0", "-y1", "0", "0", "y3"],
        ["0", "0", "y1", "0", "y2", "-y3", "0"],
        ["0", "y3", "0", "-y2", "0", "y1", "0"],
        ["y2", "0", "0", "y3", "-y1", "0", "0"],
        ["-y1", "-y2", "-y3", "0", "0", "0", "0"],
    ]
    return FormMatrix([[parse_poly(s, REG_Y) for s in row] for row in rows], skew=True)


def eta_coefficient_matrices():
    """N1, N2, N3 with eta = y1 N1 + y2 N2 + y3 N3 (skew, entries in {0,1,-1})."""
    eta = eta_klein()
    out = []
    for v in range(3):
        e = [0, 0, 0]
        e[v] = 1
        exp = tuple(e)
        out.append(
            [[eta[i, j].coeff(exp) for j in range(7)] for i in range(7)]
        )
    return out


def grass_membership(point: GrassPoint):
    """Containment of the second wedge of the row span in the net kernel.

    Returns (bool, nine contraction values): rows a < b against each of the
    three alternating coefficient matrices.
    """
    if point.rank() != 3:
        raise ValueError("not a genuine point: coordinate matrix has rank < 3")
    ns = eta_coefficient_matrices()
    values = []
    ok = True
    for a in range(3):
        for b in range(a + 1, 3):
            ra, rb = point.rows[a], point.rows[b]
            for n in ns:
                v = sum(
                    ra[i] * n[i][j] * rb[j]
                    for i in range(7)
                    for j in range(7)
                    if n[i][j]
                )
                values.append(v)
                if v:
                    ok = False
    return ok, values


def equational_point() -> GrassPoint:
    rows = [[Fraction(1 if j == i else 0) for j in range(7)] for i in range(3)]
    return GrassPoint(rows, None)


def alpha_family() -> FormMatrix:
    """The universal 4x3 matrix over the product of t- and u-variables."""
    rows = [
        ["t0*u1+t2*u2", "-t2*u0", "-t1*u1"],
        ["t2*u2", "-t0*u2-t3*u3", "t3*u0"],
        ["u1", "u2", "u3"],
        ["t1", "t2", "t3"],
    ]
    return FormMatrix([[parse_poly(s, REG_TU) for s in row] for row in rows])


class DegenerateParameter(ValueError):
    pass


def alpha_t(t):
    """Evaluate the family at t and reduce to the minimal 3x2 matrix.

    Raises DegenerateParameter at (1:0:0:0), where the u-cubic minor becomes
    dependent and no 3x2 reduction exists.
    """
    t = [Fraction(x) for x in t]
    fam = alpha_family()
    # substitute the t-variables, keep the u-variables
    images = [Poly.const(REG_U, x) for x in t] + [
        Poly.var(REG_U, f"u{i}") for i in range(4)
    ]
    ev = [[fam[i, j].substitute(images) for j in range(3)] for i in range(4)]
    tail = [t[1], t[2], t[3]]
    piv = next((c for c in range(3) if tail[c] != 0), None)
    if piv is None:
        raise DegenerateParameter("parameter (1:0:0:0) degenerates the family")
    cols = []
    for c in range(3):
        if c == piv:
            continue
        f = tail[c] / tail[piv]
        cols.append([ev[r][c] - ev[r][piv].scale(f) for r in range(3)])
    entries = [[cols[0][r], cols[1][r]] for r in range(3)]
    return AlphaMatrix(entries)


# ---------------------------------------------------------------------------
# the cubic family and surface ideals


def minor_span_pairing(alpha: AlphaMatrix, point: GrassPoint):
    """Which quadric-basis enumeration matches the minor span of alpha.

    Returns 'display-order', 'generator-list-order', or None.  The two
    candidate enumerations differ by transposing the two mixed-square
    quadrics; the tests record which one the explicit family satisfies.
    """
    monos = monomial_basis(REG_U, 2)
    ix = {e: i for i, e in enumerate(monos)}

    def coords(ps):
        out = []
        for p in ps:
            row = [QQ.zero] * len(monos)
            for e, c in p.terms.items():
                row[ix[e]] = c
            out.append(row)
        return out

    minors = alpha.minors()
    mrows = coords(minors)
    if mat_rank(mrows, QQ) != 3:
        return None
    for name, order in (("display-order", L_BASIS_ORDER), ("generator-list-order", L_GENLIST_ORDER)):
        qs = point.quadrics(order)
        if mat_rank(mrows + coords(qs), QQ) == 3:
            return name
    return None


def _x(s: str) -> Poly:
    return parse_poly(s, REG_X)


def d_vector():
    """Seven invariant cubics pairing with the quadric basis order."""
    return [
        _x("x0*x3*x4"),
        _x("x0*x1*x6"),
        _x("x0*x2*x5"),
        _x("x2^2*x3+x5^2*x4"),
        _x("x1^2*x5+x6^2*x2"),
        _x("x4^2*x6+x3^2*x1"),
        _x("x1*x2*x4+x3*x5*x6-x0^3"),
    ]


def sigma_x_images(shift=1):
    return [Poly.var(REG_X, f"x{(j - shift) % 7}") for j in range(7)]


def tau_x_images(dom=FF, power=1):
    from .field import Cyc7

    return [
        Poly.monomial(
            REG_X,
            tuple(1 if i == j else 0 for i in range(7)),
            FieldElem(Cyc7.zeta(-j * power), 0),
            dom,
        )
        for j in range(7)
    ]


def iota_x_images(dom=QQ):
    out = []
    for j in range(7):
        e = [0] * 7
        e[(-j) % 7] = 1
        out.append(Poly.monomial(REG_X, tuple(e), dom.coerce(-1), dom))
    return out


@dataclass
class SurfaceIdeal:
    """The 21-dimensional invariant cubic system at a parameter point."""

    t: tuple
    g: list  # three tau-invariant cubics
    basis: list  # 21 shifted cubics (independent iff not degenerate)
    degenerate: bool

    def ideal(self, dom=QQ) -> GradedIdeal:
        if dom is QQ:
            return GradedIdeal(REG_X, QQ, self.basis)
        gens = [p.map_coeffs(dom.coerce, dom) for p in self.basis]
        return GradedIdeal(REG_X, dom, gens)

    def to_json(self):
        from .poly import render_poly

        return {
            "t": [str(x) for x in self.t],
            "generators": [render_poly(p) for p in self.basis],
        }


def surface_cubics(t):
    """The three tau-invariant cubics of the family at t."""
    t = [Fraction(x) for x in t]
    rows = psi_matrix().evaluate(t)
    d = d_vector()
    out = []
    for i in range(3):
        g = Poly.zero(REG_X, QQ)
        for j in range(7):
            if rows[i][j]:
                g = g + d[j].scale(rows[i][j])
        out.append(g)
    return out


def surface_ideal(t) -> SurfaceIdeal:
    t = tuple(Fraction(x) for x in t)
    if all(x == 0 for x in t):
        raise ValueError("t must be a point of projective 3-space")
    g = surface_cubics(t)
    sig = sigma_x_images()
    basis = []
    for gi in g:
        cur = gi
        for _ in range(7):
            basis.append(cur)
            cur = cur.substitute(sig)
    monos = sorted({e for p in basis for e in p.terms})
    ix = {e: i for i, e in enumerate(monos)}
    rows = []
    for p in basis:
        row = [QQ.zero] * len(monos)
        for e, c in p.terms.items():
            row[ix[e]] = c
        rows.append(row)
    degenerate = mat_rank(rows, QQ) != 21
    return SurfaceIdeal(t, g, basis, degenerate)


# ---------------------------------------------------------------------------
# the plane quartic and its three appearances


def klein_quartic() -> Poly:
    return parse_poly("v1^3*v2+v2^3*v3+v3^3*v1", REG_V)


KLEIN_VBASIS = [
    (0, 1, 0, 0, 0, 0, -1),  # v1 = e1 - e6
    (0, 0, 1, 0, 0, -1, 0),  # v2 = e2 - e5
    (0, 0, 0, -1, 1, 0, 0),  # v3 = e4 - e3
]


def klein_invariance_report():
    """Invariance of the quartic under the three generators restricted to the
    plane-quartic eigenbasis.  Exact substitution over Q(zeta7)."""
    from .heisenberg import MU, NU, delta_dense, restrict_to_span
    from .poly import substitution_for

    f = klein_quartic().map_coeffs(FF.coerce, FF)
    results = {}
    for name, mat in (("mu", MU), ("nu", NU), ("delta", delta_dense())):
        small = restrict_to_span(mat, KLEIN_VBASIS)
        fe = [[FieldElem(c, 0) for c in row] for row in small]
        images = substitution_for(REG_V, fe, FF)
        results[name] = f.substitute(images) == f
    return results


def pfaffian_cubics():
    """The seven signed principal sub-Pfaffians of the alternating net."""
    return pfaffian_vector(eta_klein())


def apply_y_operator(op_y: Poly, f_v: Poly) -> Poly:
    """Apply a y-polynomial as a constant-coefficient operator on v-variables."""
    d = DiffOp(REG_V, {e: c for e, c in op_y.terms.items()})
    return d.apply(f_v)


def pfaffian_apolarity_report():
    f = klein_quartic()
    pf = pfaffian_cubics()
    annihilates = all(apply_y_operator(p, f).is_zero() for p in pf)
    # degree-3 kernel of the catalecticant pairing: the map takes the ten
    # cubic operators to linear forms, so its matrix is 3 x 10
    monos3 = monomial_basis(REG_Y, 3)
    cat = [[QQ.zero] * len(monos3) for _ in range(3)]
    for col, e in enumerate(monos3):
        img = apply_y_operator(Poly.monomial(REG_Y, e, 1), f)
        for j in range(3):
            cat[j][col] = img.coeff(tuple(1 if i == j else 0 for i in range(3)))
    from .linalg import nullspace

    kernel = nullspace(cat, QQ)
    # span comparison: pfaffian cubics vs the kernel
    ix = {e: i for i, e in enumerate(monos3)}
    pf_rows = []
    for p in pf:
        row = [QQ.zero] * len(monos3)
        for e, c in p.terms.items():
            row[ix[e]] = c
        pf_rows.append(row)
    same_span = (
        mat_rank(pf_rows, QQ) == len(kernel)
        and mat_rank(pf_rows + kernel, QQ) == len(kernel)
    )
    ideal = GradedIdeal(REG_Y, QQ, pf)
    hf = ideal.hilbert().hf_range(0, 6)
    gorenstein_symmetric = hf[:5] == hf[:5][::-1] and all(v == 0 for v in hf[5:])
    return {
        "annihilates": annihilates,
        "kernel_dim": len(kernel),
        "pfaffian_span_dim": mat_rank(pf_rows, QQ),
        "same_span": same_span,
        "quotient_hf": hf,
        "gorenstein_symmetric": gorenstein_symmetric,
    }


def net_discriminant() -> Poly:
    ms = net_matrices()
    ys = [Poly.var(REG_Y, n) for n in ("y1", "y2", "y3")]
    z = Poly.zero(REG_Y, QQ)
    entries = [[z] * 4 for _ in range(4)]
    for i in range(4):
        for j in range(4):
            acc = z
            for k in range(3):
                if ms[k][i][j]:
                    acc = acc + ys[k].scale(ms[k][i][j])
            entries[i][j] = acc
    return det_form(FormMatrix(entries))


def net_discriminant_ratio():
    """The scalar c with det = c * (y1^3 y2 + y2^3 y3 + y3^3 y1), or None."""
    det = net_discriminant()
    fy = klein_quartic().transport(REG_Y)
    if det.is_zero():
        return None
    lead = next(iter(fy.terms))
    c = det.coeff(lead)
    if c == 0 or det != fy.scale(c):
        return None
    return c


def epsilon_identity_report():
    """(v1 + eps v2)^4 - v1^4 + (cyclic) = 4 eps f, over Q[eps]/(eps^2)."""
    dd = DualDomain(QQ)
    eps = dd.eps()
    names = ["v1", "v2", "v3"]

    def var(i):
        return Poly.var(REG_V, names[i % 3], dd)

    total = Poly.zero(REG_V, dd)
    singles = []
    for i in range(3):
        s = (var(i) + var(i + 1).scale(eps)) ** 4 - var(i) ** 4
        singles.append(s)
        total = total + s
    f_dual = klein_quartic().map_coeffs(lambda c: DualNum(QQ.zero, c * 4), dd)
    return {
        "identity_holds": total == f_dual,
        "eps0_part_vanishes": all(
            dd.base.is_zero(c.a) for c in total.terms.values()
        ),
        "single_term_ok": singles[0]
        == Poly.monomial(REG_V, (3, 1, 0), DualNum(QQ.zero, Fraction(4)), dd),
    }
