"""The level-7 Heisenberg group, its involution extension, and SL2(F7).

Matrix model (on V = C^7 with basis e_0..e_6, indices mod 7):

    sigma: e_j -> e_{j+1}          tau:   e_j -> z^j e_j
    iota:  e_j -> -e_{-j}          mu:    e_j -> e_{2j}
    nu:    e_j -> z^{j^2} e_j      delta: e_j -> (i/sqrt7) sum_k z^{kj} e_k

with z = zeta7 and i*sqrt7 realized as the Gauss sum.  All of these except
delta are signed monomial matrices, stored compactly as (permutation, signs,
zeta-powers); delta is kept as a dense matrix over Q(zeta7).

The induced (pullback) action on the coordinate functions x_j of the dual
basis is sigma x_j = x_{j-1}, tau x_j = z^{-j} x_j, iota x_j = -x_{-j}.

Direction conventions are forced empirically: with sigma raising the index,
all eight conjugation relations for mu, nu, iota, delta hold verbatim, and
elements (a, m, n, b) = z^a * Phi(m,n) * iota^b with
Phi(m,n) = z^{4mn} sigma^m tau^n multiply with the antisymmetric cocycle
z^{3(m n' - m' n)}.  (Under the opposite shift one gets sigma tau =
z tau sigma but a non-antisymmetric cocycle and broken mu/nu relations;
the verification report records which reading holds.)  Consequently
tau sigma = z sigma tau here.
"""

from __future__ import annotations

from typing import NamedTuple

from .field import Cyc7, gauss_sum
from .linalg import det as _det

ZETA = [Cyc7.zeta(k) for k in range(7)]
_C0 = Cyc7.from_int(0)
_C1 = Cyc7.from_int(1)


class MonoMat(NamedTuple):
    """Signed zeta-monomial 7x7 matrix: e_l -> sign[l] * z^pw[l] * e_{perm[l]}."""

    perm: tuple
    sign: tuple
    pw: tuple

    def __mul__(self, other: "MonoMat") -> "MonoMat":
        """Matrix product self @ other (apply `other` first)."""
        if not isinstance(other, MonoMat):
            return NotImplemented
        op, osg, opw = other
        sp, ssg, spw = self
        perm = tuple(sp[op[l]] for l in range(7))
        sign = tuple(osg[l] * ssg[op[l]] for l in range(7))
        pw = tuple((opw[l] + spw[op[l]]) % 7 for l in range(7))
        return MonoMat(perm, sign, pw)

    def inv(self) -> "MonoMat":
        perm = [0] * 7
        sign = [1] * 7
        pw = [0] * 7
        for l in range(7):
            t = self.perm[l]
            perm[t] = l
            sign[t] = self.sign[l]
            pw[t] = (-self.pw[l]) % 7
        return MonoMat(tuple(perm), tuple(sign), tuple(pw))

    def trace(self) -> Cyc7:
        t = _C0
        for l in range(7):
            if self.perm[l] == l:
                v = ZETA[self.pw[l]]
                t = t + (v if self.sign[l] == 1 else -v)
        return t

    def det(self) -> Cyc7:
        # permutation sign * product of entries
        seen = [False] * 7
        psign = 1
        for s in range(7):
            if seen[s]:
                continue
            ln = 0
            j = s
            while not seen[j]:
                seen[j] = True
                j = self.perm[j]
                ln += 1
            if ln % 2 == 0:
                psign = -psign
        tot = psign
        for s in self.sign:
            tot *= s
        v = ZETA[sum(self.pw) % 7]
        return v if tot == 1 else -v

    def dense(self):
        """Expand to a 7x7 matrix over Cyc7 (rows x cols, column-action)."""
        m = [[_C0] * 7 for _ in range(7)]
        for l in range(7):
            v = ZETA[self.pw[l]]
            m[self.perm[l]][l] = v if self.sign[l] == 1 else -v
        return m


MONO_ID = MonoMat(tuple(range(7)), (1,) * 7, (0,) * 7)
SIGMA = MonoMat(tuple((l + 1) % 7 for l in range(7)), (1,) * 7, (0,) * 7)
TAU = MonoMat(tuple(range(7)), (1,) * 7, tuple(range(7)))
IOTA = MonoMat(tuple((-l) % 7 for l in range(7)), (-1,) * 7, (0,) * 7)
MU = MonoMat(tuple((2 * l) % 7 for l in range(7)), (1,) * 7, (0,) * 7)
NU = MonoMat(tuple(range(7)), (1,) * 7, tuple((l * l) % 7 for l in range(7)))


def scalar_mono(a: int) -> MonoMat:
    return MonoMat(tuple(range(7)), (1,) * 7, (a % 7,) * 7)


def delta_dense():
    """delta e_j = (i/sqrt7) sum_k z^{kj} e_k, with i/sqrt7 = gauss_sum()/7."""
    c = gauss_sum() * Cyc7.from_rat(__import__("fractions").Fraction(1, 7))
    return [[c * ZETA[(k * j) % 7] for j in range(7)] for k in range(7)]


def dense_of(m) -> list:
    return m.dense() if isinstance(m, MonoMat) else m


def dense_mul(a, b):
    a, b = dense_of(a), dense_of(b)
    out = [[_C0] * 7 for _ in range(7)]
    for i in range(7):
        for k in range(7):
            c = a[i][k]
            if c.is_zero():
                continue
            bk = b[k]
            row = out[i]
            for j in range(7):
                if not bk[j].is_zero():
                    row[j] = row[j] + c * bk[j]
    return out


def dense_eq(a, b) -> bool:
    a, b = dense_of(a), dense_of(b)
    return all(a[i][j] == b[i][j] for i in range(7) for j in range(7))


def dense_trace(a) -> Cyc7:
    a = dense_of(a)
    t = _C0
    for i in range(7):
        t = t + a[i][i]
    return t


def dense_galois(a, power: int):
    return [[c.galois(power) for c in row] for row in dense_of(a)]


def dense_det(a) -> Cyc7:
    from .field import FieldElem, FF

    fe = [[FieldElem(c, 0) for c in row] for row in dense_of(a)]
    return _det(fe, FF).a


def dense_inv(a):
    from .field import FieldElem, FF
    from .linalg import inverse

    fe = [[FieldElem(c, 0) for c in row] for row in dense_of(a)]
    return [[c.a for c in row] for row in inverse(fe, FF)]


# ---------------------------------------------------------------------------
# abstract group law


class HElem(NamedTuple):
    """z^a * Phi(m,n) * iota^b with Phi(m,n) = z^{4mn} sigma^m tau^n."""

    a: int
    m: int
    n: int
    b: int

    def __mul__(self, other: "HElem") -> "HElem":
        if not isinstance(other, HElem):
            return NotImplemented
        a1, m1, n1, b1 = self
        a2, m2, n2, b2 = other
        if b1:
            m2, n2 = -m2 % 7, -n2 % 7
        # the printed antisymmetric cocycle, valid for the index-raising sigma
        a = (a1 + a2 + 3 * (m1 * n2 - m2 * n1)) % 7
        return HElem(a, (m1 + m2) % 7, (n1 + n2) % 7, (b1 + b2) % 2)

    def inv(self) -> "HElem":
        e = HElem((-self.a) % 7, 0, 0, 0)
        core = HElem(0, self.m, self.n, 0)
        # (Phi(z))^-1 = z^{-B(z,-z)} Phi(-z); compute via the law
        m, n = self.m, self.n
        phase = (3 * (m * (-n) - (-m) * n)) % 7
        core_inv = HElem((-phase) % 7, (-m) % 7, (-n) % 7, 0)
        if self.b:
            # (h iota)^-1 = iota h^-1 = (iota h^-1 iota) iota
            g = core_inv * e
            return HElem(g.a, (-g.m) % 7, (-g.n) % 7, 1)
        return core_inv * e

    def matrix(self) -> MonoMat:
        a, m, n, b = self
        g = scalar_mono(a + 4 * m * n)
        g = g * _sigma_pow(m) * _tau_pow(n)
        if b:
            g = g * IOTA
        return g


def _sigma_pow(m: int) -> MonoMat:
    m %= 7
    return MonoMat(tuple((l + m) % 7 for l in range(7)), (1,) * 7, (0,) * 7)


def _tau_pow(n: int) -> MonoMat:
    n %= 7
    return MonoMat(tuple(range(7)), (1,) * 7, tuple((n * l) % 7 for l in range(7)))


H_GEN_SIGMA = HElem(0, 1, 0, 0)
H_GEN_TAU = HElem(0, 0, 1, 0)
H_GEN_IOTA = HElem(0, 0, 0, 1)


def h7_elements():
    return [HElem(a, m, n, 0) for a in range(7) for m in range(7) for n in range(7)]


def g7_elements():
    return [HElem(a, m, n, b) for b in range(2) for a in range(7) for m in range(7) for n in range(7)]


class GroupLawError(Exception):
    pass


def build_heisenberg(exhaustive: bool = True, dense_samples: int = 686):
    """Cross-validate the abstract law against the matrix model.

    Checks, in order:
      1. every abstract element's compact matrix agrees with a dense product
         of dense generator matrices (validates the compact encoding);
      2. abstract products match compact-matrix products, for all pairs when
         `exhaustive` (343^2 over H7 and the iota-coset products for G7);
      3. the generated matrix groups have orders 343 and 686.

    Returns (H7 element list, G7 element list, stats dict).
    """
    import random

    h7 = h7_elements()
    g7 = g7_elements()

    # 1. compact encoding vs dense matrix arithmetic
    dense_sigma = SIGMA.dense()
    dense_tau = TAU.dense()
    dense_iota = IOTA.dense()
    for g in g7:
        acc = scalar_mono(g.a + 4 * g.m * g.n).dense()
        for _ in range(g.m):
            acc = dense_mul(acc, dense_sigma)
        # right-multiplication composes in the same order as MonoMat.__mul__
        cur = acc
        for _ in range(g.n):
            cur = dense_mul(cur, dense_tau)
        if g.b:
            cur = dense_mul(cur, dense_iota)
        if not dense_eq(cur, g.matrix().dense()):
            raise GroupLawError(f"compact matrix encoding disagrees with dense product at {g}")

    rng = random.Random(2024)
    sample = [ (rng.choice(g7), rng.choice(g7)) for _ in range(dense_samples) ]
    for x, y in sample:
        if not dense_eq(dense_mul(x.matrix().dense(), y.matrix().dense()), (x.matrix() * y.matrix()).dense()):
            raise GroupLawError(f"compact product disagrees with dense product at {x}, {y}")

    # 2. abstract law vs matrix products
    mats = {g: g.matrix() for g in g7}
    pairs = 0
    universe = g7 if exhaustive else h7
    for x in universe:
        mx = mats[x]
        for y in universe:
            if mats[x * y] != mx * mats[y]:
                raise GroupLawError(f"law mismatch at {x} * {y}")
            pairs += 1

    # 3. group orders by closure from the generators
    order_h = _closure_order([SIGMA, TAU])
    order_g = _closure_order([SIGMA, TAU, IOTA])
    if order_h != 343:
        raise GroupLawError(f"matrix group generated by sigma, tau has order {order_h}")
    if order_g != 686:
        raise GroupLawError(f"matrix group generated by sigma, tau, iota has order {order_g}")

    return h7, g7, {"pairs_checked": pairs, "order_h7": order_h, "order_g7": order_g}


def _closure_order(gens) -> int:
    seen = {MONO_ID}
    frontier = [MONO_ID]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                p = m * g
                if p not in seen:
                    seen.add(p)
                    nxt.append(p)
        frontier = nxt
    return len(seen)


def commutator_mono(x: MonoMat, y: MonoMat) -> MonoMat:
    return x * y * x.inv() * y.inv()


# ---------------------------------------------------------------------------
# normalizer relations


def verify_normalizer_relations():
    """All printed conjugation relations for mu, nu, iota, delta, plus
    delta^2 = iota and det = 1 for every generator.  Returns a report dict."""
    delta = delta_dense()
    sigma_d = SIGMA.dense()
    tau_d = TAU.dense()
    iota_d = IOTA.dense()
    mu_d = MU.dense()
    nu_d = NU.dense()

    def conj(g, h):
        return dense_mul(dense_mul(g, h), dense_inv(g))

    checks = {}
    checks["mu sigma mu^-1 = sigma^2"] = dense_eq(conj(mu_d, sigma_d), (SIGMA * SIGMA).dense())
    checks["mu tau mu^-1 = tau^4"] = dense_eq(conj(mu_d, tau_d), _tau_pow(4).dense())
    checks["iota sigma iota = sigma^-1"] = dense_eq(conj(iota_d, sigma_d), SIGMA.inv().dense())
    checks["iota tau iota = tau^-1"] = dense_eq(conj(iota_d, tau_d), TAU.inv().dense())
    zst2 = dense_mul(scalar_mono(8).dense(), dense_mul(sigma_d, (TAU * TAU).dense()))
    checks["nu sigma nu^-1 = z^8 sigma tau^2"] = dense_eq(conj(nu_d, sigma_d), zst2)
    checks["nu tau nu^-1 = tau"] = dense_eq(conj(nu_d, tau_d), tau_d)
    checks["delta sigma delta^-1 = tau"] = dense_eq(conj(delta, sigma_d), tau_d)
    checks["delta tau delta^-1 = sigma^-1"] = dense_eq(conj(delta, tau_d), SIGMA.inv().dense())
    checks["delta^2 = iota"] = dense_eq(dense_mul(delta, delta), iota_d)
    for name, mat in [
        ("sigma", sigma_d),
        ("tau", tau_d),
        ("iota", iota_d),
        ("mu", mu_d),
        ("nu", nu_d),
        ("delta", delta),
    ]:
        checks[f"det({name}) = 1"] = dense_det(mat) == _C1
    return checks


# ---------------------------------------------------------------------------
# conjugacy classes


class ClassData(NamedTuple):
    """Conjugacy classes: parallel lists of labels, representatives, sizes."""

    labels: tuple
    reps: tuple
    sizes: tuple
    index_of: dict  # element -> class index

    @property
    def count(self):
        return len(self.labels)

    def group_order(self):
        return sum(self.sizes)


def conjugacy_classes_g7() -> ClassData:
    """Brute-force orbit enumeration of the 686 elements of G7.

    Labels: ('central', a) for z^a; ('C', m, n) with (m, n) the lexicographic
    minimum of +/-(m, n); ('Ca', a) for the involution coset, where z^a is the
    square root (unique in mu7) of the central square of the class.
    """
    elems = g7_elements()
    gens = [H_GEN_SIGMA, H_GEN_TAU, H_GEN_IOTA, HElem(1, 0, 0, 0)]
    gens = gens + [g.inv() for g in gens]
    index_of = {}
    labels = []
    reps = []
    sizes = []
    for e in elems:
        if e in index_of:
            continue
        orbit = {e}
        frontier = [e]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = g * x * g.inv()
                    if y not in orbit:
                        orbit.add(y)
                        nxt.append(y)
            frontier = nxt
        ci = len(labels)
        rep = min(orbit)
        for x in orbit:
            index_of[x] = ci
        if rep.b == 0 and rep.m == 0 and rep.n == 0:
            label = ("central", rep.a)
        elif rep.b == 0:
            mn = min((rep.m, rep.n), ((-rep.m) % 7, (-rep.n) % 7))
            label = ("C", mn[0], mn[1])
        else:
            sq = rep * rep
            if sq.m or sq.n or sq.b:
                raise GroupLawError("involution-coset square is not central")
            label = ("Ca", (4 * sq.a) % 7)  # alpha with alpha^2 = z^(sq.a)
        labels.append(label)
        reps.append(rep)
        sizes.append(len(orbit))
    order = [i for i in range(len(labels))]
    order.sort(key=lambda i: labels[i])
    remap = {old: new for new, old in enumerate(order)}
    return ClassData(
        tuple(labels[i] for i in order),
        tuple(reps[i] for i in order),
        tuple(sizes[i] for i in order),
        {e: remap[ci] for e, ci in index_of.items()},
    )


# ---------------------------------------------------------------------------
# SL2(F7)


def sl2_elements():
    out = []
    for a in range(7):
        for b in range(7):
            for c in range(7):
                for d in range(7):
                    if (a * d - b * c) % 7 == 1:
                        out.append((a, b, c, d))
    return out


def sl2_mul(x, y):
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % 7, (a * f + b * h) % 7, (c * e + d * g) % 7, (c * f + d * h) % 7)


def sl2_inv(x):
    a, b, c, d = x
    return (d % 7, (-b) % 7, (-c) % 7, a % 7)


SL2_ID = (1, 0, 0, 1)
SL2_NEG = (6, 0, 0, 6)
SL2_MU = (2, 0, 0, 4)
SL2_NU = (1, 0, 2, 1)
SL2_DELTA = (0, 6, 1, 0)
SL2_R1 = (2, 2, 5, 2)  # order 8, trace 4
SL2_R2 = (5, 2, 5, 5)  # order 8, trace 3


def sl2_nu_pow(k):
    m = SL2_ID
    for _ in range(k % 7):
        m = sl2_mul(m, SL2_NU)
    return m


SL2_CLASS_REPS = [
    ("id", SL2_ID),
    ("iota", SL2_NEG),
    ("mu", SL2_MU),
    ("iota*mu", sl2_mul(SL2_NEG, SL2_MU)),
    ("nu", SL2_NU),
    ("nu^3", sl2_nu_pow(3)),
    ("iota*nu^3", sl2_mul(SL2_NEG, sl2_nu_pow(3))),
    ("iota*nu", sl2_mul(SL2_NEG, SL2_NU)),
    ("delta", SL2_DELTA),
    ("r8a", SL2_R1),
    ("r8b", SL2_R2),
]


def conjugacy_classes_sl2() -> ClassData:
    elems = sl2_elements()
    universe = set(elems)
    index_of = {}
    parts = []
    for e in elems:
        if e in index_of:
            continue
        orbit = {e}
        frontier = [e]
        gens = [SL2_NU, SL2_DELTA, SL2_MU]
        gens += [sl2_inv(g) for g in gens]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = sl2_mul(sl2_mul(g, x), sl2_inv(g))
                    if y not in orbit:
                        orbit.add(y)
                        nxt.append(y)
            frontier = nxt
        ci = len(parts)
        for x in orbit:
            index_of[x] = ci
        parts.append(orbit)
    if len(parts) != 11:
        raise GroupLawError(f"SL2(F7) has {len(parts)} classes, expected 11")
    labels = []
    reps = []
    sizes = []
    used = set()
    for name, rep in SL2_CLASS_REPS:
        ci = index_of[rep]
        if ci in used:
            raise GroupLawError(f"representative {name} repeats class {ci}")
        used.add(ci)
        labels.append(name)
        reps.append(rep)
        sizes.append(len(parts[ci]))
    remap = {}
    for new, (name, rep) in enumerate(SL2_CLASS_REPS):
        remap[index_of[rep]] = new
    return ClassData(
        tuple(labels),
        tuple(reps),
        tuple(sizes),
        {e: remap[ci] for e, ci in index_of.items()},
    )


# ---------------------------------------------------------------------------
# eigenspace restrictions (V+ and V-)


VPLUS_BASIS = [  # e1-e6, e4-e3, e2-e5 as coordinate 7-vectors
    (0, 1, 0, 0, 0, 0, -1),
    (0, 0, 0, -1, 1, 0, 0),
    (0, 0, 1, 0, 0, -1, 0),
]
VMINUS_BASIS = [  # 2e0, e1+e6, e4+e3, e2+e5
    (2, 0, 0, 0, 0, 0, 0),
    (0, 1, 0, 0, 0, 0, 1),
    (0, 0, 0, 1, 1, 0, 0),
    (0, 0, 1, 0, 0, 1, 0),
]


def restrict_to_span(mat, basis):
    """Matrix of `mat` on the span of `basis` (columns are images).

    Raises ValueError if the span is not invariant.
    """
    from .field import FieldElem, FF
    from .linalg import solve

    dense = dense_of(mat)
    cols_basis = [[FieldElem(Cyc7.from_int(v), 0) for v in vec] for vec in basis]
    bmat = [[cols_basis[j][i] for j in range(len(basis))] for i in range(7)]
    images = []
    for vec in cols_basis:
        img = [FF.zero] * 7
        for i in range(7):
            for j in range(7):
                c = dense[i][j]
                if not c.is_zero():
                    img[i] = img[i] + FieldElem(c, 0) * vec[j]
        images.append(img)
    rhs = [[images[j][i] for j in range(len(basis))] for i in range(7)]
    try:
        sol = solve(bmat, rhs, FF)
    except ValueError as exc:
        raise ValueError("span is not invariant under the matrix") from exc
    # solve() only returns a candidate; verify residual exactly
    for i in range(7):
        for j in range(len(basis)):
            acc = FF.zero
            for k in range(len(basis)):
                acc = acc + bmat[i][k] * sol[k][j]
            if not (acc - rhs[i][j]).is_zero():
                raise ValueError("span is not invariant under the matrix")
    for row in sol:
        for v in row:
            if not v.b.is_zero():
                raise ValueError("restriction left Q(zeta7)")
    return [[sol[i][j].a for j in range(len(basis))] for i in range(len(basis))]


def restriction_matrices():
    """Restrictions of mu^-1, nu, delta to V+ (dim 3) and V- (dim 4).

    The classical displays use the index-halving map for mu, which is the
    inverse of the element satisfying mu sigma mu^-1 = sigma^2; both versions
    generate the same subgroup and lie in the same conjugacy class.  The
    restriction of the doubling map is the transpose of the displayed
    permutation matrices (a checked fact, not an assumption).
    """
    out = {}
    for name, mat in [("mu", MU.inv()), ("nu", NU), ("delta", delta_dense())]:
        out[name + "+"] = restrict_to_span(mat, VPLUS_BASIS)
        out[name + "-"] = restrict_to_span(mat, VMINUS_BASIS)
    return out
