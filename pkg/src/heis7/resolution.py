"""Graded syzygies and minimal free resolutions by iterated module Buchberger.

Free-module vectors are dicts {(component, exponent-tuple): coefficient}.
Each resolution level carries the classical induced monomial order: module
terms compare through their images under the previous level's leading
terms, with position as the tie-break.  This keeps syzygy reductions short
and makes the harvested relations a basis of the syzygy module level after
level.

A level is computed in two phases:
  1. the raw syzygies harvested from the previous level's tracked Buchberger
     run are trimmed to a minimal generating set with an incremental module
     Groebner basis (a candidate is redundant iff its normal form vanishes
     against the basis of the previously kept generators, completed through
     the candidate's degree);
  2. a tracked module Buchberger run on the kept generators produces the raw
     syzygies of the next level.
Minimality of the kept generators makes the graded Betti numbers plain
counts, checked against the Hilbert-series alternating sums by callers.
"""

from __future__ import annotations

from dataclasses import dataclass
import heapq
import time

from .field import QQ
from .groebner import (
    GradedIdeal,
    _add_exp,
    _divides,
    _lcm,
    _sub_exp,
    buchberger,
)
from .poly import Poly, grevlex_key


# ---------------------------------------------------------------------------
# module vectors


def vec_degree(v, gdeg):
    for (c, e) in v:
        return sum(e) + gdeg[c]
    return -1


def induced_key_from(lts, prev_key):
    """Module order induced by assigned leading terms, position tie-break.

    lts[c] is the leading term of the generator presented by component c;
    prev_key maps that leading term's habitat to a sortable tuple.  For the
    first syzygy level lts[c] is an exponent tuple and prev_key a ring key;
    deeper levels pass terms (component, exponent) with the previous module
    key, recursively.
    """

    def key(term):
        c, e = term
        base = lts[c]
        if len(base) == 2 and isinstance(base[1], tuple):
            carrier = (base[0], _add_exp(e, base[1]))  # module leading term
        else:
            carrier = _add_exp(e, base)  # ring leading exponent
        return prev_key(carrier) + (-c,)

    return key


def ring_to_module_key(ring_key):
    def key(term):
        c, e = term
        return ring_key(e) + (-c,)

    return key


def pot_key(ring_key):
    """Position-over-term: component 0 dominates (elimination order)."""

    def key(term):
        c, e = term
        return (1 if c == 0 else 0, -c) + ring_key(e)

    return key


def _vec_sub_scaled(f, g, exp, c, dom):
    """f -= c * x^exp * g in place."""
    for (gc, ge), gv in g.items():
        t = (gc, _add_exp(ge, exp))
        s = dom.sub(f.get(t, dom.zero), dom.mul(gv, c))
        if dom.is_zero(s):
            f.pop(t, None)
        else:
            f[t] = s


class ModuleGB:
    """Incremental module Groebner basis, complete through a moving degree."""

    def __init__(self, dom, key, gdeg, track=False, pair_cap=None):
        self.dom = dom
        self.key = key
        self.gdeg = gdeg
        self.track = track
        self.lts = []
        self.elems = []
        self.rows = []  # cofactor rows over the input generators
        self.pairs = []  # heap (degree, lcm key, i, j)
        self.syzygies = []
        self.n_inputs = 0
        self.pair_cap = pair_cap
        self.pairs_processed = 0
        self.truncated = False

    # -- internals ------------------------------------------------------

    def _push_pairs(self, t):
        ct, et = self.lts[t]
        for i in range(t):
            ci, ei = self.lts[i]
            if ci != ct:
                continue
            l = _lcm(ei, et)
            d = sum(l) + self.gdeg[ci]
            heapq.heappush(self.pairs, (d, self.key((ci, l)), i, t))

    def _add(self, v, row):
        lt = max(v, key=self.key)
        lc = v[lt]
        if not self.dom.is_zero(self.dom.sub(lc, self.dom.one)):
            inv = self.dom.inv(lc)
            v = {t: self.dom.mul(c, inv) for t, c in v.items()}
            if self.track:
                row = {t: self.dom.mul(c, inv) for t, c in row.items()}
        self.lts.append(lt)
        self.elems.append(v)
        self.rows.append(row)
        t = len(self.elems) - 1
        self._push_pairs(t)
        return t

    def _reduce(self, v, row):
        dom, key = self.dom, self.key
        f = dict(v)
        out = {}
        while f:
            le = max(f, key=key)
            lc = f[le]
            hit = -1
            lc_comp, lc_exp = le
            for i, (bc, be) in enumerate(self.lts):
                if bc == lc_comp and _divides(be, lc_exp):
                    hit = i
                    break
            if hit < 0:
                out[le] = lc
                del f[le]
                continue
            m = _sub_exp(lc_exp, self.lts[hit][1])
            _vec_sub_scaled(f, self.elems[hit], m, lc, dom)
            if self.track:
                for t, c in self.rows[hit].items():
                    tc, te = t
                    tt = (tc, _add_exp(te, m))
                    s = dom.sub(row.get(tt, dom.zero), dom.mul(c, lc))
                    if dom.is_zero(s):
                        row.pop(tt, None)
                    else:
                        row[tt] = s
        return out, row

    def process_pairs_through(self, degree, deadline=None):
        while self.pairs and self.pairs[0][0] <= degree:
            if deadline is not None and time.monotonic() > deadline:
                self.truncated = True
                return
            if self.pair_cap is not None and self.pairs_processed >= self.pair_cap:
                self.truncated = True
                return
            self.pairs_processed += 1
            d, lk, i, j = heapq.heappop(self.pairs)
            # chain criterion: a third element divides the lcm strictly
            ci, ei = self.lts[i]
            cj, ej = self.lts[j]
            l = _lcm(ei, ej)
            skip = False
            for k, (ck, ek) in enumerate(self.lts):
                if k in (i, j) or ck != ci:
                    continue
                if _divides(ek, l):
                    lik = _lcm(ei, ek)
                    lkj = _lcm(ek, ej)
                    if lik != l and lkj != l:
                        skip = True
                        break
            if skip:
                continue
            mi = _sub_exp(l, ei)
            mj = _sub_exp(l, ej)
            s = {}
            for (c, e), vv in self.elems[i].items():
                s[(c, _add_exp(e, mi))] = vv
            for (c, e), vv in self.elems[j].items():
                t = (c, _add_exp(e, mj))
                r = self.dom.sub(s.get(t, self.dom.zero), vv)
                if self.dom.is_zero(r):
                    s.pop(t, None)
                else:
                    s[t] = r
            row = {}
            if self.track:
                for t, c in self.rows[i].items():
                    tc, te = t
                    row[(tc, _add_exp(te, mi))] = c
                for t, c in self.rows[j].items():
                    tc, te = t
                    tt = (tc, _add_exp(te, mj))
                    rr = self.dom.sub(row.get(tt, self.dom.zero), c)
                    if self.dom.is_zero(rr):
                        row.pop(tt, None)
                    else:
                        row[tt] = rr
            s, row = self._reduce(s, row)
            if s:
                self._add(s, row)
            elif self.track and row:
                self.syzygies.append(row)

    def add_input(self, v, deadline=None):
        """Feed a generator (ascending degree).  Returns its normal form
        (empty when the generator is redundant)."""
        d = vec_degree(v, self.gdeg)
        self.process_pairs_through(d, deadline)
        idx = self.n_inputs
        self.n_inputs += 1
        row = {(idx, (0,) * _arity(v)): self.dom.one} if self.track else {}
        nf, row = self._reduce(v, row)
        if nf:
            self._add(nf, row)
        elif self.track and row:
            self.syzygies.append(row)
        return nf


def _arity(v):
    for (_, e) in v:
        return len(e)
    raise ValueError("zero vector has no arity")


# ---------------------------------------------------------------------------
# Betti tables


@dataclass
class BettiTable:
    """Graded Betti numbers beta_{i,j} of a cyclic graded module."""

    entries: dict  # (i, j) -> positive int
    complete: bool = True
    note: str = ""

    def beta(self, i, j):
        return self.entries.get((i, j), 0)

    def max_step(self):
        return max((i for i, _ in self.entries), default=0)

    def rows(self):
        return sorted({j - i for i, j in self.entries})

    def macaulay_rows(self):
        """The classical shorthand: entry (row r, column i) is beta_{i, i+r}."""
        if not self.entries:
            return []
        rmax = max(j - i for i, j in self.entries)
        cmax = self.max_step()
        grid = []
        for r in range(rmax + 1):
            grid.append([self.beta(i, i + r) for i in range(cmax + 1)])
        return grid

    def render(self) -> str:
        grid = self.macaulay_rows()
        if not grid:
            return "(empty)"
        w = max(len(str(v)) for row in grid for v in row) + 1
        lines = []
        for row in grid:
            lines.append("".join((str(v) if v else "-").rjust(w) for v in row))
        return "\n".join(lines)

    def alternating_sums(self):
        """Coefficients sum_i (-1)^i beta_{i,j} per degree j."""
        out = {}
        for (i, j), b in self.entries.items():
            out[j] = out.get(j, 0) + (b if i % 2 == 0 else -b)
        return {j: c for j, c in out.items() if c}

    def to_json(self):
        return [
            {"i": i, "j": j, "beta": b}
            for (i, j), b in sorted(self.entries.items())
        ]


# ---------------------------------------------------------------------------
# syzygies and resolutions


def syzygies_of_polys(gens, dom=QQ, key=grevlex_key, degree_cap=None):
    """Generating set of the syzygy module of the given polynomials.

    Returns (vectors, truncated): vectors live in the free module with one
    component per generator and are exact syzygies (checked by the caller's
    tests rather than trusted): sum_i v[i] * gens[i] = 0.
    """
    dicts = [dict(g.terms) for g in gens]
    _, info = buchberger(dicts, dom, key, track=True, degree_cap=degree_cap)
    return info["syzygies"], info["truncated"]


class ResolutionBudget(Exception):
    pass


def free_resolution(
    ideal: GradedIdeal,
    degree_cap: int = 8,
    max_steps: int = 8,
    time_budget: float = None,
    pair_cap: int = None,
):
    """Minimal graded free resolution of S/I, as a BettiTable.

    Works level by level: trim to minimal generators (incremental module GB
    membership), then harvest the next level's syzygies from a tracked run.
    Betti numbers in internal degree <= degree_cap are exact; if the cap or
    the time budget truncates the computation the table is flagged.
    """
    dom = ideal.dom
    reg = ideal.reg
    deadline = time.monotonic() + time_budget if time_budget else None
    entries = {(0, 0): 1}
    complete = True
    note = []

    # level 1: minimal generators of the ideal itself
    gens = [dict(g.terms) for g in ideal.gens]
    gens.sort(key=lambda g: (sum(next(iter(g))), grevlex_key(max(g, key=grevlex_key))))
    trim = ModuleGB(dom, ring_to_module_key(grevlex_key), [0], track=False)
    kept = []
    for g in gens:
        nf = trim.add_input({(0, e): c for e, c in g.items()}, deadline)
        if nf:
            kept.append(nf)
    level_gens = [{e: c for (_, e), c in v.items()} for v in kept]
    for g in level_gens:
        d = max(sum(e) for e in g)
        entries[(1, d)] = entries.get((1, d), 0) + 1

    # tracked ring-level run for the first syzygies
    polys = level_gens
    _, info = buchberger(polys, dom, grevlex_key, track=True, degree_cap=degree_cap)
    if info["truncated"]:
        complete = False
        note.append("level 1 pair queue truncated at the degree cap")
    candidates = info["syzygies"]
    gdeg = [max(sum(e) for e in g) for g in polys]
    lts = [max(g, key=grevlex_key) for g in polys]
    key = induced_key_from(lts, grevlex_key)

    step = 1
    while candidates and step < max_steps:
        step += 1
        if deadline is not None and time.monotonic() > deadline:
            complete = False
            note.append(f"time budget reached before homological step {step}")
            break
        candidates = [v for v in candidates if v]
        candidates.sort(key=lambda v: (vec_degree(v, gdeg), sorted(v)[0][0]))
        trim = ModuleGB(dom, key, gdeg, track=False, pair_cap=pair_cap)
        kept = []
        truncated_here = False
        for v in candidates:
            d = vec_degree(v, gdeg)
            if d > degree_cap:
                truncated_here = True
                continue
            nf = trim.add_input(v, deadline)
            if trim.truncated:
                break
            if nf:
                kept.append(nf)
        if trim.truncated:
            complete = False
            note.append(f"budget reached inside homological step {step}")
            break
        if truncated_here:
            complete = False
            note.append(f"degree cap dropped syzygy candidates at step {step}")
        if not kept:
            break
        for v in kept:
            d = vec_degree(v, gdeg)
            entries[(step, d)] = entries.get((step, d), 0) + 1

        # harvest next level
        tracked = ModuleGB(dom, key, gdeg, track=True, pair_cap=pair_cap)
        for v in kept:
            tracked.add_input(v, deadline)
        tracked.process_pairs_through(degree_cap, deadline)
        if tracked.truncated:
            complete = False
            note.append(f"budget reached harvesting step {step + 1}")
            break
        if tracked.pairs:
            complete = False
            note.append(f"degree cap left pairs unprocessed after step {step}")
        candidates = tracked.syzygies
        new_gdeg = [vec_degree(v, gdeg) for v in kept]
        new_lts = [max(v, key=key) for v in kept]
        key = induced_key_from(new_lts, key)
        gdeg = new_gdeg

    return BettiTable(entries, complete, "; ".join(note))


# ---------------------------------------------------------------------------
# Hilbert-Burch extraction


class NotHilbertBurch(Exception):
    pass


def hilbert_burch(gens, dom=QQ):
    """3x2 linear syzygy matrix of three independent quadrics in 4 variables.

    Raises NotHilbertBurch unless the resolution shape is exactly
    (1; 3 2): three quadric generators with two linear syzygies and nothing
    else.  The returned FormMatrix's 2x2 minors span the input quadrics'
    span (callers verify the round trip).
    """
    from .formmat import FormMatrix
    from .linalg import rank as _rank
    from .poly import monomial_basis

    if len(gens) != 3:
        raise NotHilbertBurch("need exactly three quadrics")
    reg = gens[0].reg
    if any(g.degree() != 2 or not g.is_homogeneous() for g in gens):
        raise NotHilbertBurch("generators must be homogeneous quadrics")
    monos = monomial_basis(reg, 2)
    ix = {e: i for i, e in enumerate(monos)}
    rows = []
    for g in gens:
        row = [dom.zero] * len(monos)
        for e, c in g.terms.items():
            row[ix[e]] = c
        rows.append(row)
    if _rank(rows, dom) != 3:
        raise NotHilbertBurch("quadrics are linearly dependent")

    syz, truncated = syzygies_of_polys(gens, dom, degree_cap=8)
    # trim to minimal generators
    gdeg = [2, 2, 2]
    lts = [max(g.terms, key=grevlex_key) for g in gens]
    key = induced_key_from(lts, grevlex_key)
    trim = ModuleGB(dom, key, gdeg, track=False)
    kept = []
    for v in sorted(syz, key=lambda v: (vec_degree(v, gdeg), sorted(v)[0][0])):
        nf = trim.add_input(v)
        if nf:
            kept.append(nf)
    if len(kept) != 2 or any(vec_degree(v, gdeg) != 3 for v in kept):
        shape = sorted(vec_degree(v, gdeg) - 2 for v in kept)
        raise NotHilbertBurch(
            f"syzygy shape is not two linear columns (column degrees {shape})"
        )
    cols = []
    for v in kept:
        col = [Poly.zero(reg, dom) for _ in range(3)]
        for (c, e), coeff in v.items():
            col[c] = col[c] + Poly.monomial(reg, e, coeff, dom)
        cols.append(col)
    mat = FormMatrix([[cols[0][i], cols[1][i]] for i in range(3)])
    return mat


def hb_minors(mat):
    """The three signed 2x2 minors (delete row r) of a 3x2 form matrix."""
    out = []
    for r in range(3):
        rows = [i for i in range(3) if i != r]
        m = (
            mat[rows[0], 0] * mat[rows[1], 1]
            - mat[rows[0], 1] * mat[rows[1], 0]
        )
        out.append(m if r % 2 == 0 else -m)
    return out


# ---------------------------------------------------------------------------
# ideal intersection via module elimination


def intersect(a: GradedIdeal, b: GradedIdeal) -> GradedIdeal:
    """Intersection of two graded ideals in the same ring.

    Uses the kernel formulation: relations (p, q) with sum p_i g_i =
    sum q_j h_j are computed by a module Groebner basis in S^(1+r+s) under a
    block order eliminating the leading free-module slot.
    """
    if a.reg != b.reg or a.dom is not b.dom and a.dom != b.dom:
        raise ValueError("ideals live in different rings")
    reg, dom = a.reg, a.dom
    r, s = len(a.gens), len(b.gens)
    zero_exp = (0,) * reg.n
    vecs = []
    gdeg = [0] + [g.degree() for g in a.gens] + [h.degree() for h in b.gens]
    for i, g in enumerate(a.gens):
        v = {(0, e): c for e, c in g.terms.items()}
        v[(1 + i, zero_exp)] = dom.one
        vecs.append(v)
    for j, h in enumerate(b.gens):
        v = {(0, e): dom.neg(c) for e, c in h.terms.items()}
        v[(1 + r + j, zero_exp)] = dom.one
        vecs.append(v)
    key = pot_key(grevlex_key)
    gb = ModuleGB(dom, key, gdeg, track=False)
    for v in sorted(vecs, key=lambda v: vec_degree(v, gdeg)):
        gb.add_input(v)
    gb.process_pairs_through(10**9)
    out = []
    for lt, v in zip(gb.lts, gb.elems):
        if lt[0] == 0:
            continue  # still involves the eliminated slot
        p = Poly.zero(reg, dom)
        for (c, e), coeff in v.items():
            if 1 <= c <= r:
                p = p + Poly.monomial(reg, e, coeff, dom) * a.gens[c - 1]
        if not p.is_zero():
            out.append(p)
    return GradedIdeal(reg, dom, minimal_ideal_gens(out, dom))


def minimal_ideal_gens(polys, dom=QQ):
    """Trim a homogeneous generating set to minimal generators."""
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return []
    polys.sort(key=lambda p: (p.degree(), grevlex_key(p.leading()[0])))
    trim = ModuleGB(dom, ring_to_module_key(grevlex_key), [0], track=False)
    kept = []
    for p in polys:
        nf = trim.add_input({(0, e): c for e, c in p.terms.items()})
        if nf:
            kept.append(Poly(p.reg, dom, {e: c for (_, e), c in nf.items()}))
    return kept
