"""Independent test oracles, kept deliberately separate from the package.

The Betti-number oracle computes graded Betti numbers as Koszul homology
with vectorized prime-field linear algebra: no Groebner bases, syzygy
modules, or resolution code from the package are involved, so it provides a
genuinely independent cross-check of the resolution engine.
"""

from itertools import combinations

import numpy as np

from heis7.linalg import np_rank, np_rref
from heis7.poly import monomial_basis


class QuotientRing:
    """Degreewise standard-monomial model of S/I over a prime field."""

    def __init__(self, gens, reg, p, max_degree):
        self.reg = reg
        self.p = p
        self.monos = {d: monomial_basis(reg, d) for d in range(max_degree + 1)}
        self.index = {d: {e: i for i, e in enumerate(ms)} for d, ms in self.monos.items()}
        self.std = {}
        self.reduce_rows = {}
        self.pivot_row = {}
        for d in range(max_degree + 1):
            rows = []
            for g in gens:
                dg = max(sum(e) for e in g.terms)
                if dg > d:
                    continue
                for m in monomial_basis(reg, d - dg):
                    row = [0] * len(self.monos[d])
                    for e, c in g.terms.items():
                        t = tuple(a + b for a, b in zip(e, m))
                        row[self.index[d][t]] = int(c) % p
                    rows.append(row)
            if rows:
                red, pivots = np_rref(np.array(rows, dtype=np.int64), p)
            else:
                red, pivots = np.zeros((0, len(self.monos[d])), dtype=np.int64), []
            pivset = set(pivots)
            self.std[d] = [i for i in range(len(self.monos[d])) if i not in pivset]
            self.reduce_rows[d] = red
            self.pivot_row[d] = {c: r for r, c in enumerate(pivots)}

    def dim(self, d):
        return len(self.std[d])

    def monomial_vector(self, d, mono_index):
        """Coordinates of a monomial in the standard basis of degree d."""
        std = self.std[d]
        pos = {m: i for i, m in enumerate(std)}
        v = np.zeros(len(std), dtype=np.int64)
        if mono_index in pos:
            v[pos[mono_index]] = 1
            return v
        r = self.pivot_row[d][mono_index]
        row = self.reduce_rows[d][r]
        for i, m in enumerate(std):
            v[i] = (-int(row[m])) % self.p
        return v

    def mult_matrix(self, var, d):
        """Multiplication by the variable: M_d -> M_{d+1} on standard bases."""
        std = self.std[d]
        out = np.zeros((self.dim(d + 1), len(std)), dtype=np.int64)
        for col, mi in enumerate(std):
            e = list(self.monos[d][mi])
            e[var] += 1
            target = self.index[d + 1][tuple(e)]
            out[:, col] = self.monomial_vector(d + 1, target)
        return out % self.p


def betti_koszul(gens, reg, p, entries):
    """Graded Betti numbers via Koszul homology.

    entries: iterable of (i, j) positions; returns {(i, j): beta}.
    """
    n = reg.n
    max_degree = max(j - i + 1 for i, j in entries)
    ring = QuotientRing(gens, reg, p, max_degree)
    mult = {}

    def get_mult(var, d):
        if (var, d) not in mult:
            mult[(var, d)] = ring.mult_matrix(var, d)
        return mult[(var, d)]

    def subsets(i):
        return list(combinations(range(n), i))

    def differential(i, j):
        """Koszul map at homological position i, internal degree j."""
        rows_sets = subsets(i - 1)
        cols_sets = subsets(i)
        row_pos = {s: k for k, s in enumerate(rows_sets)}
        d_src = j - i
        d_tgt = j - i + 1
        if d_src < 0 or d_src > max_degree or d_tgt > max_degree:
            return None
        sdim, tdim = ring.dim(d_src), ring.dim(d_tgt)
        out = np.zeros((len(rows_sets) * tdim, len(cols_sets) * sdim), dtype=np.int64)
        for ci, T in enumerate(cols_sets):
            for r, var in enumerate(T):
                rest = tuple(x for x in T if x != var)
                sign = 1 if r % 2 == 0 else p - 1
                block = (get_mult(var, d_src) * sign) % p
                ri = row_pos[rest]
                out[ri * tdim : (ri + 1) * tdim, ci * sdim : (ci + 1) * sdim] = block
        return out % p

    result = {}
    for (i, j) in entries:
        d_here = j - i
        if d_here < 0 or d_here > max_degree:
            result[(i, j)] = 0
            continue
        dim_here = len(subsets(i)) * ring.dim(d_here)
        d_out = differential(i, j) if i >= 1 else None
        d_in = differential(i + 1, j) if i + 1 <= n else None
        rk_out = np_rank(d_out, p) if d_out is not None and d_out.size else 0
        rk_in = np_rank(d_in, p) if d_in is not None and d_in.size else 0
        result[(i, j)] = dim_here - rk_out - rk_in
    return result
