"""Sparse multivariate polynomials over an exact coefficient domain.

A VarRegistry fixes an ordered tuple of variable names, optionally split into
blocks (for bigraded rings such as t-variables times u-variables).  Monomials
are dense exponent tuples over the registry; polynomials map exponent tuples
to nonzero coefficients of the attached domain.

Monomial order inside a registry is graded reverse lexicographic; product
registries compare block degrees first (block order), which is what the
elimination and bigraded code paths rely on.
"""

from __future__ import annotations

from fractions import Fraction

from .field import QQ


class VarRegistry:
    """Named, ordered variable set, optionally split into degree blocks."""

    __slots__ = ("names", "blocks", "_index")

    def __init__(self, names, blocks=None):
        self.names = tuple(names)
        self.blocks = tuple(blocks) if blocks else (len(self.names),)
        if sum(self.blocks) != len(self.names):
            raise ValueError("block sizes must sum to the variable count")
        self._index = {n: i for i, n in enumerate(self.names)}

    @property
    def n(self):
        return len(self.names)

    def index(self, name: str) -> int:
        return self._index[name]

    def bidegree(self, exp) -> tuple:
        out = []
        start = 0
        for b in self.blocks:
            out.append(sum(exp[start : start + b]))
            start += b
        return tuple(out)

    def __eq__(self, other):
        return isinstance(other, VarRegistry) and self.names == other.names and self.blocks == other.blocks

    def __hash__(self):
        return hash((self.names, self.blocks))

    def __repr__(self):
        return f"VarRegistry({self.names!r})"


def product_registry(a: VarRegistry, b: VarRegistry) -> VarRegistry:
    return VarRegistry(a.names + b.names, a.blocks + b.blocks)


REG_X = VarRegistry([f"x{i}" for i in range(7)])
REG_U = VarRegistry([f"u{i}" for i in range(4)])
REG_Y = VarRegistry(["y1", "y2", "y3"])
REG_V = VarRegistry(["v1", "v2", "v3"])
REG_T = VarRegistry([f"t{i}" for i in range(4)])
REG_TU = product_registry(REG_T, REG_U)


def grevlex_key(exp):
    """Sort key: max() of keys picks the grevlex-leading monomial."""
    return (sum(exp), tuple(-e for e in reversed(exp)))


def block_grevlex_key(exp, blocks):
    out = []
    start = 0
    for b in blocks:
        part = exp[start : start + b]
        out.append(sum(part))
        out.append(tuple(-e for e in reversed(part)))
        start += b
    return tuple(out)


class Poly:
    """Sparse polynomial: dict from exponent tuples to nonzero coefficients."""

    __slots__ = ("reg", "dom", "terms")

    def __init__(self, reg: VarRegistry, dom, terms=None, _clean=False):
        self.reg = reg
        self.dom = dom
        if terms is None:
            self.terms = {}
        elif _clean:
            self.terms = terms
        else:
            self.terms = {e: c for e, c in terms.items() if not dom.is_zero(c)}

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(reg, dom=QQ):
        return Poly(reg, dom, {}, _clean=True)

    @staticmethod
    def const(reg, c, dom=QQ):
        c = dom.coerce(c)
        if dom.is_zero(c):
            return Poly.zero(reg, dom)
        return Poly(reg, dom, {(0,) * reg.n: c}, _clean=True)

    @staticmethod
    def var(reg, name, dom=QQ):
        e = [0] * reg.n
        e[reg.index(name)] = 1
        return Poly(reg, dom, {tuple(e): dom.one}, _clean=True)

    @staticmethod
    def monomial(reg, exp, c, dom=QQ):
        c = dom.coerce(c)
        if dom.is_zero(c):
            return Poly.zero(reg, dom)
        return Poly(reg, dom, {tuple(exp): c}, _clean=True)

    # -- ring operations --------------------------------------------------

    def _coerce_other(self, other):
        if isinstance(other, Poly):
            if other.reg != self.reg:
                raise ValueError(f"registry mismatch: {self.reg} vs {other.reg}")
            return other
        try:
            return Poly.const(self.reg, other, self.dom)
        except (TypeError, ValueError):
            return None

    def __add__(self, other):
        o = self._coerce_other(other)
        if o is None:
            return NotImplemented
        dom = self.dom
        out = dict(self.terms)
        for e, c in o.terms.items():
            s = dom.add(out.get(e, dom.zero), c)
            if dom.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return Poly(self.reg, dom, out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        dom = self.dom
        return Poly(self.reg, dom, {e: dom.neg(c) for e, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        o = self._coerce_other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            try:
                c = self.dom.coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
            return self.scale(c)
        o = self._coerce_other(other)
        dom = self.dom
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = dom.mul(c1, c2)
                s = dom.add(out.get(e, dom.zero), p)
                if dom.is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        return Poly(self.reg, dom, out, _clean=True)

    __rmul__ = __mul__

    def scale(self, c):
        dom = self.dom
        c = dom.coerce(c)
        if dom.is_zero(c):
            return Poly.zero(self.reg, dom)
        return Poly(self.reg, dom, {e: dom.mul(v, c) for e, v in self.terms.items()}, _clean=True)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        r = Poly.const(self.reg, 1, self.dom)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b if n > 1 else b
            n >>= 1
        return r

    # -- structure -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def bidegree(self):
        bids = {self.reg.bidegree(e) for e in self.terms}
        if len(bids) > 1:
            raise ValueError("polynomial is not bihomogeneous")
        return bids.pop() if bids else None

    def leading(self, key=grevlex_key):
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def monic(self, key=grevlex_key):
        if self.is_zero():
            return self
        _, c = self.leading(key)
        return self.scale(self.dom.inv(c))

    def coeff(self, exp):
        return self.terms.get(tuple(exp), self.dom.zero)

    def map_coeffs(self, f, dom=None):
        dom = dom or self.dom
        return Poly(self.reg, dom, {e: f(c) for e, c in self.terms.items()})

    def transport(self, reg: VarRegistry, dom=None):
        """Reinterpret over a same-arity registry (e.g. v-variables as y)."""
        if reg.n != self.reg.n:
            raise ValueError("registry arity mismatch")
        dom = dom or self.dom
        return Poly(reg, dom, dict(self.terms), _clean=True)

    # -- calculus and substitution ----------------------------------------

    def diff(self, var_index: int, times: int = 1):
        dom = self.dom
        out = {}
        for e, c in self.terms.items():
            a = e[var_index]
            if a < times:
                continue
            f = 1
            for k in range(times):
                f *= a - k
            e2 = list(e)
            e2[var_index] = a - times
            v = dom.mul(c, dom.coerce(f))
            if not dom.is_zero(v):
                out[tuple(e2)] = v
        return Poly(self.reg, dom, out, _clean=True)

    def substitute(self, images):
        """Replace variable i by images[i] (a Poly over the target registry).

        Composition law: substituting by g then by h equals substituting by
        the map sending each variable first through g, then through h.
        """
        if len(images) != self.reg.n:
            raise ValueError("need one image per variable")
        tgt = images[0].reg
        dom = images[0].dom
        if all(len(im.terms) <= 1 for im in images):
            return self._substitute_monomial(images, tgt, dom)
        out = Poly.zero(tgt, dom)
        pow_cache = [{0: Poly.const(tgt, 1, dom)} for _ in range(self.reg.n)]
        for e, c in self.terms.items():
            term = Poly.const(tgt, c if dom is self.dom else dom.coerce(c), dom)
            for i, a in enumerate(e):
                if a == 0:
                    continue
                cache = pow_cache[i]
                if a not in cache:
                    m = max(cache)
                    cur = cache[m]
                    while m < a:
                        cur = cur * images[i]
                        m += 1
                        cache[m] = cur
                term = term * cache[a]
            out = out + term
        return out

    def _substitute_monomial(self, images, tgt, dom):
        """Fast path: every variable image is a single term (or zero)."""
        data = []
        for im in images:
            if not im.terms:
                data.append(None)
            else:
                (e, c), = im.terms.items()
                data.append((e, c))
        out = {}
        for e, c in self.terms.items():
            coeff = dom.coerce(c) if dom is not self.dom else c
            exp = [0] * tgt.n
            dead = False
            for i, a in enumerate(e):
                if a == 0:
                    continue
                if data[i] is None:
                    dead = True
                    break
                ie, ic = data[i]
                for k, b in enumerate(ie):
                    if b:
                        exp[k] += a * b
                for _ in range(a):
                    coeff = dom.mul(coeff, ic)
            if dead:
                continue
            t = tuple(exp)
            s = dom.add(out.get(t, dom.zero), coeff)
            if dom.is_zero(s):
                out.pop(t, None)
            else:
                out[t] = s
        return Poly(tgt, dom, out, _clean=True)

    def evaluate(self, point):
        """Evaluate at a point (list of domain elements)."""
        dom = self.dom
        total = dom.zero
        for e, c in self.terms.items():
            v = c
            for i, a in enumerate(e):
                for _ in range(a):
                    v = dom.mul(v, point[i])
            total = dom.add(total, v)
        return total

    # -- comparison and display --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.reg == other.reg and self.terms == other.terms
        o = self._coerce_other(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash((self.reg, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Poly({render_poly(self)!r})"

    def __str__(self):
        return render_poly(self)


def linear_form(reg, coeffs, dom=QQ):
    """sum coeffs[i] * reg.names[i]."""
    out = Poly.zero(reg, dom)
    for i, c in enumerate(coeffs):
        cc = dom.coerce(c)
        if not dom.is_zero(cc):
            e = [0] * reg.n
            e[i] = 1
            out = out + Poly(reg, dom, {tuple(e): cc}, _clean=True)
    return out


def substitution_for(reg, matrix, dom=QQ):
    """Variable images for the linear substitution v_i -> sum_j matrix[j][i] v_j.

    matrix[j][i] is the coefficient of variable j in the image of variable i,
    i.e. columns are images, matching matrices that act on column vectors.
    """
    n = reg.n
    return [linear_form(reg, [matrix[j][i] for j in range(n)], dom) for i in range(n)]


# ---------------------------------------------------------------------------
# text form: `3*x0^2*x1 - x2*x3 + (z^2)*x4`


def render_poly(p: Poly, key=grevlex_key) -> str:
    if p.is_zero():
        return "0"
    dom = p.dom
    parts = []
    for e in sorted(p.terms, key=key, reverse=True):
        c = p.terms[e]
        mono = "*".join(
            n if a == 1 else f"{n}^{a}" for n, a in zip(p.reg.names, e) if a
        )
        cs = dom.fmt(c)
        if dom.needs_parens(c):
            cs = f"({cs})"
        if not mono:
            parts.append(cs)
        elif dom.is_unit_coeff(c):
            parts.append(mono)
        elif cs == "-1":
            parts.append(f"-{mono}")
        else:
            parts.append(f"{cs}*{mono}")
    out = parts[0]
    for t in parts[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


def parse_poly(s: str, reg: VarRegistry, dom=QQ) -> Poly:
    """Parse the grammar produced by render_poly."""
    from .field import parse_field, FieldElem, FF

    i = 0
    n = len(s)

    def skip():
        nonlocal i
        while i < n and s[i].isspace():
            i += 1

    def peek():
        skip()
        return s[i] if i < n else ""

    def number():
        nonlocal i
        skip()
        j = i
        while j < n and s[j].isdigit():
            j += 1
        if j == i:
            raise ValueError(f"expected number at {i} in {s!r}")
        v = int(s[i:j])
        i = j
        return v

    def name():
        nonlocal i
        skip()
        j = i
        while j < n and (s[j].isalnum() or s[j] == "_"):
            j += 1
        w = s[i:j]
        i = j
        return w

    def atom():
        nonlocal i
        c = peek()
        if c == "(":
            # parenthesized field-element coefficient
            depth = 0
            j = i
            while j < n:
                if s[j] == "(":
                    depth += 1
                elif s[j] == ")":
                    depth -= 1
                    if depth == 0:
                        break
                j += 1
            inner = s[i + 1 : j]
            i = j + 1
            fe = parse_field(inner)
            if dom is FF:
                return Poly.const(reg, fe, dom)
            if isinstance(fe, FieldElem) and fe.is_rational():
                return Poly.const(reg, fe.rational_value(), dom)
            return Poly.const(reg, dom.coerce(fe), dom)
        if c.isdigit():
            v = number()
            if peek() == "/":
                i += 1
                d = number()
                return Poly.const(reg, Fraction(v, d), dom)
            return Poly.const(reg, v, dom)
        w = name()
        if w not in reg._index:
            raise ValueError(f"unknown variable {w!r} for registry {reg.names}")
        p = Poly.var(reg, w, dom)
        if peek() == "^":
            i += 1
            p = p ** number()
        return p

    def term():
        nonlocal i
        neg = False
        while peek() in ("+", "-"):
            if s[i] == "-":
                neg = not neg
            i += 1
        p = atom()
        while peek() == "*":
            i += 1
            p = p * atom()
        return -p if neg else p

    total = Poly.zero(reg, dom)
    while True:
        total = total + term()
        if peek() in ("+", "-"):
            continue
        break
    if peek() != "":
        raise ValueError(f"trailing input at {i} in {s!r}")
    return total


# ---------------------------------------------------------------------------
# differential operators with rational coefficients


class DiffOp:
    """Constant-coefficient operator: polynomial in the partials of a registry.

    Exponent tuples give the order of each partial; application is plain
    repeated partial differentiation (no factorial normalization).
    """

    __slots__ = ("reg", "terms")

    def __init__(self, reg: VarRegistry, terms):
        self.reg = reg
        self.terms = {tuple(e): Fraction(c) for e, c in terms.items() if c != 0}

    def order(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def apply(self, f: Poly) -> Poly:
        if f.reg != self.reg:
            raise ValueError("operator/polynomial registry mismatch")
        dom = f.dom
        out = Poly.zero(f.reg, dom)
        for e, c in self.terms.items():
            g = f
            for i, k in enumerate(e):
                if k:
                    g = g.diff(i, k)
                if g.is_zero():
                    break
            if not g.is_zero():
                out = out + g.scale(dom.coerce(c))
        return out

    def __repr__(self):
        names = [f"d{n}" for n in self.reg.names]
        parts = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(f"{names[i]}^{a}" if a > 1 else names[i] for i, a in enumerate(e) if a)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return "DiffOp(" + " + ".join(parts) + ")"


def monomial_basis(reg: VarRegistry, d: int):
    """All exponent tuples of total degree d, in descending grevlex order."""
    if d < 0:
        return []
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for a in range(remaining, -1, -1):
            rec(prefix + (a,), remaining - a, slots - 1)

    rec((), d, reg.n)
    out.sort(key=grevlex_key, reverse=True)
    return out


def kernel_of_operators(ops, d: int, reg: VarRegistry = None, dom=QQ):
    """Echelonized basis of {f homogeneous of degree d : D f = 0 for all D}."""
    from .linalg import nullspace

    if reg is None:
        if not ops:
            raise ValueError("need a registry when the operator list is empty")
        reg = ops[0].reg
    basis = monomial_basis(reg, d)
    if not ops:
        return [Poly.monomial(reg, e, 1, dom) for e in basis]
    rows = []
    for op in ops:
        if op.order() > d:
            continue
        targets = monomial_basis(reg, d - op.order())
        tix = {e: i for i, e in enumerate(targets)}
        block = [[dom.zero] * len(basis) for _ in range(len(targets))]
        for j, e in enumerate(basis):
            img = op.apply(Poly.monomial(reg, e, 1, dom))
            for te, c in img.terms.items():
                block[tix[te]][j] = c
        rows.extend(block)
    if not rows:
        return [Poly.monomial(reg, e, 1, dom) for e in basis]
    ker = nullspace(rows, dom, len(basis))
    return [
        Poly(reg, dom, {basis[i]: c for i, c in enumerate(v) if not dom.is_zero(c)})
        for v in ker
    ]
