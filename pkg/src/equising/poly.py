"""Bivariate polynomials over a field tower, with local/global orderings.

Terms are stored sparsely as ``{(i, j): coefficient}`` with no zero
coefficients; the pair (i, j) is the monomial x^i y^j.  Coefficients are
tower elements in canonical form, so plain ``==`` on term dicts is exact
equality.  Everything here is immutable in spirit: operations return new
polynomials.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ZeroPolynomial
from .numberfield import QQ, UniPoly

INFINITE = float("inf")


class MonomialOrder:
    """A degree monomial order; ``key`` sorts ascending in significance.

    kind "ds": local degree order (1 beats every non-constant monomial,
    lower total degree is more significant, ties broken reverse
    lexicographically).  kind "dp": global degree reverse lexicographic.
    """

    __slots__ = ("kind",)

    def __init__(self, kind):
        if kind not in ("ds", "dp"):
            raise ValueError(f"unknown order kind {kind!r}")
        self.kind = kind

    @property
    def is_local(self):
        return self.kind == "ds"

    def key(self, mon):
        i, j = mon
        if self.kind == "ds":
            return (-(i + j), -j)
        return (i + j, -j)

    def greater(self, m1, m2):
        return self.key(m1) > self.key(m2)

    def sorted_desc(self, monomials):
        return sorted(monomials, key=self.key, reverse=True)

    def __repr__(self):
        return self.kind


LOCAL_DS = MonomialOrder("ds")
GLOBAL_DP = MonomialOrder("dp")


def monomial_mul(m1, m2):
    return (m1[0] + m2[0], m1[1] + m2[1])


def monomial_divides(m1, m2):
    return m1[0] <= m2[0] and m1[1] <= m2[1]


def monomial_div(m1, m2):
    return (m1[0] - m2[0], m1[1] - m2[1])


def monomial_degree(m):
    return m[0] + m[1]


def monomial_text(mon):
    i, j = mon
    if i == 0 and j == 0:
        return "1"
    out = ""
    if i == 1:
        out += "x"
    elif i > 1:
        out += f"x{i}"
    if j == 1:
        out += "y"
    elif j > 1:
        out += f"y{j}"
    return out


class LocalPoly:
    """Sparse bivariate polynomial over a FieldTower."""

    __slots__ = ("terms", "tower")

    def __init__(self, terms, tower=QQ, normalize=False):
        if normalize:
            terms = {m: c for m, c in terms.items() if not tower.is_zero(c)}
        self.terms = terms
        self.tower = tower

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, tower=QQ):
        return cls({}, tower)

    @classmethod
    def constant(cls, value, tower=QQ):
        value = tower.from_fraction(value) if isinstance(value, (int, Fraction)) else value
        if tower.is_zero(value):
            return cls({}, tower)
        return cls({(0, 0): value}, tower)

    @classmethod
    def monomial(cls, mon, tower=QQ, coeff=None):
        return cls({mon: tower.one() if coeff is None else coeff}, tower)

    @classmethod
    def variable(cls, name, tower=QQ):
        mon = (1, 0) if name == "x" else (0, 1)
        return cls({mon: tower.one()}, tower)

    @classmethod
    def from_fraction_terms(cls, pairs):
        t = {}
        for mon, q in pairs.items():
            q = Fraction(q)
            if q:
                t[mon] = q
        return cls(t, QQ)

    # -- predicates ----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(m == (0, 0) for m in self.terms)

    def is_monomial(self):
        return len(self.terms) == 1

    def __eq__(self, other):
        if not isinstance(other, LocalPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms))

    def __bool__(self):
        return bool(self.terms)

    # -- ring operations -------------------------------------------------------

    def add(self, other):
        t = self.tower
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                s = t.add(out[m], c)
                if t.is_zero(s):
                    del out[m]
                else:
                    out[m] = s
            else:
                out[m] = c
        return LocalPoly(out, t)

    def sub(self, other):
        return self.add(other.neg())

    def neg(self):
        t = self.tower
        return LocalPoly({m: t.neg(c) for m, c in self.terms.items()}, t)

    def scale(self, c):
        t = self.tower
        if isinstance(c, (int, Fraction)):
            c = t.from_fraction(c)
        if t.is_zero(c):
            return LocalPoly({}, t)
        return LocalPoly({m: t.mul(c, v) for m, v in self.terms.items()}, t)

    def mul(self, other, trunc=None):
        t = self.tower
        out = {}
        for m1, c1 in self.terms.items():
            d1 = m1[0] + m1[1]
            for m2, c2 in other.terms.items():
                if trunc is not None and d1 + m2[0] + m2[1] > trunc:
                    continue
                m = (m1[0] + m2[0], m1[1] + m2[1])
                p = t.mul(c1, c2)
                if m in out:
                    s = t.add(out[m], p)
                    if t.is_zero(s):
                        del out[m]
                    else:
                        out[m] = s
                elif not t.is_zero(p):
                    out[m] = p
        return LocalPoly(out, t)

    def mul_monomial(self, mon, coeff=None):
        t = self.tower
        di, dj = mon
        if coeff is None:
            return LocalPoly({(i + di, j + dj): c for (i, j), c in self.terms.items()}, t)
        out = {}
        for (i, j), c in self.terms.items():
            p = t.mul(c, coeff)
            if not t.is_zero(p):
                out[(i + di, j + dj)] = p
        return LocalPoly(out, t)

    def pow(self, n, trunc=None):
        out = LocalPoly.constant(1, self.tower)
        base = self
        while n:
            if n & 1:
                out = out.mul(base, trunc)
            n >>= 1
            if n:
                base = base.mul(base, trunc)
        return out

    def truncate(self, bound):
        """Drop all terms of total degree > bound."""
        return LocalPoly(
            {m: c for m, c in self.terms.items() if m[0] + m[1] <= bound}, self.tower
        )

    # -- germ data ---------------------------------------------------------------

    def multiplicity(self):
        """Minimum total degree of the support; INFINITE for zero."""
        if not self.terms:
            return INFINITE
        return min(i + j for i, j in self.terms)

    def degree(self):
        if not self.terms:
            return -1
        return max(i + j for i, j in self.terms)

    def tangent_cone(self):
        """Sum of the terms of minimal total degree."""
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no tangent cone")
        m = self.multiplicity()
        return LocalPoly(
            {mon: c for mon, c in self.terms.items() if mon[0] + mon[1] == m},
            self.tower,
        )

    def derivative(self, var):
        t = self.tower
        out = {}
        if var == "x":
            for (i, j), c in self.terms.items():
                if i:
                    out[(i - 1, j)] = t.scale(c, Fraction(i))
        else:
            for (i, j), c in self.terms.items():
                if j:
                    out[(i, j - 1)] = t.scale(c, Fraction(j))
        return LocalPoly(out, t)

    def eval_origin(self):
        return self.terms.get((0, 0), self.tower.zero())

    def coefficient(self, mon):
        return self.terms.get(mon, self.tower.zero())

    # -- substitution ---------------------------------------------------------------

    def substitute(self, px, py, trunc=None):
        """General substitution x -> px, y -> py (both LocalPoly)."""
        t = self.tower
        out = LocalPoly.zero(t)
        # Horner in y within groups of equal x-degree would be faster;
        # plain power caching is enough at this scale.
        powx, powy = {0: LocalPoly.constant(1, t)}, {0: LocalPoly.constant(1, t)}

        def power(cache, base, n):
            if n not in cache:
                cache[n] = power(cache, base, n - 1).mul(base, trunc)
            return cache[n]

        for (i, j), c in self.terms.items():
            term = power(powx, px, i).mul(power(powy, py, j), trunc).scale(c)
            out = out.add(term)
        return out

    def shift_y(self, alpha, trunc=None):
        """Substitute y -> y + alpha."""
        t = self.tower
        if t.is_zero(alpha):
            return self if trunc is None else self.truncate(trunc)
        out = {}
        binom_rows = {}
        for (i, j), c in self.terms.items():
            row = binom_rows.get(j)
            if row is None:
                row = _binomial_alpha_row(t, alpha, j)
                binom_rows[j] = row
            for k, bk in enumerate(row):
                if trunc is not None and i + k > trunc:
                    continue
                m = (i, k)
                p = t.mul(c, bk)
                if t.is_zero(p):
                    continue
                if m in out:
                    s = t.add(out[m], p)
                    if t.is_zero(s):
                        del out[m]
                    else:
                        out[m] = s
                else:
                    out[m] = p
        return LocalPoly(out, t)

    def shift_x(self, alpha, trunc=None):
        return self.swap_xy().shift_y(alpha, trunc).swap_xy()

    def swap_xy(self):
        return LocalPoly({(j, i): c for (i, j), c in self.terms.items()}, self.tower)

    def chart_a(self, alpha=None, trunc=None):
        """Substitute (x, y) -> (x, x*(y + alpha)): the first blow-up chart."""
        t = self.tower
        out = {}
        rows = {}
        zero_alpha = alpha is None or t.is_zero(alpha)
        for (i, j), c in self.terms.items():
            if zero_alpha:
                m = (i + j, j)
                if trunc is not None and i + 2 * j > trunc:
                    continue
                _accumulate(out, t, m, c)
                continue
            row = rows.get(j)
            if row is None:
                row = _binomial_alpha_row(t, alpha, j)
                rows[j] = row
            for k, bk in enumerate(row):
                if trunc is not None and i + j + k > trunc:
                    continue
                _accumulate(out, t, (i + j, k), t.mul(c, bk))
        return LocalPoly(out, t)

    def chart_b(self, trunc=None):
        """Substitute (x, y) -> (x*y, y): the second blow-up chart."""
        out = {}
        for (i, j), c in self.terms.items():
            if trunc is not None and 2 * i + j > trunc:
                continue
            out[(i, i + j)] = c
        return LocalPoly(out, self.tower)

    def divide_monomial_exact(self, mon):
        """Exact division by x^i y^j; raises if any term is not divisible."""
        di, dj = mon
        out = {}
        for (i, j), c in self.terms.items():
            if i < di or j < dj:
                raise ZeroPolynomial(f"not divisible by {monomial_text(mon)}")
            out[(i - di, j - dj)] = c
        return LocalPoly(out, self.tower)

    def embed_into(self, tower):
        if tower is self.tower:
            return self
        src = self.tower
        return LocalPoly(
            {m: tower.embed_from(src, c) for m, c in self.terms.items()}, tower
        )

    def map_coefficients(self, fn, tower=None):
        t = tower or self.tower
        out = {}
        for m, c in self.terms.items():
            v = fn(c)
            if not t.is_zero(v):
                out[m] = v
        return LocalPoly(out, t)

    # -- normalization -------------------------------------------------------------

    def leading_term(self, order):
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def monic(self, order):
        m, c = self.leading_term(order)
        return self.scale(self.tower.inv(c))

    def primitive_rational(self):
        """Scale a Q-polynomial to coprime integer coefficients, positive lead."""
        if self.tower is not QQ or not self.terms:
            return self
        from math import gcd

        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        factor = Fraction(den, num)
        lead = max(self.terms, key=LOCAL_DS.key)
        if self.terms[lead] < 0:
            factor = -factor
        return self.scale(factor)

    def sort_key(self, order=LOCAL_DS):
        t = self.tower
        return tuple(
            (order.key(m), t.sort_key(self.terms[m]))
            for m in order.sorted_desc(self.terms)
        )

    def __repr__(self):
        from .parse import poly_text

        return poly_text(self)


def _accumulate(out, tower, mon, val):
    if tower.is_zero(val):
        return
    if mon in out:
        s = tower.add(out[mon], val)
        if tower.is_zero(s):
            del out[mon]
        else:
            out[mon] = s
    else:
        out[mon] = val


def _binomial_alpha_row(tower, alpha, j):
    """Coefficients of (y + alpha)^j as a list indexed by the power of y."""
    row = [tower.one()]
    for _ in range(j):
        nxt = [tower.mul(row[0], alpha)]
        for k in range(1, len(row)):
            nxt.append(tower.add(row[k - 1], tower.mul(row[k], alpha)))
        nxt.append(tower.one())
        row = nxt
    return row


def jacobian(f):
    """The pair of formal partials (df/dx, df/dy)."""
    return f.derivative("x"), f.derivative("y")


def multiplicity(f):
    return f.multiplicity()


def tangent_cone(f):
    return f.tangent_cone()


# ---------------------------------------------------------------------------
# bivariate gcd (primitive PRS in y) and the squarefree test


def _y_slices(f):
    """Map j -> UniPoly in x collecting the terms x^i y^j."""
    t = f.tower
    slices = {}
    for (i, j), c in f.terms.items():
        slices.setdefault(j, {})[i] = c
    out = {}
    for j, coeffs in slices.items():
        n = max(coeffs) + 1
        out[j] = UniPoly([coeffs.get(i, t.zero()) for i in range(n)], t)
    return out


def _from_y_slices(slices, tower):
    terms = {}
    for j, up in slices.items():
        for i, c in enumerate(up.coeffs):
            if not tower.is_zero(c):
                terms[(i, j)] = c
    return LocalPoly(terms, tower)


def _content_y(f):
    """Gcd in K[x] of the y-slice coefficients."""
    t = f.tower
    g = UniPoly([], t)
    for up in _y_slices(f).values():
        g = up if g.is_zero() else g.gcd(up)
        if g.degree() == 0:
            return UniPoly([t.one()], t)
    return g


def _divide_by_x_poly(f, d):
    """Exact division of every y-slice by d(x)."""
    t = f.tower
    out = {}
    for j, up in _y_slices(f).items():
        q, r = up.divmod(d)
        if not r.is_zero():
            raise ZeroPolynomial("inexact content division")
        out[j] = q
    return _from_y_slices(out, t)


def _y_degree(f):
    return max((j for (_, j) in f.terms), default=-1)


def _y_lead(f):
    """Leading y-coefficient as a pure-x LocalPoly."""
    d = _y_degree(f)
    t = f.tower
    return LocalPoly({(i, 0): c for (i, j), c in f.terms.items() if j == d}, t)


def gcd_bivariate(f, g):
    """A gcd of two bivariate polynomials (primitive PRS), defined up to units."""
    t = f.tower
    if f.is_zero():
        return g
    if g.is_zero():
        return f
    cf, cg = _content_y(f), _content_y(g)
    cont = cf.gcd(cg)
    pf = _divide_by_x_poly(f, cf)
    pg = _divide_by_x_poly(g, cg)
    if _y_degree(pf) < _y_degree(pg):
        pf, pg = pg, pf
    while True:
        if _y_degree(pg) <= 0:
            prim = LocalPoly.constant(1, t)
            break
        r = pf
        while not r.is_zero() and _y_degree(r) >= _y_degree(pg):
            shift = _y_degree(r) - _y_degree(pg)
            r = r.mul(_y_lead(pg)).sub(pg.mul(_y_lead(r).mul_monomial((0, shift))))
        if r.is_zero():
            prim = _divide_by_x_poly(pg, _content_y(pg))
            break
        pf, pg = pg, _divide_by_x_poly(r, _content_y(r))
    cont_poly = LocalPoly(
        {(i, 0): c for i, c in enumerate(cont.coeffs) if not t.is_zero(c)}, t
    )
    return prim.mul(cont_poly)


def is_squarefree(f):
    """True iff f has no repeated factor (characteristic zero)."""
    if f.is_zero():
        return False
    g = gcd_bivariate(f, f.derivative("x"))
    g = gcd_bivariate(g, f.derivative("y"))
    return g.is_constant()
