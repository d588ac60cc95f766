"""Standard bases in the local ring and Groebner bases in the global ring.

The reduction engine is Mora's normal form with ecart-minimal reducer
selection (ties broken by list position); under a global ordering the
same loop degenerates to ordinary polynomial division.  For ideals of
finite colength, normal forms are made canonical by a staircase table:
every monomial of the quotient support gets one frozen representative,
so printed bases and remainders are deterministic functions of the ideal
and the ordering alone.
"""

from __future__ import annotations

from .errors import InfiniteColength, NonIsolated, ZeroPolynomial
from .poly import (
    GLOBAL_DP,
    INFINITE,
    LOCAL_DS,
    LocalPoly,
    jacobian,
    monomial_degree,
    monomial_divides,
    monomial_div,
)


def _ecart(poly, lm, order):
    if not order.is_local:
        return 0
    return poly.degree() - monomial_degree(lm)


class _Reducer:
    __slots__ = ("lm", "lc", "poly", "ecart", "index")

    def __init__(self, poly, order, index):
        self.lm, self.lc = poly.leading_term(order)
        self.poly = poly
        self.ecart = _ecart(poly, self.lm, order)
        self.index = index


def _normalize(h, order):
    """Unit-scale h: coprime integers over Q, monic over a proper tower."""
    if h.is_zero():
        return h
    if h.tower.is_rational():
        return h.primitive_rational()
    return h.monic(order)


def mora_normal_form(h, basis, order, trunc=None):
    """Weak normal form of ``h`` against ``basis``.

    The result r satisfies u*h = r modulo the ideal for a unit u, and the
    leading monomial of r is divisible by no basis leading monomial.
    With ``basis`` a standard basis, r = 0 iff h is in the ideal.  Over Q
    the reduction cross-multiplies and strips integer content, avoiding
    fraction blowup.
    """
    reducers = [_Reducer(g, order, i) for i, g in enumerate(basis)]
    rational = h.tower.is_rational()
    if trunc is not None:
        h = h.truncate(trunc)
    while not h.is_zero():
        lm, lc = h.leading_term(order)
        best = None
        for r in reducers:
            if monomial_divides(r.lm, lm):
                if best is None or (r.ecart, r.index) < (best.ecart, best.index):
                    best = r
        if best is None:
            return h
        if order.is_local and best.ecart > _ecart(h, lm, order):
            reducers.append(_Reducer(h, order, len(reducers)))
        if rational:
            h = h.scale(best.lc).sub(best.poly.mul_monomial(monomial_div(lm, best.lm), lc))
        else:
            h = h.sub(
                best.poly.mul_monomial(
                    monomial_div(lm, best.lm), h.tower.div(lc, best.lc)
                )
            )
        if trunc is not None:
            h = h.truncate(trunc)
        if rational and not h.is_zero():
            h = h.primitive_rational()
    return h


def _spoly_scaled(f, lmf, g, lmg, order):
    """Cross-multiplied s-polynomial (no division by leading coefficients)."""
    lcm = (max(lmf[0], lmg[0]), max(lmf[1], lmg[1]))
    lcf = f.terms[lmf]
    lcg = g.terms[lmg]
    return f.mul_monomial(monomial_div(lcm, lmf), lcg).sub(
        g.mul_monomial(monomial_div(lcm, lmg), lcf)
    )


def standard_basis(gens, order, trunc=None):
    """Monic standard basis; deterministic for a fixed generator order.

    With ``trunc`` set (local orderings only), the computation happens
    modulo m^(trunc+1): terms of degree > trunc are dropped throughout.
    The result is a standard basis of I + m^(trunc+1), whose leading
    ideal agrees with that of I in all degrees <= trunc.
    """
    basis = []
    for g in gens:
        if trunc is not None:
            g = g.truncate(trunc)
        if not g.is_zero():
            basis.append(_normalize(g, order))
    lms = [b.leading_term(order)[0] for b in basis]
    if trunc is not None:
        # the generators of m^(trunc+1), needed so the staircase closes
        for k in range(trunc + 2):
            mon = (trunc + 1 - k, k)
            if not any(monomial_divides(lm, mon) for lm in lms):
                basis.append(LocalPoly.monomial(mon, basis[0].tower))
                lms.append(mon)
    import heapq

    def pair_entry(i, j):
        lcm = (max(lms[i][0], lms[j][0]), max(lms[i][1], lms[j][1]))
        return (monomial_degree(lcm), order.key(lcm), i, j)

    pairs = [pair_entry(i, j) for j in range(len(basis)) for i in range(j)]
    heapq.heapify(pairs)
    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        a, b = lms[i], lms[j]
        if a[0] + b[0] == max(a[0], b[0]) and a[1] + b[1] == max(a[1], b[1]):
            continue  # product criterion: coprime leading monomials
        s = _spoly_scaled(basis[i], a, basis[j], b, order)
        if trunc is not None:
            s = s.truncate(trunc)
        if s.is_zero():
            continue
        r = mora_normal_form(s, basis, order, trunc)
        if r.is_zero():
            continue
        r = _normalize(r, order)
        basis.append(r)
        lms.append(r.leading_term(order)[0])
        k = len(basis) - 1
        for i2 in range(k):
            heapq.heappush(pairs, pair_entry(i2, k))
    return [b.monic(order) for b in basis]


def _minimal_leads(lms):
    out = []
    for m in sorted(set(lms), key=lambda m: (monomial_degree(m), m)):
        if not any(monomial_divides(o, m) for o in out):
            out.append(m)
    return out


def _staircase_profile(lead_monomials):
    """For each x-exponent i below the staircase width, the minimal j in L."""
    xs = [i for (i, j) in lead_monomials if j == 0]
    ys = [j for (i, j) in lead_monomials if i == 0]
    if not xs or not ys:
        return None
    width = min(xs)
    profile = []
    for i in range(width):
        j = min(jj for (ii, jj) in lead_monomials if ii <= i)
        profile.append(j)
    return profile


class IdealPresentation:
    """An ideal given by generators with a fixed monomial ordering.

    The computed standard basis and the staircase normal-form table are
    cached on the presentation; a computed presentation is immutable and
    safe to share.
    """

    def __init__(self, gens, order=LOCAL_DS):
        gens = [g for g in gens if g is not None and not g.is_zero()]
        if not gens:
            raise ZeroPolynomial("ideal presentation needs a nonzero generator")
        self.gens = list(gens)
        self.order = order
        self.tower = gens[0].tower
        self._std = None
        self._nf_table = None
        self._reduced = None

    # -- bases ---------------------------------------------------------------

    def std(self):
        if self._std is None:
            self._std = self._compute_std()
        return self._std

    def _compute_std(self):
        if not self.order.is_local:
            return standard_basis(self.gens, self.order)
        # Work modulo m^(D+1) and accept once the staircase closes strictly
        # below D; then L(I + m^(D+1)) = L(I) and, the highest corner lying
        # below D, also I + m^(D+1) = I.  Truncation keeps the tails short.
        bound = max(4, min(g.multiplicity() for g in self.gens) * 2 + 2,
                    max(g.degree() for g in self.gens) + 4)
        while bound <= 64:
            basis = standard_basis(self.gens, self.order, trunc=bound)
            lms = [b.leading_term(self.order)[0] for b in basis]
            profile = _staircase_profile(lms)
            maxdeg = None
            if profile is not None:
                maxdeg = max(
                    (i + j for i, jmax in enumerate(profile) for j in range(jmax)),
                    default=-1,
                )
                if maxdeg < bound:
                    return basis
            # the staircase reaches the cutoff: step past the observed extent
            bound = max(bound, maxdeg if maxdeg is not None else bound) + 4
        return standard_basis(self.gens, self.order)

    def leading_monomials(self):
        return [g.leading_term(self.order)[0] for g in self.std()]

    def minimal_leads(self):
        return _minimal_leads(self.leading_monomials())

    # -- staircase data -------------------------------------------------------

    def _profile(self):
        return _staircase_profile(self.leading_monomials())

    def colength(self):
        profile = self._profile()
        if profile is None:
            return INFINITE
        return sum(profile)

    def staircase(self):
        profile = self._profile()
        if profile is None:
            raise InfiniteColength("quotient is not finite dimensional")
        mons = [(i, j) for i, jmax in enumerate(profile) for j in range(jmax)]
        return self.order.sorted_desc(mons)

    def highest_corner(self):
        if not self.order.is_local:
            raise InfiniteColength("highest corner needs a local ordering")
        stair = self.staircase()
        if not stair:
            # the ideal is the whole ring; no monomial lies outside it
            raise InfiniteColength("unit ideal has no highest corner")
        return min(stair, key=self.order.key)

    def highest_corner_degree(self):
        stair = self.staircase()
        if not stair:
            return -1
        return max(monomial_degree(m) for m in stair)

    # -- canonical normal forms ---------------------------------------------

    def _table(self):
        """Monomial -> canonical staircase representative (lazy, memoized)."""
        if self._nf_table is None:
            if self.colength() is INFINITE:
                raise InfiniteColength("canonical forms need finite colength")
            self._nf_table = {}
        return self._nf_table

    def _nf_monomial(self, mon, hc_deg):
        table = self._table()
        cached = table.get(mon)
        if cached is not None:
            return cached
        order = self.order
        std = self.std()
        lms = self.leading_monomials()
        stack = [mon]
        while stack:
            m = stack[-1]
            if m in table:
                stack.pop()
                continue
            if order.is_local and monomial_degree(m) > hc_deg:
                table[m] = LocalPoly.zero(self.tower)
                stack.pop()
                continue
            reducer = None
            for i, lm in enumerate(lms):
                if monomial_divides(lm, m):
                    reducer = std[i]
                    break
            if reducer is None:
                table[m] = LocalPoly.monomial(m, self.tower)
                stack.pop()
                continue
            rlm = reducer.leading_term(order)[0]
            rest = LocalPoly.monomial(m, self.tower).sub(
                reducer.mul_monomial(monomial_div(m, rlm))
            )
            missing = [mm for mm in rest.terms if mm not in table]
            if missing:
                stack.extend(missing)
                continue
            acc = LocalPoly.zero(self.tower)
            for mm, c in rest.terms.items():
                acc = acc.add(table[mm].scale(c))
            table[m] = acc
            stack.pop()
        return table[mon]

    def normal_form(self, g):
        """Canonical normal form when the colength is finite, else Mora."""
        g = g.embed_into(self.tower) if g.tower is not self.tower else g
        if self.colength() is INFINITE:
            return mora_normal_form(g, self.std(), self.order)
        hc_deg = self.highest_corner_degree()
        acc = LocalPoly.zero(self.tower)
        for mon, c in g.terms.items():
            acc = acc.add(self._nf_monomial(mon, hc_deg).scale(c))
        return acc

    def contains(self, g):
        return self.normal_form(g).is_zero()

    def minimal_std(self):
        """Minimal standard basis: first element per minimal leading monomial.

        Unlike ``reduced_std`` the tails are kept as computed, so input
        generators that already have a minimal lead survive verbatim.
        """
        std = self.std()
        lms = [g.leading_term(self.order)[0] for g in std]
        minimal = set(_minimal_leads(lms))
        out, seen = [], set()
        for g, lm in zip(std, lms):
            if lm in minimal and lm not in seen:
                seen.add(lm)
                out.append(
                    g.primitive_rational() if self.tower.is_rational() else g
                )
        return out

    def reduced_std(self):
        """Canonical reduced standard basis (finite colength).

        One element per minimal generator of the leading ideal, with the
        tail the canonical staircase representative, scaled to coprime
        integer coefficients over Q.
        """
        if self._reduced is None:
            hc_deg = self.highest_corner_degree()
            out = []
            for m in self.order.sorted_desc(self.minimal_leads()):
                elt = LocalPoly.monomial(m, self.tower).sub(
                    self._nf_monomial(m, hc_deg)
                )
                out.append(elt.primitive_rational() if self.tower.is_rational() else elt)
            self._reduced = out
        return self._reduced

    def quotient_monomials(self):
        return self.staircase()


def ideal_equal(a, b):
    """Exact ideal equality via two-sided normal-form reduction.

    For finite colength the canonical reduced bases are compared; they
    are functions of the ideal and ordering alone.
    """
    if a.order.kind != b.order.kind:
        raise ValueError("ideal comparison requires the same ordering")
    if a.colength() is not INFINITE and b.colength() is not INFINITE:
        if a.colength() != b.colength():
            return False
        return a.reduced_std() == b.reduced_std()
    return all(b.contains(g) for g in a.gens) and all(
        a.contains(g) for g in b.gens
    )


def ideal_sum(a, b, order=None):
    return IdealPresentation(list(a.gens) + list(b.gens), order or a.order)


def milnor_number(f):
    """Colength of the Jacobian ideal; NonIsolated if infinite."""
    fx, fy = jacobian(f)
    if fx.is_zero() and fy.is_zero():
        raise NonIsolated("zero Jacobian")
    ideal = IdealPresentation([g for g in (fx, fy) if not g.is_zero()], LOCAL_DS)
    n = ideal.colength()
    if n is INFINITE:
        raise NonIsolated("Milnor number is infinite")
    return n


def tjurina_number(f):
    fx, fy = jacobian(f)
    gens = [g for g in (f, fx, fy) if not g.is_zero()]
    ideal = IdealPresentation(gens, LOCAL_DS)
    n = ideal.colength()
    if n is INFINITE:
        raise NonIsolated("Tjurina number is infinite")
    return n


def global_reduce_basis(polys, ideal_gens):
    """Normal forms under the global degree ordering, the ring-switch trick.

    Reduction under dp prefers higher-order representatives; used to turn
    a spanning set of a quotient into representatives of maximal order.
    """
    ideal = IdealPresentation(ideal_gens, GLOBAL_DP)
    out = []
    for p in polys:
        out.append(ideal.normal_form(p))
    return out
