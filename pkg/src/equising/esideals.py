"""The deformation ideals: cluster ideals, I^s, I^es_fix, I^es, Tjurina.

Every ideal here is the kernel of an exact rational linear system.  The
conditions at an infinitely near point q require prescribed vanishing
orders of the total transform; pulling each coefficient monomial of the
unknown germ through the chart chain turns them into rational rows.  For
the fixed equisingularity ideal the chain is carried over dual numbers:
each free non-root point contributes one first-order offset along its
exceptional divisor, satellites are pinned at the intersection of their
two divisors, and the offsets are eliminated from the solution space.

A monomial whose pullback order already exceeds every requirement needs
no row at all; the largest degree that still needs rows (the effective
cutoff) is far below the formal truncation bound, which keeps the
systems small.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .blowup import coordinate_pullbacks, resolve
from .errors import EngineError, InvalidTree, NonIsolated, NotApplicable, NotReduced
from .linsys import KernelSolver
from .newton import is_nnd, is_sqh, newton_diagram, newton_order
from .numberfield import restrict_scalars
from .poly import GLOBAL_DP, INFINITE, LOCAL_DS, LocalPoly, jacobian, monomial_degree
from .stdbasis import IdealPresentation, ideal_equal
from .errors import BasisNotMonomial


class ConditionIdeal(IdealPresentation):
    """An ideal obtained as a condition kernel, with its system metadata."""

    def __init__(self, gens, order, la_colength, trunc_degree, effective_degree):
        super().__init__(gens, order)
        self.la_colength = la_colength
        self.trunc_degree = trunc_degree
        self.effective_degree = effective_degree


def _column_priority(col):
    # offsets first so elimination projects them away; then monomials in
    # descending local significance
    if col[0] == "s":
        return (0, col[1], col[2])
    _, i, j = col
    return (1, i + j, j, i)


def _g_columns(cutoff):
    cols = [("g", i, j) for d in range(cutoff) for j in range(d + 1) for i in [d - j]]
    cols.sort(key=_column_priority)
    return cols


def _require(tree, virtual):
    pts = {p.pid: p for p in tree.essential_points()}
    if set(virtual) != set(pts):
        raise InvalidTree("virtual multiplicities must cover the essential points")
    for pid, v in virtual.items():
        if v < 1:
            raise InvalidTree(f"virtual multiplicity at q{pid} must be positive")
    return pts


def _epsilon_descent(tree, trunc):
    """Dual-number pullback of the germ along the chart chain.

    Returns {pid: (fhat, eps)} for essential points: fhat is the ordinary
    total transform of the germ, eps maps offset labels (pid, k) to the
    first-order coefficient polynomials produced by shifting the section
    of the free point pid along its exceptional divisor (k indexes the
    Q-basis of that point's tower).
    """
    data = {}

    def descend(point, fhat, eps):
        data[point.pid] = (fhat, eps)
        for child in tree.children(point.pid, essential_only=False):
            if not child.essential:
                continue
            tower = child.tower
            fh = fhat.embed_into(tower)
            ep = {key: p.embed_into(tower) for key, p in eps.items()}
            chart = child.chart
            if chart[0] == "A":
                fh = fh.chart_a(chart[1], trunc)
                ep = {k: p.chart_a(chart[1], trunc) for k, p in ep.items()}
            else:
                fh = fh.chart_b(trunc)
                ep = {k: p.chart_b(trunc) for k, p in ep.items()}
            if child.free:
                axis = next(iter(child.divisors))
                direction = "y" if axis == "x" else "x"
                df = fh.derivative(direction)
                for k, beta in enumerate(tower.basis()):
                    ep[("s", child.pid, k)] = df.scale(beta)
            descend(child, fh, ep)

    root = tree.points[0]
    descend(root, tree.germ, {})
    return data


def _condition_kernel(tree, virtual, offsets):
    """Solve the multiplicity conditions; returns generator data.

    The unknown germ is supported on monomials of degree < cutoff; all
    monomials of degree >= cutoff satisfy every condition outright.
    """
    pts = _require(tree, virtual)
    vmax = max(virtual.values())
    maxlevel = max(p.level for p in pts.values())
    trunc = vmax + maxlevel + 2
    pulls = coordinate_pullbacks(tree, trunc)
    mults = {}
    for pid, p in pts.items():
        px, py = pulls[pid]
        mults[pid] = (px.multiplicity(), py.multiplicity())
    cutoff = max(
        ceil(Fraction(virtual[pid], min(mults[pid]))) for pid in pts
    )
    eps_data = _epsilon_descent(tree, trunc) if offsets else None

    solver = KernelSolver(_column_priority)
    g_cols = _g_columns(cutoff)
    for pid in sorted(pts):
        point = pts[pid]
        need = virtual[pid]
        px, py = pulls[pid]
        a, b = mults[pid]
        rows = {}
        powx = [LocalPoly.constant(1, point.tower)]
        powy = [LocalPoly.constant(1, point.tower)]
        for _, i, j in g_cols:
            if i * a + j * b >= need:
                continue
            while len(powx) <= i:
                powx.append(powx[-1].mul(px, trunc=need - 1))
            while len(powy) <= j:
                powy.append(powy[-1].mul(py, trunc=need - 1))
            total = powx[i].mul(powy[j], trunc=need - 1)
            for mon, c in total.terms.items():
                rows.setdefault(mon, {})[("g", i, j)] = c
        if offsets:
            fhat, eps = eps_data[pid]
            if fhat.multiplicity() != point.mhat:
                raise EngineError(
                    f"total transform multiplicity at q{pid} is "
                    f"{fhat.multiplicity()}, expected {point.mhat}"
                )
            for key, p in eps.items():
                for mon, c in p.terms.items():
                    if monomial_degree(mon) < need:
                        rows.setdefault(mon, {})[key] = c
        for mon in sorted(rows):
            for rational_row in restrict_scalars(rows[mon], point.tower):
                if rational_row:
                    solver.add_row(rational_row)
    kernel = solver.kernel_on(g_cols)
    rank_g = sum(1 for c in solver.pivot_columns() if c[0] == "g")
    gens = []
    for vec in kernel:
        terms = {(i, j): q for (_, i, j), q in vec.items()}
        gens.append(LocalPoly(terms, tree.germ.tower).primitive_rational())
    for k in range(cutoff + 1):
        gens.append(LocalPoly.monomial((cutoff - k, k), tree.germ.tower))
    return _prune_monomial_multiples(gens), rank_g, cutoff


def _prune_monomial_multiples(gens):
    """Drop monomial generators divisible by another monomial generator."""
    monomials = sorted(
        {next(iter(g.terms)) for g in gens if g.is_monomial()},
        key=lambda m: (monomial_degree(m), m),
    )
    keep = []
    for m in monomials:
        if not any(k[0] <= m[0] and k[1] <= m[1] for k in keep):
            keep.append(m)
    kept = set(keep)
    out = []
    for g in gens:
        if g.is_monomial() and next(iter(g.terms)) not in kept:
            continue
        out.append(g)
        if g.is_monomial():
            kept.discard(next(iter(g.terms)))  # emit each kept monomial once
    return out


def cluster_ideal(tree, virtual):
    """The germs whose total transforms meet the virtual multiplicities.

    ``virtual`` maps essential point pid -> required total-transform
    multiplicity.  Sound truncation: every monomial of degree above the
    maximal virtual multiplicity satisfies all conditions.
    """
    gens, rank, cutoff = _condition_kernel(tree, virtual, offsets=False)
    return ConditionIdeal(
        gens,
        LOCAL_DS,
        la_colength=rank,
        trunc_degree=max(virtual.values()),
        effective_degree=cutoff,
    )


def topological_singularity_ideal(f, tree=None):
    """I^s: total-transform multiplicity at least that of the curve.

    The linear-algebra colength is checked against the degree formula
    sum m_q (m_q + 1) / 2; disagreement is an engine bug, not data.
    """
    if tree is None:
        tree = resolve(f)
    if tree.is_empty():
        raise NotApplicable("smooth germ: the topological singularity ideal is (1)")
    virtual = {p.pid: p.mhat for p in tree.essential_points()}
    ideal = cluster_ideal(tree, virtual)
    expected = degree_formula(tree)
    if ideal.la_colength != expected:
        raise EngineError(
            f"deg Z^s mismatch: kernel rank {ideal.la_colength}, "
            f"degree formula {expected}"
        )
    return ideal


def degree_formula(tree):
    """sum over essential classes of degree * m (m + 1) / 2."""
    return sum(
        p.class_degree * p.m * (p.m + 1) // 2 for p in tree.essential_points()
    )


def tjurina_ideals(f):
    """The Tjurina ideal <f, j(f)> and fixed Tjurina ideal <f, m j(f)>."""
    fx, fy = jacobian(f)
    iea = IdealPresentation([f, fx, fy], LOCAL_DS)
    if iea.colength() is INFINITE:
        raise NonIsolated("Tjurina ideal has infinite colength")
    x = LocalPoly.monomial((1, 0), f.tower)
    y = LocalPoly.monomial((0, 1), f.tower)
    iea_fix = IdealPresentation(
        [f, x.mul(fx), y.mul(fx), x.mul(fy), y.mul(fy)], LOCAL_DS
    )
    if iea.colength() + 2 != iea_fix.colength():
        raise EngineError(
            "fixed Tjurina colength is not the Tjurina colength plus two"
        )
    return iea, iea_fix


def es_fix_ideal(f, tree=None, iea_fix=None):
    """I^es_fix: first-order equisingular deformations along the trivial section.

    Sections through free points carry one offset unknown along the
    exceptional divisor; satellite sections are forced.  The offsets are
    eliminated, leaving the projection onto the germ coefficients.
    """
    if tree is None:
        tree = resolve(f)
    if tree.is_empty():
        raise NotApplicable("smooth germ")
    virtual = {p.pid: p.mhat for p in tree.essential_points()}
    gens, rank, cutoff = _condition_kernel(tree, virtual, offsets=True)
    if iea_fix is None:
        _, iea_fix = tjurina_ideals(tree.germ)
    formal = max(
        iea_fix.highest_corner_degree() + 1, max(virtual.values())
    )
    return ConditionIdeal(
        gens,
        LOCAL_DS,
        la_colength=rank,
        trunc_degree=formal,
        effective_degree=cutoff,
    )


def es_ideal(f, ies_fix=None, tree=None):
    """I^es = j(f) + I^es_fix."""
    if ies_fix is None:
        ies_fix = es_fix_ideal(f, tree)
    fx, fy = jacobian(f)
    return IdealPresentation([fx, fy] + list(ies_fix.gens), LOCAL_DS)


@dataclass
class DeformationIdeals:
    """All five ideals of a singular reduced germ, sharing one resolution."""

    germ: LocalPoly
    tree: object
    iea: IdealPresentation
    iea_fix: IdealPresentation
    i_s: ConditionIdeal
    ies_fix: ConditionIdeal
    ies: IdealPresentation

    @property
    def tau(self):
        return self.iea.colength()

    @property
    def tau_fix(self):
        return self.iea_fix.colength()

    @property
    def tau_s(self):
        return self.i_s.colength()

    @property
    def tau_es(self):
        return self.ies.colength()

    @property
    def tau_es_fix(self):
        return self.ies_fix.colength()


def deformation_ideals(f, tree=None):
    if tree is None:
        tree = resolve(f)
    if tree.is_empty():
        raise NotApplicable("smooth germ has trivial deformation ideals")
    iea, iea_fix = tjurina_ideals(f)
    i_s = topological_singularity_ideal(f, tree)
    ies_fix = es_fix_ideal(f, tree, iea_fix)
    ies = es_ideal(f, ies_fix)
    return DeformationIdeals(
        germ=f, tree=tree, iea=iea, iea_fix=iea_fix,
        i_s=i_s, ies_fix=ies_fix, ies=ies,
    )


# ---------------------------------------------------------------------------
# the Newton-order route for semiquasihomogeneous / nondegenerate germs


def _weight_order_fn(f):
    """Newton order as a function on monomials, via SQH weights or the diagram."""
    sqh = is_sqh(f)
    if sqh is not None:
        w1, w2, d = sqh
        return lambda mon: Fraction(w1 * mon[0] + w2 * mon[1], d), ("sqh", sqh)
    if is_nnd(f):
        diagram = newton_diagram(f)
        return lambda mon: newton_order(mon, diagram), ("nnd", diagram)
    raise NotApplicable("germ is neither semiquasihomogeneous nor Newton nondegenerate")


def _minimal_order_monomials(order_fn):
    """Minimal generators of the monomial ideal of Newton order >= 1."""
    out = []
    b = 0
    prev_a = None
    while True:
        a = 0
        while order_fn((a, b)) < 1:
            a += 1
        if prev_a is None or a < prev_a:
            out.append((a, b))
            prev_a = a
        if a == 0:
            return out
        b += 1


def es_ideal_newton(f):
    """<j(f), monomials of Newton order >= 1>; the SQH/NND description."""
    order_fn, _ = _weight_order_fn(f)
    fx, fy = jacobian(f)
    mons = [LocalPoly.monomial(m, f.tower) for m in _minimal_order_monomials(order_fn)]
    return IdealPresentation([fx, fy] + mons, LOCAL_DS)


def es_basis_newton(f, ideals=None):
    """A monomial basis of I^es / <f, j(f)> with all orders >= 1.

    Collects the monomials of order >= 1 up to the highest-corner degree
    of the Tjurina ideal, reduces them under the global degree ordering
    (which prefers higher-order representatives), and selects an
    independent subset in the local quotient.
    """
    order_fn, _ = _weight_order_fn(f)
    if ideals is None:
        ideals = deformation_ideals(f)
    tj = ideals.iea
    quotient_dim = tj.colength() - ideals.tau_es
    d = tj.highest_corner_degree()
    candidates = [
        (i, j)
        for s in range(1, d + 1)
        for i in range(s + 1)
        for j in [s - i]
        if order_fn((i, j)) >= 1
    ]
    global_tj = IdealPresentation(list(tj.std()), GLOBAL_DP)
    reduced = []
    seen = set()
    for mon in sorted(candidates, key=GLOBAL_DP.key):
        nf = global_tj.normal_form(LocalPoly.monomial(mon, f.tower))
        if nf.is_zero():
            continue
        nf = nf.monic(GLOBAL_DP).primitive_rational()
        key = tuple(sorted(nf.terms.items()))
        if key in seen:
            continue
        seen.add(key)
        reduced.append(nf)
    # keep an independent set in the local quotient O / <f, j(f)>
    basis = []
    coord_solver = KernelSolver(lambda c: c)
    for p in reduced:
        rep = tj.normal_form(p)
        if rep.is_zero():
            continue
        row = {m: q for m, q in rep.terms.items()}
        if coord_solver.add_row(row):
            basis.append(p)
    if len(basis) != quotient_dim:
        raise EngineError(
            f"Newton-order basis has {len(basis)} elements, expected {quotient_dim}"
        )
    bad = [p for p in basis if not p.is_monomial()]
    if bad:
        raise BasisNotMonomial(
            "global reduction produced a non-monomial representative"
        )
    for p in basis:
        if order_fn(next(iter(p.terms))) < 1:
            raise EngineError("basis element below the Newton diagram")
    return basis
