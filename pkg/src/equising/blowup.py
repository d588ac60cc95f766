"""Iterated blow-up resolution of reduced plane curve germs.

A point of the tree is a conjugacy class of infinitely near points: the
chart translation at an irrational direction extends the coefficient
tower, and the class degree (tower degree over Q) weights every count
that ranges over actual points.  Local coordinates are chosen at every
point so the exceptional divisors through it are coordinate axes; the
two standard charts and the translation to the current point constitute
the chart chain recorded on each point.

The recursion blows up exactly the points where the reduced total
transform fails to be a node; transversal crossings of the strict
transform with a single exceptional divisor are retained as terminal
leaf markers so the proximity equality stays checkable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import EngineError, InvalidTree, NotLocal, NotReduced, NotReducedSuspected
from .factorize import factor_univariate
from .numberfield import UniPoly, extend_tower
from .parse import poly_text
from .poly import LocalPoly, is_squarefree

DEPTH_CAP = 64


@dataclass
class NearPoint:
    """One conjugacy class of infinitely near points."""

    pid: int
    level: int
    parent: int | None
    tower: object
    chart: tuple | None  # ("A", alpha) or ("B", None); None at the root
    strict: LocalPoly
    divisors: dict  # axis "x"/"y" -> pid of the ancestor whose divisor it is
    m: int
    essential: bool
    mhat: int = 0

    @property
    def proximate_to(self):
        return sorted(set(self.divisors.values()))

    @property
    def satellite(self):
        return len(self.divisors) == 2

    @property
    def free(self):
        return self.parent is not None and len(self.divisors) == 1

    @property
    def mtilde(self):
        return self.m + len(self.divisors)

    @property
    def class_degree(self):
        return self.tower.absolute_degree()

    @property
    def name(self):
        return f"q{self.pid}"


@dataclass
class EssentialTree:
    """The essential tree plus terminal leaf markers, in creation order."""

    germ: LocalPoly
    points: list = field(default_factory=list)

    def essential_points(self):
        return [p for p in self.points if p.essential]

    def markers(self):
        return [p for p in self.points if not p.essential]

    def point(self, pid):
        return self.points[pid]

    def children(self, pid, essential_only=True):
        return [
            p
            for p in self.points
            if p.parent == pid and (p.essential or not essential_only)
        ]

    def is_empty(self):
        return not self.points

    def multiplicity_vector(self):
        return [p.m for p in self.essential_points()]

    def mhat_vector(self):
        return [p.mhat for p in self.essential_points()]

    def chart_chain(self, pid):
        """Chart steps from the root down to the point."""
        steps = []
        p = self.points[pid]
        while p.parent is not None:
            steps.append((p.chart, p.tower))
            p = self.points[p.parent]
        steps.reverse()
        return steps


def _tangent_direction_poly(strict, m):
    """The tangent cone evaluated at (1, t): roots are chart-A directions."""
    tc = strict.tangent_cone()
    tower = strict.tower
    coeffs = [tower.zero()] * (m + 1)
    for (i, j), c in tc.terms.items():
        coeffs[j] = c
    return UniPoly(coeffs, tower), min(i for (i, j) in tc.terms) >= 1


def _is_node(m, divisors, strict):
    """Node test for the reduced total transform at a non-root point."""
    if m + len(divisors) != 2:
        return False
    # exactly one divisor and a smooth strict transform; node iff transversal
    tc = strict.tangent_cone()
    a = tc.coefficient((1, 0))
    b = tc.coefficient((0, 1))
    tower = strict.tower
    axis = next(iter(divisors))
    if axis == "x":
        return not tower.is_zero(b)
    return not tower.is_zero(a)


def resolve(f):
    """The essential tree of the minimal good embedded resolution.

    Smooth germs give the empty tree.  Raises NotLocal if f does not
    vanish at the origin, NotReduced if f has a repeated factor.
    """
    if f.is_zero():
        raise NotReduced("the zero polynomial does not define a curve germ")
    if not f.tower.is_zero(f.eval_origin()):
        raise NotLocal("the germ must vanish at the origin")
    if not is_squarefree(f):
        raise NotReduced("input has a repeated factor")
    tree = EssentialTree(germ=f)
    if f.multiplicity() < 2:
        return tree
    root = NearPoint(
        pid=0, level=0, parent=None, tower=f.tower, chart=None,
        strict=f, divisors={}, m=f.multiplicity(), essential=True,
    )
    tree.points.append(root)
    _blow_up(tree, root)
    _fill_mhat(tree)
    problems = validate_tree(tree)
    if problems:
        raise EngineError("; ".join(problems))
    return tree


def _blow_up(tree, q):
    if q.level >= DEPTH_CAP:
        raise NotReducedSuspected(
            f"blow-up depth exceeded {DEPTH_CAP}; input is likely non-reduced"
        )
    tower = q.tower
    phi, covers_chart_b = _tangent_direction_poly(q.strict, q.m)
    children = []
    if phi.degree() >= 1:
        _, factors = factor_univariate(phi)
        for p, _mult in factors:
            if p.degree() == 1:
                child_tower, alpha = tower, tower.neg(p.coeffs[0])
            else:
                child_tower, alpha = extend_tower(tower, p)
            strict = q.strict.embed_into(child_tower).chart_a(alpha)
            strict = strict.divide_monomial_exact((q.m, 0))
            divisors = {"x": q.pid}
            if child_tower.is_zero(alpha) and "y" in q.divisors:
                divisors["y"] = q.divisors["y"]
            children.append((child_tower, ("A", alpha), strict, divisors))
    if covers_chart_b:
        strict = q.strict.chart_b().divide_monomial_exact((0, q.m))
        divisors = {"y": q.pid}
        if "x" in q.divisors:
            divisors["x"] = q.divisors["x"]
        children.append((tower, ("B", None), strict, divisors))
    for child_tower, chart, strict, divisors in children:
        m = strict.multiplicity()
        if m < 1:
            raise EngineError("child point lost the strict transform")
        node = _is_node(m, divisors, strict)
        point = NearPoint(
            pid=len(tree.points), level=q.level + 1, parent=q.pid,
            tower=child_tower, chart=chart, strict=strict,
            divisors=divisors, m=m, essential=not node,
        )
        tree.points.append(point)
        if point.essential:
            _blow_up(tree, point)


def _fill_mhat(tree):
    for p in tree.points:
        p.mhat = p.m + sum(tree.points[a].mhat for a in set(p.divisors.values()))


def total_transform_multiplicities(tree):
    """Map point name -> total transform multiplicity (recomputed)."""
    out = {}
    for p in tree.points:
        out[p.name] = p.m + sum(
            out[tree.points[a].name] for a in set(p.divisors.values())
        )
    return out


def pullback_total(tree, pid, poly, trunc=None):
    """Total transform of a germ at a point: the full chart-chain pullback."""
    g = poly
    for chart, tower in tree.chart_chain(pid):
        g = g.embed_into(tower)
        if chart[0] == "A":
            g = g.chart_a(chart[1], trunc)
        else:
            g = g.chart_b(trunc)
    return g


def coordinate_pullbacks(tree, trunc):
    """Pullbacks of x and y at every point, truncated at total degree trunc."""
    out = {}
    x = LocalPoly.monomial((1, 0), tree.germ.tower)
    y = LocalPoly.monomial((0, 1), tree.germ.tower)

    def descend(pid, px, py):
        out[pid] = (px, py)
        for child in tree.children(pid, essential_only=False):
            cx, cy = px.embed_into(child.tower), py.embed_into(child.tower)
            chart = child.chart
            if chart[0] == "A":
                cx = cx.chart_a(chart[1], trunc)
                cy = cy.chart_a(chart[1], trunc)
            else:
                cx, cy = cx.chart_b(trunc), cy.chart_b(trunc)
            descend(child.pid, cx, cy)

    if tree.points:
        descend(0, x, y)
    return out


def validate_tree(tree):
    """All structural invariants; returns a list of violations."""
    problems = []
    for p in tree.points:
        if p.parent is not None:
            if p.parent not in set(p.divisors.values()):
                problems.append(f"{p.name}: parent not among proximities")
            if len(p.divisors) not in (1, 2):
                problems.append(f"{p.name}: {len(p.divisors)} proximities")
            gap = p.mtilde - p.m
            if p.essential and gap != (2 if p.satellite else 1):
                problems.append(f"{p.name}: reduced-total gap {gap} vs satellite flag")
        if not p.essential and len(p.divisors) == 2:
            problems.append(f"{p.name}: satellite marker (satellites are essential)")
    # weighted proximity equality over essential points and markers together
    for p in tree.points:
        if not p.essential:
            continue
        total = 0
        for q in tree.points:
            if p.pid in set(q.divisors.values()):
                total += q.class_degree * q.m
        if total != p.class_degree * p.m:
            problems.append(
                f"{p.name}: proximity equality {p.class_degree * p.m} != {total}"
            )
    # total-transform recursion against an independent recomputation
    recomputed = total_transform_multiplicities(tree)
    for p in tree.points:
        if recomputed[p.name] != p.mhat:
            problems.append(f"{p.name}: mhat mismatch")
    return problems


def free_vertex_count(tree):
    """Weighted count of free essential non-root vertices."""
    return sum(
        p.class_degree
        for p in tree.essential_points()
        if p.parent is not None and p.free
    )


def satellite_count(tree):
    return sum(
        p.class_degree
        for p in tree.essential_points()
        if p.parent is not None and p.satellite
    )


@dataclass(frozen=True)
class ClusterGraph:
    """Tree edges, proximity relation, multiplicity vector, canonical code."""

    edges: tuple
    proximities: tuple
    multiplicities: tuple
    encoding: str


def cluster_graph(tree):
    """Canonical cluster graph; equal encodings iff isomorphic clusters."""
    pts = {p.pid: p for p in tree.essential_points()}

    def encode(pid):
        p = pts[pid]
        label = str(p.m)
        if p.parent is not None and p.satellite:
            target = [a for a in p.proximate_to if a != p.parent][0]
            label += f"s{p.level - tree.points[target].level}"
        kid_codes = []
        for child in tree.children(pid):
            rel = child.class_degree // p.class_degree
            kid_codes.extend([encode(child.pid)] * rel)
        return "(" + label + "".join(sorted(kid_codes)) + ")"

    if tree.is_empty():
        return ClusterGraph((), (), (), "()")
    edges = tuple(
        (p.parent, p.pid) for p in tree.essential_points() if p.parent is not None
    )
    prox = tuple((p.pid, tuple(p.proximate_to)) for p in tree.essential_points())
    return ClusterGraph(
        edges, prox, tuple(tree.multiplicity_vector()), encode(0)
    )


# ---------------------------------------------------------------------------
# export


def tree_to_json(tree):
    points = []
    for p in tree.points:
        points.append(
            {
                "id": p.name,
                "level": p.level,
                "parent": None if p.parent is None else tree.points[p.parent].name,
                "m": p.m,
                "mhat": p.mhat,
                "mtilde": p.mtilde,
                "proximate_to": [tree.points[a].name for a in p.proximate_to],
                "kind": "root"
                if p.parent is None
                else ("satellite" if p.satellite else "free"),
                "essential": p.essential,
                "class_degree": p.class_degree,
                "tower": [
                    {"generator": name, "minimal_polynomial": mp.text()}
                    for name, mp in p.tower.levels()
                ],
                "strict_transform": poly_text(p.strict),
            }
        )
    return {
        "germ": poly_text(tree.germ),
        "points": points,
        "multiplicities": tree.multiplicity_vector(),
        "total_multiplicities": tree.mhat_vector(),
        "free_vertices": free_vertex_count(tree),
        "satellites": satellite_count(tree),
        "encoding": cluster_graph(tree).encoding,
    }


def tree_to_dot(tree):
    lines = ["digraph cluster_graph {", "  rankdir=TB;"]
    for p in tree.points:
        kind = "root" if p.parent is None else ("satellite" if p.satellite else "free")
        label = f"{p.name} : m={p.m}, mhat={p.mhat}, level={p.level}, {kind}"
        shape = "ellipse" if p.essential else "box"
        lines.append(f'  {p.name} [label="{label}", shape={shape}];')
    for p in tree.points:
        if p.parent is None:
            continue
        lines.append(f"  {tree.points[p.parent].name} -> {p.name};")
        for a in p.proximate_to:
            if a != p.parent:
                lines.append(
                    f"  {tree.points[a].name} -> {p.name} [style=dashed];"
                )
    lines.append("}")
    return "\n".join(lines) + "\n"
