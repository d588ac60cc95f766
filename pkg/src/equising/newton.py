"""Newton diagrams, Newton order, and the SQH/NND classifiers.

The diagram of a convenient germ is the lower-left convex hull of its
support, each face stored as an affine functional n(a, b) = b + lam*a - c
normalized to vanish on the face.  A monomial's Newton order is the
factor by which the diagram must be scaled to reach it, so face points
have order exactly 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DegenerateDiagram, NotConvenient, NotReduced
from .numberfield import UniPoly
from .poly import INFINITE, LocalPoly, is_squarefree
from .stdbasis import IdealPresentation


@dataclass(frozen=True)
class NewtonFace:
    """n(a, b) = b + lam*a - c, zero exactly on the face segment."""

    lam: Fraction
    c: Fraction
    start: tuple
    end: tuple

    def value(self, mon):
        a, b = mon
        return b + self.lam * a - self.c


@dataclass(frozen=True)
class NewtonDiagram:
    faces: tuple
    vertices: tuple


def _lower_hull(support):
    """Vertices of the lower-left hull, restricted to negative slopes."""
    best = {}
    for a, b in support:
        if a not in best or b < best[a]:
            best[a] = b
    pts = sorted(best.items())
    hull = []
    for a, b in pts:
        while len(hull) >= 2:
            (a1, b1), (a2, b2) = hull[-2], hull[-1]
            # pop the middle point on clockwise or collinear turns
            if (a2 - a1) * (b - b1) - (b2 - b1) * (a - a1) > 0:
                break
            hull.pop()
        hull.append((a, b))
    # keep only the strictly descending part (the Newton boundary)
    out = [hull[0]]
    for p in hull[1:]:
        if p[1] < out[-1][1]:
            out.append(p)
    return out


def _faces_from_vertices(vertices):
    faces = []
    for (a1, b1), (a2, b2) in zip(vertices, vertices[1:]):
        lam = Fraction(b1 - b2, a2 - a1)
        c = Fraction(b1) + lam * a1
        faces.append(NewtonFace(lam, c, (a1, b1), (a2, b2)))
    return faces


def newton_diagram(f):
    """Diagram of a convenient germ; faces normalized to vanish on themselves."""
    if f.is_zero():
        raise DegenerateDiagram("zero polynomial has no Newton diagram")
    support = list(f.terms)
    if not any(b == 0 for _, b in support) or not any(a == 0 for a, _ in support):
        raise NotConvenient("support must touch both coordinate axes")
    vertices = _lower_hull(support)
    return NewtonDiagram(tuple(_faces_from_vertices(vertices)), tuple(vertices))


def newton_order(mon, diagram):
    """Scaling factor putting the exponent point on the stretched diagram.

    Face points have order exactly 1; points below the diagram have
    order < 1, points above have order > 1.
    """
    if not diagram.faces:
        raise DegenerateDiagram("diagram has no faces")
    a, b = mon
    return min(Fraction(b + face.lam * a, 1) / face.c for face in diagram.faces)


def _face_polynomial_is_squarefree(f, start, end):
    """Squarefree test for the face polynomial, monomial content removed."""
    (a1, b1), (a2, b2) = start, end
    g = gcd(a2 - a1, b1 - b2)
    da, db = (a2 - a1) // g, (b1 - b2) // g
    coeffs = []
    for k in range(g + 1):
        coeffs.append(f.coefficient((a1 + k * da, b1 - k * db)))
    p = UniPoly(coeffs, f.tower)
    return p.gcd(p.derivative()).degree() == 0


def is_nnd(f):
    """Newton non-degeneracy: every face polynomial is squarefree.

    Defined here only for convenient germs (the diagram taken literally at
    the origin); a non-convenient germ returns False rather than being
    silently compactified.
    """
    if f.is_zero():
        raise NotReduced("zero polynomial")
    if not is_squarefree(f):
        raise NotReduced("input has a repeated factor")
    try:
        diagram = newton_diagram(f)
    except NotConvenient:
        return False
    return all(
        _face_polynomial_is_squarefree(f, face.start, face.end)
        for face in diagram.faces
    )


def is_sqh(f):
    """Semiquasihomogeneity test.

    Returns the type (w1, w2, d) as the primitive integer normal of the
    unique supporting line (weights for x and y respectively), or None.
    The principal part, the sum of the terms on the line, must have an
    isolated critical point at the origin.
    """
    if f.is_zero():
        return None
    vertices = _lower_hull(list(f.terms))
    if len(vertices) > 2:
        return None
    if len(vertices) == 2:
        (a1, b1), (a2, b2) = vertices
        g = gcd(b1 - b2, a2 - a1)
        w1, w2 = (b1 - b2) // g, (a2 - a1) // g
        d = w1 * a1 + w2 * b1
    else:
        a0, b0 = vertices[0]
        w1, w2, d = 1, 1, a0 + b0
    if any(w1 * a + w2 * b < d for a, b in f.terms):
        return None
    principal = LocalPoly(
        {m: c for m, c in f.terms.items() if w1 * m[0] + w2 * m[1] == d},
        f.tower,
    )
    px, py = principal.derivative("x"), principal.derivative("y")
    if px.is_zero() and py.is_zero():
        return None
    gens = [g for g in (px, py) if not g.is_zero()]
    if IdealPresentation(gens).colength() is INFINITE:
        return None
    return (w1, w2, d)
