"""Towers of simple algebraic extensions of Q and univariate polynomials.

A tower is a chain Q = K_0 < K_1 < ... < K_n where each level adjoins one
root of a monic irreducible polynomial over the previous level.  Elements
are represented positionally: an element of Q is a ``Fraction``; an element
of an extension of degree d is a length-d tuple of elements of the base
level (coordinates in the power basis of the generator).  Towers are never
collapsed to a primitive element; the chain keeps blow-up translations
readable.

All values are immutable and all operations are pure functions.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ReducibleMinimalPolynomial, ZeroPolynomial

_Q0 = Fraction(0)
_Q1 = Fraction(1)


class FieldTower:
    """A finite extension of Q presented as a chain of minimal polynomials."""

    __slots__ = ("base", "name", "minpoly", "_degree", "_absdegree")

    def __init__(self, base=None, name=None, minpoly=None):
        self.base = base
        self.name = name
        self.minpoly = minpoly
        if base is None:
            self._degree = 1
            self._absdegree = 1
        else:
            self._degree = minpoly.degree()
            self._absdegree = self._degree * base.absolute_degree()

    # -- structure ---------------------------------------------------------

    def absolute_degree(self):
        """Degree over Q; the product of the level degrees."""
        return self._absdegree

    def is_rational(self):
        return self.base is None

    def levels(self):
        """The chain as a list of (generator name, minimal polynomial)."""
        out = []
        tower = self
        while tower.base is not None:
            out.append((tower.name, tower.minpoly))
            tower = tower.base
        out.reverse()
        return out

    def generator_names(self):
        return [name for name, _ in self.levels()]

    def __repr__(self):
        if self.is_rational():
            return "QQ"
        return "QQ(%s)" % ",".join(self.generator_names())

    # -- element constructors ----------------------------------------------

    def zero(self):
        if self.base is None:
            return _Q0
        return tuple([self.base.zero()] * self._degree)

    def one(self):
        return self.from_fraction(_Q1)

    def from_fraction(self, q):
        q = Fraction(q)
        if self.base is None:
            return q
        head = [self.base.from_fraction(q)]
        head.extend([self.base.zero()] * (self._degree - 1))
        return tuple(head)

    def generator(self):
        """The adjoined root as an element of this tower."""
        if self.base is None:
            raise ValueError("Q has no generator")
        coords = [self.base.zero()] * self._degree
        coords[1] = self.base.one()
        return tuple(coords)

    def embed(self, elem):
        """Embed an element of the base level coefficient-wise."""
        if self.base is None:
            raise ValueError("Q has no base level")
        head = [elem]
        head.extend([self.base.zero()] * (self._degree - 1))
        return tuple(head)

    def embed_from(self, src, elem):
        """Embed an element of the (possibly deep) subtower ``src``."""
        if src is self:
            return elem
        if self.base is None:
            raise ValueError("not a subtower")
        return self.embed(self.base.embed_from(src, elem))

    # -- arithmetic ----------------------------------------------------------

    def add(self, a, b):
        if self.base is None:
            return a + b
        add = self.base.add
        return tuple(add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        if self.base is None:
            return a - b
        sub = self.base.sub
        return tuple(sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        if self.base is None:
            return -a
        neg = self.base.neg
        return tuple(neg(x) for x in a)

    def is_zero(self, a):
        if self.base is None:
            return a == 0
        is_zero = self.base.is_zero
        return all(is_zero(x) for x in a)

    def eq(self, a, b):
        return self.is_zero(self.sub(a, b))

    def mul(self, a, b):
        if self.base is None:
            return a * b
        base = self.base
        d = self._degree
        prod = [base.zero()] * (2 * d - 1)
        for i, x in enumerate(a):
            if base.is_zero(x):
                continue
            for j, y in enumerate(b):
                if base.is_zero(y):
                    continue
                prod[i + j] = base.add(prod[i + j], base.mul(x, y))
        # reduce modulo the monic minimal polynomial
        mp = self.minpoly.coeffs
        for k in range(2 * d - 2, d - 1, -1):
            top = prod[k]
            if base.is_zero(top):
                continue
            prod[k] = base.zero()
            for i in range(d):
                prod[k - d + i] = base.sub(prod[k - d + i], base.mul(top, mp[i]))
        return tuple(prod[:d])

    def scale(self, a, q):
        """Multiply by a Fraction."""
        if self.base is None:
            return a * q
        scale = self.base.scale
        return tuple(scale(x, q) for x in a)

    def inv(self, a):
        if self.base is None:
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / a
        # extended Euclid in base[t] modulo the minimal polynomial
        f = UniPoly(list(self.minpoly.coeffs), self.base)
        g = UniPoly(list(a), self.base)
        if g.is_zero():
            raise ZeroDivisionError("inverse of zero")
        # invariants: s0*minpoly + t0*? ... track only the cofactor of g
        r0, r1 = f, g
        t0, t1 = UniPoly([], self.base), UniPoly([self.base.one()], self.base)
        while r1.degree() > 0:
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            t0, t1 = t1, t0.sub(q.mul(t1))
            if r1.is_zero():
                raise ZeroPolynomial("minimal polynomial is not irreducible")
        c = self.base.inv(r1.coeffs[0])
        coords = [self.base.mul(c, x) for x in t1.coeffs]
        coords.extend([self.base.zero()] * (self._degree - len(coords)))
        return tuple(coords)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        out = self.one()
        while n:
            if n & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            n >>= 1
        return out

    # -- Q-linear structure ---------------------------------------------------

    def to_qvector(self, a):
        """Coordinates of ``a`` in the product power basis over Q."""
        if self.base is None:
            return [a]
        out = []
        for x in a:
            out.extend(self.base.to_qvector(x))
        return out

    def from_qvector(self, vec):
        if self.base is None:
            return vec[0]
        d = self.base.absolute_degree()
        return tuple(
            self.base.from_qvector(vec[i * d : (i + 1) * d])
            for i in range(self._degree)
        )

    def basis(self):
        """The product power basis as elements of this tower."""
        n = self.absolute_degree()
        out = []
        for i in range(n):
            vec = [_Q0] * n
            vec[i] = _Q1
            out.append(self.from_qvector(vec))
        return out

    def as_fraction(self, a):
        """The element as a Fraction; None if it is not rational."""
        vec = self.to_qvector(a)
        if any(v != 0 for v in vec[1:]):
            return None
        return vec[0]

    # -- text ------------------------------------------------------------------

    def text(self, a):
        """Canonical text: polynomial expression in the generator names."""
        names = self.generator_names()
        terms = []
        for idx, c in enumerate(self.to_qvector(a)):
            if c == 0:
                continue
            mono = _basis_text(idx, self._level_degrees(), names)
            if mono == "1":
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += "+" + t if not t.startswith("-") else t
        return out

    def _level_degrees(self):
        degs = []
        tower = self
        while tower.base is not None:
            degs.append(tower._degree)
            tower = tower.base
        degs.reverse()
        return degs

    def sort_key(self, a):
        """Total order on elements, used only for deterministic output."""
        return tuple(self.to_qvector(a))


def _basis_text(index, degrees, names):
    # the flat index is mixed-radix with the bottom level least significant
    parts = []
    for d, name in zip(degrees, names):
        e = index % d
        index //= d
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


QQ = FieldTower()


class UniPoly:
    """Univariate polynomial over a FieldTower, coefficients ascending."""

    __slots__ = ("coeffs", "tower")

    def __init__(self, coeffs, tower):
        cs = list(coeffs)
        while cs and tower.is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)
        self.tower = tower

    @classmethod
    def from_fractions(cls, values, tower=QQ):
        return cls([tower.from_fraction(Fraction(v)) for v in values], tower)

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def leading(self):
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self):
        return bool(self.coeffs) and self.tower.eq(self.leading(), self.tower.one())

    def monic(self):
        if self.is_zero():
            raise ZeroPolynomial("cannot normalize the zero polynomial")
        inv = self.tower.inv(self.leading())
        return UniPoly([self.tower.mul(c, inv) for c in self.coeffs], self.tower)

    def add(self, other):
        t = self.tower
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [t.zero()] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] = t.add(a[i], c)
        return UniPoly(a, t)

    def sub(self, other):
        t = self.tower
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [t.zero()] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] = t.sub(a[i], c)
        return UniPoly(a, t)

    def neg(self):
        t = self.tower
        return UniPoly([t.neg(c) for c in self.coeffs], t)

    def mul(self, other):
        t = self.tower
        if self.is_zero() or other.is_zero():
            return UniPoly([], t)
        out = [t.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if t.is_zero(x):
                continue
            for j, y in enumerate(other.coeffs):
                out[i + j] = t.add(out[i + j], t.mul(x, y))
        return UniPoly(out, t)

    def scale(self, c):
        t = self.tower
        return UniPoly([t.mul(c, x) for x in self.coeffs], t)

    def divmod(self, other):
        """Euclidean division; the divisor's leading coefficient is inverted."""
        t = self.tower
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        inv = t.inv(other.leading())
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly([], t), self
        quo = [t.zero()] * (dq + 1)
        for k in range(dq, -1, -1):
            top = rem[k + other.degree()]
            if t.is_zero(top):
                continue
            factor = t.mul(top, inv)
            quo[k] = factor
            for i, c in enumerate(other.coeffs):
                rem[k + i] = t.sub(rem[k + i], t.mul(factor, c))
        return UniPoly(quo, t), UniPoly(rem, t)

    def mod(self, other):
        return self.divmod(other)[1]

    def gcd(self, other):
        """Monic greatest common divisor."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.mod(b)
        if a.is_zero():
            return a
        return a.monic()

    def derivative(self):
        t = self.tower
        return UniPoly(
            [t.scale(c, Fraction(i)) for i, c in enumerate(self.coeffs)][1:], t
        )

    def eval(self, x):
        t = self.tower
        acc = t.zero()
        for c in reversed(self.coeffs):
            acc = t.add(t.mul(acc, x), c)
        return acc

    def compose_linear(self, a, b):
        """The polynomial p(a*t + b)."""
        t = self.tower
        acc = UniPoly([], t)
        lin = UniPoly([b, a], t)
        for c in reversed(self.coeffs):
            acc = acc.mul(lin).add(UniPoly([c], t))
        return acc

    def embed_into(self, tower):
        """Coefficient-wise embedding into an extension tower."""
        if tower is self.tower:
            return self
        return UniPoly(
            [tower.embed_from(self.tower, c) for c in self.coeffs], tower
        )

    def sort_key(self):
        t = self.tower
        return (self.degree(), tuple(t.sort_key(c) for c in self.coeffs))

    def text(self, var="c"):
        t = self.tower
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if t.is_zero(c):
                continue
            ctext = t.text(c)
            if i == 0:
                terms.append(ctext)
                continue
            v = var if i == 1 else f"{var}^{i}"
            if ctext == "1":
                terms.append(v)
            elif ctext == "-1":
                terms.append("-" + v)
            elif "+" in ctext or ("-" in ctext[1:]):
                terms.append(f"({ctext})*{v}")
            else:
                terms.append(f"{ctext}*{v}")
        if not terms:
            return "0"
        out = terms[0]
        for term in terms[1:]:
            out += term if term.startswith("-") else "+" + term
        return out

    def __repr__(self):
        return self.text()

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        if self.tower is not other.tower:
            return NotImplemented
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(self.tower.eq(a, b) for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((len(self.coeffs),))


def extend_tower(tower, minpoly, witness=None):
    """Adjoin a root of a monic irreducible polynomial to ``tower``.

    Degree-1 extensions are collapsed eagerly (the extension is the
    identity).  Irreducibility is the caller's responsibility (factor
    first); a supplied ``witness`` pair of nonunit factors is checked and
    rejected.
    """
    if minpoly.is_zero() or minpoly.degree() < 1:
        raise ZeroPolynomial("minimal polynomial must be nonconstant")
    minpoly = minpoly.monic()
    if witness is not None:
        g, h = witness
        if (
            g.degree() >= 1
            and h.degree() >= 1
            and g.mul(h).monic() == minpoly
        ):
            raise ReducibleMinimalPolynomial(
                f"witness factorization ({g.text()})*({h.text()})"
            )
    if minpoly.degree() == 1:
        return tower, tower.neg(minpoly.coeffs[0])
    name = f"a{len(tower.levels()) + 1}"
    ext = FieldTower(tower, name, minpoly)
    return ext, ext.generator()


def restrict_scalars(row, tower):
    """Split one K-linear functional into deg(K/Q) rational functionals.

    ``row`` maps column keys to tower elements; the result is a list of
    rows mapping the same keys to Fractions, one per Q-basis coordinate.
    A rational vector is annihilated by all returned rows iff the original
    functional vanishes on it.
    """
    n = tower.absolute_degree()
    if n == 1:
        return [{k: v for k, v in row.items() if v != 0}]
    out = [dict() for _ in range(n)]
    for key, val in row.items():
        for i, q in enumerate(tower.to_qvector(val)):
            if q != 0:
                out[i][key] = q
    return out


def resultant(f, g):
    """Resultant of two univariate polynomials over a field tower."""
    t = f.tower
    if f.is_zero() or g.is_zero():
        return t.zero()
    res = t.one()
    a, b = f, g
    while b.degree() > 0:
        r = a.mod(b)
        if r.is_zero():
            return t.zero()
        res = t.mul(res, t.pow(b.leading(), a.degree() - r.degree()))
        if (a.degree() * b.degree()) % 2 == 1:
            res = t.neg(res)
        a, b = b, r
    res = t.mul(res, t.pow(b.coeffs[0], a.degree()))
    return res


def interpolate(points, tower):
    """Lagrange interpolation through (Fraction abscissa, element) pairs."""
    acc = UniPoly([], tower)
    for i, (xi, yi) in enumerate(points):
        num = UniPoly([tower.one()], tower)
        den = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            num = num.mul(
                UniPoly([tower.from_fraction(-xj), tower.one()], tower)
            )
            den *= xi - xj
        acc = acc.add(num.scale(tower.mul(yi, tower.from_fraction(1 / den))))
    return acc
