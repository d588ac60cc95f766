"""Univariate factorization over Q and over algebraic extension towers.

Rational factorization is the classical pipeline: Yun squarefree
decomposition, factorization modulo a small odd prime (distinct-degree
plus Cantor-Zassenhaus splitting), quadratic Hensel lifting to a Mignotte
bound, and subset recombination.  Factorization over a proper extension
reduces to the rational case through Trager's squarefree-norm method,
recursing level by level down the tower.  This is the subtlest arithmetic
in the repository; the tests exercise it against the product identity.

Integer polynomials below are plain int lists with ascending exponents.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from math import ceil, gcd, isqrt, log, log2

from .errors import ZeroPolynomial
from .numberfield import QQ, UniPoly, interpolate, resultant


# ---------------------------------------------------------------------------
# arithmetic in GF(p)[x]; ascending int lists, entries reduced mod p


def _gf_strip(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _gf_from_int(f, p):
    return _gf_strip([c % p for c in f])


def _gf_to_int(f, p):
    # symmetric representatives in (-p/2, p/2]
    return [c - p if 2 * c > p else c for c in f]


def _gf_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _gf_strip(out)


def _gf_divmod(f, g, p):
    f = list(f)
    inv = pow(g[-1], -1, p)
    dg = len(g) - 1
    quo = [0] * max(len(f) - dg, 0)
    for k in range(len(f) - dg - 1, -1, -1):
        c = (f[k + dg] * inv) % p
        if c:
            quo[k] = c
            for i, b in enumerate(g):
                f[k + i] = (f[k + i] - c * b) % p
    return _gf_strip(quo), _gf_strip(f[:dg])


def _gf_rem(f, g, p):
    return _gf_divmod(f, g, p)[1]


def _gf_gcd(f, g, p):
    while g:
        f, g = g, _gf_rem(f, g, p)
    if f:
        inv = pow(f[-1], -1, p)
        f = [(c * inv) % p for c in f]
    return f


def _gf_gcdex(f, g, p):
    """s, t, h with s*f + t*g = h = monic gcd."""
    r0, r1 = list(f), list(g)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _gf_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _gf_strip([(a - b) % p for a, b in _zip_pad(s0, _gf_mul(q, s1, p))])
        t0, t1 = t1, _gf_strip([(a - b) % p for a, b in _zip_pad(t0, _gf_mul(q, t1, p))])
    inv = pow(r0[-1], -1, p)
    norm = lambda h: [(c * inv) % p for c in h]
    return norm(s0), norm(t0), norm(r0)


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return zip(a + [0] * (n - len(a)), b + [0] * (n - len(b)))


def _gf_pow_mod(f, n, g, p):
    out = [1]
    f = _gf_rem(f, g, p)
    while n:
        if n & 1:
            out = _gf_rem(_gf_mul(out, f, p), g, p)
        f = _gf_rem(_gf_mul(f, f, p), g, p)
        n >>= 1
    return out


def _gf_deriv(f, p):
    return _gf_strip([(i * c) % p for i, c in enumerate(f)][1:])


def _gf_is_squarefree(f, p):
    return len(_gf_gcd(f, _gf_deriv(f, p), p)) == 1


def _gf_factor_squarefree(f, p):
    """Irreducible monic factors of a monic squarefree f over GF(p), p odd."""
    factors = []
    # distinct-degree splitting
    stages = []
    h, x = [0, 1], [0, 1]
    i = 1
    while len(f) - 1 >= 2 * i:
        h = _gf_pow_mod(h, p, f, p)
        g = _gf_gcd(f, _gf_strip([(a - b) % p for a, b in _zip_pad(list(h), x)]), p)
        if len(g) > 1:
            stages.append((g, i))
            f, _ = _gf_divmod(f, g, p)
            h = _gf_rem(h, f, p)
        i += 1
    if len(f) > 1:
        stages.append((f, len(f) - 1))
    # equal-degree splitting (Cantor-Zassenhaus); deterministic seeded draws
    rng = random.Random(0x5EED ^ p)
    for g, d in stages:
        work = [g]
        while work:
            g = work.pop()
            n = len(g) - 1
            if n == d:
                factors.append(g)
                continue
            while True:
                r = [rng.randrange(p) for _ in range(n)]
                r = _gf_strip(r)
                if len(r) - 1 < 1:
                    continue
                e = _gf_pow_mod(r, (p**d - 1) // 2, g, p)
                e = _gf_strip([(c - (1 if i == 0 else 0)) % p for i, c in enumerate(e)] or [p - 1])
                u = _gf_gcd(g, e, p)
                if 1 < len(u) < len(g):
                    work.append(u)
                    work.append(_gf_divmod(g, u, p)[0])
                    break
    return factors


# ---------------------------------------------------------------------------
# Z[x] helpers


def _z_deg(f):
    return len(f) - 1


def _z_mul(f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return out


def _z_trunc(f, m):
    """Symmetric representatives modulo m."""
    out = []
    for c in f:
        c %= m
        if 2 * c > m:
            c -= m
        out.append(c)
    while out and out[-1] == 0:
        out.pop()
    return out


def _z_add(f, g):
    out = [a + b for a, b in _zip_pad(list(f), list(g))]
    while out and out[-1] == 0:
        out.pop()
    return out


def _z_sub(f, g):
    out = [a - b for a, b in _zip_pad(list(f), list(g))]
    while out and out[-1] == 0:
        out.pop()
    return out


def _z_primitive(f):
    c = 0
    for a in f:
        c = gcd(c, a)
    if c == 0:
        return []
    if f[-1] < 0:
        c = -c
    return [a // c for a in f]


def _z_divides(g, f):
    """Exact division test over Z; returns quotient or None."""
    if not g:
        return None
    f = list(f)
    dg = _z_deg(g)
    if _z_deg(f) < dg:
        return None
    quo = [0] * (len(f) - dg)
    for k in range(len(f) - dg - 1, -1, -1):
        c = f[k + dg]
        if c % g[-1]:
            return None
        c //= g[-1]
        quo[k] = c
        if c:
            for i, b in enumerate(g):
                f[k + i] -= c * b
    if any(f[:dg]):
        return None
    return quo


def _hensel_step(m, f, g, h, s, t):
    """Lift f = g*h, s*g + t*h = 1 from modulus m to m**2 (lc(h) = 1)."""
    M = m * m
    e = _z_trunc(_z_sub(f, _z_mul(g, h)), M)
    q, r = _z_divmod_monic(_z_mul(s, e), h)
    q, r = _z_trunc(q, M), _z_trunc(r, M)
    u = _z_add(_z_mul(t, e), _z_mul(q, g))
    G = _z_trunc(_z_add(g, u), M)
    H = _z_trunc(_z_add(h, r), M)
    u = _z_add(_z_mul(s, G), _z_mul(t, H))
    b = _z_trunc(_z_sub(u, [1]), M)
    c, d = _z_divmod_monic(_z_mul(s, b), H)
    c, d = _z_trunc(c, M), _z_trunc(d, M)
    u = _z_add(_z_mul(t, b), _z_mul(c, G))
    S = _z_trunc(_z_sub(s, d), M)
    T = _z_trunc(_z_sub(t, u), M)
    return G, H, S, T


def _z_divmod_monic(f, g):
    """Division by a polynomial with lc = 1 (exact over Z)."""
    f = list(f)
    dg = _z_deg(g)
    if _z_deg(f) < dg:
        return [], f
    quo = [0] * (len(f) - dg)
    for k in range(len(f) - dg - 1, -1, -1):
        c = f[k + dg]
        quo[k] = c
        if c:
            for i, b in enumerate(g):
                f[k + i] -= c * b
    rem = f[:dg]
    while rem and rem[-1] == 0:
        rem.pop()
    while quo and quo[-1] == 0:
        quo.pop()
    return quo, rem


def _hensel_lift(p, f, factors, l):
    """Monic F_i with f = lc(f)*prod F_i mod p**l, F_i = f_i mod p."""
    r = len(factors)
    lc = f[-1]
    if r == 1:
        inv = pow(lc, -1, p**l)
        return [_z_trunc([c * inv for c in f], p**l)]
    m = p
    k = r // 2
    d = int(ceil(log2(l))) if l > 1 else 1
    g = _gf_from_int([lc], p)
    for fi in factors[:k]:
        g = _gf_mul(g, _gf_from_int(fi, p), p)
    h = _gf_from_int(factors[k], p)
    for fi in factors[k + 1 :]:
        h = _gf_mul(h, _gf_from_int(fi, p), p)
    s, t, _ = _gf_gcdex(g, h, p)
    g, h = _gf_to_int(g, p), _gf_to_int(h, p)
    s, t = _gf_to_int(s, p), _gf_to_int(t, p)
    for _ in range(d):
        g, h, s, t = _hensel_step(m, f, g, h, s, t)
        m = m * m
    return _hensel_lift(p, g, factors[:k], l) + _hensel_lift(p, h, factors[k:], l)


def _next_prime(n):
    n += 1 + (n % 2)
    while True:
        if all(n % q for q in range(3, isqrt(n) + 1, 2)):
            return n
        n += 2


def factor_squarefree_int(f):
    """Irreducible factors of a primitive squarefree int poly, lc > 0."""
    n = _z_deg(f)
    if n <= 1:
        return [list(f)]
    A = max(abs(c) for c in f)
    b = f[-1]
    B = int(isqrt(n + 1) + 1) * 2**n * A * abs(b)
    # choose the odd prime giving the fewest modular factors
    candidates = []
    p = 1
    while len(candidates) < 3:
        p = _next_prime(p)
        if b % p == 0:
            continue
        fp = _gf_from_int(f, p)
        if len(fp) - 1 != n or not _gf_is_squarefree(fp, p):
            continue
        inv = pow(fp[-1], -1, p)
        fp = [(c * inv) % p for c in fp]
        facs = _gf_factor_squarefree(fp, p)
        candidates.append((len(facs), p, facs))
        if len(facs) == 1:
            return [list(f)]
    _, p, modular = min(candidates, key=lambda c: (c[0], c[1]))
    modular = [_gf_to_int(m, p) for m in sorted(modular)]
    l = int(ceil(log(2 * B + 1, p)))
    lifted = _hensel_lift(p, list(f), modular, l)
    pl = p**l

    remaining = list(range(len(lifted)))
    factors = []
    s = 1
    while 2 * s <= len(remaining):
        found = True
        while found:
            found = False
            for S in combinations(remaining, s):
                G = [b]
                for i in S:
                    G = _z_mul(G, lifted[i])
                G = _z_primitive(_z_trunc(G, pl))
                quo = _z_divides(G, f)
                if quo is not None:
                    factors.append(G)
                    f = _z_primitive(quo)
                    b = f[-1]
                    remaining = [i for i in remaining if i not in S]
                    found = True
                    break
            if 2 * s > len(remaining):
                break
        s += 1
    if _z_deg(f) > 0:
        factors.append(list(f))
    return factors


# ---------------------------------------------------------------------------
# factorization over a tower


def _yun_squarefree(p):
    """Yun decomposition [(g_1, 1), (g_2, 2), ...] over a char-0 field."""
    out = []
    dp = p.derivative()
    g = p.gcd(dp)
    if g.degree() == 0:
        return [(p.monic(), 1)]
    w = p.divmod(g)[0]
    y = dp.divmod(g)[0]
    i = 1
    while w.degree() > 0:
        z = y.sub(w.derivative())
        h = w.gcd(z) if not z.is_zero() else w.monic()
        if h.degree() > 0:
            out.append((h.monic(), i))
        w = w.divmod(h)[0]
        y = z.divmod(h)[0]
        i += 1
    return out


def _rational_to_int(p):
    """Clear denominators: primitive int list for a UniPoly over Q."""
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    return _z_primitive(ints)


def _int_to_monic_unipoly(f):
    lc = Fraction(f[-1])
    return UniPoly([Fraction(c) / lc for c in f], QQ)


def _factor_squarefree_rational(p):
    ints = _rational_to_int(p)
    return sorted(
        (_int_to_monic_unipoly(f) for f in factor_squarefree_int(ints)),
        key=UniPoly.sort_key,
    )


def _lift_alpha(coeff_tuple, base):
    """A top-level tower element, reread as a polynomial in the generator."""
    return UniPoly(list(coeff_tuple), base)


def _norm_polynomial(gs, tower):
    """Res_y(minpoly(y), gs(x) with the generator replaced by y)."""
    base = tower.base
    mp = tower.minpoly
    bound = mp.degree() * max(gs.degree(), 1)
    points = []
    c = 0
    while len(points) < bound + 1:
        # evaluate x = c, leaving a polynomial in the generator variable
        acc = UniPoly([], base)
        ck = base.one()
        cval = base.from_fraction(c)
        for coeff in gs.coeffs:
            acc = acc.add(_lift_alpha(coeff, base).scale(ck))
            ck = base.mul(ck, cval)
        points.append((Fraction(c), resultant(mp, acc)))
        c = -c if c > 0 else -c + 1
    return interpolate(points, base)


def _factor_squarefree_tower(g, tower):
    """Trager's method: g monic squarefree over a proper extension."""
    if g.degree() == 1:
        return [g.monic()]
    base = tower.base
    alpha = tower.generator()
    shift = 0
    while True:
        shift_elem = tower.scale(alpha, Fraction(shift))
        gs = g.compose_linear(tower.one(), tower.neg(shift_elem))
        norm = _norm_polynomial(gs, tower)
        if norm.gcd(norm.derivative()).degree() == 0:
            break
        shift = -shift if shift > 0 else -shift + 1
    norm_factors = (
        _factor_squarefree_rational(norm)
        if base.is_rational()
        else _factor_squarefree_tower(norm, base)
    )
    factors = []
    for nf in norm_factors:
        h = gs.gcd(nf.embed_into(tower))
        if h.degree() >= 1:
            factors.append(h.compose_linear(tower.one(), shift_elem).monic())
    total = sum(h.degree() for h in factors)
    if total != g.degree():
        raise ZeroPolynomial("norm factorization lost degrees; input not squarefree?")
    return sorted(factors, key=UniPoly.sort_key)


def factor_univariate(p):
    """Factor into monic irreducibles over the coefficient tower.

    Returns (unit, [(factor, multiplicity), ...]) with the product of
    unit and the factor powers equal to ``p`` exactly.  Output order is
    canonical: by degree, then by coefficient order.
    """
    if p.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    tower = p.tower
    unit = p.leading()
    if p.degree() == 0:
        return unit, []
    mp = p.monic()
    out = []
    for part, mult in _yun_squarefree(mp):
        if part.degree() == 0:
            continue
        if tower.is_rational():
            factors = _factor_squarefree_rational(part)
        else:
            factors = _factor_squarefree_tower(part, tower)
        out.extend((f, mult) for f in factors)
    out.sort(key=lambda fm: fm[0].sort_key())
    return unit, out
