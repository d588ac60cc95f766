"""Polynomial text grammar and canonical printer.

Grammar (EBNF, whitespace free between tokens):

    expr    = [sign] term { sign term } ;
    term    = factor { ["*"] factor } ;          (* juxtaposition multiplies *)
    factor  = atom [ "^" nat ] ;
    atom    = number | varpow | "(" expr ")" ;
    number  = nat [ "/" nat ] ;
    varpow  = ( "x" | "y" ) [ nat ] ;            (* y3 means y^3 *)
    sign    = "+" | "-" ;

Canonical printing orders terms by descending significance in the active
monomial order and writes power products in the compact varpow form, so
printing followed by reparsing is the identity on rational polynomials.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError, UnknownVariable
from .poly import LOCAL_DS, LocalPoly, monomial_text


def _tokenize(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            num = int(text[i:j])
            if j < n and text[j] == "/":
                k = j + 1
                if k >= n or not text[k].isdigit():
                    raise ParseError("expected digits after '/'", j)
                m = k
                while m < n and text[m].isdigit():
                    m += 1
                den = int(text[k:m])
                if den == 0:
                    raise ParseError("zero denominator", k)
                tokens.append(("num", Fraction(num, den), i))
                i = m
            else:
                tokens.append(("num", Fraction(num), i))
                i = j
            continue
        if ch.isalpha():
            if ch not in ("x", "y"):
                raise UnknownVariable(f"unknown variable {ch!r}", i)
            j = i + 1
            exp = 1
            if j < n and text[j].isdigit():
                k = j
                while k < n and text[k].isdigit():
                    k += 1
                exp = int(text[j:k])
                j = k
            tokens.append(("var", (ch, exp), i))
            i = j
            continue
        if ch in "+-*^()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos][0]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}", tok[2])
        return tok

    def parse_expr(self):
        sign = 1
        while self.peek() in ("+", "-"):
            if self.next()[0] == "-":
                sign = -sign
        p = self.parse_term()
        if sign < 0:
            p = p.neg()
        while self.peek() in ("+", "-"):
            op = self.next()[0]
            sign = -1 if op == "-" else 1
            while self.peek() in ("+", "-"):
                if self.next()[0] == "-":
                    sign = -sign
            q = self.parse_term()
            p = p.sub(q) if sign < 0 else p.add(q)
        return p

    def parse_term(self):
        p = self.parse_factor()
        while True:
            kind = self.peek()
            if kind == "*":
                self.next()
                p = p.mul(self.parse_factor())
            elif kind in ("num", "var", "("):
                p = p.mul(self.parse_factor())
            else:
                return p

    def parse_factor(self):
        p = self.parse_atom()
        if self.peek() == "^":
            self.next()
            tok = self.next()
            if tok[0] != "num" or tok[1].denominator != 1 or tok[1] < 0:
                raise ParseError("exponent must be a non-negative integer", tok[2])
            p = p.pow(int(tok[1]))
        return p

    def parse_atom(self):
        tok = self.next()
        kind, value, pos = tok
        if kind == "num":
            return LocalPoly.constant(value)
        if kind == "var":
            name, exp = value
            mon = (exp, 0) if name == "x" else (0, exp)
            return LocalPoly.monomial(mon)
        if kind == "(":
            p = self.parse_expr()
            self.expect(")")
            return p
        raise ParseError("expected a number, variable or '('", pos)


def parse_poly(text):
    """Parse an expression in x, y with rational coefficients."""
    parser = _Parser(_tokenize(text))
    p = parser.parse_expr()
    tok = parser.next()
    if tok[0] != "end":
        raise ParseError("trailing input", tok[2])
    return p


def poly_text(p, order=LOCAL_DS):
    """Canonical text; terms sorted by descending significance."""
    if p.is_zero():
        return "0"
    tower = p.tower
    pieces = []
    for mon in order.sorted_desc(p.terms):
        c = p.terms[mon]
        mtext = monomial_text(mon)
        q = tower.as_fraction(c) if not tower.is_rational() else c
        if q is not None:
            if mtext == "1":
                ctext = str(q)
            elif q == 1:
                ctext = ""
            elif q == -1:
                ctext = "-"
            else:
                ctext = str(q)
        else:
            ctext = f"({tower.text(c)})"
        pieces.append(ctext + (mtext if mtext != "1" else ""))
    out = pieces[0]
    for piece in pieces[1:]:
        out += piece if piece.startswith("-") else "+" + piece
    return out
