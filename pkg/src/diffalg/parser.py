"""Shared expression grammar: parsing and canonical printing.

    poly   := sign? term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' nat)?
    atom   := ('d' idx)+ ('x'|'y') idx | ('x'|'y') idx | 't' idx
            | rational | '(' poly ')'

Whitespace is insignificant. "d1 d1 x2" and "d1d1x2" both denote the second
delta-derivative of x2 in direction 1. Rationals are integers or "p/q". The
optional leading sign is a tolerant extension so canonical output like
"-x1 + 1" re-parses.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import DiffPoly, mono_degree
from .ring import RATIONAL_T, DerivVar, mi_unit, mi_zero
from .scalars import Scalar, TPoly, _deglex


class ParseError(ValueError):
    def __init__(self, message, pos):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


_OPS = set("+-*^()/")


def _lex(text):
    toks = []
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
            toks.append(("num", text[i:j], i))
            i = j
            continue
        if ch in "dxyt":
            toks.append(("let", ch, i))
            i += 1
            continue
        if ch in _OPS:
            toks.append(("op", ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    toks.append(("end", "", n))
    return toks


class _Parser:
    def __init__(self, text, ring):
        self.toks = _lex(text)
        self.ring = ring
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)

    def index_after(self, letter, pos):
        kind, val, p = self.take()
        if kind != "num":
            raise ParseError(f"expected an index after {letter!r}", pos)
        return int(val), p

    def parse(self):
        p = self.poly()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos)
        return p

    def poly(self):
        kind, val, _ = self.peek()
        negate = False
        if kind == "op" and val in "+-":
            self.take()
            negate = val == "-"
        acc = self.term()
        if negate:
            acc = -acc
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc - t if val == "-" else acc + t
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.factor()
            else:
                return acc

    def factor(self):
        a = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k2, v2, p2 = self.take()
            if k2 != "num":
                raise ParseError("expected a natural-number exponent", p2)
            return a ** int(v2)
        return a

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            q = Fraction(int(val))
            k2, v2, _ = self.peek()
            if k2 == "op" and v2 == "/":
                self.take()
                k3, v3, p3 = self.take()
                if k3 != "num":
                    raise ParseError("expected a denominator", p3)
                if int(v3) == 0:
                    raise ParseError("zero denominator", p3)
                q = Fraction(int(val), int(v3))
            return DiffPoly.const(self.ring, q)
        if kind == "op" and val == "(":
            p = self.poly()
            self.expect_op(")")
            return p
        if kind == "let" and val == "d":
            theta = list(mi_zero(self.ring.m))
            while True:
                idx, p = self.index_after("d", pos)
                if not 1 <= idx <= self.ring.m:
                    raise ParseError(f"derivation index d{idx} out of range (m={self.ring.m})", p)
                theta[idx - 1] += 1
                kind, val, pos = self.take()
                if kind == "let" and val == "d":
                    continue
                break
            if kind != "let" or val not in "xy":
                raise ParseError("expected a variable after derivation prefixes", pos)
            idx, p = self.index_after(val, pos)
            if not 1 <= idx <= self.ring.n:
                raise ParseError(f"variable index {val}{idx} out of range (n={self.ring.n})", p)
            return DiffPoly.var(self.ring, DerivVar(val, idx, tuple(theta)))
        if kind == "let" and val in "xy":
            idx, p = self.index_after(val, pos)
            if not 1 <= idx <= self.ring.n:
                raise ParseError(f"variable index {val}{idx} out of range (n={self.ring.n})", p)
            return DiffPoly.var(self.ring, DerivVar(val, idx, mi_zero(self.ring.m)))
        if kind == "let" and val == "t":
            idx, p = self.index_after("t", pos)
            if self.ring.field_mode != RATIONAL_T:
                raise ParseError("t-symbols need the rational_t field mode", pos)
            if not 1 <= idx <= self.ring.nt:
                raise ParseError(f"t{idx} out of range (have t1..t{self.ring.nt})", p)
            return DiffPoly.const(self.ring, Scalar.t(self.ring.nt, idx))
        raise ParseError(f"unexpected {val!r}", pos)


def parse_poly(text, ring):
    """Parse an expression into a canonical polynomial."""
    return _Parser(text, ring).parse()


def parse_tpoly(text, ring):
    """Parse an expression containing only t-symbols and rationals."""
    p = parse_poly(text, ring)
    if not p.is_scalar():
        raise ParseError("expected an expression in t-symbols only", 0)
    s = p.scalar_value()
    if not s.is_poly():
        raise ParseError("expected a polynomial in the t-symbols", 0)
    return s.num


def _print_var_key(v):
    return (0 if v.family == "x" else 1, v.order, v.index, v.theta)


def _print_mono_key(mono):
    factors = sorted(((_print_var_key(v), e) for v, e in mono), reverse=True)
    return (mono_degree(mono), tuple(factors))


def _tterm_text(e, q):
    mono = "*".join(
        f"t{j + 1}^{k}" if k > 1 else f"t{j + 1}" for j, k in enumerate(e) if k
    )
    if not mono:
        return str(q)
    if q == 1:
        return mono
    return f"{q}*{mono}"


def scalar_text(s):
    """Render a polynomial scalar (constant denominator only)."""
    if not s.is_poly():
        raise ValueError("scalar has a non-constant denominator; clear denominators first")
    p = s.num
    if p.is_zero():
        return "0"
    parts = []
    for e in sorted(p.terms, key=_deglex, reverse=True):
        q = p.terms[e]
        if not parts:
            parts.append(_tterm_text(e, q) if q > 0 else "-" + _tterm_text(e, -q))
        else:
            parts.append((" + " if q > 0 else " - ") + _tterm_text(e, abs(q)))
    return "".join(parts)


def _scalar_sign_split(s):
    """Return (is_negative, magnitude) using the deg-lex leading coefficient."""
    if s.num.lead_coeff() < 0:
        return True, -s
    return False, s


def _scalar_factor_text(s):
    """Scalar rendered for use as a multiplicative factor."""
    txt = scalar_text(s)
    if len(s.num.terms) > 1:
        return f"({txt})"
    return txt


def poly_text(f):
    """Canonical deterministic rendering; re-parses to the identical value."""
    if f.is_zero():
        return "0"
    out = []
    for mono in sorted(f.terms, key=_print_mono_key, reverse=True):
        c = f.terms[mono]
        neg, mag = _scalar_sign_split(c)
        vars_txt = "*".join(
            v.text() + (f"^{e}" if e > 1 else "") for v, e in
            sorted(mono, key=lambda it: _print_var_key(it[0]))
        )
        if not mono:
            body = _scalar_factor_text(mag)
        elif mag.is_one():
            body = vars_txt
        else:
            body = f"{_scalar_factor_text(mag)}*{vars_txt}"
        if not out:
            out.append("-" + body if neg else body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)
