"""Exact base-field scalars: rational functions of the formal symbols t1..tk.

The k symbols carry the derivations of the base field: derivation i acts as
the partial derivative with respect to t_i. Scalars are kept fully reduced
with a monic (deg-lex leading coefficient 1) denominator at all times, so
structural equality is semantic equality and hashing is safe.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd


def _deglex(e):
    return (sum(e), e)


class TPoly:
    """Sparse polynomial in t1..t_nvars with Fraction coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars or any(k < 0 for k in e):
                    raise ValueError(f"bad exponent vector {e!r} for {nvars} t-variables")
                q = Fraction(c)
                if q:
                    clean[tuple(e)] = q
        self.terms = clean

    @classmethod
    def _raw(cls, nvars, terms):
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def zero(cls, nvars):
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, nvars, q):
        q = Fraction(q)
        return cls._raw(nvars, {(0,) * nvars: q} if q else {})

    @classmethod
    def one(cls, nvars):
        return cls.const(nvars, 1)

    @classmethod
    def var(cls, nvars, i):
        if not 1 <= i <= nvars:
            raise ValueError(f"t{i} out of range (have t1..t{nvars})")
        e = tuple(1 if j == i - 1 else 0 for j in range(nvars))
        return cls._raw(nvars, {e: Fraction(1)})

    def is_zero(self):
        return not self.terms

    def is_const(self):
        return all(not any(e) for e in self.terms)

    def const_value(self):
        if not self.is_const():
            raise ValueError("not a constant polynomial")
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def occurring(self):
        s = set()
        for e in self.terms:
            for j, k in enumerate(e):
                if k:
                    s.add(j + 1)
        return s

    def _check(self, other):
        if self.nvars != other.nvars:
            raise ValueError("t-variable arity mismatch")

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e)
            s = c if s is None else s + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return TPoly._raw(self.nvars, t)

    def __sub__(self, other):
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e)
            s = -c if s is None else s - c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return TPoly._raw(self.nvars, t)

    def __neg__(self):
        return TPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        self._check(other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = t.get(e)
                s = c1 * c2 if s is None else s + c1 * c2
                if s:
                    t[e] = s
                else:
                    t.pop(e, None)
        return TPoly._raw(self.nvars, t)

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        r = TPoly.one(self.nvars)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def scale(self, q):
        q = Fraction(q)
        if not q:
            return TPoly.zero(self.nvars)
        return TPoly._raw(self.nvars, {e: c * q for e, c in self.terms.items()})

    def diff(self, i):
        """Partial derivative with respect to t_i (1-based)."""
        if not 1 <= i <= self.nvars:
            raise ValueError(f"t{i} out of range (have t1..t{self.nvars})")
        t = {}
        for e, c in self.terms.items():
            k = e[i - 1]
            if k:
                e2 = e[: i - 1] + (k - 1,) + e[i:]
                s = t.get(e2)
                s = c * k if s is None else s + c * k
                if s:
                    t[e2] = s
                else:
                    t.pop(e2, None)
        return TPoly._raw(self.nvars, t)

    def lead_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=_deglex)
        return e, self.terms[e]

    def lead_coeff(self):
        return self.lead_term()[1]

    def degree_in(self, i):
        return max((e[i - 1] for e in self.terms), default=-1)

    def coeff_in(self, i, k):
        """Coefficient of t_i^k, with t_i struck out."""
        t = {}
        for e, c in self.terms.items():
            if e[i - 1] == k:
                t[e[: i - 1] + (0,) + e[i:]] = c
        return TPoly._raw(self.nvars, t)

    def exact_div(self, d):
        """Quotient self/d when d divides exactly, else None."""
        if d.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        q = {}
        r = dict(self.terms)
        de, dc = d.lead_term()
        while r:
            e = max(r, key=_deglex)
            ediff = tuple(a - b for a, b in zip(e, de))
            if any(k < 0 for k in ediff):
                return None
            qc = r[e] / dc
            q[ediff] = qc
            for e2, c2 in d.terms.items():
                em = tuple(a + b for a, b in zip(ediff, e2))
                s = r.get(em, Fraction(0)) - qc * c2
                if s:
                    r[em] = s
                else:
                    r.pop(em, None)
        return TPoly._raw(self.nvars, q)

    def __eq__(self, other):
        return (
            isinstance(other, TPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "TPoly(0)"
        parts = []
        for e in sorted(self.terms, key=_deglex, reverse=True):
            mono = "*".join(
                f"t{j + 1}^{k}" if k > 1 else f"t{j + 1}" for j, k in enumerate(e) if k
            )
            c = self.terms[e]
            parts.append(f"{c}*{mono}" if mono else str(c))
        return "TPoly(" + " + ".join(parts) + ")"


def _int_normalize(p):
    """Scale to coprime integer coefficients with positive deg-lex lead."""
    if p.is_zero():
        return p
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // _int_gcd(den, c.denominator)
    num = 0
    for c in p.terms.values():
        num = _int_gcd(num, abs(c.numerator * (den // c.denominator)))
    q = p.scale(Fraction(den, num))
    if q.lead_coeff() < 0:
        q = -q
    return q


def _prem(f, g, i):
    """Pseudo-remainder of f by g viewed as univariate polynomials in t_i."""
    dg = g.degree_in(i)
    lg = g.coeff_in(i, dg)
    r = f
    while not r.is_zero():
        dr = r.degree_in(i)
        if dr < dg:
            break
        lr = r.coeff_in(i, dr)
        shift = TPoly._raw(
            f.nvars,
            {tuple(dr - dg if j == i - 1 else 0 for j in range(f.nvars)): Fraction(1)},
        )
        r = lg * r - lr * shift * g
    return r


def _content_pp(p, i):
    """Content and primitive part of p with respect to t_i."""
    parts = [p.coeff_in(i, k) for k in range(p.degree_in(i) + 1)]
    cont = TPoly.zero(p.nvars)
    for q in parts:
        if not q.is_zero():
            cont = tpoly_gcd(cont, q)
    pp = p.exact_div(cont)
    assert pp is not None
    return cont, pp


def tpoly_gcd(a, b):
    """GCD over Q[t1..tk], normalized to coprime integer coefficients."""
    if a.is_zero():
        return _int_normalize(b)
    if b.is_zero():
        return _int_normalize(a)
    occ = a.occurring() | b.occurring()
    if not occ:
        return TPoly.one(a.nvars)
    v = max(occ)
    ca, pa = _content_pp(a, v)
    cb, pb = _content_pp(b, v)
    cg = tpoly_gcd(ca, cb)
    f, g = (pa, pb) if pa.degree_in(v) >= pb.degree_in(v) else (pb, pa)
    while not g.is_zero():
        r = _prem(f, g, v)
        if not r.is_zero():
            _, r = _content_pp(r, v)
        f, g = g, r
    if f.degree_in(v) <= 0:
        return _int_normalize(cg)
    return _int_normalize(cg * f)


def _reduce_pair(num, den):
    if num.is_zero():
        return num, TPoly.one(num.nvars)
    if not den.is_const():
        g = tpoly_gcd(num, den)
        if not (g.is_const() and g.const_value() == 1):
            num = num.exact_div(g)
            den = den.exact_div(g)
            assert num is not None and den is not None
    lc = den.lead_coeff()
    if lc != 1:
        num = num.scale(1 / lc)
        den = den.scale(1 / lc)
    return num, den


class Scalar:
    """A base-field element num/den, always in reduced canonical form."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = TPoly.one(num.nvars)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        num._check(den)
        self.num, self.den = _reduce_pair(num, den)

    @classmethod
    def _poly(cls, p):
        s = cls.__new__(cls)
        s.num = p
        s.den = TPoly.one(p.nvars)
        return s

    @classmethod
    def from_fraction(cls, nvars, q):
        return cls._poly(TPoly.const(nvars, q))

    @classmethod
    def zero(cls, nvars):
        return cls._poly(TPoly.zero(nvars))

    @classmethod
    def one(cls, nvars):
        return cls._poly(TPoly.one(nvars))

    @classmethod
    def t(cls, nvars, i):
        return cls._poly(TPoly.var(nvars, i))

    @property
    def nvars(self):
        return self.num.nvars

    def _den_is_one(self):
        return self.den.terms == {(0,) * self.den.nvars: Fraction(1)}

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self._den_is_one() and self.num.is_const() and self.num.const_value() == 1

    def is_const(self):
        return self.num.is_const() and self.den.is_const()

    def is_poly(self):
        return self._den_is_one()

    def as_fraction(self):
        if not self.is_const():
            raise ValueError("scalar is not a rational constant")
        return self.num.const_value() / self.den.const_value()

    def __add__(self, other):
        if self._den_is_one() and other._den_is_one():
            return Scalar._poly(self.num + other.num)
        return Scalar(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        if self._den_is_one() and other._den_is_one():
            return Scalar._poly(self.num - other.num)
        return Scalar(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self):
        s = Scalar.__new__(Scalar)
        s.num = -self.num
        s.den = self.den
        return s

    def __mul__(self, other):
        if self._den_is_one() and other._den_is_one():
            return Scalar._poly(self.num * other.num)
        return Scalar(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        return Scalar(self.num * other.den, self.den * other.num)

    def __pow__(self, k):
        if k < 0:
            return Scalar.one(self.nvars) / self ** (-k)
        r = Scalar.one(self.nvars)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def scale(self, q):
        q = Fraction(q)
        if not q:
            return Scalar.zero(self.nvars)
        s = Scalar.__new__(Scalar)
        s.num = self.num.scale(q)
        s.den = self.den
        return s

    def diff(self, i):
        """Derivative d/dt_i via the quotient rule."""
        if self._den_is_one():
            return Scalar._poly(self.num.diff(i))
        n = self.num.diff(i) * self.den - self.num * self.den.diff(i)
        return Scalar(n, self.den * self.den)

    def __eq__(self, other):
        return (
            isinstance(other, Scalar)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self._den_is_one():
            return f"Scalar({self.num!r})"
        return f"Scalar({self.num!r} / {self.den!r})"
