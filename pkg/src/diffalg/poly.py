"""Sparse differential polynomials with exact scalar coefficients.

A polynomial is a map from monomials (multisets of derivative variables) to
nonzero scalars. Values are immutable after construction and every operation
returns a fresh canonical value, so sharing is always safe.
"""

from __future__ import annotations

from fractions import Fraction

from .ring import DerivVar, RingContext
from .scalars import Scalar, TPoly

# A monomial is a tuple of (DerivVar, exponent) pairs with positive exponents,
# sorted by the canonical variable key.
EMPTY_MONO = ()


def mono_from(pairs):
    items = [(v, e) for v, e in pairs if e]
    if any(e < 0 for _, e in items):
        raise ValueError("negative exponent in monomial")
    items.sort(key=lambda it: it[0].sort_key)
    return tuple(items)


def mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items(), key=lambda it: it[0].sort_key))


def mono_degree(m):
    return sum(e for _, e in m)


def mono_drop(m, v, k=1):
    """Divide the monomial by v^k."""
    out = []
    for w, e in m:
        if w == v:
            if e < k:
                raise ValueError("monomial not divisible")
            if e > k:
                out.append((w, e - k))
        else:
            out.append((w, e))
    return tuple(out)


class DiffPoly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms=None):
        self.ring = ring
        clean = {}
        if terms:
            for mono, c in terms.items():
                if not isinstance(c, Scalar):
                    c = Scalar.from_fraction(ring.nt, c)
                if c.nvars != ring.nt:
                    raise ValueError("scalar arity does not match ring")
                for v, e in mono:
                    if len(v.theta) != ring.m:
                        raise ValueError(f"variable {v} does not fit m={ring.m}")
                    if v.index > ring.n:
                        raise ValueError(f"variable {v} out of range (n={ring.n})")
                    if e <= 0:
                        raise ValueError("non-positive exponent in monomial")
                if not c.is_zero():
                    clean[mono] = c
        self.terms = clean

    @classmethod
    def _raw(cls, ring, terms):
        p = cls.__new__(cls)
        p.ring = ring
        p.terms = terms
        return p

    @classmethod
    def zero(cls, ring):
        return cls._raw(ring, {})

    @classmethod
    def const(cls, ring, c):
        if not isinstance(c, Scalar):
            c = Scalar.from_fraction(ring.nt, c)
        if c.is_zero():
            return cls.zero(ring)
        return cls._raw(ring, {EMPTY_MONO: c})

    @classmethod
    def one(cls, ring):
        return cls.const(ring, 1)

    @classmethod
    def var(cls, ring, v, exp=1):
        if exp == 0:
            return cls.one(ring)
        return cls(ring, {((v, exp),): Scalar.one(ring.nt)})

    def _check(self, other):
        if self.ring != other.ring:
            raise ValueError("mixed ring contexts")

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_scalar(self):
        return not self.terms or (len(self.terms) == 1 and EMPTY_MONO in self.terms)

    def scalar_value(self):
        if not self.is_scalar():
            raise ValueError("polynomial is not a scalar")
        return self.terms.get(EMPTY_MONO, Scalar.zero(self.ring.nt))

    def variables(self):
        out = set()
        for mono in self.terms:
            for v, _ in mono:
                out.add(v)
        return out

    def has_family(self, family):
        return any(v.family == family for v in self.variables())

    def total_degree(self):
        return max((mono_degree(m) for m in self.terms), default=0)

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for mono, c in other.terms.items():
            s = t.get(mono)
            s = c if s is None else s + c
            if s.is_zero():
                t.pop(mono, None)
            else:
                t[mono] = s
        return DiffPoly._raw(self.ring, t)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return DiffPoly._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        self._check(other)
        t = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                c = c1 * c2
                s = t.get(m)
                s = c if s is None else s + c
                if s.is_zero():
                    t.pop(m, None)
                else:
                    t[m] = s
        return DiffPoly._raw(self.ring, t)

    def __pow__(self, k):
        if k < 0:
            raise ValueError("exponent must be non-negative")
        r = DiffPoly.one(self.ring)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def scale(self, c):
        if not isinstance(c, Scalar):
            c = Scalar.from_fraction(self.ring.nt, c)
        if c.is_zero():
            return DiffPoly.zero(self.ring)
        return DiffPoly._raw(self.ring, {m: k * c for m, k in self.terms.items()})

    def map_coeffs(self, fn):
        t = {}
        for m, c in self.terms.items():
            c2 = fn(c)
            if not c2.is_zero():
                t[m] = c2
        return DiffPoly._raw(self.ring, t)

    def derive(self, i):
        """Apply the derivation delta_i (Leibniz over monomials, d/dt_i on coefficients)."""
        if not 1 <= i <= self.ring.m:
            raise ValueError(f"no derivation d{i} (m={self.ring.m})")
        out = {}

        def acc(mono, c):
            s = out.get(mono)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(mono, None)
            else:
                out[mono] = s

        for mono, c in self.terms.items():
            dc = c.diff(i)
            if not dc.is_zero():
                acc(mono, dc)
            for v, e in mono:
                rest = mono_drop(mono, v, 1)
                bumped = mono_mul(rest, ((v.derived(i), 1),))
                acc(bumped, c.scale(e))
        return DiffPoly._raw(self.ring, out)

    def derive_theta(self, theta):
        p = self
        for i, k in enumerate(theta, start=1):
            for _ in range(k):
                p = p.derive(i)
        return p

    def formal_partial(self, v):
        """Formal polynomial partial derivative in the single variable v."""
        out = {}
        for mono, c in self.terms.items():
            for w, e in mono:
                if w == v:
                    m2 = mono_drop(mono, v, 1)
                    s = out.get(m2)
                    c2 = c.scale(e)
                    s = c2 if s is None else s + c2
                    if s.is_zero():
                        out.pop(m2, None)
                    else:
                        out[m2] = s
        return DiffPoly._raw(self.ring, out)

    def degree_in(self, v):
        return max((dict(m).get(v, 0) for m in self.terms), default=0)

    def coeff_power(self, v, k):
        """Coefficient of v^k, as a polynomial with v struck out."""
        t = {}
        for mono, c in self.terms.items():
            if dict(mono).get(v, 0) == k:
                t[mono_drop(mono, v, k) if k else mono] = c
        return DiffPoly._raw(self.ring, t)

    def as_univariate(self, v):
        """Split into {degree in v: coefficient polynomial}."""
        out = {}
        for mono, c in self.terms.items():
            k = dict(mono).get(v, 0)
            m2 = mono_drop(mono, v, k) if k else mono
            bucket = out.setdefault(k, {})
            s = bucket.get(m2)
            s = c if s is None else s + c
            bucket[m2] = s
        return {
            k: DiffPoly._raw(self.ring, {m: c for m, c in t.items() if not c.is_zero()})
            for k, t in out.items()
        }

    def __eq__(self, other):
        return (
            isinstance(other, DiffPoly)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __repr__(self):
        from .parser import poly_text

        try:
            return f"DiffPoly({poly_text(self)})"
        except ValueError:
            return f"DiffPoly(<{len(self.terms)} terms, rational-function coefficients>)"


def clear_denominators(f):
    """Scale f by the lcm of its coefficient denominators; returns a poly with
    polynomial coefficients generating the same ideal."""
    from .scalars import tpoly_gcd

    acc = TPoly.one(f.ring.nt)
    for c in f.terms.values():
        g = tpoly_gcd(acc, c.den)
        q = acc.exact_div(g)
        acc = c.den * q
    factor = Scalar._poly(acc)
    return f.scale(factor) if not acc.is_const() or acc.const_value() != 1 else f


def poly_from_tpoly(ring, p):
    """Lift a t-polynomial into the differential ring as a constant term."""
    return DiffPoly.const(ring, Scalar._poly(p))


def frac(q_or_num, den=None):
    return Fraction(q_or_num, den) if den is not None else Fraction(q_or_num)
