"""Concrete evaluation oracle: assignments of t-polynomials to the x-variables.

A model point sends each x_j to a polynomial in t1..t_{m+1}; derivative
variables evaluate to iterated partial derivatives of the assignment, so
every polynomial evaluates to an exact scalar. The companion point obtained
by differentiating in the last t-symbol plays the role of the D-image.
"""

from __future__ import annotations

import itertools

from .ring import RingContext
from .scalars import Scalar, TPoly


class ModelPoint:
    __slots__ = ("ring", "assignment")

    def __init__(self, ring, assignment):
        self.ring = ring
        clean = {}
        for j, p in assignment.items():
            if not 1 <= j <= ring.n:
                raise ValueError(f"x{j} out of range (n={ring.n})")
            if not isinstance(p, TPoly) or p.nvars != ring.nt:
                raise ValueError(f"assignment for x{j} must be a t-polynomial")
            clean[j] = p
        self.assignment = clean

    def get(self, j):
        try:
            return self.assignment[j]
        except KeyError:
            raise ValueError(f"x{j} is not assigned") from None

    def d_companion(self):
        """The point with every assignment differentiated in the D-direction."""
        return ModelPoint(
            self.ring, {j: p.diff(self.ring.nt) for j, p in self.assignment.items()}
        )

    def __eq__(self, other):
        return (
            isinstance(other, ModelPoint)
            and self.ring == other.ring
            and self.assignment == other.assignment
        )

    def __hash__(self):
        return hash((self.ring, frozenset(self.assignment.items())))

    def __repr__(self):
        inner = ", ".join(f"x{j} := {p!r}" for j, p in sorted(self.assignment.items()))
        return f"ModelPoint({inner})"


def _theta_value(base, theta):
    p = base
    for i, k in enumerate(theta, start=1):
        for _ in range(k):
            p = p.diff(i)
    return p


def eval_poly(f, point, y_point=None):
    """Evaluate f at the point; y-variables read from y_point when given."""
    nt = f.ring.nt
    total = Scalar.zero(nt)
    cache = {}
    for mono, c in f.terms.items():
        val = c
        for v, e in mono:
            key = v
            got = cache.get(key)
            if got is None:
                if v.family == "x":
                    base = point.get(v.index)
                else:
                    if y_point is None:
                        raise ValueError(f"y-variable {v.text()} present but no y-assignment given")
                    base = y_point.get(v.index)
                got = Scalar._poly(_theta_value(base, v.theta))
                cache[key] = got
            val = val * got ** e
        total = total + val
    return total


def eval_at_model_point(f, point):
    """Exact scalar value of an x-polynomial at a model point."""
    if f.has_family("y"):
        raise ValueError("polynomial contains y-variables; evaluate with an explicit y-assignment")
    return eval_poly(f, point)


def t_monomials(nt, degree):
    """Exponent vectors of total degree <= degree, sorted by (degree, lex)."""
    out = []
    for total in range(degree + 1):
        for e in itertools.product(range(total + 1), repeat=nt):
            if sum(e) == total:
                out.append(e)
    return out


def coefficient_ladder(height):
    """0, 1, -1, 2, -2, ... up to the height bound."""
    out = [0]
    for k in range(1, height + 1):
        out.extend((k, -k))
    return out


def model_polys(ring, degree, height):
    """All candidate t-polynomials in the documented order.

    Candidates are layered by the highest monomial degree actually used;
    within a layer the integer coefficient vectors run lexicographically with
    the ladder order 0, 1, -1, 2, -2, ... per coordinate and the earlier
    (lower-degree) monomial coordinates varying slowest.
    """
    ladder = coefficient_ladder(height)
    out = []
    for layer in range(degree + 1):
        monos = t_monomials(ring.nt, layer)
        for coeffs in itertools.product(ladder, repeat=len(monos)):
            used = max((sum(e) for e, c in zip(monos, coeffs) if c), default=0)
            if used != layer:
                continue
            terms = {e: c for e, c in zip(monos, coeffs) if c}
            out.append(TPoly(ring.nt, terms))
    return out


def model_points(ring, indices, degree, height):
    """All candidate model points over the given x-indices, documented order.

    Points are layered by the maximum assignment degree; within a layer the
    per-variable polynomial candidates run in the model_polys order with the
    first index varying slowest.
    """
    indices = list(indices)
    for layer in range(degree + 1):
        pool = model_polys(ring, layer, height)
        for combo in itertools.product(pool, repeat=len(indices)):
            eff = max((max(p.total_degree(), 0) for p in combo), default=0)
            if eff == layer:
                yield ModelPoint(ring, dict(zip(indices, combo)))
