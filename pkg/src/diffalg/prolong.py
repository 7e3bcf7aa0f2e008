"""The prolongation operator: f(x) -> tau f(x, y), linear in the y-family.

tau f = f with every coefficient differentiated in the D-direction, plus the
sum over occurring derivatives theta x_i of (formal partial of f) * theta y_i.
Evaluating tau f at a model point paired with its D-companion reproduces the
D-derivative of the value of f; that chain-rule contract is checkable exactly.
Repeated application is intentionally unsupported: no identity is claimed for
iterating the operator.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import eval_at_model_point, eval_poly
from .poly import DiffPoly
from .ring import RATIONAL_T


@dataclass(frozen=True)
class TauPoly:
    """Prolongation output; every monomial is at most linear in the y-family."""

    value: DiffPoly

    def __post_init__(self):
        for mono in self.value.terms:
            ydeg = sum(e for v, e in mono if v.family == "y")
            if ydeg > 1:
                raise ValueError("prolongation output must be linear in the y-family")

    @property
    def ring(self):
        return self.value.ring

    def y_part_zeroed(self):
        """Drop all y-terms; recovers the coefficientwise D-derivative."""
        kept = {
            m: c
            for m, c in self.value.terms.items()
            if all(v.family != "y" for v, _ in m)
        }
        return DiffPoly._raw(self.value.ring, dict(kept))


def tau(f):
    """Prolong an x-polynomial."""
    if f.has_family("y"):
        raise ValueError("prolongation input must not contain y-variables")
    ring = f.ring
    out = f.map_coeffs(lambda c: c.diff(ring.nt))
    for v in sorted(f.variables(), key=lambda w: w.sort_key):
        part = f.formal_partial(v)
        if not part.is_zero():
            out = out + part * DiffPoly.var(ring, v.shadow("y"))
    return TauPoly(out)


def tau_set(polys):
    """Prolongation data {(f, tau f)} in input order."""
    return [(f, tau(f)) for f in polys]


@dataclass
class DCompatReport:
    ok: bool
    lhs: object  # tau f at (point, D point)
    rhs: object  # D of f at point


def d_compatibility_check(f, point):
    """Exact chain-rule check: tau f(a, Da) equals D(f(a))."""
    if point.ring.field_mode != RATIONAL_T:
        raise ValueError("the chain-rule check needs the rational_t field mode")
    t = tau(f)
    lhs = eval_poly(t.value, point, point.d_companion())
    rhs = eval_at_model_point(f, point).diff(point.ring.nt)
    return DCompatReport(lhs == rhs, lhs, rhs)
