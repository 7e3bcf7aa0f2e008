"""Ritt reduction against autoreduced systems, with verifiable certificates.

Every reduction returns a certificate whose identity

    premultiplier * input - remainder = sum cofactor[(g, theta)] * theta(g)

holds as an exact polynomial identity and can be re-expanded independently.
Elimination always targets the highest-ranked offending derivative; each step
multiplies by one separant (proper-derivative elimination) or one initial
(leader pseudo-division), so the premultiplier divides H^steps. Offending
variables are fixed from the top down; an elimination step only touches
variables ranked at or below the one being removed, so the highest offender
descends strictly and the loop terminates.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .poly import DiffPoly
from .ranking import Ranking, leader_initial_separant
from .ring import mi_geq, mi_max, mi_order, mi_sub, mi_zero

PARTIAL = "partial"
FULL = "full"


class NotAutoreduced(ValueError):
    """Rejection of a candidate system, carrying the offending pair."""

    def __init__(self, reason, i=None, j=None):
        self.reason = reason
        self.pair = (i, j)
        where = ""
        if i is not None and j is not None:
            where = f" (elements {i + 1} and {j + 1})"
        elif i is not None:
            where = f" (element {i + 1})"
        super().__init__(reason + where)


@dataclass(frozen=True)
class RankedSystem:
    """An autoreduced system with cached leaders, initials, separants and H."""

    ranking: Ranking
    elements: tuple
    leaders: tuple
    leader_degrees: tuple
    initials: tuple
    separants: tuple
    h: DiffPoly

    def __len__(self):
        return len(self.elements)

    @property
    def ring(self):
        return self.elements[0].ring if self.elements else None


def _reduced_wrt(f, u, d):
    """Is f free of proper derivatives of u, with degree in u below d?"""
    for v in f.variables():
        if v.family == u.family and v.index == u.index:
            if v.theta != u.theta and mi_geq(v.theta, u.theta):
                return False, f"contains the proper derivative {v.text()} of {u.text()}"
    if f.degree_in(u) >= d:
        return False, f"has degree {f.degree_in(u)} >= {d} in the leader {u.text()}"
    return True, ""


def autoreduced_check(polys, ranking):
    """Accept a sequence as an autoreduced system, or raise NotAutoreduced."""
    polys = list(polys)
    parts = []
    for i, f in enumerate(polys):
        if f.is_zero() or f.is_scalar():
            raise NotAutoreduced("element is a scalar; a proper system has none", i)
        parts.append(leader_initial_separant(f, ranking))
    for i in range(len(polys)):
        for j in range(len(polys)):
            if i == j:
                continue
            ui, d = parts[i][0], polys[i].degree_in(parts[i][0])
            ok, why = _reduced_wrt(polys[j], ui, d)
            if not ok:
                raise NotAutoreduced(f"element {why}", j, i)
            if parts[i][0] == parts[j][0]:
                raise NotAutoreduced("two elements share a leader", i, j)
    order = sorted(range(len(polys)), key=lambda k: ranking.key(parts[k][0]))
    elements = tuple(polys[k] for k in order)
    leaders = tuple(parts[k][0] for k in order)
    degrees = tuple(polys[k].degree_in(parts[k][0]) for k in order)
    initials = tuple(parts[k][1] for k in order)
    separants = tuple(parts[k][2] for k in order)
    if elements:
        h = DiffPoly.one(elements[0].ring)
        for ini, sep in zip(initials, separants):
            h = h * ini * sep
        assert not h.is_zero()
    else:
        h = None
    return RankedSystem(ranking, elements, leaders, degrees, initials, separants, h)


def h_product(system):
    """Product of the initials and separants of all elements."""
    return system.h


@dataclass
class ReductionCertificate:
    mode: str
    input: DiffPoly
    remainder: DiffPoly
    premultiplier: DiffPoly
    cofactors: dict = field(default_factory=dict)
    steps: int = 0

    def verify(self, system):
        """Re-expand the certificate identity from scratch."""
        lhs = self.premultiplier * self.input - self.remainder
        rhs = DiffPoly.zero(self.input.ring)
        for (gi, theta), q in self.cofactors.items():
            rhs = rhs + q * system.elements[gi].derive_theta(theta)
        return lhs == rhs

    @property
    def h_power_bound(self):
        return self.steps


def _violation(p, system, mode):
    """Highest-ranked variable of p violating reducedness, with its reducer."""
    rk = system.ranking.key
    best = None
    for v in p.variables():
        choice = None
        for gi, lg in enumerate(system.leaders):
            if lg.family != v.family or lg.index != v.index:
                continue
            if v.theta == lg.theta:
                if mode == FULL and p.degree_in(v) >= system.leader_degrees[gi]:
                    choice = (gi, mi_zero(len(v.theta)))
                    break
            elif mi_geq(v.theta, lg.theta):
                if choice is None or rk(system.leaders[choice[0]]) < rk(lg):
                    choice = (gi, mi_sub(v.theta, lg.theta))
        if choice is not None:
            k = rk(v)
            if best is None or k > best[0]:
                best = (k, v, choice[0], choice[1])
    return None if best is None else (best[1], best[2], best[3])


def _reduce(f, system, mode):
    ring = f.ring
    p = f
    premult = DiffPoly.one(ring)
    cof = {}
    steps = 0
    while not p.is_zero():
        viol = _violation(p, system, mode)
        if viol is None:
            break
        v, gi, theta = viol
        if mi_order(theta):
            divisor = system.elements[gi].derive_theta(theta)
            ini = system.separants[gi]
            dmin = 1
        else:
            divisor = system.elements[gi]
            ini = system.initials[gi]
            dmin = system.leader_degrees[gi]
        while not p.is_zero():
            e = p.degree_in(v)
            if e < dmin:
                break
            c = p.coeff_power(v, e)
            mult = c * DiffPoly.var(ring, v, e - dmin)
            p = ini * p - mult * divisor
            premult = ini * premult
            for k in list(cof):
                cof[k] = ini * cof[k]
            key = (gi, theta)
            cof[key] = cof[key] + mult if key in cof else mult
            steps += 1
    return ReductionCertificate(mode, f, p, premult, cof, steps)


def partial_reduce(f, system):
    """Eliminate every proper derivative of a leader; separant premultipliers only."""
    return _reduce(f, system, PARTIAL)


def full_reduce(f, system):
    """Partial reduction plus pseudo-division below each leader degree."""
    return _reduce(f, system, FULL)


def is_reduced(f, system, mode=FULL):
    return f.is_zero() or _violation(f, system, mode) is None


@dataclass
class DeltaPairEvidence:
    """One cross-derivative pair and its reduction against the system."""

    hi: int
    lo: int
    delta_poly: DiffPoly
    certificate: ReductionCertificate

    @property
    def remainder(self):
        return self.certificate.remainder


@dataclass
class CoherenceReport:
    coherent: bool
    pairs: list


def coherence_check(system):
    """Reduce every cross-derivative pair to zero, or report the failures.

    For elements a, b whose leaders derive the same variable, with a the
    higher-ranked one and theta the join of the two leader operators, the pair
    is S_b * (theta - theta_a)(a) - S_a * (theta - theta_b)(b).
    """
    evidence = []
    coherent = True
    for i in range(len(system.elements)):
        for j in range(i + 1, len(system.elements)):
            ui, uj = system.leaders[i], system.leaders[j]
            if ui.family != uj.family or ui.index != uj.index:
                continue
            hi, lo = j, i  # elements are sorted ascending; j has the higher leader
            ua, ub = system.leaders[hi], system.leaders[lo]
            theta = mi_max(ua.theta, ub.theta)
            a_shift = system.elements[hi].derive_theta(mi_sub(theta, ua.theta))
            b_shift = system.elements[lo].derive_theta(mi_sub(theta, ub.theta))
            delta = system.separants[lo] * a_shift - system.separants[hi] * b_shift
            cert = full_reduce(delta, system)
            evidence.append(DeltaPairEvidence(hi, lo, delta, cert))
            if not cert.remainder.is_zero():
                coherent = False
    return CoherenceReport(coherent, evidence)
