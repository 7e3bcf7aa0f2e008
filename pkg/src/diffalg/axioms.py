"""Delta-closed sets from finite generator data and the axiom-scheme checks.

Covers saturation-ideal membership through full reduction, the
characteristic-set certification pipeline (autoreduced, coherent, algebraic
primality), the naive-versus-prolonged variety comparison, the open-set
equality replay, and validation plus witness search for axiom instances.
Dominance of the projection is checked by an order-bounded elimination
surrogate and every verdict carries the truncation order used.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import (
    GREVLEX,
    AlgIdeal,
    PrimalityConfig,
    PrimalityVerdict,
    buchberger,
    eliminate,
    ideal_member,
    primality_oracle,
)
from .model import ModelPoint, eval_at_model_point, eval_poly, model_points
from .poly import DiffPoly
from .prolong import tau, tau_set
from .ranking import Ranking
from .reduction import (
    CoherenceReport,
    NotAutoreduced,
    RankedSystem,
    autoreduced_check,
    coherence_check,
    full_reduce,
)

CERTIFIED = "certified"
REJECTED = "rejected"
CONDITIONAL = "conditional"


@dataclass
class CharSetCertificate:
    """Outcome of the certification pipeline, re-verifiable from its parts."""

    status: str
    stage: str
    reason: str
    system: RankedSystem | None = None
    coherence: CoherenceReport | None = None
    primality: PrimalityVerdict | None = None
    algebraic_variables: tuple = ()


def charset_certify(polys, ranking=None, primality_config=None):
    """Autoreducedness, then coherence, then algebraic primality."""
    ranking = ranking or Ranking()
    polys = list(polys)
    if not polys:
        raise ValueError("cannot certify an empty system")
    try:
        system = autoreduced_check(polys, ranking)
    except NotAutoreduced as exc:
        return CharSetCertificate(REJECTED, "autoreduce", str(exc))
    coh = coherence_check(system)
    if not coh.coherent:
        bad = [p for p in coh.pairs if not p.remainder.is_zero()]
        return CharSetCertificate(
            REJECTED,
            "coherence",
            f"{len(bad)} cross-derivative pair(s) do not reduce to zero",
            system,
            coh,
        )
    ring = system.ring
    variables = tuple(
        sorted({v for f in system.elements for v in f.variables()},
               key=ranking.key, reverse=True)
    )
    ideal = buchberger(AlgIdeal(ring, variables, tuple(system.elements), GREVLEX))
    verdict = primality_oracle(ideal, primality_config)
    if verdict.status == "not_prime":
        return CharSetCertificate(
            REJECTED, "primality", verdict.note or "algebraic ideal is not prime",
            system, coh, verdict, variables,
        )
    if verdict.status == "prime" and verdict.method != "certificate":
        return CharSetCertificate(
            CERTIFIED, "complete", "coherent with prime algebraic ideal",
            system, coh, verdict, variables,
        )
    return CharSetCertificate(
        CONDITIONAL, "primality",
        verdict.note or "primality not settled by the oracle",
        system, coh, verdict, variables,
    )


def sat_ideal_member(f, cert):
    """Membership in the saturation ideal, certified by full reduction."""
    if cert.status == REJECTED or cert.system is None:
        raise ValueError("certificate is rejected; membership test refused")
    c = full_reduce(f, cert.system)
    return c.remainder.is_zero(), c


def _theta_layers(m, max_order):
    import itertools

    for total in range(max_order + 1):
        for theta in itertools.product(range(total + 1), repeat=m):
            if sum(theta) == total:
                yield theta


def saturation_members(cert, count, max_order=6):
    """Deterministic supply of distinct verified saturation-ideal members."""
    system = cert.system
    out, seen = [], set()

    def push(g):
        if g.is_zero() or g in seen:
            return
        ok, _ = sat_ideal_member(g, cert)
        if ok:
            seen.add(g)
            out.append(g)

    m = len(system.leaders[0].theta)
    for theta in _theta_layers(m, max_order):
        for f in system.elements:
            push(f.derive_theta(theta))
            if len(out) >= count:
                return out
    pool = sorted({v for f in system.elements for v in f.variables()},
                  key=lambda v: v.sort_key)
    base = list(out)
    for g in base:
        for v in pool:
            push(g * DiffPoly.var(g.ring, v))
            if len(out) >= count:
                return out
    for g in base:
        for h in base:
            push(g * h)
            if len(out) >= count:
                return out
    raise ValueError(f"could not assemble {count} distinct saturation-ideal members")


def naive_prolongation_gens(polys):
    """The uncorrected prolongation data {f, tau f} for the given generators."""
    out = []
    for f, tf in tau_set(polys):
        out.append(f)
        out.append(tf.value)
    return out


def _all_indices(ring):
    return range(1, ring.n + 1)


def doubled_samples(system, count, degree=1, height=1, extra_nonzero=()):
    """Pairs (a, b) with the system vanishing at a, H off zero, and the
    prolonged system vanishing at (a, b); documented enumeration order."""
    ring = system.ring
    taus = [tau(f).value for f in system.elements]
    pairs = []
    y_grid = None
    for pt in model_points(ring, _all_indices(ring), degree, height):
        if not all(eval_at_model_point(f, pt).is_zero() for f in system.elements):
            continue
        if eval_at_model_point(system.h, pt).is_zero():
            continue
        if not all(not eval_at_model_point(g, pt).is_zero() for g in extra_nonzero):
            continue
        if y_grid is None:
            y_grid = list(model_points(ring, _all_indices(ring), degree, height))
        for ypt in y_grid:
            if all(eval_poly(tf, pt, ypt).is_zero() for tf in taus):
                pairs.append((pt, ypt))
                if len(pairs) >= count:
                    return pairs
    return pairs


@dataclass
class DiscrepancyReport:
    status: str  # "found" | "not_found_at_bounds"
    point: tuple | None
    violated_member: DiffPoly | None
    violated_value: object | None
    members_tested: list = field(default_factory=list)
    candidates_examined: int = 0
    samples_checked: int = 0
    sample_failures: list = field(default_factory=list)


def naive_vs_tau_demo(raw_gens, cert, *, degree=1, height=1, members=10, samples=50):
    """Search the naive prolongation variety for a point missing the corrected
    one, then confirm the corrected data is clean on sampled open-set points."""
    ring = cert.system.ring
    members_list = saturation_members(cert, members)
    tau_members = [(g, tau(g).value) for g in members_list]

    raw_taus = [tau(f).value for f in raw_gens]
    found = None
    examined = 0
    y_grid = None
    for pt in model_points(ring, _all_indices(ring), degree, height):
        if not all(eval_at_model_point(f, pt).is_zero() for f in raw_gens):
            continue
        if y_grid is None:
            y_grid = list(model_points(ring, _all_indices(ring), degree, height))
        for ypt in y_grid:
            if not all(eval_poly(tf, pt, ypt).is_zero() for tf in raw_taus):
                continue
            examined += 1
            for g, tg in tau_members:
                val = eval_poly(tg, pt, ypt)
                if not val.is_zero():
                    found = ((pt, ypt), g, val)
                    break
            if found:
                break
        if found:
            break

    sample_pairs = doubled_samples(cert.system, samples, degree=max(degree, 2), height=height)
    failures = []
    for pt, ypt in sample_pairs:
        for g, tg in tau_members:
            val = eval_poly(tg, pt, ypt)
            if not val.is_zero():
                failures.append((pt, ypt, g, val))

    if found:
        return DiscrepancyReport(
            "found", found[0], found[1], found[2], members_list, examined,
            len(sample_pairs), failures,
        )
    return DiscrepancyReport(
        "not_found_at_bounds", None, None, None, members_list, examined,
        len(sample_pairs), failures,
    )


@dataclass
class OpenSetReport:
    ok: bool
    h_power: int
    symbolic_ok: bool
    sample_count: int
    failures: list


def open_set_equality_check(cert, g, samples):
    """Replay: members of the saturation ideal prolong to zero on the doubled
    data away from V(H), and the product-rule expansion of tau(H^l * g) holds."""
    member, rc = sat_ideal_member(g, cert)
    if not member:
        raise ValueError("g is not in the saturation ideal")
    ell = rc.steps
    system = cert.system
    h_l = system.h ** ell
    tg = tau(g).value
    lhs = tau(h_l * g).value
    rhs = h_l * tg + g * tau(h_l).value
    symbolic_ok = lhs == rhs
    taus = [tau(f).value for f in system.elements]
    failures = []
    for idx, (pt, ypt) in enumerate(samples):
        for f, tf in zip(system.elements, taus):
            if not eval_at_model_point(f, pt).is_zero():
                raise ValueError(f"sample {idx} does not satisfy the system")
            if not eval_poly(tf, pt, ypt).is_zero():
                raise ValueError(f"sample {idx} does not satisfy the prolonged system")
        if eval_at_model_point(system.h, pt).is_zero():
            raise ValueError(f"sample {idx} lies on the zero set of H")
        val = eval_poly(tg, pt, ypt)
        if not val.is_zero():
            failures.append((idx, val))
    return OpenSetReport(symbolic_ok and not failures, ell, symbolic_ok,
                         len(samples), failures)


@dataclass
class AxiomInstance:
    system: RankedSystem
    open_extra: tuple
    w_gens: tuple
    order_bound: int


@dataclass
class InstanceValidation:
    status: str  # "valid" | "rejected"
    failed: str | None
    certificate: CharSetCertificate | None
    o_point: ModelPoint | None
    order_bound: int


def instance_validate(inst, *, degree=1, height=1, primality_config=None):
    """Hypothesis checks: certified system, W inside the prolongation data,
    and a nonempty open set within the search bounds."""
    cert = charset_certify(inst.system.elements, inst.system.ranking, primality_config)
    if cert.status == REJECTED:
        return InstanceValidation(
            "rejected",
            f"characteristic-set certification failed at {cert.stage}: {cert.reason}",
            cert, None, inst.order_bound,
        )
    ring = inst.system.ring
    pairs = tau_set(inst.system.elements)
    pool = list(inst.w_gens) + [f for f, _ in pairs] + [t.value for _, t in pairs]
    variables = tuple(
        sorted({v for f in pool for v in f.variables()},
               key=inst.system.ranking.key, reverse=True)
    )
    over = [v for v in variables if v.order > inst.order_bound]
    if over:
        return InstanceValidation(
            "rejected",
            f"derivative {over[0].text()} exceeds the truncation order {inst.order_bound}",
            cert, None, inst.order_bound,
        )
    from .parser import poly_text

    w_ideal = buchberger(AlgIdeal(ring, variables, tuple(inst.w_gens), GREVLEX))
    for f, tf in pairs:
        if not ideal_member(f, w_ideal).member:
            return InstanceValidation(
                "rejected", f"system element {poly_text(f)} is not in the W ideal",
                cert, None, inst.order_bound,
            )
        if not ideal_member(tf.value, w_ideal).member:
            return InstanceValidation(
                "rejected", f"prolonged element {poly_text(tf.value)} is not in the W ideal",
                cert, None, inst.order_bound,
            )
    o_point = None
    for pt in model_points(ring, _all_indices(ring), degree, height):
        if not all(eval_at_model_point(f, pt).is_zero() for f in inst.system.elements):
            continue
        if eval_at_model_point(inst.system.h, pt).is_zero():
            continue
        if any(eval_at_model_point(g, pt).is_zero() for g in inst.open_extra):
            continue
        o_point = pt
        break
    if o_point is None:
        return InstanceValidation(
            "rejected", "no point of the open set found within the search bounds",
            cert, None, inst.order_bound,
        )
    return InstanceValidation("valid", None, cert, o_point, inst.order_bound)


@dataclass
class ProjectionVerdict:
    ok: bool
    order_bound: int
    eliminants: list
    residuals: list
    note: str = "order-bounded elimination surrogate for dominance of the projection"


def projection_closure_check(inst, validation):
    """Eliminate the y-family from the W ideal and reduce every eliminant."""
    if validation.status != "valid":
        raise ValueError("instance must validate before the projection check")
    ring = inst.system.ring
    variables = tuple(
        sorted({v for f in inst.w_gens for v in f.variables()},
               key=inst.system.ranking.key, reverse=True)
    )
    ideal = AlgIdeal(ring, variables, tuple(inst.w_gens), GREVLEX)
    drop = {v for v in variables if v.family == "y"}
    projected = eliminate(ideal, drop)
    residuals = []
    ok = True
    for g in projected.generators:
        rem = full_reduce(g, inst.system).remainder
        residuals.append((g, rem))
        if not rem.is_zero():
            ok = False
    return ProjectionVerdict(ok, inst.order_bound, list(projected.generators), residuals)


@dataclass
class CheckLine:
    label: str
    value: object
    want_zero: bool

    @property
    def ok(self):
        return self.value.is_zero() == self.want_zero


@dataclass
class WitnessReport:
    status: str  # "found" | "exhausted" | "invalid_instance"
    witness: ModelPoint | None
    checks: list
    examined: int
    bounds: tuple
    trail: list = field(default_factory=list)


def _witness_checks(inst, pt):
    """Fresh evaluation transcript for a candidate point."""
    from .parser import poly_text

    checks = []
    for f in inst.system.elements:
        checks.append(CheckLine(f"system: {poly_text(f)}", eval_at_model_point(f, pt), True))
    checks.append(CheckLine("H", eval_at_model_point(inst.system.h, pt), False))
    for g in inst.open_extra:
        checks.append(CheckLine(f"inequation: {poly_text(g)}", eval_at_model_point(g, pt), False))
    dpt = pt.d_companion()
    for w in inst.w_gens:
        checks.append(CheckLine(f"W: {poly_text(w)}", eval_poly(w, pt, dpt), True))
    return checks


def witness_search(inst, validation, *, degree=1, height=1):
    """First grid point of the open set whose D-companion pair lands in W."""
    if validation.status != "valid":
        return WitnessReport("invalid_instance", None, [], 0, (degree, height))
    ring = inst.system.ring
    examined = 0
    trail = []
    for pt in model_points(ring, _all_indices(ring), degree, height):
        examined += 1
        checks = _witness_checks(inst, pt)
        bad = next((c for c in checks if not c.ok), None)
        if bad is None:
            fresh = _witness_checks(inst, pt)
            if not all(c.ok for c in fresh):
                raise RuntimeError("witness failed re-verification")
            return WitnessReport("found", pt, fresh, examined, (degree, height), trail)
        trail.append((pt, bad.label))
    return WitnessReport("exhausted", None, [], examined, (degree, height), trail)
