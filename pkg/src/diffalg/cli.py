"""Single executable exposing every operation over the shared grammar.

Exit codes: 0 success/found/certified, 2 rejected/exhausted/not-member,
1 usage error. Every report re-verifies its own certificates before printing
and ends with a machine-readable trailer block.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from .algebra import (
    GREVLEX,
    LEX,
    AlgIdeal,
    PrimalityConfig,
    buchberger,
    eliminate,
    ideal_member,
    primality_oracle,
    saturate,
)
from .axioms import (
    charset_certify,
    instance_validate,
    naive_vs_tau_demo,
    projection_closure_check,
    witness_search,
)
from .instances import (
    InstanceFormatError,
    build_axiom_instance,
    load_instance_file,
)
from .model import ModelPoint
from .parser import ParseError, parse_poly, parse_tpoly, poly_text, scalar_text
from .prolong import d_compatibility_check, tau
from .ranking import ELIMINATION, ORDERLY, Ranking
from .reduction import (
    NotAutoreduced,
    autoreduced_check,
    coherence_check,
    full_reduce,
    h_product,
    partial_reduce,
)
from .ring import CONSTANTS, RATIONAL_T, RingContext
from .scalars import Scalar

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_REJECTED = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    """Resolved per-invocation configuration."""

    ring: RingContext
    ranking: Ranking
    order_bound: int = 2
    degree: int = 1
    height: int = 1
    factor_degree: int = 2
    factor_height: int = 2
    machine: bool = False
    seed: int | None = None

    def __post_init__(self):
        for name in ("order_bound", "degree", "height", "factor_degree", "factor_height"):
            if getattr(self, name) < 1:
                raise _UsageError(f"{name} must be positive")


def run_config(args, ring=None, ranking=None, bounds=None):
    bounds = bounds or {}
    return RunConfig(
        ring=ring if ring is not None else _ring_from(args),
        ranking=ranking if ranking is not None else _ranking_from(args),
        order_bound=bounds.get("order", 2),
        degree=bounds.get("degree", getattr(args, "degree", None) or 1),
        height=bounds.get("height", getattr(args, "height", None) or 1),
        factor_degree=getattr(args, "degree_bound", 2),
        factor_height=getattr(args, "height_bound", 2),
        machine=getattr(args, "machine", False),
        seed=getattr(args, "seed", None),
    )


def _tpoly_text(p):
    return scalar_text(Scalar._poly(p))


def _scalar_out(s):
    if s.is_poly():
        return scalar_text(s)
    return f"({scalar_text(Scalar._poly(s.num))}) / ({scalar_text(Scalar._poly(s.den))})"


def _point_text(pt):
    return ", ".join(f"x{j} := {_tpoly_text(p)}" for j, p in sorted(pt.assignment.items()))


def _ring_from(args):
    mode = RATIONAL_T if args.field == "rational_t" else CONSTANTS
    return RingContext(m=args.m, n=args.n, field_mode=mode)


def _ranking_from(args):
    spec = getattr(args, "ranking", ORDERLY)
    if spec == ORDERLY:
        return Ranking()
    if spec.startswith(ELIMINATION):
        _, _, perm = spec.partition(":")
        if not perm:
            raise _UsageError("elimination ranking needs a permutation, e.g. elimination:2,1")
        return Ranking(ELIMINATION, tuple(int(k) for k in perm.split(",")))
    raise _UsageError(f"unknown ranking {spec!r}")


def _system_polys(args, ring):
    if getattr(args, "system_file", None):
        data = load_instance_file(args.system_file)
        return data.lam, data.ring, data.ranking
    if not getattr(args, "system", None):
        raise _UsageError("provide --system or --system-file")
    polys = [parse_poly(chunk, ring) for chunk in args.system.split(";") if chunk.strip()]
    return polys, ring, _ranking_from(args)


def _parse_vars(text, ring):
    out = []
    for chunk in text.replace(",", " ").split():
        p = parse_poly(chunk, ring)
        vs = p.variables()
        if len(vs) != 1 or len(p.terms) != 1:
            raise _UsageError(f"{chunk!r} is not a single variable")
        out.append(next(iter(vs)))
    return tuple(out)


def _parse_model(text, ring):
    assignment = {}
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        lhs, _, rhs = chunk.partition("=")
        lhs = lhs.strip()
        if not lhs.startswith("x"):
            raise _UsageError(f"model assignments look like x1=t2, got {chunk!r}")
        j = int(lhs[1:])
        assignment[j] = parse_tpoly(rhs.strip(), ring)
    return ModelPoint(ring, assignment)


def _emit(lines, trailer, args, code):
    trailer = dict(trailer)
    trailer["exit"] = str(code)
    if getattr(args, "seed", None) is not None:
        trailer["seed"] = str(args.seed)
    if not getattr(args, "machine", False):
        for line in lines:
            print(line)
    print("---")
    for k, v in trailer.items():
        print(f"{k}: {v}")
    return code


def _cmd_tau(args):
    ring = _ring_from(args)
    f = parse_poly(args.expr, ring)
    t = tau(f)
    lines = [poly_text(t.value)]
    trailer = {"status": "ok", "tau": poly_text(t.value)}
    code = EXIT_OK
    if args.check_point:
        pt = _parse_model(args.check_point, ring)
        rep = d_compatibility_check(f, pt)
        lines.append(f"tau value at (point, D point): {_scalar_out(rep.lhs)}")
        lines.append(f"D of value at point:           {_scalar_out(rep.rhs)}")
        lines.append(f"chain rule: {'ok' if rep.ok else 'VIOLATED'}")
        trailer["chain_rule"] = "ok" if rep.ok else "violated"
        code = EXIT_OK if rep.ok else EXIT_REJECTED
    return _emit(lines, trailer, args, code)


def _cmd_reduce(args):
    ring = _ring_from(args)
    polys, ring, ranking = _system_polys(args, ring)
    f = parse_poly(args.expr, ring)
    try:
        system = autoreduced_check(polys, ranking)
    except NotAutoreduced as exc:
        return _emit([f"rejected: {exc}"], {"status": "rejected", "reason": str(exc)},
                     args, EXIT_REJECTED)
    cert = partial_reduce(f, system) if args.mode == "partial" else full_reduce(f, system)
    if not cert.verify(system):
        raise RuntimeError("reduction certificate failed re-verification")
    lines = [
        f"mode: {cert.mode}",
        f"remainder: {poly_text(cert.remainder)}",
        f"premultiplier: {poly_text(cert.premultiplier)}",
        f"steps: {cert.steps}",
    ]
    for (gi, theta), q in sorted(cert.cofactors.items()):
        ds = "".join(f"d{j + 1}" * k for j, k in enumerate(theta)) or "id"
        lines.append(f"cofactor[{ds} applied to element {gi + 1}]: {poly_text(q)}")
    if args.check:
        lines.append("certificate identity: verified by re-expansion")
    trailer = {
        "status": "ok",
        "remainder": poly_text(cert.remainder),
        "premultiplier": poly_text(cert.premultiplier),
        "steps": str(cert.steps),
        "verified": "true",
    }
    return _emit(lines, trailer, args, EXIT_OK)


def _cmd_coherent(args):
    ring = _ring_from(args)
    polys, ring, ranking = _system_polys(args, ring)
    try:
        system = autoreduced_check(polys, ranking)
    except NotAutoreduced as exc:
        return _emit([f"rejected: {exc}"], {"status": "rejected", "reason": str(exc)},
                     args, EXIT_REJECTED)
    rep = coherence_check(system)
    lines = []
    for ev in rep.pairs:
        if not ev.certificate.verify(system):
            raise RuntimeError("coherence reduction certificate failed re-verification")
        lines.append(
            f"pair (elements {ev.hi + 1}, {ev.lo + 1}): remainder {poly_text(ev.remainder)}"
        )
    lines.append("coherent" if rep.coherent else "incoherent")
    trailer = {"status": "coherent" if rep.coherent else "incoherent",
               "pairs": str(len(rep.pairs))}
    return _emit(lines, trailer, args, EXIT_OK if rep.coherent else EXIT_REJECTED)


def _cmd_hprod(args):
    ring = _ring_from(args)
    polys, ring, ranking = _system_polys(args, ring)
    try:
        system = autoreduced_check(polys, ranking)
    except NotAutoreduced as exc:
        return _emit([f"rejected: {exc}"], {"status": "rejected", "reason": str(exc)},
                     args, EXIT_REJECTED)
    h = h_product(system)
    return _emit([poly_text(h)], {"status": "ok", "h": poly_text(h)}, args, EXIT_OK)


def _algideal_from(args, ring):
    variables = _parse_vars(args.vars, ring)
    gens = tuple(parse_poly(chunk, ring) for chunk in args.gens.split(";") if chunk.strip())
    order = LEX if args.order == "lex" else GREVLEX
    return AlgIdeal(ring, variables, gens, order)


def _cmd_groebner(args):
    ring = _ring_from(args)
    ideal = buchberger(_algideal_from(args, ring))
    lines = [poly_text(g) for g in ideal.basis] or ["0"]
    trailer = {"status": "ok", "size": str(len(ideal.basis)), "order": ideal.order}
    return _emit(lines, trailer, args, EXIT_OK)


def _cmd_member(args):
    ring = _ring_from(args)
    ideal = buchberger(_algideal_from(args, ring))
    f = parse_poly(args.expr, ring)
    cert = ideal_member(f, ideal)
    lines = [
        f"member: {'yes' if cert.member else 'no'}",
        f"normal form: {poly_text(cert.normal_form)}",
    ]
    trailer = {"status": "member" if cert.member else "not-member",
               "normal_form": poly_text(cert.normal_form)}
    return _emit(lines, trailer, args, EXIT_OK if cert.member else EXIT_REJECTED)


def _cmd_eliminate(args):
    ring = _ring_from(args)
    ideal = _algideal_from(args, ring)
    drop = set(_parse_vars(args.drop, ring))
    out = eliminate(ideal, drop)
    lines = [poly_text(g) for g in out.generators] or ["0"]
    trailer = {"status": "ok", "size": str(len(out.generators))}
    return _emit(lines, trailer, args, EXIT_OK)


def _cmd_saturate(args):
    ring = _ring_from(args)
    ideal = _algideal_from(args, ring)
    h = parse_poly(args.by, ring)
    out = saturate(ideal, h)
    lines = [poly_text(g) for g in out.generators] or ["0"]
    trailer = {"status": "ok", "size": str(len(out.generators))}
    return _emit(lines, trailer, args, EXIT_OK)


def _primality_config(args):
    cfg = run_config(args)
    return PrimalityConfig(
        factor_degree=cfg.factor_degree,
        factor_height=cfg.factor_height,
        seed=cfg.seed or 0,
        assert_prime=getattr(args, "assert_prime", False),
    )


def _cmd_prime(args):
    ring = _ring_from(args)
    ideal = _algideal_from(args, ring)
    verdict = primality_oracle(ideal, _primality_config(args))
    lines = [f"status: {verdict.status}", f"method: {verdict.method}"]
    if verdict.witness:
        a, b = verdict.witness
        lines.append(f"witness: ({poly_text(a)}) * ({poly_text(b)})")
    if verdict.note:
        lines.append(f"note: {verdict.note}")
    trailer = {"status": verdict.status, "method": verdict.method}
    return _emit(lines, trailer, args, EXIT_OK if verdict.status == "prime" else EXIT_REJECTED)


def _cmd_certify(args):
    data = load_instance_file(args.file)
    config = PrimalityConfig(seed=args.seed or 0)
    cert = charset_certify(data.lam, data.ranking, config)
    lines = [f"status: {cert.status}", f"stage: {cert.stage}", f"reason: {cert.reason}"]
    if cert.coherence is not None:
        for ev in cert.coherence.pairs:
            if not ev.certificate.verify(cert.system):
                raise RuntimeError("coherence reduction certificate failed re-verification")
            lines.append(
                f"pair (elements {ev.hi + 1}, {ev.lo + 1}): remainder {poly_text(ev.remainder)}"
            )
    if cert.primality is not None:
        lines.append(f"primality: {cert.primality.status} ({cert.primality.method})")
        if cert.primality.witness:
            a, b = cert.primality.witness
            lines.append(f"zero-divisor witness: ({poly_text(a)}) * ({poly_text(b)})")
    trailer = {"status": cert.status, "stage": cert.stage}
    code = EXIT_REJECTED if cert.status == "rejected" else EXIT_OK
    return _emit(lines, trailer, args, code)


def _load_instance(args):
    data = load_instance_file(args.file)
    return data, build_axiom_instance(data)


def _cmd_axiom(args):
    try:
        data, inst = _load_instance(args)
    except NotAutoreduced as exc:
        return _emit([f"rejected: {exc}"], {"status": "rejected", "reason": str(exc)},
                     args, EXIT_REJECTED)
    cfg = run_config(args, ring=data.ring, ranking=data.ranking, bounds=data.bounds)
    degree = args.degree if args.degree is not None else cfg.degree
    height = args.height if args.height is not None else cfg.height
    validation = instance_validate(inst, degree=degree, height=height)
    if args.what == "validate":
        lines = [f"status: {validation.status}"]
        if validation.failed:
            lines.append(f"reason: {validation.failed}")
        if validation.o_point is not None:
            lines.append(f"open-set point: {_point_text(validation.o_point)}")
        trailer = {"status": validation.status, "order_bound": str(validation.order_bound)}
        code = EXIT_OK if validation.status == "valid" else EXIT_REJECTED
        return _emit(lines, trailer, args, code)
    if validation.status != "valid":
        return _emit(
            [f"rejected: {validation.failed}"],
            {"status": "rejected", "reason": str(validation.failed)},
            args, EXIT_REJECTED,
        )
    if args.what == "project":
        verdict = projection_closure_check(inst, validation)
        lines = [f"surrogate order bound: {verdict.order_bound}"]
        for g, rem in verdict.residuals:
            lines.append(f"eliminant {poly_text(g)}: remainder {poly_text(rem)}")
        lines.append("projection covers the open set" if verdict.ok
                     else "projection misses the open set")
        trailer = {"status": "ok" if verdict.ok else "rejected",
                   "order_bound": str(verdict.order_bound)}
        return _emit(lines, trailer, args, EXIT_OK if verdict.ok else EXIT_REJECTED)
    report = witness_search(inst, validation, degree=degree, height=height)
    lines = [f"status: {report.status}", f"candidates examined: {report.examined}"]
    if report.status == "found":
        lines.append(f"witness: {_point_text(report.witness)}")
        for c in report.checks:
            lines.append(f"check {c.label} -> {_scalar_out(c.value)} ({'ok' if c.ok else 'FAIL'})")
        trailer = {"status": "found", "witness": _point_text(report.witness),
                   "examined": str(report.examined)}
        return _emit(lines, trailer, args, EXIT_OK)
    for pt, why in report.trail:
        lines.append(f"candidate {_point_text(pt)}: failed {why}")
    trailer = {"status": report.status, "examined": str(report.examined),
               "degree": str(degree), "height": str(height)}
    return _emit(lines, trailer, args, EXIT_REJECTED)


def _cmd_demo(args):
    data = load_instance_file(args.file)
    if not data.naive:
        raise _UsageError("demo file needs a [naive] section")
    config = PrimalityConfig(seed=args.seed or 0)
    cert = charset_certify(data.lam, data.ranking, config)
    if cert.status == "rejected":
        return _emit([f"rejected: {cert.reason}"], {"status": "rejected"}, args, EXIT_REJECTED)
    cfg = run_config(args, ring=data.ring, ranking=data.ranking, bounds=data.bounds)
    degree = args.degree if args.degree is not None else cfg.degree
    height = args.height if args.height is not None else cfg.height
    report = naive_vs_tau_demo(
        data.naive, cert, degree=degree, height=height,
        members=args.members, samples=args.samples,
    )
    lines = [f"status: {report.status}"]
    if report.status == "found":
        pt, ypt = report.point
        lines.append(f"point: {_point_text(pt)}; y-side {_point_text(ypt).replace('x', 'y')}")
        lines.append(f"violated member: {poly_text(report.violated_member)}")
        lines.append(f"prolonged value: {_scalar_out(report.violated_value)}")
    lines.append(f"open-set samples checked: {report.samples_checked}, "
                 f"violations: {len(report.sample_failures)}")
    trailer = {
        "status": report.status,
        "samples": str(report.samples_checked),
        "sample_violations": str(len(report.sample_failures)),
    }
    code = EXIT_OK if report.status == "found" else EXIT_REJECTED
    return _emit(lines, trailer, args, code)


def _add_ring_opts(sp):
    sp.add_argument("--m", type=int, default=1, help="number of delta-derivations")
    sp.add_argument("--n", type=int, default=1, help="number of x-indeterminates")
    sp.add_argument("--field", choices=[CONSTANTS, RATIONAL_T], default=CONSTANTS)


def _add_common(sp, ring=True):
    if ring:
        _add_ring_opts(sp)
    sp.add_argument("--ranking", default=ORDERLY,
                    help="orderly (default) or elimination:i,j,...")
    sp.add_argument("--machine", action="store_true", help="print only the trailer block")
    sp.add_argument("--seed", type=int, default=None)


def build_parser():
    p = _Parser(prog="diffalg", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("tau", help="prolong a polynomial")
    sp.add_argument("expr")
    sp.add_argument("--check-point", default=None, help='model point, e.g. "x1=t2; x2=1"')
    _add_common(sp)
    sp.set_defaults(fn=_cmd_tau)

    sp = sub.add_parser("reduce", help="Ritt-reduce against an autoreduced system")
    sp.add_argument("expr")
    sp.add_argument("--system", default=None, help='semicolon-separated, e.g. "d1 x1 - 1; d2 x1"')
    sp.add_argument("--system-file", default=None)
    sp.add_argument("--mode", choices=["full", "partial"], default="full")
    sp.add_argument("--check", action="store_true",
                    help="print the certificate re-verification line")
    _add_common(sp)
    sp.set_defaults(fn=_cmd_reduce)

    sp = sub.add_parser("coherent", help="check all cross-derivative pairs")
    sp.add_argument("--system", default=None)
    sp.add_argument("--system-file", default=None)
    _add_common(sp)
    sp.set_defaults(fn=_cmd_coherent)

    sp = sub.add_parser("hprod", help="product of initials and separants")
    sp.add_argument("--system", default=None)
    sp.add_argument("--system-file", default=None)
    _add_common(sp)
    sp.set_defaults(fn=_cmd_hprod)

    for name, fn, extra in [
        ("groebner", _cmd_groebner, ()),
        ("member", _cmd_member, ("expr",)),
        ("eliminate", _cmd_eliminate, ("--drop",)),
        ("saturate", _cmd_saturate, ("--by",)),
        ("prime", _cmd_prime, ()),
    ]:
        sp = sub.add_parser(name, help=f"{name} over frozen derivative variables")
        for arg in extra:
            if arg.startswith("--"):
                sp.add_argument(arg, required=True)
            else:
                sp.add_argument(arg)
        sp.add_argument("gens", help="semicolon-separated generators")
        sp.add_argument("--vars", required=True, help='e.g. "x1, d1x1, y1"')
        sp.add_argument("--order", choices=["grevlex", "lex"], default="grevlex")
        if name == "prime":
            sp.add_argument("--degree-bound", type=int, default=2)
            sp.add_argument("--height-bound", type=int, default=2)
            sp.add_argument("--assert-prime", action="store_true")
        _add_common(sp)
        sp.set_defaults(fn=fn)

    sp = sub.add_parser("certify", help="characteristic-set certification pipeline")
    sp.add_argument("file")
    _add_common(sp, ring=False)
    sp.set_defaults(fn=_cmd_certify)

    sp = sub.add_parser("axiom", help="axiom-instance checks")
    sp.add_argument("what", choices=["validate", "project", "witness"])
    sp.add_argument("file")
    sp.add_argument("--degree", type=int, default=None)
    sp.add_argument("--height", type=int, default=None)
    _add_common(sp, ring=False)
    sp.set_defaults(fn=_cmd_axiom)

    sp = sub.add_parser("demo", help="comparison demos")
    sp.add_argument("which", choices=["naive-vs-tau"])
    sp.add_argument("file")
    sp.add_argument("--degree", type=int, default=None)
    sp.add_argument("--height", type=int, default=None)
    sp.add_argument("--members", type=int, default=10)
    sp.add_argument("--samples", type=int, default=50)
    _add_common(sp, ring=False)
    sp.set_defaults(fn=_cmd_demo)

    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, InstanceFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
