"""Commutative-algebra backend over the derivative variables actually occurring.

Polynomials are frozen to exponent vectors over an ordered variable tuple;
coefficients stay exact scalars. Buchberger runs the normal strategy with
pairs selected by lcm order, the emitted basis is inter-reduced and
normalized to denominator-free, integer-primitive elements with a positive
leading coefficient, and every call re-checks that all S-polynomials of the
output reduce to zero.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd as _int_gcd

from .poly import DiffPoly, mono_from
from .scalars import Scalar, TPoly, tpoly_gcd

GREVLEX = "grevlex"
LEX = "lex"


def _order_key(order):
    if order == GREVLEX:
        return lambda e: (sum(e), tuple(-k for k in reversed(e)))
    if order == LEX:
        return lambda e: e
    raise ValueError(f"unknown monomial order {order!r}")


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _ediv(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _emul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _elcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class AlgPoly:
    """Polynomial over an ordered variable tuple: exponent vector -> Scalar."""

    __slots__ = ("nv", "nt", "terms")

    def __init__(self, nv, nt, terms=None):
        self.nv = nv
        self.nt = nt
        self.terms = {}
        if terms:
            for e, c in terms.items():
                if not c.is_zero():
                    self.terms[e] = c

    @classmethod
    def _raw(cls, nv, nt, terms):
        p = cls.__new__(cls)
        p.nv = nv
        p.nt = nt
        p.terms = terms
        return p

    def is_zero(self):
        return not self.terms

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def lead(self, key):
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def __add__(self, other):
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                t.pop(e, None)
            else:
                t[e] = s
        return AlgPoly._raw(self.nv, self.nt, t)

    def __sub__(self, other):
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e)
            s = -c if s is None else s - c
            if s.is_zero():
                t.pop(e, None)
            else:
                t[e] = s
        return AlgPoly._raw(self.nv, self.nt, t)

    def __neg__(self):
        return AlgPoly._raw(self.nv, self.nt, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _emul(e1, e2)
                c = c1 * c2
                s = t.get(e)
                s = c if s is None else s + c
                if s.is_zero():
                    t.pop(e, None)
                else:
                    t[e] = s
        return AlgPoly._raw(self.nv, self.nt, t)

    def mul_term(self, e, c):
        if c.is_zero():
            return AlgPoly._raw(self.nv, self.nt, {})
        return AlgPoly._raw(
            self.nv, self.nt, {_emul(e0, e): c0 * c for e0, c0 in self.terms.items()}
        )

    def __eq__(self, other):
        return isinstance(other, AlgPoly) and self.nv == other.nv and self.terms == other.terms

    def __hash__(self):
        return hash((self.nv, frozenset(self.terms.items())))


def to_algpoly(f, variables):
    """Freeze a differential polynomial over the given variable tuple."""
    pos = {v: i for i, v in enumerate(variables)}
    nv = len(variables)
    terms = {}
    for mono, c in f.terms.items():
        e = [0] * nv
        for v, k in mono:
            if v not in pos:
                raise ValueError(f"variable {v.text()} outside the ideal's variables")
            e[pos[v]] = k
        terms[tuple(e)] = c
    return AlgPoly._raw(nv, f.ring.nt, terms)


def from_algpoly(p, variables, ring):
    terms = {}
    for e, c in p.terms.items():
        mono = mono_from((variables[i], k) for i, k in enumerate(e) if k)
        terms[mono] = c
    return DiffPoly(ring, terms)


def _nf(p, basis, key):
    """Normal form with quotients: p = sum(q_i * basis_i) + remainder."""
    rem = AlgPoly._raw(p.nv, p.nt, {})
    quots = [AlgPoly._raw(p.nv, p.nt, {}) for _ in basis]
    work = p
    while not work.is_zero():
        e, c = work.lead(key)
        hit = None
        for i, b in enumerate(basis):
            be, bc = b.lead(key)
            if _divides(be, e):
                hit = (i, be, bc)
                break
        if hit is None:
            t = AlgPoly._raw(p.nv, p.nt, {e: c})
            rem = rem + t
            work = work - t
        else:
            i, be, bc = hit
            qe, qc = _ediv(e, be), c / bc
            quots[i] = quots[i] + AlgPoly._raw(p.nv, p.nt, {qe: qc})
            work = work - basis[i].mul_term(qe, qc)
    return rem, quots


def _normalize(p, key):
    """Denominator-free, integer-primitive, positive leading coefficient."""
    if p.is_zero():
        return p
    den_lcm = TPoly.one(p.nt)
    for c in p.terms.values():
        g = tpoly_gcd(den_lcm, c.den)
        den_lcm = c.den * den_lcm.exact_div(g)
    scaled = {e: c * Scalar._poly(den_lcm) for e, c in p.terms.items()}
    content = TPoly.zero(p.nt)
    for c in scaled.values():
        content = tpoly_gcd(content, c.num)
    den = 1
    nums = 0
    cleaned = {}
    for e, c in scaled.items():
        q = c.num.exact_div(content)
        cleaned[e] = q
        for frac_c in q.terms.values():
            den = den * frac_c.denominator // _int_gcd(den, frac_c.denominator)
    for q in cleaned.values():
        for frac_c in q.terms.values():
            nums = _int_gcd(nums, abs(frac_c.numerator * (den // frac_c.denominator)))
    scale = Fraction(den, nums)
    out = {e: Scalar._poly(q.scale(scale)) for e, q in cleaned.items()}
    result = AlgPoly._raw(p.nv, p.nt, out)
    lead_e = max(result.terms, key=key)
    if result.terms[lead_e].num.lead_coeff() < 0:
        result = -result
    return result


def _spoly(f, g, key):
    fe, fc = f.lead(key)
    ge, gc = g.lead(key)
    l = _elcm(fe, ge)
    one = Scalar.one(f.nt)
    return f.mul_term(_ediv(l, fe), one / fc) - g.mul_term(_ediv(l, ge), one / gc)


def _buchberger(gens, key):
    G = [g for g in gens if not g.is_zero()]
    pairs = [(i, j) for j in range(len(G)) for i in range(j)]
    while pairs:
        pairs.sort(key=lambda ij: key(_elcm(G[ij[0]].lead(key)[0], G[ij[1]].lead(key)[0])))
        i, j = pairs.pop(0)
        ei, ej = G[i].lead(key)[0], G[j].lead(key)[0]
        if _elcm(ei, ej) == _emul(ei, ej):
            continue  # disjoint leading supports reduce to zero
        s = _spoly(G[i], G[j], key)
        rem, _ = _nf(s, G, key)
        if not rem.is_zero():
            G.append(rem)
            pairs.extend((k, len(G) - 1) for k in range(len(G) - 1))
    return _interreduce(G, key)


def _interreduce(G, key):
    G = [g for g in G if not g.is_zero()]
    changed = True
    while changed:
        changed = False
        for i in range(len(G)):
            others = G[:i] + G[i + 1 :]
            if not others:
                continue
            rem, _ = _nf(G[i], others, key)
            if rem != G[i]:
                changed = True
                if rem.is_zero():
                    G.pop(i)
                else:
                    G[i] = rem
                break
    G = [_normalize(g, key) for g in G]
    G.sort(key=lambda g: key(g.lead(key)[0]))
    return G


def _self_check(G, key):
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            rem, _ = _nf(_spoly(G[i], G[j], key), G, key)
            if not rem.is_zero():
                raise RuntimeError("S-polynomial self-check failed on emitted basis")


@dataclass
class AlgIdeal:
    ring: object
    variables: tuple
    generators: tuple
    order: str = GREVLEX
    basis: tuple | None = None

    def __post_init__(self):
        for g in self.generators:
            to_algpoly(g, self.variables)  # validates variable coverage

    def _alg_gens(self):
        return [to_algpoly(g, self.variables) for g in self.generators]

    def _alg_basis(self):
        if self.basis is None:
            raise ValueError("no basis attached; run buchberger first")
        return [to_algpoly(g, self.variables) for g in self.basis]


def buchberger(ideal):
    """Attach the reduced, self-checked basis; deterministic for fixed input."""
    key = _order_key(ideal.order)
    G = _buchberger(ideal._alg_gens(), key)
    _self_check(G, key)
    basis = tuple(from_algpoly(g, ideal.variables, ideal.ring) for g in G)
    return AlgIdeal(ideal.ring, ideal.variables, ideal.generators, ideal.order, basis)


def _with_basis(ideal):
    return ideal if ideal.basis is not None else buchberger(ideal)


@dataclass
class MembershipCertificate:
    member: bool
    normal_form: DiffPoly
    quotients: list

    def __bool__(self):
        return self.member


def ideal_member(f, ideal):
    """Normal-form membership test; the division identity is re-verified."""
    ideal = _with_basis(ideal)
    key = _order_key(ideal.order)
    basis = ideal._alg_basis()
    p = to_algpoly(f, ideal.variables)
    rem, quots = _nf(p, basis, key)
    recomposed = rem
    for q, b in zip(quots, basis):
        recomposed = recomposed + q * b
    if recomposed != p:
        raise RuntimeError("division certificate failed re-verification")
    nf = from_algpoly(rem, ideal.variables, ideal.ring)
    qs = [from_algpoly(q, ideal.variables, ideal.ring) for q in quots]
    return MembershipCertificate(rem.is_zero(), nf, qs)


def eliminate(ideal, drop):
    """Generators of the ideal intersected with the subring without `drop`."""
    drop = set(drop)
    if not drop <= set(ideal.variables):
        raise ValueError("dropped variables must belong to the ideal")
    if not drop:
        return AlgIdeal(ideal.ring, ideal.variables, ideal.generators, ideal.order)
    first = [v for v in ideal.variables if v in drop]
    rest = [v for v in ideal.variables if v not in drop]
    reordered = tuple(first + rest)
    work = AlgIdeal(ideal.ring, reordered, ideal.generators, LEX)
    work = buchberger(work)
    kept = tuple(g for g in work.basis if all(v not in drop for v in g.variables()))
    return AlgIdeal(ideal.ring, tuple(rest), kept, GREVLEX)


def saturate(ideal, h):
    """I : h^infinity via the extra-variable trick, staying inside AlgPoly."""
    nv = len(ideal.variables)
    nt = ideal.ring.nt
    key = _order_key(LEX)  # z is the first slot, so lex eliminates it

    def lift(p, z_exp=0):
        return AlgPoly._raw(
            nv + 1, nt, {(z_exp,) + e: c for e, c in p.terms.items()}
        )

    gens = [lift(to_algpoly(g, ideal.variables)) for g in ideal.generators]
    hz = lift(to_algpoly(h, ideal.variables), 1)
    one = AlgPoly._raw(nv + 1, nt, {(0,) * (nv + 1): Scalar.one(nt)})
    gens.append(one - hz)
    G = _buchberger(gens, key)
    kept = [g for g in G if all(e[0] == 0 for e in g.terms)]
    dropped = [AlgPoly._raw(nv, nt, {e[1:]: c for e, c in g.terms.items()}) for g in kept]
    out = tuple(from_algpoly(g, ideal.variables, ideal.ring) for g in dropped)
    return AlgIdeal(ideal.ring, ideal.variables, out, ideal.order)


@dataclass
class MacaulayResult:
    status: str  # "member" | "not_at_bound" | "bound_too_small"
    bound: int

    def __bool__(self):
        return self.status == "member"

    @property
    def decisive(self):
        return self.status == "member"


def macaulay_member(f, ideal, bound):
    """Brute-force membership: is f in the span of {m*g : deg(m*g) <= bound}?

    Sound for membership at the given bound; a miss refutes only up to it.
    """
    p = to_algpoly(f, ideal.variables)
    if p.total_degree() > bound:
        return MacaulayResult("bound_too_small", bound)
    nv = len(ideal.variables)
    nt = ideal.ring.nt
    rows = []
    for g in ideal._alg_gens():
        if g.is_zero():
            continue
        dg = g.total_degree()
        for mono in itertools.product(range(bound - dg + 1), repeat=nv):
            if sum(mono) + dg > bound:
                continue
            rows.append(g.mul_term(mono, Scalar.one(nt)))
    # Echelonize the products, then reduce f against the pivots.
    pivots = {}
    key = _order_key(GREVLEX)

    def reduce_vec(vec):
        vec = dict(vec.terms)
        while vec:
            e = max(vec, key=key)
            piv = pivots.get(e)
            if piv is None:
                return AlgPoly._raw(nv, nt, vec), e
            factor = vec[e] / piv.terms[e]
            for pe, pc in piv.terms.items():
                s = vec.get(pe, Scalar.zero(nt)) - factor * pc
                if s.is_zero():
                    vec.pop(pe, None)
                else:
                    vec[pe] = s
        return AlgPoly._raw(nv, nt, {}), None

    for row in rows:
        red, lead_e = reduce_vec(row)
        if lead_e is not None:
            pivots[lead_e] = red
    residual, _ = reduce_vec(p)
    return MacaulayResult("member" if residual.is_zero() else "not_at_bound", bound)


@dataclass
class PrimalityConfig:
    factor_degree: int = 2
    factor_height: int = 2
    factor_budget: int = 200_000
    probe_trials: int = 32
    probe_degree: int = 2
    probe_height: int = 2
    seed: int = 0
    assert_prime: bool = False


@dataclass
class PrimalityVerdict:
    status: str  # "prime" | "not_prime" | "unknown"
    method: str  # "linear" | "principal-irreducible" | "certificate" | "counterexample" | "probe-exhausted"
    witness: tuple | None = None
    note: str = ""


def _verify_zero_divisor(ideal, a, b):
    prod_in = ideal_member(a * b, ideal).member
    a_out = not ideal_member(a, ideal).member
    b_out = not ideal_member(b, ideal).member
    return prod_in and a_out and b_out


def _factor_search(ideal, f, config):
    """Exhaustive integer-coefficient factor pairs within degree/height bounds."""
    p = to_algpoly(f, ideal.variables)
    deg = p.total_degree()
    max_deg = min(config.factor_degree, deg - 1)
    if max_deg < 1:
        return "vacuous", max_deg
    if any(not c.is_const() for c in p.terms.values()):
        return "skip", max_deg
    nv = p.nv
    monos = [e for e in itertools.product(range(max_deg + 1), repeat=nv) if sum(e) <= max_deg]
    ladder = list(range(-config.factor_height, config.factor_height + 1))
    total = len(ladder) ** len(monos)
    if total > config.factor_budget:
        return "budget", max_deg
    nt = ideal.ring.nt
    for coeffs in itertools.product(ladder, repeat=len(monos)):
        lead = next((c for c in coeffs if c), 0)
        if lead <= 0:
            continue  # skip zero and sign duplicates
        if all(sum(e) == 0 or c == 0 for e, c in zip(monos, coeffs)):
            continue  # constant candidate
        cand = AlgPoly._raw(
            p.nv, nt, {e: Scalar.from_fraction(nt, c) for e, c in zip(monos, coeffs) if c}
        )
        quot = _exact_algdiv(p, cand)
        if quot is not None and quot.total_degree() >= 1:
            return (cand, quot), max_deg
    return None, max_deg


def _exact_algdiv(p, d):
    key = _order_key(GREVLEX)
    rem, quots = _nf(p, [d], key)
    return quots[0] if rem.is_zero() else None


def _random_algpoly(rng, nv, nt, degree, height):
    monos = [e for e in itertools.product(range(degree + 1), repeat=nv) if sum(e) <= degree]
    terms = {}
    for e in rng.sample(monos, k=min(len(monos), rng.randint(1, 3))):
        c = rng.randint(-height, height)
        if c:
            terms[e] = Scalar.from_fraction(nt, c)
    return AlgPoly._raw(nv, nt, terms)


def primality_oracle(ideal, config=None):
    """Strategy cascade with an honest `unknown`; not_prime carries a verified witness."""
    config = config or PrimalityConfig()
    verdict = _primality_cascade(ideal, config)
    if verdict.status == "unknown" and config.assert_prime:
        return PrimalityVerdict(
            "prime", "certificate",
            note=f"primality asserted by the caller (cascade said: {verdict.note})",
        )
    return verdict


def _primality_cascade(ideal, config):
    ideal = _with_basis(ideal)
    basis = list(ideal.basis)
    ring = ideal.ring
    if not basis:
        return PrimalityVerdict("prime", "linear", note="zero ideal: the full ring is a domain")
    if len(basis) == 1 and basis[0].is_scalar():
        return PrimalityVerdict(
            "not_prime", "counterexample", None,
            "unit ideal: 1 lies in the ideal, so no zero-divisor witness pair exists",
        )
    if all(g.total_degree() <= 1 for g in ideal.generators):
        return PrimalityVerdict("prime", "linear", note="affine-linear generators cut a subspace")
    if len(basis) == 1:
        if basis[0].total_degree() == 1:
            return PrimalityVerdict(
                "prime", "principal-irreducible", None, "principal linear generator"
            )
        found, used_deg = _factor_search(ideal, basis[0], config)
        if found == "vacuous":
            return PrimalityVerdict(
                "unknown", "principal-irreducible", None,
                "factor-degree bound below 1; search not attempted",
            )
        if found == "budget":
            return PrimalityVerdict(
                "unknown", "principal-irreducible", None,
                f"factor search space above budget {config.factor_budget}",
            )
        if found == "skip":
            return PrimalityVerdict(
                "unknown", "principal-irreducible", None,
                "principal generator has non-constant coefficients; factor search not attempted",
            )
        if found is not None:
            a = from_algpoly(found[0], ideal.variables, ring)
            b = from_algpoly(found[1], ideal.variables, ring)
            if not _verify_zero_divisor(ideal, a, b):
                raise RuntimeError("factorization witness failed re-verification")
            return PrimalityVerdict("not_prime", "counterexample", (a, b), "factorization witness")
        return PrimalityVerdict(
            "prime", "principal-irreducible", None,
            f"factor search exhausted at degree {used_deg}, height {config.factor_height}",
        )
    rng = random.Random(config.seed)
    key = _order_key(ideal.order)
    alg_basis = ideal._alg_basis()
    nv = len(ideal.variables)
    for _ in range(config.probe_trials):
        a = _random_algpoly(rng, nv, ring.nt, config.probe_degree, config.probe_height)
        b = _random_algpoly(rng, nv, ring.nt, config.probe_degree, config.probe_height)
        ra, _ = _nf(a, alg_basis, key)
        rb, _ = _nf(b, alg_basis, key)
        if ra.is_zero() or rb.is_zero():
            continue
        rab, _ = _nf(ra * rb, alg_basis, key)
        if rab.is_zero():
            fa = from_algpoly(ra, ideal.variables, ring)
            fb = from_algpoly(rb, ideal.variables, ring)
            if not _verify_zero_divisor(ideal, fa, fb):
                raise RuntimeError("probe witness failed re-verification")
            return PrimalityVerdict("not_prime", "counterexample", (fa, fb), "zero-divisor probe")
    return PrimalityVerdict(
        "unknown", "probe-exhausted", None,
        f"no zero divisor found in {config.probe_trials} probes",
    )
