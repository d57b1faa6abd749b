"""Seeded property suites over every module, producing deterministic JSON reports."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import condensation as cond
from . import cyclic as cyc
from .errors import OrdCalcError, Unsupported
from .expiso import ExpIsoContext, verify_exponentiable
from .exponential import (
    FSFunction,
    fs_between,
    fs_compare,
    iso_curry,
    iso_curry_inverse,
    iso_split_ordinal,
    iso_split_ordinal_inverse,
    iso_split_sum,
    iso_split_sum_inverse,
    locate_rem_rep,
    locator_compare,
)
from .linorder import (
    LEAST,
    RIGHT,
    Eta,
    EtaElem,
    ExpElem,
    Fin,
    FinElem,
    Omega,
    OmegaElem,
    OrdExp,
    Prod,
    ProdElem,
    Sum,
    SumElem,
    Zeta,
    ZetaElem,
    back_and_forth,
    left_distributivity_map,
    reverse,
)
from .ordinal import (
    ONE,
    ZERO,
    Ordinal,
    omega_power,
    ord_add,
    ord_sub,
    random_below,
    split_limit_finite,
)
from .syntax import format_term, jsonable, parse_ordinal, parse_term

__all__ = ["SUITES", "DEFAULT_SEED", "SuiteReport", "check_laws"]

DEFAULT_SEED = 20240917


@dataclass
class SuiteReport:
    suite: str
    seed: int
    checks_run: int = 0
    failures: int = 0
    counterexample: Optional[dict] = None
    cases: list = field(default_factory=list)

    @property
    def status(self):
        return "pass" if self.failures == 0 else "fail"

    def to_json(self):
        return {"suite": self.suite, "status": self.status, "seed": self.seed,
                "checks_run": self.checks_run, "failures": self.failures,
                "counterexample": self.counterexample, "cases": self.cases}


class _Case:
    """Check tally for one case; failures feed the suite counterexample."""

    def __init__(self, report: SuiteReport, case_id: str):
        self.report = report
        self.id = case_id
        self.run = 0
        self.failed = 0
        self.detail = {}

    def check(self, name, passed, expected=None, got=None, **inputs):
        self.run += 1
        entry = self.detail.setdefault(name, [0, 0])
        entry[0] += 1
        if passed:
            return True
        self.failed += 1
        entry[1] += 1
        if self.report.counterexample is None:
            self.report.counterexample = {
                "case": self.id, "check": name,
                "inputs": {k: jsonable(v) for k, v in inputs.items()},
                "expected": jsonable(expected), "got": jsonable(got),
            }
        return False

    def absorb(self, name, run, failed, counterexample=None):
        """Fold in counts from a module-level report."""
        entry = self.detail.setdefault(name, [0, 0])
        entry[0] += run
        entry[1] += failed
        self.run += run
        self.failed += failed
        if failed and self.report.counterexample is None:
            self.report.counterexample = {"case": self.id, "check": name,
                                          "inputs": counterexample, "expected": None,
                                          "got": None}

    def close(self):
        self.report.checks_run += self.run
        self.report.failures += self.failed
        self.report.cases.append({
            "id": self.id, "checks_run": self.run, "failures": self.failed,
            "checks": {k: {"run": r, "failed": f} for k, (r, f) in sorted(self.detail.items())},
        })


def _rng(seed, *parts):
    return random.Random(":".join(str(p) for p in (seed,) + parts))


# ---------------------------------------------------------------------------
# ordinal

def _suite_ordinal(report, seed, n):
    rng = _rng(seed, "ordinal")
    cap = omega_power(3)
    case = _Case(report, "cnf below w^3")
    for _ in range(n(10_000)):
        a, b, c = (random_below(cap, rng) for _ in range(3))
        lhs, rhs = ord_add(ord_add(a, b), c), ord_add(a, ord_add(b, c))
        case.check("associativity", lhs == rhs, rhs, lhs, a=a, b=b, c=c)
        lo, mid, hi = sorted((a, b, c))
        d = ord_sub(hi, lo)
        case.check("sub_roundtrip", ord_add(lo, d) == hi, hi, ord_add(lo, d), beta=lo, gamma=hi)
        ident = ord_add(ord_sub(mid, lo), ord_sub(hi, mid))
        case.check("difference_identity", d == ident, d, ident, beta=lo, alpha=mid, gamma=hi)
        lam, k = split_limit_finite(a)
        ok = ord_add(lam, k) == a and (lam.is_zero() or lam.is_limit())
        case.check("split_limit_finite", ok, a, [lam, k], alpha=a)
        case.check("trichotomy", (a < b) + (a == b) + (a > b) == 1, 1, None, a=a, b=b)
    case.close()


# ---------------------------------------------------------------------------
# order

def _order_terms():
    texts = ["5", "w", "w*", "z", "eta", "w + w*", "w* + w", "z*2", "z*eta", "eta*z",
             "w + z*eta + w*", "z*z", 'exp(z@{"zeta":0}, w^2)', "(1 + 1)*w", "eta + 1"]
    return [parse_term(t) for t in texts]


def _suite_order(report, seed, n):
    for term in _order_terms():
        case = _Case(report, format_term(term))
        rng = _rng(seed, "order", term)
        rterm = reverse(term)
        for _ in range(n(1000)):
            x, y, z = (term.sample_element(rng) for _ in range(3))
            xy, yx, yz, xz = term.cmp(x, y), term.cmp(y, x), term.cmp(y, z), term.cmp(x, z)
            case.check("antisymmetry", xy == -yx and (xy == 0) == (x == y), -yx, xy, x=x, y=y)
            if xy < 0 and yz < 0:
                case.check("transitivity", xz < 0, -1, xz, x=x, y=y, z=z)
            case.check("irreflexive", term.cmp(x, x) == 0, 0, term.cmp(x, x), x=x)
            flipped = rterm.cmp(term.reverse_element(x), term.reverse_element(y))
            case.check("reverse_flip", flipped == -xy, -xy, flipped, x=x, y=y)
            pred, succ = term.neighbors(x)
            for other, sign in ((pred, -1), (succ, 1)):
                if other is None:
                    continue
                gap = _gap(term, x, other) if sign > 0 else _gap(term, other, x)
                back = term.neighbors(other)[0 if sign > 0 else 1]
                ok = term.cmp(other, x) == sign and gap is None and back == x
                case.check("neighbors_adjacent", ok, x, back, x=x, neighbor=other)
        case.close()

    case = _Case(report, "left distributivity")
    for parts in (("z", "2", "w"), ("eta", "w*", "z"), ("2", "w", "eta")):
        l1, l2, l3 = (parse_term(p) for p in parts)
        source, target, fwd, inv = left_distributivity_map(l1, l2, l3)
        rng = _rng(seed, "ldist", *parts)
        for _ in range(n(500)):
            x, y = source.sample_element(rng), source.sample_element(rng)
            fx, fy = fwd(x), fwd(y)
            case.check("monotone", target.cmp(fx, fy) == source.cmp(x, y),
                       source.cmp(x, y), target.cmp(fx, fy), x=x, y=y)
            case.check("roundtrip", inv(fx) == x, x, inv(fx), x=x)
    case.close()

    # (1+1)*w is w, while w+w is not: (i, k) -> 2k + i is an isomorphism onto w
    case = _Case(report, "right distributivity failure")
    two_w = parse_term("(1 + 1)*w")
    to_w = lambda e: OmegaElem(2 * e.second.k + e.first.inner.i + (e.first.side is RIGHT))
    rng = _rng(seed, "rdist")
    for _ in range(n(500)):
        x, y = two_w.sample_element(rng), two_w.sample_element(rng)
        c, d = two_w.cmp(x, y), Omega().cmp(to_w(x), to_w(y))
        case.check("two_times_w_is_w", c == d, c, d, x=x, y=y)
    w_plus_w = parse_term("w + w")
    right0 = SumElem(RIGHT, OmegaElem(0))
    pred = w_plus_w.neighbors(right0)[0]
    least = w_plus_w.extremum(LEAST)
    case.check("w_plus_w_no_predecessor", pred is None and least != right0, None, pred,
               element=right0)
    case.close()


def _gap(term, lo, hi):
    try:
        return term.between(lo, hi)
    except Unsupported:
        # no oracle; the back-neighbor check still applies
        return None


# ---------------------------------------------------------------------------
# back and forth

def _suite_backforth(report, seed, n):
    case = _Case(report, "eta vs eta + eta")
    source, target = Eta(), Sum(Eta(), Eta())
    for i in range(n(100)):
        try:
            pairs = back_and_forth(source, target, 12, _rng(seed, "bf", i))
            case.check("extends", len(pairs) == 12, 12, len(pairs), schedule=i)
        except AssertionError as exc:
            case.check("extends", False, "12 rounds", str(exc), schedule=i)
    case.close()


# ---------------------------------------------------------------------------
# exponentials

def _exp_bases():
    z2 = Prod(Zeta(), Fin(2))
    return [("(z,0)", Zeta(), ZetaElem(0)), ("(w,0)", Omega(), OmegaElem(0)),
            ("(w,1)", Omega(), OmegaElem(1)),
            ("(z*2,(0,c0))", z2, ProdElem(ZetaElem(0), FinElem(0)))]


def _exp_exponents():
    return [("3", Ordinal.of(3)), ("w", omega_power(ONE)), ("w+1", parse_ordinal("w + 1")),
            ("z", Zeta()), ("w*2", parse_ordinal("w*2"))]


def _suite_exp(report, seed, n):
    for (bname, base, point), (ename, exponent) in itertools.product(_exp_bases(),
                                                                     _exp_exponents()):
        term = OrdExp(base, point, exponent)
        case = _Case(report, f"{bname}^{ename}")
        rng = _rng(seed, "exp", bname, ename)
        fs = lambda: FSFunction.of(term, term.sample_element(rng))
        for _ in range(n(1000)):
            f, g, h = fs(), fs(), fs()
            fg, gf, gh, fh = (fs_compare(f, g), fs_compare(g, f), fs_compare(g, h),
                              fs_compare(f, h))
            case.check("antisymmetry", fg == -gf and (fg == 0) == (f == g), -gf, fg, f=f, g=g)
            if fg < 0 and gh < 0:
                case.check("transitivity", fh < 0, -1, fh, f=f, g=g, h=h)
            if isinstance(exponent, Ordinal):
                r, s = locate_rem_rep(f), locate_rem_rep(g)
                lc = locator_compare(base, point, r, s)
                case.check("locator_agrees", lc == fg, fg, lc, f=f, g=g)
            elif fg != 0:
                lo, hi = (f, g) if fg < 0 else (g, f)
                m = fs_between(lo, hi)
                ok = fs_compare(lo, m) < 0 < fs_compare(hi, m)
                case.check("between", ok, "strictly between", m, f=lo, g=hi)
        _exp_isos(case, term, exponent, rng, n)
        case.close()

    case = _Case(report, "left end example")
    w0 = OrdExp(Omega(), OmegaElem(0), omega_power(ONE))
    least = w0.extremum(LEAST)
    case.check("w0_has_least", least == ExpElem(()), ExpElem(()), least, term=w0)
    w1 = OrdExp(Omega(), OmegaElem(1), omega_power(ONE))
    case.check("w1_no_least", w1.extremum(LEAST) is None, None, w1.extremum(LEAST), term=w1)
    rng = _rng(seed, "exmp")
    for _ in range(n(200)):
        f = w1.sample_element(rng)
        smaller = _strictly_smaller_w1(w1, f)
        case.check("w1_strictly_smaller", w1.cmp(smaller, f) < 0, -1, w1.cmp(smaller, f),
                   f=f, smaller=smaller)
    case.close()


def _strictly_smaller_w1(term, f):
    # a value 0 < 1 above the whole support dominates the comparison
    top = f.support[-1][0] if f.support else None
    pos = ZERO if top is None else ord_add(top, ONE)
    return term.with_value(f, pos, OmegaElem(0))


def _exp_isos(case, term, exponent, rng, n):
    if isinstance(exponent, Ordinal):
        lam, k = split_limit_finite(exponent)
        beta = lam if not lam.is_zero() else Ordinal.of(1)
        if beta >= exponent:
            return
        split = lambda f: iso_split_ordinal(f, beta)
        join = iso_split_ordinal_inverse
        cmp_pair = _cmp_split
    else:
        return
    for _ in range(n(500)):
        f, g = (FSFunction.of(term, term.sample_element(rng)) for _ in range(2))
        sf, sg = split(f), split(g)
        case.check("split_roundtrip", join(*sf) == f, f, join(*sf), f=f)
        c, d = fs_compare(f, g), cmp_pair(sf, sg)
        case.check("split_monotone", c == d, c, d, f=f, g=g)


def _cmp_split(p, q):
    # upper part dominates
    c = fs_compare(p[1], q[1])
    return c if c else fs_compare(p[0], q[0])


def _suite_exp_terms(report, seed, n):
    """Sum and product exponents given as terms."""
    z0 = ZetaElem(0)
    for name, exponent in (("w + 1", parse_term("w + 1")), ("z + w", parse_term("z + w")),
                           ("3 + z", parse_term("3 + z"))):
        term = OrdExp(Zeta(), z0, exponent)
        case = _Case(report, f"(z,0)^({name}) sum split")
        rng = _rng(seed, "expsum", name)
        for _ in range(n(500)):
            f, g = (FSFunction.of(term, term.sample_element(rng)) for _ in range(2))
            sf, sg = iso_split_sum(f), iso_split_sum(g)
            back = iso_split_sum_inverse(*sf)
            case.check("roundtrip", back == f, f, back, f=f)
            c, d = fs_compare(f, g), _cmp_split(sf, sg)
            case.check("monotone", c == d, c, d, f=f, g=g)
        case.close()
    for name, exponent in (("w*2", parse_term("w*2")), ("z*3", parse_term("z*3")),
                           ("2*z", parse_term("2*z"))):
        for bname, base, point in _exp_bases():
            term = OrdExp(base, point, exponent)
            case = _Case(report, f"{bname}^({name}) curry")
            rng = _rng(seed, "expcurry", name, bname)
            for _ in range(n(500)):
                f, g = (FSFunction.of(term, term.sample_element(rng)) for _ in range(2))
                cf, cg = iso_curry(f), iso_curry(g)
                back = iso_curry_inverse(cf)
                case.check("roundtrip", back == f, f, back, f=f)
                c, d = fs_compare(f, g), fs_compare(cf, cg)
                case.check("monotone", c == d, c, d, f=f, g=g)
            case.close()


# ---------------------------------------------------------------------------
# condensation

def _suite_condense(report, seed, n):
    case = _Case(report, "finite orders")
    for size in range(13):
        prev = None
        for gamma in range(5):
            classes = cond.condense_brute(size, gamma)
            c = cond.condense_iterate(Fin(size), gamma)
            case.check("brute_symbolic_size", c.term.finite_size() == len(classes),
                       len(classes), c.term.finite_size(), n=size, gamma=gamma)
            flat = [x for cls in classes for x in cls]
            intervals = flat == list(range(size)) and all(
                list(cls) == list(range(cls[0], cls[-1] + 1)) for cls in classes)
            case.check("interval_classes", intervals, "consecutive", classes, n=size,
                       gamma=gamma)
            label = {x: i for i, cls in enumerate(classes) for x in cls}
            same = all((c.q(FinElem(x)) == c.q(FinElem(y))) == (label[x] == label[y])
                       for x in range(size) for y in range(size))
            case.check("quotient_matches_classes", same, classes, None, n=size, gamma=gamma)
            if prev is not None:
                coarse = all(any(set(p) <= set(cls) for cls in classes) for p in prev)
                case.check("coarsening", coarse, prev, classes, n=size, gamma=gamma)
            prev = classes
    case.close()

    for term in (Prod(Zeta(), Fin(1)), Prod(Zeta(), Fin(2)), Prod(Zeta(), Fin(3)),
                 OrdExp(Zeta(), ZetaElem(0), 2)):
        case = _Case(report, f"zeta factorization {format_term(term)}")
        iso = cond.zeta_factorization(term)
        rng = _rng(seed, "zfact", term)
        for _ in range(n(500)):
            x, y = iso.source.sample_element(rng), iso.source.sample_element(rng)
            fx, fy = iso.forward(x), iso.forward(y)
            c, d = iso.source.cmp(x, y), term.cmp(fx, fy)
            case.check("monotone", c == d, c, d, x=x, y=y)
            case.check("roundtrip", iso.inverse(fx) == x, x, iso.inverse(fx), x=x)
            t = term.sample_element(rng)
            case.check("surjective", iso.forward(iso.inverse(t)) == t, t,
                       iso.forward(iso.inverse(t)), y=t)
        case.close()

    z = ZetaElem
    exp3 = OrdExp(Zeta(), z(0), 3)
    transports = [
        ("z*3 rotation", cyc.witness_product_left(Zeta(), z(0), z(2),
                                                  cyc.witness_finite_rotation(3, 0, 1)), 1),
        ("z*z translation", cyc.witness_translation(Prod(Zeta(), Zeta()),
                                                    ProdElem(z(0), z(0)),
                                                    ProdElem(z(3), z(-1))), 1),
        ("z*z translation", cyc.witness_translation(Prod(Zeta(), Zeta()),
                                                    ProdElem(z(0), z(0)),
                                                    ProdElem(z(3), z(-1))), 2),
        ("(z,0)^3 translation", cyc.witness_translation(
            exp3, ExpElem(()), ExpElem(((Ordinal.of(1), z(2)),))), 1),
        ("(z,0)^w^2 translation", cyc.witness_translation(
            OrdExp(Zeta(), z(0), omega_power(2)), ExpElem(()),
            ExpElem(((Ordinal.of(4), z(1)), (omega_power(ONE), z(-2))))), omega_power(ONE)),
    ]
    transports.append(("(z,0)^2*2 product-left", cyc.witness_product_left(
        OrdExp(Zeta(), z(0), 2), ExpElem(()), ExpElem(((Ordinal.of(1), z(1)),)),
        cyc.witness_finite_rotation(2, 0, 1)), 1))
    for name, w, gamma in transports:
        case = _Case(report, f"transport {name} gamma={Ordinal.of(gamma)}")
        out = cond.ctlo_condense_transport(w, gamma)
        vr = cyc.validate_witness(out, seed=seed, samples=n(500))
        case.absorb("validate_witness", vr.checks, vr.failures, vr.counterexample)
        case.close()


# ---------------------------------------------------------------------------
# cyclic

def _stock_witnesses():
    z, e = ZetaElem, EtaElem
    tz = cyc.witness_translation(Zeta(), z(0), z(4))
    te = cyc.witness_translation(Eta(), e(Fraction(1, 2)), e(Fraction(3)))
    p55 = cyc.witness_product_left(Zeta(), z(0), z(2), cyc.witness_finite_rotation(3, 0, 1))
    rot2 = cyc.witness_finite_rotation(3, 0, 2)

    def z2w(i, j):
        return cyc.witness_product_left(Zeta(), z(0), z(3), cyc.witness_finite_rotation(2, i, j))

    out = [(f"rotation 5 {a}->{b}", cyc.witness_finite_rotation(5, a, b))
           for a in range(5) for b in range(a, 5)]
    out += [
        ("translation z", tz),
        ("translation eta", te),
        ("translation z*z", cyc.witness_translation(Prod(Zeta(), Zeta()),
                                                    ProdElem(z(0), z(0)),
                                                    ProdElem(z(3), z(-1)))),
        ("product-left z*3", p55),
        ("product-discrete 3*z", cyc.witness_product_discrete(
            rot2, cyc.witness_translation(Zeta(), z(0), z(1)))),
        ("product-discrete reversed 3*z", cyc.witness_product_discrete(
            rot2, cyc.witness_translation(Zeta(), z(0), z(1)), reverse_left=True)),
        ("product-discrete eta*z*2", cyc.witness_product_discrete(
            cyc.witness_translation(Eta(), e(0), e(1)),
            cyc.witness_product_left(Zeta(), z(0), z(0), cyc.witness_finite_rotation(2, 0, 1)))),
        ("translation (z,0)^2", cyc.witness_translation(
            OrdExp(Zeta(), z(0), 2), ExpElem(((Ordinal.of(0), z(1)),)),
            ExpElem(((Ordinal.of(1), z(1)),)))),
        ("product-left (z*z)*3", cyc.witness_product_left(
            Prod(Zeta(), Zeta()), ProdElem(z(0), z(0)), ProdElem(z(-2), z(1)),
            cyc.witness_finite_rotation(3, 0, 2))),
        ("product-discrete (z*2)*(z*2)", cyc.witness_product_discrete(z2w(0, 1), z2w(0, 1))),
        ("product-discrete reversed (z*2)*(z*2)", cyc.witness_product_discrete(
            z2w(0, 1), z2w(0, 1), reverse_left=True)),
        ("reverse z*3", cyc.witness_reverse(p55)),
        ("reverse z", cyc.witness_reverse(tz)),
        ("reverse 5", cyc.witness_reverse(cyc.witness_finite_rotation(5, 1, 3))),
        ("transport w + w*", cyc.witness_transport(cyc.omega_omegastar_zeta(), tz)),
        ("transport eta + 1", cyc.witness_transport(cyc.eta_eta_plus_one(), te)),
        ("transport 1 + eta", cyc.witness_transport(cyc.eta_one_plus_eta(), te)),
        ("transport w + z*eta + w*", cyc.witness_transport(
            cyc.zeta_eta_with_ends(),
            cyc.witness_translation(Prod(Zeta(), Eta()), ProdElem(z(0), e(0)),
                                    ProdElem(z(2), e(Fraction(1, 3)))))),
    ]
    return out


def _suite_cyclic(report, seed, n):
    for text in ("5", "z", "z*2", "eta", "w + w*", "eta + 1", "w + z*eta + w*"):
        term = parse_term(text)
        case = _Case(report, f"axioms {text}")
        rng = _rng(seed, "axioms", text)
        rterm = reverse(term)
        checked = 0
        while checked < n(1000):
            x, y, z = (term.sample_element(rng) for _ in range(3))
            if term.cmp(x, y) == 0 or term.cmp(y, z) == 0 or term.cmp(x, z) == 0:
                continue
            checked += 1
            r = cyc.cyclic_r(term, x, y, z)
            case.check("exactly_one_orientation", r != cyc.cyclic_r(term, z, y, x), True, r,
                       x=x, y=y, z=z)
            rot = (cyc.cyclic_r(term, y, z, x), cyc.cyclic_r(term, z, x, y))
            case.check("rotation_invariant", rot == (r, r), [r, r], list(rot), x=x, y=y, z=z)
            rr = cyc.cyclic_r(rterm, *(term.reverse_element(v) for v in (z, y, x)))
            case.check("reversal_duality", rr == r, r, rr, x=x, y=y, z=z)
        case.close()

    case = _Case(report, "rotation counts")
    for k in range(1, 8):
        got = cyc.cyclic_automorphism_count(k)
        case.check("count_equals_n", got == k, k, got, n=k)
    case.close()

    case = _Case(report, "round trip Fin(5)")
    for a, b in itertools.combinations_with_replacement(range(5), 2):
        w = cyc.witness_finite_rotation(5, a, b)
        back = cyc.ctlo_from_cyclic(w.term, cyc.cyclic_from_ctlo(w), w.a, w.b, seed=seed)
        vr = cyc.validate_witness(back, seed=seed, samples=n(500))
        case.absorb("validate_witness", vr.checks, vr.failures, vr.counterexample)
        case.check("same_points", (back.a, back.b) == (w.a, w.b), [w.a, w.b],
                   [back.a, back.b], a=a, b=b)
    case.close()

    case = _Case(report, "round trip z*2")
    z0 = ZetaElem(0)
    for shift, rot in ((0, (0, 1)), (3, (0, 1)), (2, (0, 0)), (5, (1, 1))):
        w = cyc.witness_product_left(Zeta(), z0, ZetaElem(shift),
                                     cyc.witness_finite_rotation(2, *rot))
        back = cyc.ctlo_from_cyclic(w.term, cyc.cyclic_from_ctlo(w), w.a, w.b, seed=seed,
                                    samples=n(500))
        vr = cyc.validate_witness(back, seed=seed, samples=n(500))
        case.absorb("validate_witness", vr.checks, vr.failures, vr.counterexample)
    case.close()

    for name, w in _stock_witnesses():
        case = _Case(report, f"witness {name}")
        vr = cyc.validate_witness(w, seed=seed, samples=n(500))
        case.absorb("validate_witness", vr.checks, vr.failures, vr.counterexample)
        case.close()

    for ce in (cyc.omega_omegastar_zeta(), cyc.eta_eta_plus_one(), cyc.eta_one_plus_eta(),
               cyc.zeta_eta_with_ends()):
        case = _Case(report, f"equivalence {ce.name}")
        vr = cyc.validate_cyc_equiv(ce, seed=seed, samples=n(500))
        case.absorb("validate_cyc_equiv", vr.checks, vr.failures, vr.counterexample)
        case.close()


# ---------------------------------------------------------------------------
# main theorem

MAINTHM_ALPHAS = ("2", "w", "w + 1", "w + 2", "w*2", "w^2", "w^2 + w + 1")


def mainthm_witnesses():
    """Two ``(a, b)`` choices on each of the four discrete unbounded test orders."""
    z = ZetaElem
    zz = Prod(Zeta(), Zeta())
    rot = cyc.witness_finite_rotation
    return [
        ("z a=0 b=5", cyc.witness_translation(Zeta(), z(0), z(5))),
        ("z a=-3 b=1", cyc.witness_translation(Zeta(), z(-3), z(1))),
        ("z*2 a=(0,0) b=(0,1)", cyc.witness_product_left(Zeta(), z(0), z(0), rot(2, 0, 1))),
        ("z*2 a=(-1,0) b=(4,1)", cyc.witness_product_left(Zeta(), z(-1), z(4), rot(2, 0, 1))),
        ("z*3 a=(0,0) b=(0,2)", cyc.witness_product_left(Zeta(), z(0), z(0), rot(3, 0, 2))),
        ("z*3 a=(2,1) b=(-2,2)", cyc.witness_product_left(Zeta(), z(2), z(-2), rot(3, 1, 2))),
        ("z*z*2 a=((0,0),0) b=((0,0),1)", cyc.witness_product_left(
            zz, ProdElem(z(0), z(0)), ProdElem(z(0), z(0)), rot(2, 0, 1))),
        ("z*z*2 a=((1,-1),0) b=((0,2),1)", cyc.witness_product_left(
            zz, ProdElem(z(1), z(-1)), ProdElem(z(0), z(2)), rot(2, 0, 1))),
    ]


def _suite_mainthm(report, seed, n):
    for name, w in mainthm_witnesses():
        ctx = ExpIsoContext(w, seed=seed)
        for text in MAINTHM_ALPHAS:
            alpha = parse_ordinal(text)
            case = _Case(report, f"{name} alpha={alpha}")
            rep = verify_exponentiable(ctx, alpha, seed=seed, pairs=n(1000), squares=n(200))
            cx = rep.counterexample
            for check, (run, failed) in rep.checks.items():
                case.absorb(check, run, failed,
                            cx["inputs"] if cx and cx["check"] == check else None)
            case.close()


SUITES = {
    "ordinal": (_suite_ordinal,),
    "order": (_suite_order,),
    "backforth": (_suite_backforth,),
    "exp": (_suite_exp, _suite_exp_terms),
    "condense": (_suite_condense,),
    "cyclic": (_suite_cyclic,),
    "mainthm": (_suite_mainthm,),
}


def check_laws(suite: str, seed: int = DEFAULT_SEED, budget: Optional[int] = None) -> SuiteReport:
    """Run a named suite; ``budget`` caps the sample count of every check."""
    if suite not in SUITES:
        raise KeyError(suite)
    n = (lambda k: k) if budget is None else (lambda k: max(1, min(k, budget)))
    report = SuiteReport(suite, seed)
    for part in SUITES[suite]:
        try:
            part(report, seed, n)
        except OrdCalcError as exc:
            # a library error inside a suite is a failure, never a crash
            case = _Case(report, f"{part.__name__} aborted")
            case.check("no_library_error", False, None, f"{type(exc).__name__}: {exc}")
            case.close()
    return report
