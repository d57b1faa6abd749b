"""Cyclic orders, cyclic-transitivity witnesses and their closure constructions.

A :class:`CTLOWitness` for ``a <= b`` in ``L`` consists of two partitions
``L = L1 + L2 = L2' + L1'`` (given by the downward-closed cuts ``L1`` and
``L2'``) and monotone bijections ``F1: L1 -> L1'`` with ``F1(a) = b`` and
``F2: L2 -> L2'``, each with an explicit inverse.  Infinite pieces cannot be
materialized, so every property is checked on samples by
:func:`validate_witness`.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .errors import (
    NotAutomorphism,
    NotDiscreteUnbounded,
    NotDistinct,
    OutOfRange,
    PointMismatch,
    SearchBoundExceeded,
    ShapeMismatch,
    TooLarge,
    UnsupportedFamily,
)
from .linorder import (
    LEFT,
    RIGHT,
    Eta,
    EtaElem,
    ExpElem,
    Fin,
    FinElem,
    Omega,
    OmegaElem,
    OmegaStar,
    OmegaStarElem,
    OrdExp,
    OrderTerm,
    Prod,
    ProdElem,
    Sum,
    SumElem,
    Zeta,
    ZetaElem,
    reverse,
)
from .ordinal import Ordinal

__all__ = [
    "Cut", "CTLOWitness", "CycEquivWitness", "CyclicAutomorphism", "WitnessReport",
    "cyclic_r", "validate_witness", "validate_cyc_equiv", "witness_finite_rotation",
    "witness_translation", "translation", "witness_product_left",
    "witness_product_discrete", "witness_reverse", "witness_transport",
    "cyclic_from_ctlo", "ctlo_from_cyclic", "inflationary_modify",
    "transitive_finite_check", "cyclic_automorphism_count", "trivial_witness",
    "identity_cyc_equiv", "omega_omegastar_zeta", "eta_eta_plus_one",
    "eta_one_plus_eta", "zeta_eta_with_ends", "build_witness", "stock_equivalences",
    "VIA_CHOICES",
]


@dataclass(frozen=True)
class Cut:
    """Decidable membership in a downward-closed piece."""

    pred: Callable
    description: str

    def __call__(self, x):
        return bool(self.pred(x))


ALL = Cut(lambda x: True, "everything")
NOTHING = Cut(lambda x: False, "nothing")


def _identity(x):
    return x


@dataclass(frozen=True)
class CTLOWitness:
    term: OrderTerm
    a: object
    b: object
    cut1: Cut  # L1
    cut2: Cut  # L2'
    f1: Callable
    f1_inv: Callable
    f2: Callable
    f2_inv: Callable
    whole: bool = False  # L1 = L1' = L; a <= b is not required
    via: str = ""

    def in_l1(self, x):
        return self.cut1(x)

    def in_l1_prime(self, y):
        return not self.cut2(y)

    def describe(self):
        from .syntax import element_to_json
        return {
            "term": str(self.term),
            "a": element_to_json(self.a),
            "b": element_to_json(self.b),
            "L1": self.cut1.description,
            "L2'": self.cut2.description,
            "whole": self.whole,
            "via": self.via,
        }


@dataclass(frozen=True)
class CycEquivWitness:
    """``L ~c L'`` via ``L = L1 + L2``, ``L' = L2' + L1'`` and ``Fi: Li -> Li'``."""

    term_l: OrderTerm
    term_r: OrderTerm
    cut_l: Cut  # L1
    cut_r: Cut  # L2'
    f1: Callable
    f1_inv: Callable
    f2: Callable
    f2_inv: Callable
    identity: bool = False
    name: str = ""

    def glue(self, x):
        return self.f1(x) if self.cut_l(x) else self.f2(x)

    def unglue(self, y):
        return self.f2_inv(y) if self.cut_r(y) else self.f1_inv(y)

    def inverted(self):
        cut_l, cut_r = self.cut_l, self.cut_r
        return CycEquivWitness(
            self.term_r, self.term_l,
            Cut(cut_r.pred, cut_r.description), Cut(cut_l.pred, cut_l.description),
            self.f2_inv, self.f2, self.f1_inv, self.f1,
            self.identity, f"inverse of {self.name}",
        )


@dataclass(frozen=True)
class CyclicAutomorphism:
    term: OrderTerm
    forward: Callable
    inverse: Callable


@dataclass
class WitnessReport:
    ok: bool = True
    checks: int = 0
    counterexample: Optional[dict] = None
    failures: int = 0

    def record(self, passed, check, **inputs):
        self.checks += 1
        if passed:
            return True
        self.failures += 1
        if self.ok:
            from .syntax import jsonable
            self.ok = False
            self.counterexample = {"check": check,
                                   "inputs": {k: jsonable(v) for k, v in inputs.items()}}
        return False

    def to_json(self):
        return {"status": "pass" if self.ok else "fail", "checks_run": self.checks,
                "failures": self.failures, "counterexample": self.counterexample}


# ---------------------------------------------------------------------------
# the cyclic relation

def cyclic_r(term, a, b, c):
    """``a < b < c`` or ``b < c < a`` or ``c < a < b``."""
    for x in (a, b, c):
        if not term.contains(x):
            raise ShapeMismatch(f"{x!r} is not an element of {term}")
    ab, bc, ca = term.cmp(a, b), term.cmp(b, c), term.cmp(c, a)
    if ab == 0 or bc == 0 or ca == 0:
        raise NotDistinct("cyclic_r needs three distinct elements")
    return (ab < 0 and bc < 0) or (bc < 0 and ca < 0) or (ca < 0 and ab < 0)


def _r(term, a, b, c):
    ab, bc, ca = term.cmp(a, b), term.cmp(b, c), term.cmp(c, a)
    return (ab < 0 and bc < 0) or (bc < 0 and ca < 0) or (ca < 0 and ab < 0)


# ---------------------------------------------------------------------------
# validation

def _points(term, rng, samples, extra=()):
    size = term.finite_size()
    if size is not None and size <= 64:
        return term.enumerate()
    pts = [term.sample_element(rng) for _ in range(samples)]
    pts.extend(extra)
    return pts


def _neighbor_points(term, pts):
    # adjacent elements stress the boundaries of the cuts
    out = []
    c = term.classify()
    if not c.discrete:
        return out
    for x in pts[:64]:
        p, s = term.neighbors(x)
        out.extend(e for e in (p, s) if e is not None)
    return out


def validate_witness(w: CTLOWitness, seed=0, samples=500) -> WitnessReport:
    rep = WitnessReport()
    term, cmp = w.term, w.term.cmp
    if not w.whole:
        rep.record(cmp(w.a, w.b) <= 0, "a<=b", a=w.a, b=w.b)
    rep.record(w.cut1(w.a), "a in L1", a=w.a)
    rep.record(w.in_l1_prime(w.b), "b in L1'", b=w.b)
    rep.record(w.f1(w.a) == w.b, "F1(a)=b", a=w.a, expected=w.b, got=w.f1(w.a))

    rng = random.Random(seed)
    pts = _points(term, rng, samples, (w.a, w.b))
    pts = pts + _neighbor_points(term, pts)
    for x in pts:
        if w.cut1(x):
            y = w.f1(x)
            ok = term.contains(y) and w.in_l1_prime(y)
            rep.record(ok, "F1 maps L1 into L1'", x=x, got=y)
            if ok:
                rep.record(w.f1_inv(y) == x, "F1 inverse", x=x, got=w.f1_inv(y))
        else:
            y = w.f2(x)
            ok = term.contains(y) and w.cut2(y)
            rep.record(ok, "F2 maps L2 into L2'", x=x, got=y)
            if ok:
                rep.record(w.f2_inv(y) == x, "F2 inverse", x=x, got=w.f2_inv(y))
    for y in pts:
        if w.cut2(y):
            x = w.f2_inv(y)
            ok = term.contains(x) and not w.cut1(x)
            rep.record(ok, "F2 inverse maps L2' into L2", y=y, got=x)
            if ok:
                rep.record(w.f2(x) == y, "F2 surjective", y=y, got=w.f2(x))
        else:
            x = w.f1_inv(y)
            ok = term.contains(x) and w.cut1(x)
            rep.record(ok, "F1 inverse maps L1' into L1", y=y, got=x)
            if ok:
                rep.record(w.f1(x) == y, "F1 surjective", y=y, got=w.f1(x))

    pairs = _pairs(pts, rng, samples)
    for x, y in pairs:
        c = cmp(x, y)
        if c > 0:
            x, y, c = y, x, -c
        if c == 0:
            continue
        rep.record(not (w.cut1(y) and not w.cut1(x)), "L1 downward closed", x=x, y=y)
        rep.record(not (w.cut2(y) and not w.cut2(x)), "L2' downward closed", x=x, y=y)
        if w.cut1(x) == w.cut1(y):
            f = w.f1 if w.cut1(x) else w.f2
            rep.record(cmp(f(x), f(y)) < 0, "monotone", x=x, y=y)
        if w.cut2(x) == w.cut2(y):
            g = w.f2_inv if w.cut2(x) else w.f1_inv
            rep.record(cmp(g(x), g(y)) < 0, "inverse monotone", x=x, y=y)

    c = term.classify()
    if c.discrete and c.unbounded:
        # pieces of an unbounded order are themselves unbounded
        for x in pts[:samples]:
            p, s = term.neighbors(x)
            rep.record(_boundary_ok(w.cut1, p, x, s), "L1/L2 unbounded", x=x)
            rep.record(_boundary_ok(w.cut2, p, x, s), "L2'/L1' unbounded", x=x)
    return rep


def _boundary_ok(cut, p, x, s):
    # in unbounded pieces the neighbors of x never cross the cut
    return cut(p) == cut(x) == cut(s)


def _pairs(pts, rng, samples):
    n = len(pts)
    if n <= 64:
        return list(itertools.combinations(pts, 2))
    return [(pts[rng.randrange(n)], pts[rng.randrange(n)]) for _ in range(samples)]


def validate_cyc_equiv(ce: CycEquivWitness, seed=0, samples=500) -> WitnessReport:
    rep = WitnessReport()
    rng = random.Random(seed)
    left, right = ce.term_l, ce.term_r
    xs = _points(left, rng, samples)
    ys = _points(right, rng, samples)
    for x in xs:
        if ce.cut_l(x):
            y = ce.f1(x)
            ok = right.contains(y) and not ce.cut_r(y)
            rep.record(ok, "F1 maps L1 into L1'", x=x, got=y)
            rep.record(ok and ce.f1_inv(y) == x, "F1 inverse", x=x)
        else:
            y = ce.f2(x)
            ok = right.contains(y) and ce.cut_r(y)
            rep.record(ok, "F2 maps L2 into L2'", x=x, got=y)
            rep.record(ok and ce.f2_inv(y) == x, "F2 inverse", x=x)
    for y in ys:
        x = ce.unglue(y)
        rep.record(left.contains(x) and ce.glue(x) == y, "glued map surjective", y=y)
    for x, y in _pairs(xs, rng, samples):
        c = left.cmp(x, y)
        if c > 0:
            x, y, c = y, x, -c
        if c == 0:
            continue
        rep.record(not (ce.cut_l(y) and not ce.cut_l(x)), "L1 downward closed", x=x, y=y)
        if ce.cut_l(x) == ce.cut_l(y):
            rep.record(right.cmp(ce.glue(x), ce.glue(y)) < 0, "monotone", x=x, y=y)
    for x, y in _pairs(ys, rng, samples):
        c = right.cmp(x, y)
        if c > 0:
            x, y = y, x
        if c:
            rep.record(not (ce.cut_r(y) and not ce.cut_r(x)), "L2' downward closed", x=x, y=y)
    return rep


# ---------------------------------------------------------------------------
# constructors

def trivial_witness(term, a, via="trivial"):
    """``a = b``: take ``L1 = L1' = L`` and the identity."""
    return CTLOWitness(term, a, a, ALL, NOTHING, _identity, _identity, _identity, _identity,
                       whole=True, via=via)


def witness_finite_rotation(n, a, b):
    if not (isinstance(n, int) and 0 <= a <= b < n):
        raise OutOfRange(f"need 0 <= a <= b < n, got n={n}, a={a}, b={b}")
    term = Fin(n)
    d = b - a
    if d == 0:
        return trivial_witness(term, FinElem(a), via="rotation")
    return CTLOWitness(
        term, FinElem(a), FinElem(b),
        Cut(lambda x: x.i <= n - 1 - d, f"x <= {n - 1 - d}"),
        Cut(lambda y: y.i < d, f"y < {d}"),
        lambda x: FinElem(x.i + d), lambda y: FinElem(y.i - d),
        lambda x: FinElem(x.i - (n - d)), lambda y: FinElem(y.i + (n - d)),
        via="rotation",
    )


def _add_exp(term, f, diff, sign):
    vals = dict(f.support)
    p0 = term.point.z
    for pos, dz in diff.items():
        vals[pos] = ZetaElem(vals.get(pos, term.point).z + sign * dz)
    items = [(p, v) for p, v in vals.items() if v.z != p0]
    return ExpElem(term.sort_support(items))


def translation(term, a, b):
    """An automorphism of ``term`` sending ``a`` to ``b``, with its inverse."""
    if isinstance(term, Zeta):
        d = b.z - a.z
        return (lambda x: ZetaElem(x.z + d)), (lambda y: ZetaElem(y.z - d))
    if isinstance(term, Eta):
        d = b.q - a.q
        return (lambda x: EtaElem(x.q + d)), (lambda y: EtaElem(y.q - d))
    if isinstance(term, OrdExp) and isinstance(term.base, Zeta) \
            and isinstance(term.exponent, Ordinal):
        fa, fb = term.fs(a), term.fs(b)
        diff = {}
        for p in set(fa.positions()) | set(fb.positions()):
            dz = fb(p).z - fa(p).z
            if dz:
                diff[p] = dz
        return (lambda x: _add_exp(term, x, diff, 1)), (lambda y: _add_exp(term, y, diff, -1))
    if isinstance(term, Prod):
        g1, g1i = translation(term.left, a.first, b.first)
        g2, g2i = translation(term.right, a.second, b.second)
        return ((lambda x: ProdElem(g1(x.first), g2(x.second))),
                (lambda y: ProdElem(g1i(y.first), g2i(y.second))))
    raise UnsupportedFamily(f"{term} is not in the translation family", term)


def witness_translation(term, a, b):
    for x in (a, b):
        if not term.contains(x):
            raise ShapeMismatch(f"{x!r} is not an element of {term}")
    phi, phi_inv = translation(term, a, b)
    return CTLOWitness(term, a, b, ALL, NOTHING, phi, phi_inv, _identity, _identity,
                       whole=True, via="translation")


def witness_product_left(left_term, a_left, b_left, w: CTLOWitness):
    """Transitive ``left_term`` times a CTLO: ``G_j = phi x F_j``."""
    phi, phi_inv = translation(left_term, a_left, b_left)
    term = Prod(left_term, w.term)
    return CTLOWitness(
        term, ProdElem(a_left, w.a), ProdElem(b_left, w.b),
        Cut(lambda x: w.cut1(x.second), f"second coordinate in {w.cut1.description}"),
        Cut(lambda y: w.cut2(y.second), f"second coordinate in {w.cut2.description}"),
        lambda x: ProdElem(phi(x.first), w.f1(x.second)),
        lambda y: ProdElem(phi_inv(y.first), w.f1_inv(y.second)),
        lambda x: ProdElem(phi(x.first), w.f2(x.second)),
        lambda y: ProdElem(phi_inv(y.first), w.f2_inv(y.second)),
        whole=w.whole, via="product-left",
    )


def witness_product_discrete(w_left: CTLOWitness, w_right: CTLOWitness, reverse_left=False):
    """Product of a CTLO with a discrete unbounded CTLO.

    With ``reverse_left`` the left witness is read as certifying ``b <= a`` on
    the first coordinate (so ``a`` is its second point), which forces the
    inverse maps and predecessor shifts.
    """
    right = w_right.term
    c = right.classify()
    if not (c.discrete and c.unbounded):
        raise NotDiscreteUnbounded(f"{right} is not discrete and unbounded")
    term = Prod(w_left.term, right)
    succ = lambda y: right.neighbors(y)[1]
    pred = lambda y: right.neighbors(y)[0]
    W, V = w_left, w_right

    def piece_maps(fj, fj_inv):
        if not reverse_left:
            def fwd(x):
                if W.cut1(x.first):
                    return ProdElem(W.f1(x.first), fj(x.second))
                return ProdElem(W.f2(x.first), succ(fj(x.second)))

            def inv(y):
                if W.cut2(y.first):
                    return ProdElem(W.f2_inv(y.first), fj_inv(pred(y.second)))
                return ProdElem(W.f1_inv(y.first), fj_inv(y.second))
        else:
            def fwd(x):
                if W.cut2(x.first):
                    return ProdElem(W.f2_inv(x.first), pred(fj(x.second)))
                return ProdElem(W.f1_inv(x.first), fj(x.second))

            def inv(y):
                if W.cut1(y.first):
                    return ProdElem(W.f1(y.first), fj_inv(y.second))
                return ProdElem(W.f2(y.first), fj_inv(succ(y.second)))
        return fwd, inv

    f1, f1_inv = piece_maps(V.f1, V.f1_inv)
    f2, f2_inv = piece_maps(V.f2, V.f2_inv)
    if reverse_left:
        a, b = ProdElem(W.b, V.a), ProdElem(W.a, V.b)
    else:
        a, b = ProdElem(W.a, V.a), ProdElem(W.b, V.b)
    if a == b:
        return trivial_witness(term, a, via="product-discrete")
    return CTLOWitness(
        term, a, b,
        Cut(lambda x: V.cut1(x.second), f"second coordinate in {V.cut1.description}"),
        Cut(lambda y: V.cut2(y.second), f"second coordinate in {V.cut2.description}"),
        f1, f1_inv, f2, f2_inv, whole=V.whole and W.whole and not reverse_left,
        via="product-discrete",
    )


def witness_reverse(w: CTLOWitness, literal=False):
    """The dual witness on ``reverse(term)`` for the pair ``(b*, a*)``.

    With ``literal`` the target is the node ``Rev(term)``, whose elements are
    those of ``term``, instead of the simplified reversal.
    """
    term = w.term
    if literal:
        from .linorder import Rev
        rterm = Rev(term)
        rev = unrev = _identity
    else:
        rterm = reverse(term)
        rev = term.reverse_element
        unrev = rterm.reverse_element
    if w.whole:
        return CTLOWitness(
            rterm, rev(w.b), rev(w.a), ALL, NOTHING,
            lambda x: rev(w.f1_inv(unrev(x))), lambda y: rev(w.f1(unrev(y))),
            _identity, _identity, whole=True, via="reverse",
        )
    return CTLOWitness(
        rterm, rev(w.b), rev(w.a),
        Cut(lambda x: not w.cut2(unrev(x)), f"reversal of complement of {w.cut2.description}"),
        Cut(lambda y: not w.cut1(unrev(y)), f"reversal of complement of {w.cut1.description}"),
        lambda x: rev(w.f1_inv(unrev(x))), lambda y: rev(w.f1(unrev(y))),
        lambda x: rev(w.f2_inv(unrev(x))), lambda y: rev(w.f2(unrev(y))),
        via="reverse",
    )


# ---------------------------------------------------------------------------
# cyclic automorphisms

def cyclic_from_ctlo(w: CTLOWitness) -> CyclicAutomorphism:
    def forward(x):
        return w.f1(x) if w.cut1(x) else w.f2(x)

    def inverse(y):
        return w.f2_inv(y) if w.cut2(y) else w.f1_inv(y)

    return CyclicAutomorphism(w.term, forward, inverse)


def _check_automorphism(term, phi, rng, samples):
    size = term.finite_size()
    if size is not None and size <= 12:
        triples = itertools.permutations(term.enumerate(), 3)
    else:
        triples = ([term.sample_element(rng) for _ in range(3)] for _ in range(samples))
    for x, y, z in triples:
        if term.cmp(x, y) == 0 or term.cmp(y, z) == 0 or term.cmp(x, z) == 0:
            continue
        if _r(term, x, y, z) != _r(term, phi.forward(x), phi.forward(y), phi.forward(z)):
            raise NotAutomorphism(f"R not preserved on {(x, y, z)!r}")


def ctlo_from_cyclic(term, phi: CyclicAutomorphism, a, b, seed=0, samples=500):
    """Recover a witness from a cyclic automorphism with ``phi(a) = b``."""
    if phi.forward(a) != b:
        raise PointMismatch(f"phi({a!r}) != {b!r}")
    if term.cmp(a, b) > 0:
        raise ValueError("ctlo_from_cyclic needs a <= b")
    _check_automorphism(term, phi, random.Random(seed), samples)
    cmp = term.cmp

    def in_l1(x):
        return (cmp(a, x) <= 0) == (cmp(b, phi.forward(x)) <= 0)

    return CTLOWitness(
        term, a, b,
        Cut(in_l1, "a <= x iff b <= phi(x)"),
        Cut(lambda y: not in_l1(phi.inverse(y)), "image of the complement of L1"),
        phi.forward, phi.inverse, phi.forward, phi.inverse,
        via="from-cyclic",
    )


def witness_transport(ce: CycEquivWitness, w: CTLOWitness, seed=0, samples=500):
    """Move a witness across a cyclic equivalence by conjugating its automorphism."""
    if ce.identity:
        return w
    if w.term == ce.term_r and w.term != ce.term_l:
        ce = ce.inverted()
    elif w.term != ce.term_l:
        raise ShapeMismatch(f"witness lives on {w.term}, not on {ce.term_l}")
    phi = cyclic_from_ctlo(w)
    target = ce.term_r
    conj = CyclicAutomorphism(
        target,
        lambda y: ce.glue(phi.forward(ce.unglue(y))),
        lambda y: ce.glue(phi.inverse(ce.unglue(y))),
    )
    a, b = ce.glue(w.a), ce.glue(w.b)
    if target.cmp(a, b) <= 0:
        out = ctlo_from_cyclic(target, conj, a, b, seed, samples)
    else:
        inv = CyclicAutomorphism(target, conj.inverse, conj.forward)
        out = ctlo_from_cyclic(target, inv, b, a, seed, samples)
    return CTLOWitness(out.term, out.a, out.b, out.cut1, out.cut2, out.f1, out.f1_inv,
                       out.f2, out.f2_inv, via=f"transport({ce.name})")


def inflationary_modify(term, phi_forward, phi_inverse, a, b, bound=64):
    """``phi`` on ``I_{a,b}``, identity elsewhere; membership searched up to ``bound``."""
    cmp = term.cmp
    if cmp(a, b) > 0:
        raise ValueError("inflationary_modify needs a <= b")
    if phi_forward(a) != b:
        raise PointMismatch(f"phi({a!r}) != {b!r}")
    if a == b:
        return _identity

    def modified(x):
        lo = hi = a
        for _ in range(bound):
            lo, hi = phi_inverse(lo), phi_forward(hi)
            if cmp(lo, x) < 0 < cmp(hi, x):
                return phi_forward(x)
        raise SearchBoundExceeded(f"membership of {x!r} in I(a,b) undecided after {bound} steps")

    return modified


def transitive_finite_check(n):
    """Whether ``Fin(n)`` is transitive, by brute force over permutations."""
    if n > 9:
        raise TooLarge("brute force is limited to n <= 9")
    autos = [p for p in itertools.permutations(range(n))
             if all(p[i] < p[i + 1] for i in range(n - 1))]
    return all(any(p[x] == y for p in autos) for x in range(n) for y in range(n))


def cyclic_automorphism_count(n):
    """Number of permutations of ``Fin(n)`` preserving the cyclic relation."""
    if n > 9:
        raise TooLarge("brute force is limited to n <= 9")
    term = Fin(n)
    triples = [(FinElem(i), FinElem(j), FinElem(k))
               for i, j, k in itertools.permutations(range(n), 3)]
    truth = [_r(term, *t) for t in triples]
    count = 0
    for p in itertools.permutations(range(n)):
        if all(_r(term, FinElem(p[x.i]), FinElem(p[y.i]), FinElem(p[z.i])) == r
               for (x, y, z), r in zip(triples, truth)):
            count += 1
    return count


# ---------------------------------------------------------------------------
# stock cyclic equivalences

def identity_cyc_equiv(term):
    return CycEquivWitness(term, term, ALL, NOTHING, _identity, _identity, _identity,
                           _identity, identity=True, name="identity")


def omega_omegastar_zeta():
    """``w + w* ~c z``: the two halves of ``z`` swap places."""
    return CycEquivWitness(
        Sum(Omega(), OmegaStar()), Zeta(),
        Cut(lambda x: x.side is LEFT, "left summand"),
        Cut(lambda z: z.z < 0, "z < 0"),
        lambda x: ZetaElem(x.inner.k), lambda z: SumElem(LEFT, OmegaElem(z.z)),
        lambda x: ZetaElem(-1 - x.inner.k), lambda z: SumElem(RIGHT, OmegaStarElem(-1 - z.z)),
        name="w + w* ~c z",
    )


def _pell_below():
    p, q = 1, 1
    while True:
        yield Fraction(p, q)
        p, q = 3 * p + 4 * q, 2 * p + 3 * q


def _pell_above():
    p, q = 3, 2
    while True:
        yield Fraction(p, q)
        p, q = 3 * p + 4 * q, 2 * p + 3 * q


def _pell(gen_factory, n, cache={}):
    seq = cache.setdefault(gen_factory, [])
    if len(seq) <= n:
        g = gen_factory()
        seq[:] = list(itertools.islice(g, max(n + 1, 2 * len(seq))))
    return seq[n]


def _below_sqrt2(q):
    return q < 0 or q * q < 2


def _g(x):
    """Order-isomorphism of the positive rationals onto the rationals below sqrt 2."""
    r0 = _pell(_pell_below, 0)
    if x <= 1:
        return r0 - (1 / x - 1)
    n = x.numerator // x.denominator
    lo, hi = _pell(_pell_below, n - 1), _pell(_pell_below, n)
    return lo + (x - n) * (hi - lo)


def _g_inv(y):
    r0 = _pell(_pell_below, 0)
    if y <= r0:
        return 1 / (r0 - y + 1)
    n = 1
    while _pell(_pell_below, n) < y:
        n += 1
    lo, hi = _pell(_pell_below, n - 1), _pell(_pell_below, n)
    return n + (y - lo) / (hi - lo)


def _h(x):
    """Order-isomorphism of the negative rationals onto the rationals above sqrt 2."""
    s1 = _pell(_pell_above, 0)
    if x >= -1:
        return s1 + (1 / (-x) - 1)
    m = (-x).numerator // (-x).denominator  # x in [-(m+1), -m]
    hi, lo = _pell(_pell_above, m - 1), _pell(_pell_above, m)
    return hi - (-x - m) * (hi - lo)


def _h_inv(y):
    s1 = _pell(_pell_above, 0)
    if y >= s1:
        return -1 / (y - s1 + 1)
    m = 1
    while _pell(_pell_above, m) > y:
        m += 1
    hi, lo = _pell(_pell_above, m - 1), _pell(_pell_above, m)
    return -(m + (hi - y) / (hi - lo))


def eta_eta_plus_one():
    """``eta ~c eta + 1``, cutting the right-hand side at sqrt 2."""
    top = SumElem(RIGHT, FinElem(0))

    def f1(x):
        return top if x.q == 0 else SumElem(LEFT, EtaElem(_h(x.q)))

    def f1_inv(y):
        return EtaElem(Fraction(0)) if y == top else EtaElem(_h_inv(y.inner.q))

    return CycEquivWitness(
        Eta(), Sum(Eta(), Fin(1)),
        Cut(lambda x: x.q <= 0, "x <= 0"),
        Cut(lambda y: y.side is LEFT and _below_sqrt2(y.inner.q), "left part below sqrt 2"),
        f1, f1_inv,
        lambda x: SumElem(LEFT, EtaElem(_g(x.q))), lambda y: EtaElem(_g_inv(y.inner.q)),
        name="eta ~c eta + 1",
    )


def eta_one_plus_eta():
    """``eta ~c 1 + eta``, cutting the right-hand side at -sqrt 2."""
    bottom = SumElem(LEFT, FinElem(0))

    def f2(x):
        return bottom if x.q == 0 else SumElem(RIGHT, EtaElem(-_h(-x.q)))

    def f2_inv(y):
        return EtaElem(Fraction(0)) if y == bottom else EtaElem(-_h_inv(-y.inner.q))

    return CycEquivWitness(
        Eta(), Sum(Fin(1), Eta()),
        Cut(lambda x: x.q < 0, "x < 0"),
        Cut(lambda y: y.side is LEFT or not _below_sqrt2(-y.inner.q), "bottom or below -sqrt 2"),
        lambda x: SumElem(RIGHT, EtaElem(-_g(-x.q))), lambda y: EtaElem(-_g_inv(-y.inner.q)),
        f2, f2_inv,
        name="eta ~c 1 + eta",
    )


def zeta_eta_with_ends():
    """``z*eta ~c w + z*eta + w*``: the copy at 0 splits into the two ends."""
    mid = lambda e: SumElem(RIGHT, SumElem(LEFT, e))
    end = lambda k: SumElem(RIGHT, SumElem(RIGHT, OmegaStarElem(k)))

    def in_l1(x):
        q = x.second.q
        return q < 0 or (q == 0 and x.first.z < 0)

    def f1(x):
        q = x.second.q
        if q == 0:
            return end(-1 - x.first.z)
        return mid(ProdElem(x.first, EtaElem(_h(q))))

    def f1_inv(y):
        if y.inner.side is RIGHT:
            return ProdElem(ZetaElem(-1 - y.inner.inner.k), EtaElem(Fraction(0)))
        e = y.inner.inner
        return ProdElem(e.first, EtaElem(_h_inv(e.second.q)))

    def f2(x):
        q = x.second.q
        if q == 0:
            return SumElem(LEFT, OmegaElem(x.first.z))
        return mid(ProdElem(x.first, EtaElem(_g(q))))

    def f2_inv(y):
        if y.side is LEFT:
            return ProdElem(ZetaElem(y.inner.k), EtaElem(Fraction(0)))
        e = y.inner.inner
        return ProdElem(e.first, EtaElem(_g_inv(e.second.q)))

    def in_l2_prime(y):
        if y.side is LEFT:
            return True
        if y.inner.side is RIGHT:
            return False
        return _below_sqrt2(y.inner.inner.second.q)

    return CycEquivWitness(
        Prod(Zeta(), Eta()),
        Sum(Omega(), Sum(Prod(Zeta(), Eta()), OmegaStar())),
        Cut(in_l1, "second coordinate < 0, or = 0 with first < 0"),
        Cut(in_l2_prime, "left end, or middle with second coordinate below sqrt 2"),
        f1, f1_inv, f2, f2_inv,
        name="z*eta ~c w + z*eta + w*",
    )


# ---------------------------------------------------------------------------
# choosing a witness family for a term

VIA_CHOICES = ("rotation", "translation", "prod55", "prod56", "reverse", "transport")


def stock_equivalences():
    return [omega_omegastar_zeta(), eta_eta_plus_one(), eta_one_plus_eta(), zeta_eta_with_ends()]


def _in_translation_family(term):
    if isinstance(term, (Zeta, Eta)):
        return True
    if isinstance(term, OrdExp):
        return isinstance(term.base, Zeta) and isinstance(term.exponent, Ordinal)
    if isinstance(term, Prod):
        return _in_translation_family(term.left) and _in_translation_family(term.right)
    return False


def _via_rotation(term, a, b):
    if not isinstance(term, Fin):
        raise UnsupportedFamily(f"rotation needs a finite order, not {term}", term)
    return witness_finite_rotation(term.n, a.i, b.i)


def _via_translation(term, a, b):
    if not _in_translation_family(term):
        raise UnsupportedFamily(f"{term} is not in the translation family", term)
    return witness_translation(term, a, b)


def _via_prod55(term, a, b):
    if not (isinstance(term, Prod) and _in_translation_family(term.left)):
        raise UnsupportedFamily(f"{term} is not a transitive order times a CTLO", term)
    inner = build_witness(term.right, a.second, b.second)
    return witness_product_left(term.left, a.first, b.first, inner)


def _via_prod56(term, a, b):
    if not isinstance(term, Prod):
        raise UnsupportedFamily(f"{term} is not a product", term)
    c = term.right.classify()
    if not (c.discrete and c.unbounded):
        raise NotDiscreteUnbounded(f"{term.right} is not discrete and unbounded")
    right = build_witness(term.right, a.second, b.second)
    if term.left.cmp(a.first, b.first) <= 0:
        return witness_product_discrete(build_witness(term.left, a.first, b.first), right)
    left = build_witness(term.left, b.first, a.first)
    return witness_product_discrete(left, right, reverse_left=True)


def _via_reverse(term, a, b):
    from .linorder import Rev
    if not isinstance(term, Rev):
        raise UnsupportedFamily(f"{term} is not a reversed term", term)
    return witness_reverse(build_witness(term.inner, b, a), literal=True)


def _via_transport(term, a, b):
    for ce in stock_equivalences():
        if term == ce.term_r:
            src, move = ce.term_l, ce.unglue
        elif term == ce.term_l:
            ce = ce.inverted()
            src, move = ce.term_l, ce.unglue
        else:
            continue
        x, y = move(a), move(b)
        if src.cmp(x, y) > 0:
            x, y = y, x
        return witness_transport(ce, build_witness(src, x, y))
    raise UnsupportedFamily(f"no stock cyclic equivalence reaches {term}", term)


_VIA = {"rotation": _via_rotation, "translation": _via_translation, "prod55": _via_prod55,
        "prod56": _via_prod56, "reverse": _via_reverse, "transport": _via_transport}


def build_witness(term: OrderTerm, a, b, via: Optional[str] = None) -> CTLOWitness:
    """A witness for ``a <= b`` from the first family that applies (or the one named)."""
    for x in (a, b):
        if not term.contains(x):
            raise ShapeMismatch(f"{x!r} is not an element of {term}")
    if term.cmp(a, b) > 0:
        raise ValueError("a witness needs a <= b")
    if via is not None:
        if via not in _VIA:
            raise ValueError(f"unknown witness family {via!r}")
        return _VIA[via](term, a, b)
    if a == b:
        return trivial_witness(term, a)
    for name in VIA_CHOICES:
        try:
            return _VIA[name](term, a, b)
        except (UnsupportedFamily, NotDiscreteUnbounded):
            continue
    raise UnsupportedFamily(f"no witness family covers {term}", term)
