"""An explicit isomorphism ``(L,a)^alpha -> (L,b)^alpha``.

``L`` is discrete and unbounded and comes with a cyclic-transitivity witness
for ``a <= b``.  The isomorphism is built by transfinite recursion on the
exponent.  At every stage ``alpha`` the exponential over ``a`` is split as
``L(alpha)_1 + L(alpha)_2`` and the one over ``b`` as ``L(alpha)'_2 + L(alpha)'_1``,
with isomorphisms ``F(alpha)_j`` between matching pieces:

* zero and limit stages have a single piece;
* at a successor stage the piece is read off the top coordinate;
* a successor of a limit ``lam`` applies ``F(lam)_1`` below ``lam`` and ``F_j`` on top;
* a successor of a successor shifts the top coordinate to its successor
  whenever the coordinate below it lies in the second piece;
* a limit stage evaluates at the least stage covering the support.

Elements are handled as supports: ``dict`` from ordinal position to value,
holding only entries that differ from the relevant basepoint.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass, field

from .cyclic import CTLOWitness, validate_witness
from .errors import BadStage, InternalInvariantViolation, NotDiscreteUnbounded, SideMismatch
from .exponential import FSFunction
from .linorder import OrdExp
from .ordinal import ONE, ZERO, Ordinal, ord_add, random_below, split_limit_finite

__all__ = [
    "ExpIsoContext", "side", "side_prime", "embed", "stage_f", "stage_f_inverse",
    "stage_f_via", "main_iso", "main_iso_inverse", "verify_exponentiable",
    "IsoReport",
]


class ExpIsoContext:
    """Base order, witness and the per-context memo of limit-stage images."""

    def __init__(self, witness: CTLOWitness, check=True, seed=0):
        base = witness.term
        c = base.classify()
        if not (c.discrete and c.unbounded):
            raise NotDiscreteUnbounded(f"{base} is not discrete and unbounded")
        if check:
            rep = validate_witness(witness, seed=seed, samples=200)
            if not rep.ok:
                raise ValueError(f"invalid witness: {rep.counterexample}")
        self.base = base
        self.witness = witness
        self.a = witness.a
        self.b = witness.b
        self._memo = {}
        self._lock = threading.RLock()

    def term_a(self, alpha):
        return OrdExp(self.base, self.a, Ordinal.of(alpha))

    def term_b(self, alpha):
        return OrdExp(self.base, self.b, Ordinal.of(alpha))

    # ---- one coordinate ---------------------------------------------
    def piece(self, y):
        return 1 if self.witness.cut1(y) else 2

    def piece_prime(self, z):
        return 2 if self.witness.cut2(z) else 1

    def _f(self, j, y):
        w = self.witness
        return w.f1(y) if j == 1 else w.f2(y)

    def _f_inv(self, j, z):
        w = self.witness
        return w.f1_inv(z) if j == 1 else w.f2_inv(z)

    def _succ(self, z):
        return self.base.neighbors(z)[1]

    def _pred(self, z):
        return self.base.neighbors(z)[0]

    # ---- stages -----------------------------------------------------
    def forward(self, alpha, supp):
        """``F(alpha)_j`` on an ``a``-support; returns the ``b``-support and ``j``."""
        lam, k = split_limit_finite(alpha)
        out = {}
        if not lam.is_zero():
            out.update(self.forward_limit({p: v for p, v in supp.items() if p < lam}))
        a, b = self.a, self.b
        prev = None
        for i in range(k):
            pos = ord_add(lam, i)
            y = supp.get(pos, a)
            j = self.piece(y)
            z = self._f(j, y)
            if prev == 2:
                z = self._succ(z)
                if self.piece_prime(z) != j:
                    raise InternalInvariantViolation(
                        f"successor shift left piece {j} at position {pos}")
            prev = j
            if z != b:
                out[pos] = z
        return out, (prev or 1)

    def inverse(self, alpha, supp):
        """Inverse of :meth:`forward` on a ``b``-support."""
        lam, k = split_limit_finite(alpha)
        out = {}
        if not lam.is_zero():
            out.update(self.inverse_limit({p: v for p, v in supp.items() if p < lam}))
        a, b = self.a, self.b
        prev = None
        for i in range(k):
            pos = ord_add(lam, i)
            z = supp.get(pos, b)
            j = self.piece_prime(z)
            if prev == 2:
                z = self._pred(z)
                if self.piece_prime(z) != j:
                    raise InternalInvariantViolation(
                        f"predecessor shift left piece {j} at position {pos}")
            y = self._f_inv(j, z)
            prev = j
            if y != a:
                out[pos] = y
        return out, (prev or 1)

    def covering_stage(self, supp, primed=False):
        """Least successor stage above the support whose first piece contains it."""
        if not supp:
            return ZERO
        top = max(supp, key=lambda p: p._key)
        inside = self.piece_prime(supp[top]) == 1 if primed else self.piece(supp[top]) == 1
        return ord_add(top, ONE if inside else 2)

    def forward_limit(self, supp):
        if not supp:
            return {}
        key = ("F", tuple(sorted(supp.items(), key=lambda pv: pv[0]._key)))
        with self._lock:
            hit = self._memo.get(key)
        if hit is None:
            hit, _ = self.forward(self.covering_stage(supp), supp)
            with self._lock:
                self._memo[key] = hit
        return dict(hit)

    def inverse_limit(self, supp):
        if not supp:
            return {}
        key = ("G", tuple(sorted(supp.items(), key=lambda pv: pv[0]._key)))
        with self._lock:
            hit = self._memo.get(key)
        if hit is None:
            hit, _ = self.inverse(self.covering_stage(supp, primed=True), supp)
            with self._lock:
                self._memo[key] = hit
        return dict(hit)


# ---------------------------------------------------------------------------
# public operations on FSFunctions

def _supp(f):
    return dict(f.support)


def _fs(ctx, alpha, supp, point):
    term = OrdExp(ctx.base, point, alpha)
    return FSFunction(ctx.base, point, alpha, term.sort_support(list(supp.items())))


def _check(ctx, alpha, f, point):
    alpha = Ordinal.of(alpha)
    if f.base != ctx.base or f.point != point or f.exponent != alpha:
        raise BadStage(f"element does not live in ({ctx.base}, {point})^{alpha}")
    return alpha


def side(ctx, alpha, f):
    """Piece of ``f`` in ``(L,a)^alpha``: 1 or 2."""
    lam, k = split_limit_finite(Ordinal.of(alpha))
    if k == 0:
        return 1
    return ctx.piece(f(ord_add(lam, k - 1)))


def side_prime(ctx, alpha, z):
    """Piece of ``z`` in ``(L,b)^alpha``: 1 or 2."""
    lam, k = split_limit_finite(Ordinal.of(alpha))
    if k == 0:
        return 1
    return ctx.piece_prime(z(ord_add(lam, k - 1)))


def embed(ctx, delta, alpha, x: FSFunction, which="I"):
    """Pad ``x`` from stage ``delta`` to ``alpha`` with the basepoint (``I``: a, ``J``: b)."""
    delta, alpha = Ordinal.of(delta), Ordinal.of(alpha)
    if delta > alpha:
        raise BadStage(f"cannot embed stage {delta} into the smaller stage {alpha}")
    point = ctx.a if which == "I" else ctx.b
    _check(ctx, delta, x, point)
    s = side(ctx, delta, x) if which == "I" else side_prime(ctx, delta, x)
    if s != 1:
        raise SideMismatch(f"embedding needs an element of the first piece at stage {delta}")
    return FSFunction(ctx.base, point, alpha, x.support)


def stage_f(ctx, alpha, j, f: FSFunction) -> FSFunction:
    alpha = _check(ctx, alpha, f, ctx.a)
    if side(ctx, alpha, f) != j:
        raise SideMismatch(f"element lies in piece {side(ctx, alpha, f)}, not {j}")
    out, _ = ctx.forward(alpha, _supp(f))
    return _fs(ctx, alpha, out, ctx.b)


def stage_f_inverse(ctx, alpha, j, z: FSFunction) -> FSFunction:
    alpha = _check(ctx, alpha, z, ctx.b)
    if side_prime(ctx, alpha, z) != j:
        raise SideMismatch(f"element lies in piece {side_prime(ctx, alpha, z)}, not {j}")
    out, _ = ctx.inverse(alpha, _supp(z))
    return _fs(ctx, alpha, out, ctx.a)


def stage_f_via(ctx, alpha, f: FSFunction, delta) -> FSFunction:
    """``J(F(delta)_1(x'))`` for a chosen stage ``delta <= alpha`` with ``I(x') = f``."""
    alpha = _check(ctx, alpha, f, ctx.a)
    delta = Ordinal.of(delta)
    if delta > alpha:
        raise BadStage(f"stage {delta} exceeds {alpha}")
    if any(p >= delta for p in f.positions()):
        raise BadStage(f"support of the element reaches beyond stage {delta}")
    x = FSFunction(ctx.base, ctx.a, delta, f.support)
    return embed(ctx, delta, alpha, stage_f(ctx, delta, 1, x), which="J")


def main_iso(ctx, alpha, f: FSFunction) -> FSFunction:
    """``G(alpha)``: ``F(beta)_1`` below the limit part ``beta``, identity on values above."""
    alpha = _check(ctx, alpha, f, ctx.a)
    beta, n = split_limit_finite(alpha)
    supp = _supp(f)
    out = {} if beta.is_zero() else ctx.forward_limit({p: v for p, v in supp.items() if p < beta})
    for i in range(n):
        pos = ord_add(beta, i)
        v = supp.get(pos, ctx.a)
        if v != ctx.b:
            out[pos] = v
    return _fs(ctx, alpha, out, ctx.b)


def main_iso_inverse(ctx, alpha, z: FSFunction) -> FSFunction:
    alpha = _check(ctx, alpha, z, ctx.b)
    beta, n = split_limit_finite(alpha)
    supp = _supp(z)
    out = {} if beta.is_zero() else ctx.inverse_limit({p: v for p, v in supp.items() if p < beta})
    for i in range(n):
        pos = ord_add(beta, i)
        v = supp.get(pos, ctx.b)
        if v != ctx.a:
            out[pos] = v
    return _fs(ctx, alpha, out, ctx.a)


# ---------------------------------------------------------------------------
# verification

CHECK_NAMES = ("monotone", "roundtrip", "basepoint", "condition4", "condition5",
               "side", "well_defined")


@dataclass
class IsoReport:
    alpha: Ordinal
    checks: dict = field(default_factory=lambda: {n: [0, 0] for n in CHECK_NAMES})
    counterexample: dict = None

    @property
    def ok(self):
        return all(failed == 0 for _, failed in self.checks.values())

    def failed(self, name):
        return self.checks[name][1]

    def record(self, name, passed, **inputs):
        entry = self.checks[name]
        entry[0] += 1
        if not passed:
            entry[1] += 1
            if self.counterexample is None:
                from .syntax import jsonable
                self.counterexample = {"check": name,
                                       "inputs": {k: jsonable(v) for k, v in inputs.items()}}

    def to_json(self):
        return {
            "alpha": str(self.alpha),
            "status": "pass" if self.ok else "fail",
            "checks": {k: {"run": r, "failed": f} for k, (r, f) in self.checks.items()},
            "counterexample": self.counterexample,
        }


def _sample_pair(term, rng):
    f = term.sample_element(rng)
    r = rng.random()
    if r < 0.25:
        g = term.neighbors(f)[1]
    elif r < 0.5 and f.support:
        # differ at one existing position only
        p, v = f.support[rng.randrange(len(f.support))]
        g = term.with_value(f, p, term.base.sample_element(rng))
    else:
        g = term.sample_element(rng)
    return f, g


def verify_exponentiable(ctx, alpha, seed=0, pairs=1000, squares=200) -> IsoReport:
    """Sampled check that ``main_iso`` is an isomorphism onto ``(L,b)^alpha``."""
    alpha = Ordinal.of(alpha)
    rng = random.Random(seed)
    rep = IsoReport(alpha)
    ta, tb = ctx.term_a(alpha), ctx.term_b(alpha)

    const_a = FSFunction(ctx.base, ctx.a, alpha, ())
    image = main_iso(ctx, alpha, const_a)
    rep.record("basepoint", image.support == FSFunction(ctx.base, ctx.b, alpha, ()).support,
               alpha=alpha, got=image.element)
    f4, _ = ctx.forward(alpha, {})
    rep.record("condition4", f4 == {}, alpha=alpha, got=f4)

    for _ in range(pairs):
        e, e2 = _sample_pair(ta, rng)
        f, g = FSFunction.of(ta, e), FSFunction.of(ta, e2)
        c = ta.cmp(e, e2)
        gf, gg = main_iso(ctx, alpha, f), main_iso(ctx, alpha, g)
        rep.record("monotone", tb.cmp(gf.element, gg.element) == c, f=e, g=e2)
        rep.record("roundtrip", main_iso_inverse(ctx, alpha, gf) == f, f=e)
        z = FSFunction.of(tb, tb.sample_element(rng))
        rep.record("roundtrip", main_iso(ctx, alpha, main_iso_inverse(ctx, alpha, z)) == z, z=z.element)
        # pieces at the stage itself
        j = side(ctx, alpha, f)
        fz = stage_f(ctx, alpha, j, f)
        rep.record("side", side_prime(ctx, alpha, fz) == j, f=e)
        rep.record("roundtrip", stage_f_inverse(ctx, alpha, j, fz) == f, f=e)

    if alpha.is_limit():
        for _ in range(max(pairs // 10, 1)):
            e = ta.sample_element(rng)
            f = FSFunction.of(ta, e)
            cover = ctx.covering_stage(_supp(f))
            later = ord_add(cover, 1 + rng.randrange(3))
            if later < alpha and side(ctx, later, FSFunction(ctx.base, ctx.a, later, e.support)) == 1:
                rep.record("well_defined",
                           stage_f_via(ctx, alpha, f, cover) == stage_f_via(ctx, alpha, f, later),
                           f=e, delta=later)

    top = ord_add(alpha, ONE)
    for _ in range(squares):
        delta = random_below(top, rng)
        td = ctx.term_a(delta)
        x = td.sample_element(rng)
        lam, k = split_limit_finite(delta)
        if k:
            pos = ord_add(lam, k - 1)
            if ctx.piece(td.value(x, pos)) != 1:
                x = td.with_value(x, pos, ctx.a)
        xf = FSFunction.of(td, x)
        lhs = stage_f(ctx, alpha, 1, embed(ctx, delta, alpha, xf, "I"))
        rhs = embed(ctx, delta, alpha, stage_f(ctx, delta, 1, xf), "J")
        rep.record("condition5", lhs == rhs, delta=delta, x=x)
    return rep
