"""Hausdorff condensations.

``x ~0 y`` iff ``x = y``; ``x ~(b+1) y`` iff the interval between them meets
finitely many ``~b`` classes; at limits the relations are united.  On finite
orders this is computed by brute force.  On terms a table of rewrite rules
computes one condensation step together with the quotient map ``q`` (element to
class) and a section ``s`` (class to a representative), which is what lets
witnesses be pushed through the quotient.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .cyclic import CTLOWitness, Cut, trivial_witness
from .errors import HypothesisFailed, NotDiscreteUnbounded, Unsupported
from .linorder import (
    Eta,
    ExpElem,
    Fin,
    FinElem,
    Omega,
    OmegaStar,
    OrdExp,
    Prod,
    ProdElem,
    Rev,
    Sum,
    SumElem,
    Zeta,
    reverse,
)
from .ordinal import ONE, ZERO, Ordinal, ord_add, ord_sub, split_limit_finite

__all__ = [
    "Condensation", "condense_brute", "condense_step", "condense_symbolic",
    "condense_iterate", "zeta_factorization", "Isomorphism", "ctlo_condense_transport",
]

# generic limit stages iterate until a step is the identity
_STABILIZE_LIMIT = 64


def _identity(x):
    return x


@dataclass(frozen=True)
class Condensation:
    """A condensed term with the quotient map and a section of it."""

    source: object
    term: object
    q: Callable
    s: Callable
    identity: bool = False

    def then(self, other: "Condensation") -> "Condensation":
        if self.identity:
            return Condensation(self.source, other.term, other.q, other.s, other.identity)
        if other.identity:
            return Condensation(self.source, self.term, self.q, self.s, False)
        q1, q2, s1, s2 = self.q, other.q, self.s, other.s
        return Condensation(self.source, other.term, lambda x: q2(q1(x)),
                            lambda y: s1(s2(y)))


def _same(term):
    return Condensation(term, term, _identity, _identity, True)


# ---------------------------------------------------------------------------
# brute force

def condense_brute(size, gamma):
    """Classes of ``~gamma`` on ``Fin(size)``, as tuples of consecutive indices."""
    gamma = Ordinal.of(gamma)
    classes = [(i,) for i in range(size)]
    steps = 0
    while True:
        if (gamma.is_finite() and steps >= gamma.finite_value()) or len(classes) <= 1:
            return classes
        index = {x: k for k, cls in enumerate(classes) for x in cls}
        merged = []
        for x in range(size):
            # x joins the previous class if [start, x] meets finitely many classes
            if merged:
                start = merged[-1][0]
                touched = {index[y] for y in range(start, x + 1)}
                if len(touched) < float("inf"):
                    merged[-1].append(x)
                    continue
            merged.append([x])
        new = [tuple(c) for c in merged]
        steps += 1
        if new == classes:
            return classes
        classes = new


# ---------------------------------------------------------------------------
# one symbolic step

def _zeta_power(point, delta):
    if delta.is_zero():
        return Fin(1)
    if delta == ONE and point.z == 0:
        return Zeta()
    return OrdExp(Zeta(), point, delta)


def _exp_drop(term, delta, shift):
    """Quotient of ``(Zeta, p)^(shift + delta)`` forgetting positions below ``shift``."""
    target = _zeta_power(term.point, delta)
    p0 = term.point

    def q(e):
        kept = [(ord_sub(p, shift), v) for p, v in e.support if p >= shift]
        if isinstance(target, Fin):
            return FinElem(0)
        if isinstance(target, Zeta):
            return kept[0][1] if kept else p0
        return ExpElem(tuple(kept))

    def s(y):
        if isinstance(target, Fin):
            return ExpElem(())
        if isinstance(target, Zeta):
            return ExpElem(() if y == p0 else ((shift, y),))
        return ExpElem(tuple((ord_add(shift, p), v) for p, v in y.support))

    return Condensation(term, target, q, s)


def _is_zeta_power(term):
    return isinstance(term, Zeta) or (
        isinstance(term, OrdExp) and isinstance(term.base, Zeta)
        and isinstance(term.exponent, Ordinal))


def _zeta_exponent(term):
    return ONE if isinstance(term, Zeta) else term.exponent


def condense_step(term) -> Condensation:
    """One condensation step with its quotient map and section."""
    if isinstance(term, Fin):
        if term.n <= 1:
            return _same(term)
        return Condensation(term, Fin(1), lambda x: FinElem(0), lambda y: FinElem(0))
    if isinstance(term, (Omega, OmegaStar, Zeta)):
        rep = term.any_element()
        return Condensation(term, Fin(1), lambda x: FinElem(0), lambda y: rep)
    if isinstance(term, Eta):
        return _same(term)
    if isinstance(term, OrdExp) and _is_zeta_power(term):
        gamma = term.exponent
        if gamma.is_zero():
            return _same(term)
        return _exp_drop(term, ord_sub(gamma, ONE), ONE)
    if isinstance(term, Prod):
        return _step_prod(term)
    if isinstance(term, Sum):
        return _step_sum(term)
    if isinstance(term, Rev):
        return _step_rev(term)
    raise Unsupported(f"no condensation rule for {term}", term)


def _step_prod(term):
    x_term, m = term.left, term.right
    cx = x_term.classify()
    if cx.empty or m.finite_size() == 0:
        return _same(term)
    if cx.has_least and cx.has_greatest:
        raise Unsupported(f"no condensation rule for {term}: left factor is bounded", term)
    # copies of an end-free factor are never joined
    inner = condense_step(x_term)
    if inner.identity:
        return _same(term)
    qi, si = inner.q, inner.s
    if isinstance(inner.term, Fin) and inner.term.n == 1:
        rep = si(FinElem(0))
        return Condensation(term, m, lambda x: x.second, lambda y: ProdElem(rep, y))
    return Condensation(term, Prod(inner.term, m),
                        lambda x: ProdElem(qi(x.first), x.second),
                        lambda y: ProdElem(si(y.first), y.second))


def _step_sum(term):
    a, b = term.left, term.right
    ca, cb = condense_step(a), condense_step(b)
    ka, kb = ca.term.classify(), cb.term.classify()
    if not (ka.empty or kb.empty or not ka.has_greatest or not kb.has_least):
        raise Unsupported(f"no condensation rule for {term}: the summands would merge", term)
    if ca.identity and cb.identity:
        return _same(term)

    def q(x):
        c = ca if x.side.value == "left" else cb
        return SumElem(x.side, c.q(x.inner))

    def s(y):
        c = ca if y.side.value == "left" else cb
        return SumElem(y.side, c.s(y.inner))

    return Condensation(term, Sum(ca.term, cb.term), q, s)


def _step_rev(term):
    inner = condense_step(term.inner)
    if inner.identity:
        return _same(term)
    target = reverse(inner.term)
    to_rev = inner.term.reverse_element
    from_rev = target.reverse_element
    return Condensation(term, target, lambda x: to_rev(inner.q(x)),
                        lambda y: inner.s(from_rev(y)))


def condense_symbolic(term):
    return condense_step(term).term


# ---------------------------------------------------------------------------
# iteration

def condense_iterate(term, gamma) -> Condensation:
    """The ``gamma``-th condensation, with quotient and section maps."""
    gamma = Ordinal.of(gamma)
    lam, n = split_limit_finite(gamma)
    result = _same(term)
    if not lam.is_zero():
        result = _limit_stage(term, lam)
    for _ in range(n):
        result = result.then(condense_step(result.term))
    return result


def _limit_stage(term, lam):
    if _is_zeta_power(term):
        alpha = _zeta_exponent(term)
        if isinstance(term, Zeta):
            return condense_step(term)
        if lam <= alpha:
            return _exp_drop(term, ord_sub(alpha, lam), lam)
        return _exp_drop(term, ZERO, alpha)
    if isinstance(term, Prod) and _is_zeta_power(term.left):
        x_term, m = term.left, term.right
        alpha = _zeta_exponent(x_term)
        if lam < alpha:
            inner = _limit_stage(x_term, lam)
            qi, si = inner.q, inner.s
            return Condensation(term, Prod(inner.term, m),
                                lambda x: ProdElem(qi(x.first), x.second),
                                lambda y: ProdElem(si(y.first), y.second))
        rep = x_term.any_element()
        collapse = Condensation(term, m, lambda x: x.second, lambda y: ProdElem(rep, y))
        if lam == alpha:
            return collapse
        return collapse.then(_limit_stage(m, ord_sub(lam, alpha)))
    result = _same(term)
    for _ in range(_STABILIZE_LIMIT):
        step = condense_step(result.term)
        if step.identity:
            return result
        result = result.then(step)
    raise Unsupported(f"condensations of {term} do not stabilize before a limit stage", term)


# ---------------------------------------------------------------------------
# z * c(L) = L

@dataclass(frozen=True)
class Isomorphism:
    source: object
    target: object
    forward: Callable
    inverse: Callable


def zeta_factorization(term) -> Isomorphism:
    """The isomorphism ``Zeta * c(term) -> term`` for discrete unbounded ``term``."""
    c = term.classify()
    if not (c.discrete and c.unbounded):
        raise NotDiscreteUnbounded(f"{term} is not discrete and unbounded")
    step = condense_step(term)
    source = Prod(Zeta(), step.term)
    if isinstance(term, Zeta):
        return Isomorphism(source, term, lambda x: x.first, lambda y: ProdElem(y, FinElem(0)))
    if isinstance(term, OrdExp) and _is_zeta_power(term) and not term.exponent.is_zero():
        p0 = term.point
        drop = _exp_drop(term, ord_sub(term.exponent, ONE), ONE)

        def forward(x):
            upper = drop.s(x.second).support
            head = () if x.first == p0 else ((ZERO, x.first),)
            return ExpElem(head + upper)

        def inverse(y):
            return ProdElem(term.value(y, ZERO), drop.q(y))

        return Isomorphism(source, term, forward, inverse)
    if isinstance(term, Prod):
        cl = term.left.classify()
        if not (cl.discrete and cl.unbounded):
            raise Unsupported(f"no zeta factorization for {term}", term)
        inner = zeta_factorization(term.left)
        if inner.source.right != Fin(1):
            return Isomorphism(
                source, term,
                lambda x: ProdElem(inner.forward(ProdElem(x.first, x.second.first)),
                                   x.second.second),
                lambda y: _regroup(inner.inverse(y.first), y.second),
            )
        return Isomorphism(
            source, term,
            lambda x: ProdElem(inner.forward(ProdElem(x.first, FinElem(0))), x.second),
            lambda y: ProdElem(inner.inverse(y.first).first, y.second),
        )
    raise Unsupported(f"no zeta factorization for {term}", term)


def _regroup(zx, m):
    return ProdElem(zx.first, ProdElem(zx.second, m))


# ---------------------------------------------------------------------------
# witnesses through the quotient

def _stage_terms(term, gamma):
    lam, n = split_limit_finite(gamma)
    stages = [term]
    current = term
    if not lam.is_zero():
        k = 0
        while k < _STABILIZE_LIMIT:
            try:
                step = condense_step(current)
            except Unsupported:
                break
            if step.identity:
                break
            current = step.term
            stages.append(current)
            k += 1
        current = condense_iterate(term, lam).term
        if n:
            stages.append(current)
    for _ in range(max(n - 1, 0)):
        current = condense_step(current).term
        stages.append(current)
    return stages


def ctlo_condense_transport(w: CTLOWitness, gamma) -> CTLOWitness:
    """Push a witness on ``L`` to one on the ``gamma``-th condensation of ``L``.

    Every earlier stage must be unbounded (no least or no greatest element);
    stages are those the computation actually passes through.
    """
    gamma = Ordinal.of(gamma)
    if gamma.is_zero():
        return w
    for stage in _stage_terms(w.term, gamma):
        c = stage.classify()
        if c.has_least and c.has_greatest:
            raise HypothesisFailed(f"stage {stage} is bounded")
    cond = condense_iterate(w.term, gamma)
    q, s = cond.q, cond.s
    a, b = q(w.a), q(w.b)
    if a == b:
        return trivial_witness(cond.term, a, via="condensed")
    return CTLOWitness(
        cond.term, a, b,
        Cut(lambda x: w.cut1(s(x)), f"classes in {w.cut1.description}"),
        Cut(lambda y: w.cut2(s(y)), f"classes in {w.cut2.description}"),
        lambda x: q(w.f1(s(x))), lambda y: q(w.f1_inv(s(y))),
        lambda x: q(w.f2(s(x))), lambda y: q(w.f2_inv(s(y))),
        whole=w.whole, via="condensed",
    )
