"""Finite-support exponentials ``(L, a)^E``.

A :class:`FSFunction` is a function from the exponent ``E`` (an ordinal, or an
order term used as an index set) into the base ``L`` that takes the basepoint
``a`` at all but finitely many positions.  Only the non-basepoint values are
stored.

Besides comparison and neighbors this module provides the structural
isomorphisms that make exponentials computable: splitting along a sum
exponent, currying along a product exponent, locating an element in the
three-way decomposition below/at/above the constant function, density
witnesses for exponents with no least element, and the split of an exponent
into its well-ordered head and the rest.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Optional

from .errors import (
    DegenerateBase,
    ExponentHasLeast,
    ExponentNotProd,
    ExponentNotSum,
    IncompatibleExponentials,
    InvalidPosition,
    ShapeMismatch,
    Unsupported,
    UnsupportedBase,
)
from .linorder import (
    LEAST,
    LEFT,
    RIGHT,
    Eta,
    ExpElem,
    Fin,
    Omega,
    OmegaStar,
    OrdExp,
    OrderTerm,
    Prod,
    ProdElem,
    Sum,
    SumElem,
    Zeta,
    fs_cmp_support,
)
from .ordinal import ONE, ZERO, Cmp, Ordinal, omega_power, ord_add, ord_sub

__all__ = [
    "FSFunction", "fs_make", "fs_compare", "fs_neighbors",
    "iso_split_sum", "iso_split_sum_inverse", "iso_split_ordinal",
    "iso_split_ordinal_inverse", "iso_curry", "iso_curry_inverse",
    "RemRepLocator", "locate_rem_rep", "locator_compare", "fs_between",
    "split_exponent", "ordinal_term", "ord_mul",
]


@dataclass(frozen=True)
class FSFunction:
    base: OrderTerm
    point: object
    exponent: object
    support: tuple = ()

    @functools.cached_property
    def term(self) -> OrdExp:
        return OrdExp(self.base, self.point, self.exponent)

    @property
    def element(self) -> ExpElem:
        return ExpElem(self.support)

    @classmethod
    def of(cls, term: OrdExp, e: ExpElem) -> "FSFunction":
        return cls(term.base, term.point, term.exponent, e.support)

    def __call__(self, position):
        for p, v in self.support:
            if p == position:
                return v
        return self.point

    def positions(self):
        return [p for p, _ in self.support]

    def is_constant(self):
        return not self.support

    def same_space(self, other):
        return (self.base == other.base and self.point == other.point
                and self.exponent == other.exponent)

    def restrict(self, beta):
        """The restriction to positions below the ordinal ``beta``."""
        beta = Ordinal.of(beta)
        return FSFunction(self.base, self.point, beta,
                          tuple((p, v) for p, v in self.support if p < beta))


def _ordinal_exponent(exponent):
    if isinstance(exponent, int) and not isinstance(exponent, bool):
        return Ordinal.of(exponent)
    return exponent


def fs_make(base, point, exponent, assignments=()):
    """Build a normalized FSFunction; basepoint-valued assignments are dropped."""
    exponent = _ordinal_exponent(exponent)
    term = OrdExp(base, point, exponent)
    seen = set()
    items = []
    for p, v in assignments:
        if isinstance(p, int) and not isinstance(p, bool) and isinstance(exponent, Ordinal):
            p = Ordinal.of(p)
        if not term.valid_position(p):
            raise InvalidPosition(f"{p} is not a position of the exponent {exponent}")
        if p in seen:
            raise InvalidPosition(f"position {p} assigned twice")
        seen.add(p)
        if not base.contains(v):
            raise ShapeMismatch(f"{v!r} is not an element of {base}")
        if v != point:
            items.append((p, v))
    return FSFunction(base, point, exponent, term.sort_support(items))


def fs_compare(f: FSFunction, g: FSFunction) -> Cmp:
    if not f.same_space(g):
        raise IncompatibleExponentials("functions live in different exponentials")
    return Cmp(fs_cmp_support(f.base, f.point, f.term.pcmp, f.support, g.support))


def fs_neighbors(f: FSFunction):
    """Immediate predecessor and successor, flipping the value at the least position."""
    c = f.base.classify()
    if not (c.discrete and c.unbounded):
        raise UnsupportedBase(f"base {f.base} is not discrete and unbounded", f.base)
    p, s = f.term.neighbors(f.element)
    wrap = lambda e: None if e is None else FSFunction(f.base, f.point, f.exponent, e.support)
    return wrap(p), wrap(s)


# ---------------------------------------------------------------------------
# sum and product exponents

def iso_split_sum(f: FSFunction):
    """``(L,a)^(E1+E2) -> (L,a)^E1 * (L,a)^E2``; returns the pair of restrictions."""
    e = f.exponent
    if not isinstance(e, Sum):
        raise ExponentNotSum(f"exponent {e} is not a sum")
    left = tuple((p.inner, v) for p, v in f.support if p.side is LEFT)
    right = tuple((p.inner, v) for p, v in f.support if p.side is RIGHT)
    return (FSFunction(f.base, f.point, e.left, left),
            FSFunction(f.base, f.point, e.right, right))


def iso_split_sum_inverse(g1: FSFunction, g2: FSFunction) -> FSFunction:
    exponent = Sum(g1.exponent, g2.exponent)
    support = (tuple((SumElem(LEFT, p), v) for p, v in g1.support)
               + tuple((SumElem(RIGHT, p), v) for p, v in g2.support))
    return FSFunction(g1.base, g1.point, exponent, support)


def iso_split_ordinal(f: FSFunction, beta):
    """``(L,a)^alpha -> (L,a)^beta * (L,a)^(alpha - beta)`` for an ordinal exponent."""
    beta = Ordinal.of(beta)
    rest = ord_sub(f.exponent, beta)
    low = tuple((p, v) for p, v in f.support if p < beta)
    high = tuple((ord_sub(p, beta), v) for p, v in f.support if p >= beta)
    return (FSFunction(f.base, f.point, beta, low),
            FSFunction(f.base, f.point, rest, high))


def iso_split_ordinal_inverse(g1: FSFunction, g2: FSFunction) -> FSFunction:
    beta = g1.exponent
    support = g1.support + tuple((ord_add(beta, p), v) for p, v in g2.support)
    return FSFunction(g1.base, g1.point, ord_add(beta, g2.exponent), support)


def iso_curry(f: FSFunction) -> FSFunction:
    """``(L,a)^(E1*E2) -> ((L,a)^E1)^E2`` grouping the support by second coordinate."""
    e = f.exponent
    if not isinstance(e, Prod):
        raise ExponentNotProd(f"exponent {e} is not a product")
    inner_term = OrdExp(f.base, f.point, e.left)
    groups = {}
    order = []
    for p, v in f.support:
        if p.second not in groups:
            groups[p.second] = []
            order.append(p.second)
        groups[p.second].append((p.first, v))
    support = tuple((y, ExpElem(inner_term.sort_support(groups[y]))) for y in order)
    return FSFunction(inner_term, ExpElem(()), e.right, support)


def iso_curry_inverse(g: FSFunction) -> FSFunction:
    inner = g.base
    if not isinstance(inner, OrdExp):
        raise ExponentNotProd("curried function must take exponential values")
    exponent = Prod(inner.exponent, g.exponent)
    items = [(ProdElem(x, y), v) for y, h in g.support for x, v in h.support]
    term = OrdExp(inner.base, inner.point, exponent)
    return FSFunction(inner.base, inner.point, exponent, term.sort_support(items))


# ---------------------------------------------------------------------------
# below / middle / above decomposition

BELOW, MIDDLE, ABOVE = "Below", "Middle", "Above"
_BRANCH_RANK = {BELOW: -1, MIDDLE: 0, ABOVE: 1}


@dataclass(frozen=True)
class RemRepLocator:
    branch: str
    top_index: Optional[Ordinal] = None
    top_value: object = None
    prefix: Optional[FSFunction] = None

    def to_json(self):
        from .syntax import element_to_json
        if self.branch == MIDDLE:
            return {"branch": MIDDLE}
        return {
            "branch": self.branch,
            "top_index": self.top_index.to_json(),
            "top_value": element_to_json(self.top_value),
            "prefix": [[p.to_json(), element_to_json(v)] for p, v in self.prefix.support],
        }


def locate_rem_rep(f: FSFunction) -> RemRepLocator:
    if not isinstance(f.exponent, Ordinal):
        raise Unsupported("the decomposition needs an ordinal exponent", f.exponent)
    if not f.support:
        return RemRepLocator(MIDDLE)
    top, value = f.support[-1]
    branch = ABOVE if f.base.cmp(value, f.point) > 0 else BELOW
    return RemRepLocator(branch, top, value, FSFunction(f.base, f.point, top, f.support[:-1]))


def locator_compare(base, point, r: RemRepLocator, s: RemRepLocator) -> Cmp:
    """Order of the decomposition: reversed summands below, the constant, summands above."""
    c = _BRANCH_RANK[r.branch] - _BRANCH_RANK[s.branch]
    if c or r.branch == MIDDLE:
        return Cmp((c > 0) - (c < 0))
    ik, jk = r.top_index._key, s.top_index._key
    if ik != jk:
        up = 1 if ik > jk else -1
        return Cmp(up if r.branch == ABOVE else -up)
    c = base.cmp(r.top_value, s.top_value)
    if c:
        return Cmp(c)
    return Cmp(fs_cmp_support(base, point, lambda p, q: (p._key > q._key) - (p._key < q._key),
                              r.prefix.support, s.prefix.support))


# ---------------------------------------------------------------------------
# density for exponents without a least position

def fs_between(f: FSFunction, g: FSFunction) -> FSFunction:
    """A function strictly between ``f < g`` when the exponent has no least position."""
    if not f.same_space(g):
        raise IncompatibleExponentials("functions live in different exponentials")
    exponent = f.exponent
    if isinstance(exponent, Ordinal) or exponent.extremum(LEAST) is not None \
            or exponent.finite_size() is not None:
        raise ExponentHasLeast(f"exponent {exponent} has a least position")
    base, a = f.base, f.point
    above = base.between(a, None)
    below = base.between(None, a)
    if above is None and below is None:
        raise DegenerateBase(f"base {base} is a single point")
    if fs_compare(f, g) >= 0:
        raise ValueError("fs_between needs f < g")
    pcmp = exponent.cmp
    lows = [s[0][0] for s in (f.support, g.support) if s]
    low = min(lows, key=functools.cmp_to_key(pcmp))
    b_prime = exponent.between(None, low)
    if b_prime is None:
        raise Unsupported(f"no position below {low!r} found in {exponent}", exponent)
    term = f.term
    if above is not None:
        return FSFunction.of(term, term.with_value(f.element, b_prime, above))
    return FSFunction.of(term, term.with_value(g.element, b_prime, below))


# ---------------------------------------------------------------------------
# well-ordered head of an exponent

def ord_mul(alpha, beta):
    """Ordinal product, used only to read off well-ordered products of terms."""
    alpha, beta = Ordinal.of(alpha), Ordinal.of(beta)
    if alpha.is_zero() or beta.is_zero():
        return ZERO
    lead, lead_c = alpha.terms[0]
    result = ZERO
    for e, c in beta.terms:
        if e.is_zero():
            part = Ordinal._raw(((lead, lead_c * c),) + alpha.terms[1:])
        else:
            part = omega_power(ord_add(lead, e), c)
        result = ord_add(result, part)
    return result


def split_exponent(term: OrderTerm):
    """``term ≅ alpha + rest`` with ``alpha`` an ordinal and ``rest`` empty or without least."""
    empty = Fin(0)
    if isinstance(term, Fin):
        return Ordinal.of(term.n), empty
    if isinstance(term, Omega):
        return omega_power(ONE), empty
    if isinstance(term, (Zeta, Eta, OmegaStar)):
        return ZERO, term
    if isinstance(term, Sum):
        a, rest = split_exponent(term.left)
        if rest.finite_size() == 0:
            b, rest_b = split_exponent(term.right)
            return ord_add(a, b), rest_b
        return a, Sum(rest, term.right)
    if isinstance(term, Prod):
        a, rest_a = split_exponent(term.left)
        b, rest_b = split_exponent(term.right)
        if term.finite_size() == 0:
            return ZERO, empty
        if rest_a.finite_size() == 0:
            if rest_b.finite_size() == 0:
                return ord_mul(a, b), empty
            # left * (b + rest_b) = left*b + left*rest_b; the latter has no least
            return ord_mul(a, b), Prod(term.left, rest_b)
        if a.is_zero():
            return ZERO, term
    raise Unsupported(f"cannot split {term} into a well-ordered head and a rest", term)


def ordinal_term(alpha) -> OrderTerm:
    """An order term isomorphic to ``alpha`` (finite exponents only)."""
    alpha = Ordinal.of(alpha)
    parts = []
    for e, c in alpha.terms:
        if not e.is_finite():
            raise Unsupported(f"no finite term for {alpha}", None)
        k = e.finite_value()
        if k == 0:
            parts.append(Fin(c))
            continue
        power = Omega()
        for _ in range(k - 1):
            power = Prod(Omega(), power)
        parts.append(power if c == 1 else Prod(power, Fin(c)))
    if not parts:
        return Fin(0)
    term = parts[-1]
    for p in reversed(parts[:-1]):
        term = Sum(p, term)
    return term
