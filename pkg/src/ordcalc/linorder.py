"""Countable linear orders as symbolic terms with concrete elements.

Every term constructor has its own element type; ``compare`` is computed
structurally (sums put the left summand first, products are colex with the
second coordinate dominant, exponentials compare at the greatest index where
two finite-support functions differ).

ω* elements are indexed from the top: ``OmegaStarElem(0)`` is the greatest.
"""

from __future__ import annotations

import enum
import functools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import EmptyOrder, ShapeMismatch, Unsupported
from .ordinal import ZERO, Cmp, Ordinal, random_below

__all__ = [
    "Side", "LEFT", "RIGHT",
    "FinElem", "OmegaElem", "OmegaStarElem", "ZetaElem", "EtaElem",
    "SumElem", "ProdElem", "ExpElem", "Element",
    "OrderTerm", "Fin", "Omega", "OmegaStar", "Zeta", "Eta", "Sum", "Prod",
    "OrdExp", "Rev", "Classification",
    "compare", "neighbors", "classify", "extremum", "reverse", "reverse_element",
    "sample", "validate", "element_between", "any_element",
    "left_distributivity_map", "back_and_forth", "LEAST", "GREATEST",
]

LEAST = "least"
GREATEST = "greatest"


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


LEFT = Side.LEFT
RIGHT = Side.RIGHT


# ---------------------------------------------------------------------------
# elements

@dataclass(frozen=True, slots=True)
class FinElem:
    i: int


@dataclass(frozen=True, slots=True)
class OmegaElem:
    k: int


@dataclass(frozen=True, slots=True)
class OmegaStarElem:
    k: int  # distance from the top


@dataclass(frozen=True, slots=True)
class ZetaElem:
    z: int


@dataclass(frozen=True, slots=True)
class EtaElem:
    q: Fraction

    def __post_init__(self):
        if not isinstance(self.q, Fraction):
            object.__setattr__(self, "q", Fraction(self.q))


@dataclass(frozen=True, slots=True)
class SumElem:
    side: Side
    inner: "Element"


@dataclass(frozen=True, slots=True)
class ProdElem:
    first: "Element"
    second: "Element"


@dataclass(frozen=True, slots=True)
class ExpElem:
    """Finite-support function, as ``((position, value), ...)`` sorted by position.

    The surrounding :class:`OrdExp` term supplies base, basepoint and exponent.
    """

    support: tuple = ()


Element = Union[FinElem, OmegaElem, OmegaStarElem, ZetaElem, EtaElem, SumElem,
                ProdElem, ExpElem]


@dataclass(frozen=True)
class Classification:
    has_least: bool
    has_greatest: bool
    discrete: bool
    dense: bool
    empty: bool = False

    @property
    def unbounded(self):
        return not self.empty and not self.has_least and not self.has_greatest

    @property
    def bounded(self):
        return self.has_least and self.has_greatest


EMPTY_CLASS = Classification(True, True, True, True, True)
POINT_CLASS = Classification(True, True, True, True, False)


def _sign(x):
    return (x > 0) - (x < 0)


def _geometric(rng, p):
    n = 0
    while rng.random() > p and n < 200:
        n += 1
    return n


def _signed_geometric(rng, p):
    n = _geometric(rng, p)
    return -n if rng.random() < 0.5 else n


# ---------------------------------------------------------------------------
# terms

class OrderTerm:
    """Base class; subclasses are frozen dataclasses."""

    __slots__ = ()

    def __str__(self):
        from .syntax import format_term
        return format_term(self)

    def finite_size(self) -> Optional[int]:
        return None

    def enumerate(self):
        raise Unsupported(f"{self} is not finite", self)

    def contains(self, e) -> bool:
        raise NotImplementedError

    def cmp(self, a, b) -> int:
        raise NotImplementedError

    def neighbors(self, e):
        raise NotImplementedError

    def classify(self) -> Classification:
        raise NotImplementedError

    def extremum(self, which):
        raise NotImplementedError

    def reverse(self) -> "OrderTerm":
        raise NotImplementedError

    def reverse_element(self, e):
        raise NotImplementedError

    def sample_element(self, rng):
        raise NotImplementedError

    def any_element(self):
        raise NotImplementedError

    def between(self, lo, hi):
        """Some element strictly between ``lo`` and ``hi`` (``None`` = open end)."""
        raise Unsupported(f"no betweenness oracle for {self}", self)


@dataclass(frozen=True)
class Fin(OrderTerm):
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise ValueError(f"Fin needs a natural number, got {self.n!r}")

    def finite_size(self):
        return self.n

    def enumerate(self):
        return [FinElem(i) for i in range(self.n)]

    def contains(self, e):
        return isinstance(e, FinElem) and 0 <= e.i < self.n

    def cmp(self, a, b):
        return _sign(a.i - b.i)

    def neighbors(self, e):
        pred = FinElem(e.i - 1) if e.i > 0 else None
        succ = FinElem(e.i + 1) if e.i + 1 < self.n else None
        return pred, succ

    def classify(self):
        if self.n == 0:
            return EMPTY_CLASS
        return Classification(True, True, True, self.n <= 1)

    def extremum(self, which):
        if self.n == 0:
            return None
        return FinElem(0) if which == LEAST else FinElem(self.n - 1)

    def reverse(self):
        return self

    def reverse_element(self, e):
        return FinElem(self.n - 1 - e.i)

    def sample_element(self, rng):
        return FinElem(rng.randrange(self.n))

    def any_element(self):
        return FinElem(0) if self.n else None

    def between(self, lo, hi):
        lo_i = -1 if lo is None else lo.i
        hi_i = self.n if hi is None else hi.i
        if lo_i + 1 < hi_i:
            return FinElem(lo_i + 1) if lo is not None else FinElem(hi_i - 1)
        return None


@dataclass(frozen=True)
class Omega(OrderTerm):
    def contains(self, e):
        return isinstance(e, OmegaElem) and e.k >= 0

    def cmp(self, a, b):
        return _sign(a.k - b.k)

    def neighbors(self, e):
        return (OmegaElem(e.k - 1) if e.k > 0 else None), OmegaElem(e.k + 1)

    def classify(self):
        return Classification(True, False, True, False)

    def extremum(self, which):
        return OmegaElem(0) if which == LEAST else None

    def reverse(self):
        return OmegaStar()

    def reverse_element(self, e):
        return OmegaStarElem(e.k)

    def sample_element(self, rng):
        return OmegaElem(_geometric(rng, 0.15))

    def any_element(self):
        return OmegaElem(0)

    def between(self, lo, hi):
        if lo is None:
            if hi is None:
                return OmegaElem(0)
            return OmegaElem(hi.k - 1) if hi.k > 0 else None
        if hi is None or lo.k + 1 < hi.k:
            return OmegaElem(lo.k + 1)
        return None


@dataclass(frozen=True)
class OmegaStar(OrderTerm):
    def contains(self, e):
        return isinstance(e, OmegaStarElem) and e.k >= 0

    def cmp(self, a, b):
        return _sign(b.k - a.k)

    def neighbors(self, e):
        return OmegaStarElem(e.k + 1), (OmegaStarElem(e.k - 1) if e.k > 0 else None)

    def classify(self):
        return Classification(False, True, True, False)

    def extremum(self, which):
        return OmegaStarElem(0) if which == GREATEST else None

    def reverse(self):
        return Omega()

    def reverse_element(self, e):
        return OmegaElem(e.k)

    def sample_element(self, rng):
        return OmegaStarElem(_geometric(rng, 0.15))

    def any_element(self):
        return OmegaStarElem(0)

    def between(self, lo, hi):
        if hi is None:
            if lo is None:
                return OmegaStarElem(0)
            return OmegaStarElem(lo.k - 1) if lo.k > 0 else None
        if lo is None or hi.k + 1 < lo.k:
            return OmegaStarElem(hi.k + 1)
        return None


@dataclass(frozen=True)
class Zeta(OrderTerm):
    def contains(self, e):
        return isinstance(e, ZetaElem)

    def cmp(self, a, b):
        return _sign(a.z - b.z)

    def neighbors(self, e):
        return ZetaElem(e.z - 1), ZetaElem(e.z + 1)

    def classify(self):
        return Classification(False, False, True, False)

    def extremum(self, which):
        return None

    def reverse(self):
        return self

    def reverse_element(self, e):
        return ZetaElem(-e.z)

    def sample_element(self, rng):
        return ZetaElem(_signed_geometric(rng, 0.12))

    def any_element(self):
        return ZetaElem(0)

    def between(self, lo, hi):
        if lo is None:
            return ZetaElem(0 if hi is None else hi.z - 1)
        if hi is None or lo.z + 1 < hi.z:
            return ZetaElem(lo.z + 1)
        return None


def stern_brocot(rng, max_depth=24):
    """A random rational in the open unit interval via a Stern-Brocot walk."""
    ln, ld, hn, hd = 0, 1, 1, 1
    depth = 1 + min(_geometric(rng, 0.25), max_depth)
    for _ in range(depth - 1):
        mn, md = ln + hn, ld + hd
        if rng.random() < 0.5:
            hn, hd = mn, md
        else:
            ln, ld = mn, md
    return Fraction(ln + hn, ld + hd)


@dataclass(frozen=True)
class Eta(OrderTerm):
    def contains(self, e):
        return isinstance(e, EtaElem)

    def cmp(self, a, b):
        return _sign(a.q - b.q)

    def neighbors(self, e):
        return None, None

    def classify(self):
        return Classification(False, False, False, True)

    def extremum(self, which):
        return None

    def reverse(self):
        return self

    def reverse_element(self, e):
        return EtaElem(-e.q)

    def sample_element(self, rng):
        whole = _signed_geometric(rng, 0.3)
        if rng.random() < 0.2:
            return EtaElem(Fraction(whole))
        return EtaElem(whole + stern_brocot(rng))

    def any_element(self):
        return EtaElem(Fraction(0))

    def between(self, lo, hi):
        if lo is None and hi is None:
            return EtaElem(Fraction(0))
        if lo is None:
            return EtaElem(hi.q - 1)
        if hi is None:
            return EtaElem(lo.q + 1)
        if lo.q < hi.q:
            return EtaElem((lo.q + hi.q) / 2)
        return None


@dataclass(frozen=True)
class Sum(OrderTerm):
    left: OrderTerm
    right: OrderTerm

    def finite_size(self):
        a, b = self.left.finite_size(), self.right.finite_size()
        return None if a is None or b is None else a + b

    def enumerate(self):
        return ([SumElem(LEFT, x) for x in self.left.enumerate()]
                + [SumElem(RIGHT, y) for y in self.right.enumerate()])

    def contains(self, e):
        if not isinstance(e, SumElem):
            return False
        part = self.left if e.side is LEFT else self.right
        return part.contains(e.inner)

    def cmp(self, a, b):
        if a.side is b.side:
            part = self.left if a.side is LEFT else self.right
            return part.cmp(a.inner, b.inner)
        return -1 if a.side is LEFT else 1

    def neighbors(self, e):
        if e.side is LEFT:
            p, s = self.left.neighbors(e.inner)
            pred = SumElem(LEFT, p) if p is not None else None
            if s is not None:
                return pred, SumElem(LEFT, s)
            if e.inner == self.left.extremum(GREATEST):
                least = self.right.extremum(LEAST)
                return pred, (SumElem(RIGHT, least) if least is not None else None)
            return pred, None
        p, s = self.right.neighbors(e.inner)
        succ = SumElem(RIGHT, s) if s is not None else None
        if p is not None:
            return SumElem(RIGHT, p), succ
        if e.inner == self.right.extremum(LEAST):
            top = self.left.extremum(GREATEST)
            return (SumElem(LEFT, top) if top is not None else None), succ
        return None, succ

    def classify(self):
        a, b = self.left.classify(), self.right.classify()
        if a.empty:
            return b
        if b.empty:
            return a
        return Classification(
            has_least=a.has_least,
            has_greatest=b.has_greatest,
            discrete=a.discrete and b.discrete and (a.has_greatest == b.has_least),
            dense=a.dense and b.dense and not (a.has_greatest and b.has_least),
        )

    def extremum(self, which):
        first, second = (self.left, self.right) if which == LEAST else (self.right, self.left)
        side_first = LEFT if which == LEAST else RIGHT
        if first.classify().empty:
            x = second.extremum(which)
            return None if x is None else SumElem(RIGHT if which == LEAST else LEFT, x)
        x = first.extremum(which)
        return None if x is None else SumElem(side_first, x)

    def reverse(self):
        return Sum(reverse(self.right), reverse(self.left))

    def reverse_element(self, e):
        if e.side is LEFT:
            return SumElem(RIGHT, self.left.reverse_element(e.inner))
        return SumElem(LEFT, self.right.reverse_element(e.inner))

    def sample_element(self, rng):
        left_empty = self.left.finite_size() == 0
        right_empty = self.right.finite_size() == 0
        if left_empty and right_empty:
            raise EmptyOrder(f"{self} is empty")
        if right_empty or (not left_empty and rng.random() < 0.5):
            return SumElem(LEFT, self.left.sample_element(rng))
        return SumElem(RIGHT, self.right.sample_element(rng))

    def any_element(self):
        x = self.left.any_element()
        if x is not None:
            return SumElem(LEFT, x)
        y = self.right.any_element()
        return None if y is None else SumElem(RIGHT, y)

    def between(self, lo, hi):
        A, B = self.left, self.right
        if lo is None and hi is None:
            return self.any_element()
        if lo is None or (hi is not None and lo.side is hi.side):
            side = hi.side
            part = A if side is LEFT else B
            x = part.between(None if lo is None else lo.inner, hi.inner)
            if x is not None:
                return SumElem(side, x)
            if lo is None and side is RIGHT:
                y = A.any_element()
                return None if y is None else SumElem(LEFT, y)
            return None
        if hi is None:
            part = A if lo.side is LEFT else B
            x = part.between(lo.inner, None)
            if x is not None:
                return SumElem(lo.side, x)
            if lo.side is LEFT:
                y = B.any_element()
                return None if y is None else SumElem(RIGHT, y)
            return None
        # lo on the left, hi on the right
        x = A.between(lo.inner, None)
        if x is not None:
            return SumElem(LEFT, x)
        y = B.between(None, hi.inner)
        return None if y is None else SumElem(RIGHT, y)


@dataclass(frozen=True)
class Prod(OrderTerm):
    """``left * right``: copies of ``left`` indexed by ``right`` (colex)."""

    left: OrderTerm
    right: OrderTerm

    def finite_size(self):
        a, b = self.left.finite_size(), self.right.finite_size()
        if a == 0 or b == 0:
            return 0
        return None if a is None or b is None else a * b

    def enumerate(self):
        xs = self.left.enumerate()
        return [ProdElem(x, y) for y in self.right.enumerate() for x in xs]

    def contains(self, e):
        return (isinstance(e, ProdElem) and self.left.contains(e.first)
                and self.right.contains(e.second))

    def cmp(self, a, b):
        c = self.right.cmp(a.second, b.second)
        if c:
            return c
        return self.left.cmp(a.first, b.first)

    def neighbors(self, e):
        A, B = self.left, self.right
        p, s = A.neighbors(e.first)
        pred = ProdElem(p, e.second) if p is not None else None
        succ = ProdElem(s, e.second) if s is not None else None
        if succ is None and e.first == A.extremum(GREATEST):
            ys = B.neighbors(e.second)[1]
            least = A.extremum(LEAST)
            if ys is not None and least is not None:
                succ = ProdElem(least, ys)
        if pred is None and e.first == A.extremum(LEAST):
            yp = B.neighbors(e.second)[0]
            top = A.extremum(GREATEST)
            if yp is not None and top is not None:
                pred = ProdElem(top, yp)
        return pred, succ

    def classify(self):
        a, b = self.left.classify(), self.right.classify()
        if a.empty or b.empty:
            return EMPTY_CLASS
        if not a.discrete:
            discrete = False
        elif a.unbounded:
            discrete = True
        elif a.has_least and a.has_greatest:
            discrete = b.discrete
        else:
            # exactly one end of the left factor: copies abut without neighbors
            discrete = _is_single_point(self.right)
        return Classification(
            has_least=a.has_least and b.has_least,
            has_greatest=a.has_greatest and b.has_greatest,
            discrete=discrete,
            dense=a.dense and (b.dense or not (a.has_least and a.has_greatest)),
        )

    def extremum(self, which):
        x, y = self.left.extremum(which), self.right.extremum(which)
        if x is None or y is None:
            return None
        return ProdElem(x, y)

    def reverse(self):
        return Prod(reverse(self.left), reverse(self.right))

    def reverse_element(self, e):
        return ProdElem(self.left.reverse_element(e.first),
                        self.right.reverse_element(e.second))

    def sample_element(self, rng):
        return ProdElem(self.left.sample_element(rng), self.right.sample_element(rng))

    def any_element(self):
        x, y = self.left.any_element(), self.right.any_element()
        return None if x is None or y is None else ProdElem(x, y)

    def between(self, lo, hi):
        A, B = self.left, self.right
        if lo is None and hi is None:
            return self.any_element()
        if lo is None:
            x = A.between(None, hi.first)
            if x is not None:
                return ProdElem(x, hi.second)
            y = B.between(None, hi.second)
            ax = A.any_element()
            return None if y is None or ax is None else ProdElem(ax, y)
        if hi is None:
            x = A.between(lo.first, None)
            if x is not None:
                return ProdElem(x, lo.second)
            y = B.between(lo.second, None)
            ax = A.any_element()
            return None if y is None or ax is None else ProdElem(ax, y)
        if B.cmp(lo.second, hi.second) == 0:
            x = A.between(lo.first, hi.first)
            return None if x is None else ProdElem(x, lo.second)
        x = A.between(lo.first, None)
        if x is not None:
            return ProdElem(x, lo.second)
        x = A.between(None, hi.first)
        if x is not None:
            return ProdElem(x, hi.second)
        y = B.between(lo.second, hi.second)
        ax = A.any_element()
        return None if y is None or ax is None else ProdElem(ax, y)


def _is_single_point(term):
    size = term.finite_size()
    if size is not None:
        return size == 1
    lo, hi = term.extremum(LEAST), term.extremum(GREATEST)
    return lo is not None and lo == hi


def _ord_pcmp(p, q):
    pk, qk = p._key, q._key
    return (pk > qk) - (pk < qk)


def fs_cmp_support(base, point, pcmp, s, t):
    """Compare two supports at the greatest index where they differ."""
    i, j = len(s) - 1, len(t) - 1
    bcmp = base.cmp
    while i >= 0 or j >= 0:
        if j < 0:
            return bcmp(s[i][1], point)
        if i < 0:
            return bcmp(point, t[j][1])
        c = pcmp(s[i][0], t[j][0])
        if c > 0:
            return bcmp(s[i][1], point)
        if c < 0:
            return bcmp(point, t[j][1])
        c = bcmp(s[i][1], t[j][1])
        if c:
            return c
        i -= 1
        j -= 1
    return 0


@dataclass(frozen=True)
class OrdExp(OrderTerm):
    """Finite-support exponential ``(base, point)^exponent``.

    ``exponent`` is an :class:`Ordinal` (positions are ordinals below it) or an
    :class:`OrderTerm` (positions are its elements).
    """

    base: OrderTerm
    point: Element
    exponent: Union[Ordinal, OrderTerm]

    def __post_init__(self):
        if self.base.finite_size() == 0:
            raise ValueError("a pointed order must be non-empty")
        if not self.base.contains(self.point):
            raise ShapeMismatch(f"basepoint {self.point!r} is not an element of {self.base}")
        if isinstance(self.exponent, int) and not isinstance(self.exponent, bool):
            object.__setattr__(self, "exponent", Ordinal.of(self.exponent))

    # ---- positions --------------------------------------------------
    @property
    def ordinal_exponent(self):
        return isinstance(self.exponent, Ordinal)

    @property
    def pcmp(self):
        if isinstance(self.exponent, Ordinal):
            return _ord_pcmp
        return self.exponent.cmp

    def valid_position(self, p):
        if isinstance(self.exponent, Ordinal):
            return isinstance(p, Ordinal) and p._key < self.exponent._key
        return self.exponent.contains(p)

    def exponent_empty(self):
        if isinstance(self.exponent, Ordinal):
            return self.exponent.is_zero()
        return self.exponent.finite_size() == 0

    def exponent_size(self):
        if isinstance(self.exponent, Ordinal):
            return self.exponent.finite_value() if self.exponent.is_finite() else None
        return self.exponent.finite_size()

    def positions(self):
        """All positions, for finite exponents."""
        if isinstance(self.exponent, Ordinal):
            return [Ordinal.of(i) for i in range(self.exponent.finite_value())]
        return self.exponent.enumerate()

    def least_position(self):
        if isinstance(self.exponent, Ordinal):
            return None if self.exponent.is_zero() else ZERO
        return self.exponent.extremum(LEAST)

    def value(self, e, position):
        for p, v in e.support:
            if p == position:
                return v
        return self.point

    def with_value(self, e, position, value):
        """``e`` changed at one position (normalizing basepoint values away)."""
        items = [(p, v) for p, v in e.support if p != position]
        if value != self.point:
            items.append((position, value))
        return ExpElem(self.sort_support(items))

    def sort_support(self, items):
        if isinstance(self.exponent, Ordinal):
            return tuple(sorted(items, key=lambda pv: pv[0]._key))
        key = functools.cmp_to_key(self.exponent.cmp)
        return tuple(sorted(items, key=lambda pv: key(pv[0])))

    def constant(self):
        return ExpElem(())

    # ---- order ------------------------------------------------------
    def contains(self, e):
        if not isinstance(e, ExpElem):
            return False
        prev = None
        pcmp = self.pcmp
        for item in e.support:
            if not (isinstance(item, tuple) and len(item) == 2):
                return False
            p, v = item
            if not self.valid_position(p):
                return False
            if prev is not None and pcmp(prev, p) >= 0:
                return False
            if not self.base.contains(v) or v == self.point:
                return False
            prev = p
        return True

    def cmp(self, a, b):
        return fs_cmp_support(self.base, self.point, self.pcmp, a.support, b.support)

    def _single_point(self):
        return self.exponent_empty() or _is_single_point(self.base)

    def neighbors(self, e):
        if self._single_point():
            return None, None
        cb = self.base.classify()
        if cb.discrete and cb.unbounded:
            p0 = self.least_position()
            if p0 is None:
                return None, None  # exponent without least: dense
            v = self.value(e, p0)
            vp, vs = self.base.neighbors(v)
            return self.with_value(e, p0, vp), self.with_value(e, p0, vs)
        if cb.dense:
            return None, None
        if self.exponent_size() is not None:
            return self._odometer(e, -1), self._odometer(e, +1)
        if not isinstance(self.exponent, Ordinal) and self.least_position() is None:
            return None, None
        raise Unsupported(f"neighbors in {self} are outside the supported fragment", self)

    def _odometer(self, e, direction):
        # colex neighbor in a finite power of the base
        base = self.base
        reset = base.extremum(LEAST if direction > 0 else GREATEST)
        carry_from = base.extremum(GREATEST if direction > 0 else LEAST)
        positions = self.positions()
        values = [self.value(e, p) for p in positions]
        for i, v in enumerate(values):
            nb = base.neighbors(v)[1 if direction > 0 else 0]
            if nb is not None:
                if i > 0 and reset is None:
                    return None
                new = [reset] * i + [nb] + values[i + 1:]
                items = [(p, x) for p, x in zip(positions, new) if x != self.point]
                return ExpElem(self.sort_support(items))
            if v != carry_from:
                return None
        return None

    def classify(self):
        if self._single_point():
            return POINT_CLASS
        base = self.base
        cb = base.classify()
        size = self.exponent_size()
        lo, hi = base.extremum(LEAST), base.extremum(GREATEST)
        has_least = lo is not None and (self.point == lo or size is not None)
        has_greatest = hi is not None and (self.point == hi or size is not None)
        if cb.discrete and cb.unbounded:
            return Classification(False, False, True, False)
        if cb.dense:
            return Classification(has_least, has_greatest, False, True)
        if size is not None:
            power = _finite_power(base, size)
            return power.classify()
        if not isinstance(self.exponent, Ordinal) and self.least_position() is None:
            return Classification(has_least, has_greatest, False, True)
        raise Unsupported(f"classification of {self} is outside the rule table", self)

    def extremum(self, which):
        if self.exponent_empty():
            return ExpElem(())
        m = self.base.extremum(which)
        if m is None:
            return None
        if m == self.point:
            return ExpElem(())
        if self.exponent_size() is not None:
            return ExpElem(self.sort_support([(p, m) for p in self.positions()]))
        return None

    def reverse(self):
        return Rev(self)

    def reverse_element(self, e):
        return e

    def sample_element(self, rng):
        if self._single_point():
            return ExpElem(())
        r = rng.random()
        n = 0 if r < 0.15 else 1 if r < 0.45 else 2 if r < 0.75 else 3
        if self.exponent_size() is not None:
            n = min(n, self.exponent_size())
        items = {}
        for _ in range(n):
            p = self.sample_position(rng)
            v = self.base.sample_element(rng)
            tries = 0
            while v == self.point and tries < 20:
                v = self.base.sample_element(rng)
                tries += 1
            if v != self.point:
                items[p] = v
        return ExpElem(self.sort_support(list(items.items())))

    def sample_position(self, rng):
        if isinstance(self.exponent, Ordinal):
            return random_below(self.exponent, rng)
        return self.exponent.sample_element(rng)

    def any_element(self):
        return ExpElem(())

    def fs(self, e):
        from .exponential import FSFunction
        return FSFunction(self.base, self.point, self.exponent, e.support)


def _finite_power(base, n):
    # (L,a)^n is isomorphic to L*L*...*L (colex) via the identity on functions
    if n == 0:
        return Fin(1)
    term = base
    for _ in range(n - 1):
        term = Prod(base, term)
    return term


@dataclass(frozen=True)
class Rev(OrderTerm):
    """Reversed order; used as a node only over exponentials."""

    inner: OrderTerm

    def finite_size(self):
        return self.inner.finite_size()

    def enumerate(self):
        return list(reversed(self.inner.enumerate()))

    def contains(self, e):
        return self.inner.contains(e)

    def cmp(self, a, b):
        return self.inner.cmp(b, a)

    def neighbors(self, e):
        p, s = self.inner.neighbors(e)
        return s, p

    def classify(self):
        c = self.inner.classify()
        if c.empty:
            return c
        return Classification(c.has_greatest, c.has_least, c.discrete, c.dense)

    def extremum(self, which):
        return self.inner.extremum(GREATEST if which == LEAST else LEAST)

    def reverse(self):
        return self.inner

    def reverse_element(self, e):
        return e

    def sample_element(self, rng):
        return self.inner.sample_element(rng)

    def any_element(self):
        return self.inner.any_element()

    def between(self, lo, hi):
        return self.inner.between(hi, lo)


# ---------------------------------------------------------------------------
# public operations

def validate(term, e):
    if not term.contains(e):
        raise ShapeMismatch(f"{e!r} is not an element of {term}")
    return e


def compare(term, a, b):
    validate(term, a)
    validate(term, b)
    return Cmp(term.cmp(a, b))


def neighbors(term, e):
    validate(term, e)
    return term.neighbors(e)


def classify(term):
    return term.classify()


def extremum(term, which):
    return term.extremum(which)


def reverse(term):
    return term.reverse()


def reverse_element(term, e):
    """The element of ``reverse(term)`` corresponding to ``e``."""
    return term.reverse_element(e)


def any_element(term):
    return term.any_element()


def element_between(term, lo=None, hi=None):
    return term.between(lo, hi)


def sample(term, seed, count):
    """``count`` elements of ``term``, deterministic in ``seed``."""
    if term.finite_size() == 0:
        raise EmptyOrder(f"cannot sample the empty order {term}")
    rng = random.Random(seed)
    return [term.sample_element(rng) for _ in range(count)]


def left_distributivity_map(l1, l2, l3):
    """Canonical bijection ``l1*(l2+l3) -> l1*l2 + l1*l3`` and its inverse."""
    source = Prod(l1, Sum(l2, l3))
    target = Sum(Prod(l1, l2), Prod(l1, l3))

    def forward(e):
        return SumElem(e.second.side, ProdElem(e.first, e.second.inner))

    def inverse(e):
        return ProdElem(e.inner.first, SumElem(e.side, e.inner.second))

    return source, target, forward, inverse


def back_and_forth(source, target, rounds, rng, candidates=8):
    """Extend a partial isomorphism between two dense unbounded orders.

    Alternates forth (new source element) and back (new target element)
    steps.  Returns the list of pairs; raises ``AssertionError`` if the partial
    map ever stops being order-preserving or no extension is found.
    """
    pairs = []

    def extend(dom, cod, pts, make_pair):
        for _ in range(candidates):
            x = dom.sample_element(rng)
            if any(dom.cmp(x, p) == 0 for p in pts(0)):
                continue
            lo = hi = None
            for p, q in zip(pts(0), pts(1)):
                c = dom.cmp(p, x)
                if c < 0 and (lo is None or dom.cmp(lo[0], p) < 0):
                    lo = (p, q)
                elif c > 0 and (hi is None or dom.cmp(p, hi[0]) < 0):
                    hi = (p, q)
            y = cod.between(None if lo is None else lo[1], None if hi is None else hi[1])
            if y is None:
                raise AssertionError(f"no element of {cod} fits the gap for {x!r}")
            pairs.append(make_pair(x, y))
            return
        raise AssertionError("could not draw a fresh element")

    def src(i):
        return [p[i] for p in pairs]

    def tgt(i):
        return [p[1 - i] for p in pairs]

    for r in range(rounds):
        if r % 2 == 0:
            extend(source, target, src, lambda x, y: (x, y))
        else:
            extend(target, source, tgt, lambda y, x: (x, y))
        for p in pairs:
            for q in pairs:
                if source.cmp(p[0], q[0]) != target.cmp(p[1], q[1]):
                    raise AssertionError(f"partial map not monotone at {p!r}, {q!r}")
    return pairs
