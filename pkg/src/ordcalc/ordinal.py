"""Ordinals below epsilon_0 in Cantor normal form.

An ordinal is stored as a tuple of ``(exponent, coefficient)`` pairs with
strictly decreasing exponents, each exponent itself an :class:`Ordinal`.
Only addition and left subtraction are provided; products and powers of
orders are handled symbolically by :mod:`ordcalc.linorder`.
"""

from __future__ import annotations

import enum

from .errors import BetaExceedsGamma

__all__ = [
    "Cmp",
    "Ordinal",
    "ZERO",
    "ONE",
    "OMEGA",
    "ord_compare",
    "ord_add",
    "ord_sub",
    "split_limit_finite",
    "is_limit",
    "omega_power",
    "random_below",
]


class Cmp(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def _key(terms):
    return tuple((e._key, c) for e, c in terms)


class Ordinal:
    """Immutable CNF ordinal; compares and hashes structurally."""

    __slots__ = ("terms", "_key", "_hash")

    def __init__(self, terms=()):
        terms = tuple(terms)
        prev = None
        for e, c in terms:
            if not isinstance(e, Ordinal):
                raise TypeError(f"exponent must be an Ordinal, got {e!r}")
            if not isinstance(c, int) or c < 1:
                raise ValueError(f"coefficient must be a positive integer, got {c!r}")
            if prev is not None and not e._key < prev._key:
                raise ValueError("exponents must be strictly decreasing")
            prev = e
        self.terms = terms
        self._key = _key(terms)
        self._hash = hash(self._key)

    @classmethod
    def _raw(cls, terms):
        # trusted constructor: terms already normalized
        self = object.__new__(cls)
        self.terms = terms
        self._key = _key(terms)
        self._hash = hash(self._key)
        return self

    @classmethod
    def of(cls, value):
        if isinstance(value, Ordinal):
            return value
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"cannot make an ordinal from {value!r}")
        if value < 0:
            raise ValueError("negative integers are not ordinals")
        return _finite(value)

    # ---- predicates -------------------------------------------------
    def is_zero(self):
        return not self.terms

    def is_finite(self):
        return not self.terms or (len(self.terms) == 1 and not self.terms[0][0].terms)

    def finite_value(self):
        if not self.terms:
            return 0
        if not self.is_finite():
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1]

    def is_limit(self):
        return bool(self.terms) and bool(self.terms[-1][0].terms)

    def is_successor(self):
        return bool(self.terms) and not self.terms[-1][0].terms

    @property
    def leading_exponent(self):
        return self.terms[0][0] if self.terms else None

    # ---- ordering ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Ordinal):
            return self._key == other._key
        if isinstance(other, int) and not isinstance(other, bool):
            return other >= 0 and self._key == _finite(other)._key
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._key < other._key

    def __le__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._key <= other._key

    def __gt__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._key > other._key

    def __ge__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._key >= other._key

    # ---- arithmetic -------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return ord_add(self, other)

    def __radd__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return ord_add(other, self)

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return ord_sub(self, other)

    def successor(self):
        return ord_add(self, ONE)

    # ---- presentation -----------------------------------------------
    def __repr__(self):
        return f"Ordinal({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if not e.terms:
                parts.append(str(c))
                continue
            if e == ONE:
                head = "w"
            elif e.is_finite():
                head = f"w^{e.finite_value()}"
            else:
                head = f"w^({e})"
            parts.append(head if c == 1 else f"{head}*{c}")
        return " + ".join(parts)

    def to_json(self):
        return [[e.to_json(), c] for e, c in self.terms]

    @classmethod
    def from_json(cls, data):
        if isinstance(data, int) and not isinstance(data, bool):
            return cls.of(data)
        if not isinstance(data, list):
            raise ValueError(f"ordinal JSON must be a list, got {data!r}")
        terms = []
        for item in data:
            if not (isinstance(item, list) and len(item) == 2):
                raise ValueError(f"malformed CNF term {item!r}")
            terms.append((cls.from_json(item[0]), item[1]))
        return cls(terms)


_FINITE_CACHE = {}


def _finite(n):
    o = _FINITE_CACHE.get(n)
    if o is None:
        o = Ordinal._raw(((ZERO, n),)) if n else ZERO
        if n < 256:
            _FINITE_CACHE[n] = o
    return o


def _coerce(value):
    if isinstance(value, Ordinal):
        return value
    if isinstance(value, int) and not isinstance(value, bool) and value >= 0:
        return _finite(value)
    return None


ZERO = Ordinal._raw(())
_FINITE_CACHE[0] = ZERO
ONE = Ordinal._raw(((ZERO, 1),))
_FINITE_CACHE[1] = ONE
OMEGA = Ordinal._raw(((ONE, 1),))


def omega_power(exponent, coefficient=1):
    """omega^exponent * coefficient."""
    exponent = Ordinal.of(exponent)
    if coefficient == 0:
        return ZERO
    return Ordinal._raw(((exponent, coefficient),))


def ord_compare(a, b):
    a, b = Ordinal.of(a), Ordinal.of(b)
    if a._key < b._key:
        return Cmp.LESS
    if a._key > b._key:
        return Cmp.GREATER
    return Cmp.EQUAL


def ord_add(a, b):
    """Ordinal sum; terms of ``a`` below the leading exponent of ``b`` are absorbed."""
    if a.__class__ is not Ordinal:
        a = Ordinal.of(a)
    if b.__class__ is not Ordinal:
        b = Ordinal.of(b)
    if not b.terms:
        return a
    if not a.terms:
        return b
    e, c = b.terms[0]
    ek = e._key
    kept = []
    for ea, ca in a.terms:
        if ea._key > ek:
            kept.append((ea, ca))
        elif ea._key == ek:
            c += ca
            break
        else:
            break
    kept.append((e, c))
    kept.extend(b.terms[1:])
    return Ordinal._raw(tuple(kept))


def ord_sub(gamma, beta):
    """The unique delta with ``beta + delta == gamma`` (left subtraction)."""
    gamma, beta = Ordinal.of(gamma), Ordinal.of(beta)
    if beta._key > gamma._key:
        raise BetaExceedsGamma(f"{beta} exceeds {gamma}")
    g, b = gamma.terms, beta.terms
    for i, (eb, cb) in enumerate(b):
        eg, cg = g[i]
        if eb._key == eg._key and cb == cg:
            continue
        if eb._key == eg._key:
            # cb < cg since beta <= gamma
            return Ordinal._raw(((eg, cg - cb),) + g[i + 1:])
        return Ordinal._raw(g[i:])
    return Ordinal._raw(g[len(b):])


def split_limit_finite(alpha):
    """alpha = beta + n with beta zero or a limit ordinal."""
    alpha = Ordinal.of(alpha)
    if alpha.terms and not alpha.terms[-1][0].terms:
        return Ordinal._raw(alpha.terms[:-1]), alpha.terms[-1][1]
    return alpha, 0


def is_limit(alpha):
    return Ordinal.of(alpha).is_limit()


def _random_small_below_power(exponent, rng, depth):
    # a random ordinal strictly below omega^exponent
    if not exponent.terms or depth > 3:
        return ZERO
    e = random_below(exponent, rng, depth + 1)
    head = omega_power(e, 1 + _geometric(rng, 0.6))
    if e.terms and rng.random() < 0.6:
        return ord_add(head, _random_small_below_power(e, rng, depth + 1))
    return head


def _geometric(rng, p):
    n = 0
    while rng.random() > p and n < 64:
        n += 1
    return n


def random_below(alpha, rng, depth=0):
    """A random ordinal strictly below ``alpha``, biased toward small values."""
    alpha = Ordinal.of(alpha)
    if not alpha.terms:
        raise ValueError("no ordinal lies below 0")
    terms = alpha.terms
    i = rng.randrange(len(terms))
    e, c = terms[i]
    if not e.terms:
        # below the finite tail: prefix + k with k < c, geometric from the bottom
        k = rng.randrange(c) if rng.random() < 0.5 else min(_geometric(rng, 0.35), c - 1)
        prefix = terms[:i]
        return Ordinal._raw(prefix + (((ZERO, k),) if k else ()))
    k = rng.randrange(c)
    prefix = terms[:i] + (((e, k),) if k else ())
    tail = ZERO
    if rng.random() < 0.75:
        tail = _random_small_below_power(e, rng, depth)
    return ord_add(Ordinal._raw(prefix), tail)
