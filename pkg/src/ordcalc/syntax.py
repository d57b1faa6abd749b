"""Text and JSON forms of ordinals, order terms and elements.

Term grammar (``*`` binds tighter than ``+``; both associate to the right)::

    term  := prod ('+' term)?
    prod  := atom ('*' prod)?
    atom  := 'w' | 'w*' | 'z' | 'eta' | NAT | '(' term ')' | 'rev(' term ')'
           | 'exp(' term '@' ELEM ',' ORD ')' | 'pow(' term '@' ELEM ',' term ')'

``w*`` is omega-star unless the ``*`` is followed by an operand.  ``ELEM`` is
element JSON and ``ORD`` an ordinal such as ``w^2*3 + w + 5`` or ``w^(w)``.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import OrderSyntaxError, ShapeMismatch
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
    Rev,
    Sum,
    SumElem,
    Zeta,
    ZetaElem,
)
from .ordinal import ONE, Ordinal, omega_power, ord_add

__all__ = [
    "parse_term", "format_term", "parse_ordinal", "format_ordinal",
    "parse_element", "element_to_json", "element_from_json", "dumps", "jsonable",
    "fs_to_json", "fs_from_json",
]

_OPERAND_START = set("wze0123456789(rp")


class _Reader:
    def __init__(self, text):
        self.text = text
        self.i = 0

    def skip(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self):
        self.skip()
        return self.text[self.i] if self.i < len(self.text) else ""

    def at(self, word):
        self.skip()
        return self.text.startswith(word, self.i)

    def expect(self, word):
        if not self.at(word):
            raise OrderSyntaxError(f"expected {word!r}", self.i)
        self.i += len(word)

    def nat(self):
        self.skip()
        j = self.i
        while j < len(self.text) and self.text[j].isdigit():
            j += 1
        if j == self.i:
            raise OrderSyntaxError("expected a natural number", self.i)
        value = int(self.text[self.i:j])
        self.i = j
        return value

    def json_value(self):
        self.skip()
        try:
            value, end = json.JSONDecoder().raw_decode(self.text, self.i)
        except json.JSONDecodeError as exc:
            raise OrderSyntaxError(f"bad element JSON: {exc.msg}", exc.pos) from None
        self.i = end
        return value

    def done(self):
        self.skip()
        if self.i != len(self.text):
            raise OrderSyntaxError(f"unexpected {self.text[self.i]!r}", self.i)


# ---------------------------------------------------------------------------
# ordinals

def _ord_sum(r):
    total = _ord_product(r)
    while r.peek() == "+":
        r.expect("+")
        total = ord_add(total, _ord_product(r))
    return total


def _ord_product(r):
    c = r.peek()
    if c.isdigit():
        return Ordinal.of(r.nat())
    if c == "(":
        r.expect("(")
        value = _ord_sum(r)
        r.expect(")")
        return value
    if c != "w":
        raise OrderSyntaxError("expected an ordinal", r.i)
    r.expect("w")
    exponent = ONE
    if r.peek() == "^":
        r.expect("^")
        c = r.peek()
        if c.isdigit():
            exponent = Ordinal.of(r.nat())
        elif c == "(":
            r.expect("(")
            exponent = _ord_sum(r)
            r.expect(")")
        elif c == "w":
            r.expect("w")
        else:
            raise OrderSyntaxError("expected an exponent", r.i)
    coefficient = 1
    if r.peek() == "*":
        r.expect("*")
        coefficient = r.nat()
    return omega_power(exponent, coefficient)


def parse_ordinal(text) -> Ordinal:
    r = _Reader(text)
    value = _ord_sum(r)
    r.done()
    return value


def format_ordinal(alpha) -> str:
    return str(Ordinal.of(alpha))


# ---------------------------------------------------------------------------
# terms

def _term(r):
    left = _prod(r)
    if r.peek() == "+":
        r.expect("+")
        return Sum(left, _term(r))
    return left


def _prod(r):
    left = _atom(r)
    if r.peek() == "*":
        r.expect("*")
        return Prod(left, _prod(r))
    return left


def _atom(r):
    c = r.peek()
    start = r.i
    if c.isdigit():
        return Fin(r.nat())
    if c == "(":
        r.expect("(")
        t = _term(r)
        r.expect(")")
        return t
    if r.at("eta"):
        r.expect("eta")
        return Eta()
    if r.at("exp(") or r.at("pow("):
        ordinal = r.at("exp(")
        r.i += 4
        base = _term(r)
        r.expect("@")
        point = element_from_json(base, r.json_value())
        r.expect(",")
        exponent = _ord_sum(r) if ordinal else _term(r)
        r.expect(")")
        return OrdExp(base, point, exponent)
    if r.at("rev("):
        r.i += 4
        inner = _term(r)
        r.expect(")")
        # a Rev node survives only over exponentials
        return inner.reverse()
    if c == "z":
        r.expect("z")
        return Zeta()
    if c == "w":
        r.expect("w")
        if r.peek() == "*":
            save = r.i
            r.expect("*")
            if r.peek() not in _OPERAND_START or r.peek() == "":
                return OmegaStar()
            r.i = save
        return Omega()
    raise OrderSyntaxError("expected a term", start)


def parse_term(text) -> OrderTerm:
    r = _Reader(text)
    t = _term(r)
    r.done()
    return t


def format_term(t, _ctx="top") -> str:
    if isinstance(t, Fin):
        return str(t.n)
    if isinstance(t, Omega):
        return "w"
    if isinstance(t, OmegaStar):
        return "(w*)" if _ctx == "prod-left" else "w*"
    if isinstance(t, Zeta):
        return "z"
    if isinstance(t, Eta):
        return "eta"
    if isinstance(t, Sum):
        text = f"{format_term(t.left, 'sum-left')} + {format_term(t.right, 'sum-right')}"
        return f"({text})" if _ctx in ("sum-left", "prod-left", "prod-right") else text
    if isinstance(t, Prod):
        text = f"{format_term(t.left, 'prod-left')}*{format_term(t.right, 'prod-right')}"
        return f"({text})" if _ctx == "prod-left" else text
    if isinstance(t, OrdExp):
        point = dumps(element_to_json(t.point))
        if isinstance(t.exponent, Ordinal):
            return f"exp({format_term(t.base)}@{point}, {t.exponent})"
        return f"pow({format_term(t.base)}@{point}, {format_term(t.exponent)})"
    if isinstance(t, Rev):
        return f"rev({format_term(t.inner)})"
    raise TypeError(f"not an order term: {t!r}")


# ---------------------------------------------------------------------------
# elements

def dumps(value) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


def element_to_json(e):
    if isinstance(e, FinElem):
        return {"fin": e.i}
    if isinstance(e, OmegaElem):
        return {"omega": e.k}
    if isinstance(e, OmegaStarElem):
        return {"omegastar": e.k}
    if isinstance(e, ZetaElem):
        return {"zeta": e.z}
    if isinstance(e, EtaElem):
        return {"eta": [e.q.numerator, e.q.denominator]}
    if isinstance(e, SumElem):
        return {"left" if e.side is LEFT else "right": element_to_json(e.inner)}
    if isinstance(e, ProdElem):
        return {"pair": [element_to_json(e.first), element_to_json(e.second)]}
    if isinstance(e, ExpElem):
        return {"fs": [[_position_json(p), element_to_json(v)] for p, v in e.support]}
    raise TypeError(f"not an element: {e!r}")


def _position_json(p):
    return p.to_json() if isinstance(p, Ordinal) else element_to_json(p)


def _one_key(data, term):
    if not (isinstance(data, dict) and len(data) == 1):
        raise ShapeMismatch(f"element JSON for {term} must be a one-key object, got {data!r}")
    return next(iter(data.items()))


def _int(value):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ShapeMismatch(f"expected an integer, got {value!r}")
    return value


def element_from_json(term, data):
    """Decode element JSON guided by ``term``; raises ShapeMismatch on a wrong shape."""
    if isinstance(term, Rev):
        return element_from_json(term.inner, data)
    key, value = _one_key(data, term)
    expected = {Fin: "fin", Omega: "omega", OmegaStar: "omegastar", Zeta: "zeta",
                Eta: "eta", Prod: "pair", OrdExp: "fs"}
    if isinstance(term, Sum):
        if key not in ("left", "right"):
            raise ShapeMismatch(f"{term} needs a left/right element, got {key!r}")
        side = LEFT if key == "left" else RIGHT
        e = SumElem(side, element_from_json(term.left if side is LEFT else term.right, value))
    elif expected.get(type(term)) != key:
        raise ShapeMismatch(f"{term} has no {key!r} elements")
    elif isinstance(term, Fin):
        e = FinElem(_int(value))
    elif isinstance(term, Omega):
        e = OmegaElem(_int(value))
    elif isinstance(term, OmegaStar):
        e = OmegaStarElem(_int(value))
    elif isinstance(term, Zeta):
        e = ZetaElem(_int(value))
    elif isinstance(term, Eta):
        e = EtaElem(_rational(value))
    elif isinstance(term, Prod):
        if not (isinstance(value, list) and len(value) == 2):
            raise ShapeMismatch(f"pair needs two components, got {value!r}")
        e = ProdElem(element_from_json(term.left, value[0]),
                     element_from_json(term.right, value[1]))
    else:
        e = _exp_element(term, value)
    if not term.contains(e):
        raise ShapeMismatch(f"{dumps(data)} is not an element of {term}")
    return e


def _rational(value):
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, list) and len(value) == 2:
        p, q = _int(value[0]), _int(value[1])
        if q == 0:
            raise ShapeMismatch("zero denominator")
        return Fraction(p, q)
    raise ShapeMismatch(f"expected [p, q], got {value!r}")


def _exp_element(term, value):
    if not isinstance(value, list):
        raise ShapeMismatch(f"fs needs a list of [position, value] pairs, got {value!r}")
    items = []
    for item in value:
        if not (isinstance(item, list) and len(item) == 2):
            raise ShapeMismatch(f"malformed support entry {item!r}")
        if isinstance(term.exponent, Ordinal):
            try:
                # ordinal literals are accepted as an input convenience
                pos = (parse_ordinal(item[0]) if isinstance(item[0], str)
                       else Ordinal.from_json(item[0]))
            except OrderSyntaxError:
                raise
            except (TypeError, ValueError) as exc:
                raise ShapeMismatch(str(exc)) from None
        else:
            pos = element_from_json(term.exponent, item[0])
        val = element_from_json(term.base, item[1])
        if val != term.point:
            items.append((pos, val))
    if len({p for p, _ in items}) != len(items):
        raise ShapeMismatch("repeated support position")
    return ExpElem(term.sort_support(items))


def parse_element(term, text):
    r = _Reader(text)
    data = r.json_value()
    r.done()
    return element_from_json(term, data)


def fs_to_json(f):
    return {"fs": {"base": format_term(f.base), "point": element_to_json(f.point),
                   "exp": _exponent_json(f.exponent),
                   "support": [[_position_json(p), element_to_json(v)] for p, v in f.support]}}


def _exponent_json(exponent):
    return exponent.to_json() if isinstance(exponent, Ordinal) else format_term(exponent)


def fs_from_json(data):
    from .exponential import FSFunction
    if not (isinstance(data, dict) and isinstance(data.get("fs"), dict)):
        raise ShapeMismatch("expected {\"fs\": {base, point, exp, support}}")
    body = data["fs"]
    base = parse_term(body["base"])
    point = element_from_json(base, body["point"])
    exp = body["exp"]
    exponent = parse_term(exp) if isinstance(exp, str) else Ordinal.from_json(exp)
    term = OrdExp(base, point, exponent)
    e = element_from_json(term, {"fs": body.get("support", [])})
    return FSFunction(base, point, exponent, e.support)


def jsonable(value):
    """Best-effort JSON form of library values, for reports."""
    from .exponential import FSFunction
    if value is None or isinstance(value, (bool, int, str, float)):
        return value
    if isinstance(value, Ordinal):
        return str(value)
    if isinstance(value, OrderTerm):
        return format_term(value)
    if isinstance(value, FSFunction):
        return fs_to_json(value)
    if isinstance(value, Fraction):
        return [value.numerator, value.denominator]
    if isinstance(value, dict):
        return {str(jsonable(k)) if not isinstance(k, str) else k: jsonable(v)
                for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    try:
        return element_to_json(value)
    except TypeError:
        return repr(value)
