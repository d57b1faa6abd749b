import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ordcalc.errors import OrderSyntaxError, ShapeMismatch
from ordcalc.exponential import fs_make
from ordcalc.linorder import (
    Eta, EtaElem, ExpElem, Fin, FinElem, Omega, OmegaStar, OrdExp, Prod, ProdElem, Rev,
    Sum, SumElem, RIGHT, Zeta, ZetaElem,
)
from ordcalc.ordinal import Ordinal, omega_power
from ordcalc.syntax import (
    dumps, element_from_json, element_to_json, format_ordinal, format_term, fs_from_json,
    fs_to_json, parse_element, parse_ordinal, parse_term,
)

GOLDEN = [line.split("\t") for line in
          (Path(__file__).parent / "golden" / "terms.tsv").read_text().splitlines()]


def test_golden_corpus_is_large_enough():
    assert len(GOLDEN) >= 30


@pytest.mark.parametrize("source, pretty", GOLDEN, ids=[g[0] for g in GOLDEN])
def test_golden_pretty_print(source, pretty):
    t = parse_term(source)
    assert format_term(t) == pretty
    assert parse_term(pretty) == t
    assert format_term(parse_term(pretty)) == pretty


def test_parse_builds_expected_trees():
    assert parse_term("z*2") == Prod(Zeta(), Fin(2))
    assert parse_term("w + z*eta + w*") == Sum(Omega(), Sum(Prod(Zeta(), Eta()), OmegaStar()))
    assert parse_term("2*w*") == Prod(Fin(2), OmegaStar())
    assert parse_term("(w*)*2") == Prod(OmegaStar(), Fin(2))
    assert parse_term("rev(w)") == OmegaStar()
    e = parse_term('exp(z@{"zeta":0}, w)')
    assert e == OrdExp(Zeta(), ZetaElem(0), omega_power(1))
    assert parse_term('rev(exp(z@{"zeta":0}, w))') == Rev(e)


@pytest.mark.parametrize("text, position", [
    ("w +", 3), ("(z", 2), ("exp(z, w)", 5), ("foo", 0), ("w + + 1", 4), ("", 0),
])
def test_syntax_errors_carry_position(text, position):
    with pytest.raises(OrderSyntaxError) as info:
        parse_term(text)
    assert info.value.position == position
    assert f"position {position}" in str(info.value)


@pytest.mark.parametrize("text, cnf", [
    ("0", []), ("5", [[0, 5]]), ("w", [[1, 1]]), ("w*2 + 3", [[1, 2], [0, 3]]),
    ("w^2*3 + w + 5", [[2, 3], [1, 1], [0, 5]]),
])
def test_ordinal_literals(text, cnf):
    alpha = parse_ordinal(text)
    assert format_ordinal(alpha) == text
    expected = Ordinal.of(0)
    for e, c in cnf:
        expected = expected + omega_power(e, c)
    assert alpha == expected


def test_ordinal_literal_with_ordinal_exponent():
    assert format_ordinal(parse_ordinal("w^(w + 1)*2")) == "w^(w + 1)*2"
    assert parse_ordinal("w^(w)") > parse_ordinal("w^5*9")


@given(st.lists(st.tuples(st.integers(0, 4), st.integers(1, 5)), max_size=4))
def test_ordinal_json_round_trip(terms):
    alpha = Ordinal.of(0)
    for e, c in sorted(terms, reverse=True):
        alpha = alpha + omega_power(e, c)
    assert Ordinal.from_json(json.loads(json.dumps(alpha.to_json()))) == alpha
    assert parse_ordinal(format_ordinal(alpha)) == alpha


@pytest.mark.parametrize("term, text, element", [
    ("eta", '{"eta":[1,3]}', EtaElem(Fraction(1, 3))),
    ("eta", '{"eta":[2,6]}', EtaElem(Fraction(1, 3))),
    ("3", '{"fin":2}', FinElem(2)),
    ("z*2", '{"pair":[{"zeta":-4},{"fin":1}]}', ProdElem(ZetaElem(-4), FinElem(1))),
    ("w + z", '{"right":{"zeta":2}}', SumElem(RIGHT, ZetaElem(2))),
    ('exp(z@{"zeta":0}, w)', '{"fs":[[3,{"zeta":2}]]}',
     ExpElem(((Ordinal.of(3), ZetaElem(2)),))),
    ('exp(z@{"zeta":0}, w)', '{"fs":[["w",{"zeta":0}]]}', ExpElem(())),
])
def test_element_json(term, text, element):
    t = parse_term(term)
    e = parse_element(t, text)
    assert e == element
    assert element_from_json(t, json.loads(dumps(element_to_json(e)))) == e


@pytest.mark.parametrize("term, text", [
    ("w", '{"zeta":-1}'), ("3", '{"fin":3}'), ("w", '{"omega":-1}'),
    ("z*2", '{"pair":[{"zeta":0}]}'), ("z", '{"zeta":1,"fin":0}'),
])
def test_element_shape_mismatch(term, text):
    with pytest.raises(ShapeMismatch):
        parse_element(parse_term(term), text)


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'


def test_fs_json_round_trip():
    f = fs_make(Prod(Zeta(), Fin(2)), ProdElem(ZetaElem(0), FinElem(0)), omega_power(1, 2),
                [(Ordinal.of(4), ProdElem(ZetaElem(3), FinElem(1))),
                 (omega_power(1) + 1, ProdElem(ZetaElem(-2), FinElem(0)))])
    data = json.loads(dumps(fs_to_json(f)))
    assert set(data["fs"]) == {"base", "point", "exp", "support"}
    assert fs_from_json(data) == f


def test_fs_json_round_trip_term_exponent():
    f = fs_make(Zeta(), ZetaElem(0), Zeta(), [(ZetaElem(-5), ZetaElem(1)), (ZetaElem(2), ZetaElem(7))])
    assert fs_from_json(json.loads(dumps(fs_to_json(f)))) == f
