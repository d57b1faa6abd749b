import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import cnf_dict, o_add, o_cmp, o_str, o_sub
from ordcalc.errors import BetaExceedsGamma
from ordcalc.ordinal import (
    OMEGA,
    ONE,
    ZERO,
    Cmp,
    Ordinal,
    is_limit,
    omega_power,
    ord_add,
    ord_compare,
    ord_sub,
    split_limit_finite,
)
from ordcalc.syntax import parse_ordinal

W = parse_ordinal


def build(d):
    """Ordinal from {exponent: coefficient}, highest term first."""
    out = ZERO
    for k in sorted(d, reverse=True):
        if d[k]:
            out = ord_add(out, omega_power(k, d[k]))
    return out


def as_dict(alpha):
    return cnf_dict(alpha.to_json())


small = st.dictionaries(st.integers(0, 3), st.integers(1, 6), max_size=4)


@pytest.mark.parametrize("a, b, expected", [
    ("0", "0", Cmp.EQUAL),
    ("w", "w + 1", Cmp.LESS),
    ("w*2 + 3", "w^2", Cmp.LESS),
    ("w^2", "w*100 + 100", Cmp.GREATER),
])
def test_compare_examples(a, b, expected):
    assert ord_compare(W(a), W(b)) == expected


@pytest.mark.parametrize("a, b, expected", [
    ("1", "w", "w"),
    ("w", "1", "w + 1"),
    ("w*2 + 3", "w", "w*3"),
    ("w^2 + w", "w^2*2", "w^2*3"),
    ("5", "7", "12"),
])
def test_add_examples(a, b, expected):
    assert ord_add(W(a), W(b)) == W(expected)


@pytest.mark.parametrize("gamma, beta, expected", [
    ("w", "1", "w"),
    ("w + 3", "w", "3"),
    ("w^2 + w*2 + 1", "w^2 + w", "w + 1"),
    ("w^2", "w^2", "0"),
])
def test_sub_examples(gamma, beta, expected):
    delta = ord_sub(W(gamma), W(beta))
    assert delta == W(expected)
    assert ord_add(W(beta), delta) == W(gamma)


def test_sub_rejects_larger_beta():
    with pytest.raises(BetaExceedsGamma):
        ord_sub(W("w"), W("w + 1"))


@pytest.mark.parametrize("alpha, beta, n", [
    ("7", "0", 7), ("w", "w", 0), ("w*2 + 5", "w*2", 5), ("0", "0", 0),
    ("w^(w) + 2", "w^(w)", 2),
])
def test_split_limit_finite_examples(alpha, beta, n):
    assert split_limit_finite(W(alpha)) == (W(beta), n)


@pytest.mark.parametrize("alpha, expected", [
    ("0", False), ("w", True), ("w^2 + 1", False), ("w^(w)", True), ("3", False),
])
def test_is_limit(alpha, expected):
    assert is_limit(W(alpha)) is expected


def test_constants_and_printing():
    assert ONE == Ordinal.of(1) and OMEGA == W("w")
    assert str(W("w^2*3 + w + 5")) == "w^2*3 + w + 5"
    assert str(W("w^(w + 1)*2")) == "w^(w + 1)*2"
    assert str(ZERO) == "0"
    # the finite ordinal n is the single term (0, n)
    assert Ordinal.of(4).to_json() == [[[], 4]]


def test_json_round_trip_nested():
    alpha = W("w^(w^2 + 1)*3 + w^(w) + 7")
    assert Ordinal.from_json(alpha.to_json()) == alpha


@given(small, small)
def test_add_matches_oracle(a, b):
    assert as_dict(ord_add(build(a), build(b))) == o_add(a, b)


@given(small, small)
def test_compare_matches_oracle(a, b):
    assert int(ord_compare(build(a), build(b))) == o_cmp(a, b)


@given(small, small)
def test_sub_matches_oracle(a, b):
    lo, hi = sorted([a, b], key=lambda d: [d.get(k, 0) for k in range(3, -1, -1)])
    assert as_dict(ord_sub(build(hi), build(lo))) == o_sub(hi, lo)


@given(small)
def test_printing_matches_oracle(a):
    assert str(build(a)) == o_str(a)
    assert parse_ordinal(o_str(a)) == build(a)


@given(small, small, small)
def test_associativity(a, b, c):
    x, y, z = build(a), build(b), build(c)
    assert ord_add(ord_add(x, y), z) == ord_add(x, ord_add(y, z))


@given(small, small, small)
def test_difference_identity(a, b, c):
    beta, alpha, gamma = sorted([build(a), build(b), build(c)])
    assert ord_sub(gamma, beta) == ord_add(ord_sub(alpha, beta), ord_sub(gamma, alpha))


@given(small)
def test_split_limit_finite_round_trip(a):
    alpha = build(a)
    beta, n = split_limit_finite(alpha)
    assert ord_add(beta, n) == alpha
    assert all(not e.is_zero() for e, _ in beta.terms)


@given(small, small, small)
def test_order_is_strict_total(a, b, c):
    x, y, z = build(a), build(b), build(c)
    assert (x < y) + (x == y) + (x > y) == 1
    if x < y and y < z:
        assert x < z
    assert hash(x) == hash(build(a))
