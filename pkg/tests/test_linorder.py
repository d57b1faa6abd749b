import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ordcalc.errors import EmptyOrder, ShapeMismatch
from ordcalc.linorder import (
    GREATEST,
    LEAST,
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
    Prod,
    ProdElem,
    Rev,
    Sum,
    SumElem,
    Zeta,
    ZetaElem,
    back_and_forth,
    classify,
    compare,
    extremum,
    left_distributivity_map,
    neighbors,
    reverse,
    sample,
)
from ordcalc.ordinal import Cmp, omega_power

Z = ZetaElem
L = lambda e: SumElem(LEFT, e)
R = lambda e: SumElem(RIGHT, e)


# ---------------------------------------------------------------------------
# examples

def test_compare_examples():
    assert compare(Zeta(), Z(-3), Z(5)) == Cmp.LESS
    z2 = Prod(Zeta(), Fin(2))
    # second coordinate decides
    assert compare(z2, ProdElem(Z(5), FinElem(0)), ProdElem(Z(-3), FinElem(1))) == Cmp.LESS
    ww = Sum(Omega(), Omega())
    assert compare(ww, L(OmegaElem(100)), R(OmegaElem(0))) == Cmp.LESS
    assert compare(OmegaStar(), OmegaStarElem(0), OmegaStarElem(3)) == Cmp.GREATER


def test_compare_rejects_foreign_elements():
    with pytest.raises(ShapeMismatch):
        compare(Fin(3), FinElem(3), FinElem(0))
    with pytest.raises(ShapeMismatch):
        compare(Omega(), Z(1), OmegaElem(0))


def test_neighbor_examples():
    assert neighbors(Zeta(), Z(5)) == (Z(4), Z(6))
    assert neighbors(Eta(), EtaElem(Fraction(1, 2))) == (None, None)
    ww = Sum(Omega(), Omega())
    assert neighbors(ww, R(OmegaElem(0))) == (None, R(OmegaElem(1)))


def test_neighbors_of_right_zero_on_truncation():
    # brute force on {Left 0..N} + {Right 0..N}: Right 0's predecessor there is Left N,
    # which has a successor Left N+1 in the full order, so no predecessor survives
    ww = Sum(Omega(), Omega())
    for n in (5, 20, 80):
        window = [L(OmegaElem(k)) for k in range(n + 1)]
        below = [x for x in window if ww.cmp(x, R(OmegaElem(0))) < 0]
        top = max(below, key=lambda x: x.inner.k)
        assert ww.neighbors(top)[1] == L(OmegaElem(n + 1))


def test_classify_examples():
    c = classify(Sum(Omega(), OmegaStar()))
    assert c.discrete and c.has_least and c.has_greatest
    c = classify(Prod(Zeta(), Eta()))
    assert c.discrete and c.unbounded and not c.dense
    c = classify(Sum(Eta(), Fin(1)))
    assert c.dense and c.has_greatest and not c.has_least
    c = classify(Fin(0))
    assert c.empty and c.has_least and c.dense


@pytest.mark.parametrize("term, which, expected", [
    (Omega(), LEAST, OmegaElem(0)),
    (Zeta(), LEAST, None),
    (Prod(Fin(2), Omega()), LEAST, ProdElem(FinElem(0), OmegaElem(0))),
    (OmegaStar(), GREATEST, OmegaStarElem(0)),
    (Sum(Eta(), Fin(1)), GREATEST, R(FinElem(0))),
    (Fin(0), LEAST, None),
    (OrdExp(Omega(), OmegaElem(0), omega_power(1)), LEAST, ExpElem(())),
])
def test_extremum_examples(term, which, expected):
    assert extremum(term, which) == expected


def test_reverse_examples():
    assert reverse(Omega()) == OmegaStar()
    assert reverse(Sum(Omega(), Zeta())) == Sum(Zeta(), OmegaStar())
    e = OrdExp(Zeta(), Z(0), omega_power(1))
    assert reverse(e) == Rev(e)
    assert reverse(Rev(e)) == e
    assert reverse(Prod(Fin(2), Omega())) == Prod(Fin(2), OmegaStar())


def test_sample_examples():
    xs = sample(Fin(3), 11, 10)
    assert len(xs) == 10 and all(x.i in (0, 1, 2) for x in xs)
    assert sample(Eta(), 7, 5) == sample(Eta(), 7, 5)
    assert sample(Prod(Zeta(), Eta()), 3, 20) == sample(Prod(Zeta(), Eta()), 3, 20)
    with pytest.raises(EmptyOrder):
        sample(Fin(0), 1, 1)


def test_eta_elements_are_normalized():
    assert EtaElem(Fraction(2, 4)) == EtaElem(Fraction(1, 2))
    assert EtaElem(3).q == Fraction(3)


# ---------------------------------------------------------------------------
# finite terms against a rank oracle

def finite_terms():
    leaf = st.integers(1, 3).map(Fin)
    return st.recursive(leaf, lambda t: st.one_of(st.builds(Sum, t, t), st.builds(Prod, t, t)),
                        max_leaves=5)


def size(t):
    if isinstance(t, Fin):
        return t.n
    if isinstance(t, Sum):
        return size(t.left) + size(t.right)
    return size(t.left) * size(t.right)


def rank(t, e):
    if isinstance(t, Fin):
        return e.i
    if isinstance(t, Sum):
        return rank(t.left, e.inner) if e.side is LEFT else size(t.left) + rank(t.right, e.inner)
    return rank(t.right, e.second) * size(t.left) + rank(t.left, e.first)


@given(finite_terms())
def test_finite_terms_match_rank_oracle(t):
    elems = t.enumerate()
    assert t.finite_size() == size(t) == len(elems)
    ranks = [rank(t, e) for e in elems]
    assert sorted(ranks) == list(range(size(t)))
    by_rank = {rank(t, e): e for e in elems}
    for x in elems:
        for y in elems:
            rx, ry = rank(t, x), rank(t, y)
            assert t.cmp(x, y) == (rx > ry) - (rx < ry)
        p, s = t.neighbors(x)
        assert p == by_rank.get(rank(t, x) - 1)
        assert s == by_rank.get(rank(t, x) + 1)
    c = t.classify()
    assert c.discrete and c.has_least and c.has_greatest
    assert t.extremum(LEAST) == by_rank[0]
    assert t.extremum(GREATEST) == by_rank[size(t) - 1]


# ---------------------------------------------------------------------------
# classification against sampled behaviour

def infinite_terms():
    leaf = st.sampled_from([Fin(1), Fin(2), Omega(), OmegaStar(), Zeta(), Eta()])
    return st.recursive(leaf, lambda t: st.one_of(st.builds(Sum, t, t), st.builds(Prod, t, t)),
                        max_leaves=4)


@given(infinite_terms(), st.integers(0, 2**32))
def test_classification_agrees_with_samples(t, seed):
    c = t.classify()
    rng = random.Random(seed)
    least, greatest = t.extremum(LEAST), t.extremum(GREATEST)
    assert (least is not None) == c.has_least
    assert (greatest is not None) == c.has_greatest
    for _ in range(40):
        x = t.sample_element(rng)
        assert t.contains(x)
        p, s = t.neighbors(x)
        if c.discrete:
            assert (p is None) == (x == least)
            assert (s is None) == (x == greatest)
        if c.dense:
            assert p is None and s is None
        if least is not None:
            assert t.cmp(least, x) <= 0
        if greatest is not None:
            assert t.cmp(x, greatest) <= 0
        if s is not None:
            assert t.cmp(x, s) < 0 and t.neighbors(s)[0] == x


@given(infinite_terms(), st.integers(0, 2**32))
def test_total_order_and_reversal(t, seed):
    rng = random.Random(seed)
    rt = reverse(t)
    for _ in range(30):
        x, y, z = (t.sample_element(rng) for _ in range(3))
        assert t.cmp(x, x) == 0
        assert t.cmp(x, y) == -t.cmp(y, x)
        if t.cmp(x, y) < 0 and t.cmp(y, z) < 0:
            assert t.cmp(x, z) < 0
        rx, ry = t.reverse_element(x), t.reverse_element(y)
        assert rt.contains(rx)
        assert rt.cmp(rx, ry) == -t.cmp(x, y)
    rc, c = rt.classify(), t.classify()
    assert (rc.has_least, rc.has_greatest) == (c.has_greatest, c.has_least)
    assert (rc.discrete, rc.dense) == (c.discrete, c.dense)


@given(infinite_terms(), st.integers(0, 2**32))
def test_between_is_strict(t, seed):
    rng = random.Random(seed)
    for _ in range(20):
        x, y = t.sample_element(rng), t.sample_element(rng)
        if t.cmp(x, y) > 0:
            x, y = y, x
        m = t.between(x, y)
        if m is None:
            assert x == y or t.neighbors(x)[1] == y
        else:
            assert t.cmp(x, m) < 0 < t.cmp(y, m)


# ---------------------------------------------------------------------------
# distributivity

@given(st.integers(0, 2**32))
def test_left_distributivity_map(seed):
    rng = random.Random(seed)
    source, target, fwd, inv = left_distributivity_map(Zeta(), Fin(2), Eta())
    assert source == Prod(Zeta(), Sum(Fin(2), Eta()))
    for _ in range(50):
        x, y = source.sample_element(rng), source.sample_element(rng)
        assert target.cmp(fwd(x), fwd(y)) == source.cmp(x, y)
        assert inv(fwd(x)) == x


def test_right_distributivity_fails():
    two_w = Prod(Sum(Fin(1), Fin(1)), Omega())
    elems = [ProdElem(s(FinElem(0)), OmegaElem(k)) for k in range(30) for s in (L, R)]
    image = {e: 2 * e.second.k + (e.first.side is RIGHT) for e in elems}
    for x in elems:
        for y in elems:
            assert two_w.cmp(x, y) == (image[x] > image[y]) - (image[x] < image[y])
    assert sorted(image.values()) == list(range(60))
    assert two_w.classify().discrete
    ww = Sum(Omega(), Omega())
    assert not ww.classify().discrete
    assert ww.neighbors(R(OmegaElem(0)))[0] is None
    assert ww.extremum(LEAST) == L(OmegaElem(0))


# ---------------------------------------------------------------------------
# back and forth

@pytest.mark.parametrize("target", [Sum(Eta(), Eta()), Prod(Eta(), Fin(3)), Eta()])
def test_back_and_forth_dense(target):
    for seed in range(20):
        pairs = back_and_forth(Eta(), target, 12, random.Random(seed))
        assert len(pairs) == 12


def test_back_and_forth_breaks_on_discrete_target():
    with pytest.raises(AssertionError):
        for seed in range(50):
            back_and_forth(Eta(), Zeta(), 30, random.Random(seed))
