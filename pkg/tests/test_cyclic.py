import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import count_cyclic_automorphisms
from ordcalc.cyclic import (
    CTLOWitness, CyclicAutomorphism, build_witness, ctlo_from_cyclic, cyclic_automorphism_count,
    cyclic_from_ctlo, cyclic_r, eta_eta_plus_one, eta_one_plus_eta, identity_cyc_equiv,
    inflationary_modify, omega_omegastar_zeta, stock_equivalences, transitive_finite_check,
    translation, trivial_witness, validate_cyc_equiv, validate_witness, witness_finite_rotation,
    witness_product_discrete, witness_product_left, witness_reverse, witness_transport,
    witness_translation, zeta_eta_with_ends,
)
from ordcalc.errors import (
    NotAutomorphism, NotDiscreteUnbounded, NotDistinct, OutOfRange, PointMismatch,
    SearchBoundExceeded, TooLarge, UnsupportedFamily,
)
from ordcalc.linorder import (
    LEFT, RIGHT, Eta, EtaElem, ExpElem, Fin, FinElem, Omega, OmegaElem, OmegaStar,
    OmegaStarElem, OrdExp, Prod, ProdElem, Rev, Sum, SumElem, Zeta, ZetaElem, reverse,
)
from ordcalc.ordinal import Ordinal, omega_power

F = FinElem
Z = ZetaElem
P = ProdElem


def zpow(k):
    return OrdExp(Zeta(), Z(0), Ordinal.of(k))


def vec(**kw):
    return ExpElem(tuple((Ordinal.of(int(k[1:])), Z(v)) for k, v in sorted(kw.items())))


# ---------------------------------------------------------------------------
# the relation

def test_cyclic_r_examples():
    t = Fin(3)
    assert cyclic_r(t, F(0), F(1), F(2))
    assert cyclic_r(t, F(1), F(2), F(0))
    assert not cyclic_r(t, F(2), F(1), F(0))
    with pytest.raises(NotDistinct):
        cyclic_r(t, F(0), F(0), F(2))


@pytest.mark.parametrize("term", [Fin(6), Zeta(), Eta(), Sum(Omega(), OmegaStar()),
                                  Prod(Zeta(), Fin(2)), zpow(2)])
def test_cyclic_axioms(term):
    rng = random.Random(3)
    rterm = reverse(term)
    for _ in range(300):
        a, b, c = (term.sample_element(rng) for _ in range(3))
        if len({a, b, c}) < 3:
            continue
        assert cyclic_r(term, a, b, c) != cyclic_r(term, c, b, a)
        assert cyclic_r(term, a, b, c) == cyclic_r(term, b, c, a) == cyclic_r(term, c, a, b)
        ra, rb, rc = (term.reverse_element(x) for x in (a, b, c))
        assert cyclic_r(rterm, ra, rb, rc) == cyclic_r(term, c, b, a)


# ---------------------------------------------------------------------------
# finite brute force

@pytest.mark.parametrize("n", range(1, 8))
def test_rotation_count_matches_numpy_oracle(n):
    assert cyclic_automorphism_count(n) == count_cyclic_automorphisms(n) == n


@pytest.mark.parametrize("n, expected", [(0, True), (1, True), (2, False), (4, False)])
def test_transitive_finite_check(n, expected):
    assert transitive_finite_check(n) is expected


def test_brute_force_is_bounded():
    with pytest.raises(TooLarge):
        cyclic_automorphism_count(10)
    with pytest.raises(TooLarge):
        transitive_finite_check(10)


def test_rotation_example():
    w = witness_finite_rotation(5, 1, 3)
    assert w.f1(F(1)) == F(3)
    assert [x.i for x in Fin(5).enumerate() if w.cut1(x)] == [0, 1, 2]
    assert [y.i for y in Fin(5).enumerate() if w.cut2(y)] == [0, 1]
    assert validate_witness(w).ok
    phi = cyclic_from_ctlo(w)
    assert [phi.forward(F(i)).i for i in range(5)] == [2, 3, 4, 0, 1]
    assert witness_finite_rotation(5, 2, 2).whole
    assert validate_witness(witness_finite_rotation(1, 0, 0)).ok
    with pytest.raises(OutOfRange):
        witness_finite_rotation(5, 3, 1)


@pytest.mark.parametrize("n", range(1, 7))
def test_all_rotations_validate_exhaustively(n):
    for a, b in itertools.combinations_with_replacement(range(n), 2):
        assert validate_witness(witness_finite_rotation(n, a, b)).ok


def test_bad_witness_fails():
    good = witness_finite_rotation(5, 1, 3)
    bad = CTLOWitness(good.term, good.a, F(4), good.cut1, good.cut2, good.f1, good.f1_inv,
                      good.f2, good.f2_inv)
    report = validate_witness(bad)
    assert not report.ok and report.failures > 0
    assert report.counterexample is not None
    as_json = report.to_json()
    assert as_json["status"] == "fail"


def test_non_monotone_witness_fails():
    good = witness_finite_rotation(4, 0, 1)
    swap = lambda x: F({0: 1, 1: 0}.get(x.i, x.i))
    bad = CTLOWitness(good.term, good.a, good.b, good.cut1, good.cut2,
                      lambda x: swap(good.f1(x)), lambda y: good.f1_inv(swap(y)),
                      good.f2, good.f2_inv)
    assert not validate_witness(bad).ok


# ---------------------------------------------------------------------------
# translations

def test_translation_examples():
    w = witness_translation(Zeta(), Z(2), Z(7))
    assert w.f1(Z(0)) == Z(5) and w.f1_inv(Z(5)) == Z(0)
    w = witness_translation(Eta(), EtaElem(Fraction(1, 2)), EtaElem(Fraction(1, 3)))
    assert w.f1(EtaElem(0)) == EtaElem(Fraction(-1, 6))
    assert validate_witness(w).ok
    t = zpow(2)
    w = witness_translation(t, vec(p0=1), vec(p1=1))
    assert w.f1(vec(p0=1)) == vec(p1=1)
    assert w.f1(ExpElem(())) == vec(p0=-1, p1=1)
    assert validate_witness(w, samples=500).ok


def test_translation_family_is_closed():
    with pytest.raises(UnsupportedFamily):
        translation(Omega(), OmegaElem(0), OmegaElem(1))


@given(st.integers(0, 2**32))
def test_translation_is_an_automorphism(seed):
    rng = random.Random(seed)
    for term in [Zeta(), Eta(), zpow(2), zpow(omega_power(1)), Prod(zpow(2), Eta())]:
        a, b = term.sample_element(rng), term.sample_element(rng)
        phi, phi_inv = translation(term, a, b)
        assert phi(a) == b
        for _ in range(10):
            x, y = term.sample_element(rng), term.sample_element(rng)
            assert term.cmp(phi(x), phi(y)) == term.cmp(x, y)
            assert phi_inv(phi(x)) == x


# ---------------------------------------------------------------------------
# products and reversal

def test_product_left_examples():
    w = witness_product_left(Zeta(), Z(0), Z(0), witness_finite_rotation(2, 0, 1))
    assert w.term == Prod(Zeta(), Fin(2))
    assert w.f1(P(Z(0), F(0))) == P(Z(0), F(1))
    assert validate_witness(w, samples=500).ok
    whole = witness_product_left(Zeta(), Z(0), Z(4), trivial_witness(Fin(3), F(1)))
    assert whole.whole and validate_witness(whole).ok
    w = witness_product_left(zpow(2), vec(p0=1), vec(p1=2), witness_finite_rotation(3, 0, 2))
    assert validate_witness(w, samples=500).ok


def test_product_discrete_both_cases():
    z2 = Prod(Zeta(), Fin(2))
    left = build_witness(z2, P(Z(0), F(0)), P(Z(3), F(1)))
    right = build_witness(z2, P(Z(2), F(0)), P(Z(-1), F(1)))
    w = witness_product_discrete(left, right)
    assert w.term == Prod(z2, z2)
    assert w.f1(w.a) == w.b
    assert validate_witness(w, samples=500).ok
    # b < a on the first coordinate
    w = witness_product_discrete(left, right, reverse_left=True)
    assert w.a.first == left.b and w.b.first == left.a
    assert w.f1(w.a) == w.b
    assert validate_witness(w, samples=500).ok


def test_product_discrete_needs_discrete_unbounded_right():
    with pytest.raises(NotDiscreteUnbounded):
        witness_product_discrete(witness_translation(Zeta(), Z(0), Z(1)),
                                 witness_translation(Eta(), EtaElem(0), EtaElem(1)))


def test_reverse_examples():
    w = witness_reverse(witness_finite_rotation(5, 1, 3))
    assert (w.a, w.b) == (F(1), F(3))
    phi = cyclic_from_ctlo(w)
    assert [phi.forward(F(i)).i for i in range(5)] == [(i + 2) % 5 for i in range(5)]
    assert validate_witness(w).ok
    w = witness_reverse(witness_translation(Zeta(), Z(1), Z(4)))
    assert w.term == Zeta() and w.f1(Z(0)) == Z(3) and validate_witness(w).ok
    assert witness_reverse(trivial_witness(Fin(3), F(1))).whole


@pytest.mark.parametrize("n", range(2, 7))
def test_reverse_rotations_exhaustively(n):
    for a, b in itertools.combinations(range(n), 2):
        assert validate_witness(witness_reverse(witness_finite_rotation(n, a, b))).ok


def test_literal_reverse_on_rev_node():
    inner = witness_translation(zpow(2), ExpElem(()), vec(p1=1))
    w = witness_reverse(inner, literal=True)
    assert w.term == Rev(zpow(2))
    assert validate_witness(w, samples=300).ok


# ---------------------------------------------------------------------------
# cyclic automorphisms

def test_cyclic_round_trip_on_fin5_exhaustively():
    for a, b in itertools.combinations_with_replacement(range(5), 2):
        w = witness_finite_rotation(5, a, b)
        back = ctlo_from_cyclic(Fin(5), cyclic_from_ctlo(w), w.a, w.b)
        assert (back.a, back.b) == (w.a, w.b)
        assert validate_witness(back).ok
        for x in Fin(5).enumerate():
            assert back.cut1(x) == (w.cut1(x) or w.whole)


def test_cyclic_round_trip_on_zeta_times_two():
    w = witness_product_left(Zeta(), Z(0), Z(2), witness_finite_rotation(2, 0, 1))
    phi = cyclic_from_ctlo(w)
    rng = random.Random(9)
    term = w.term
    for _ in range(500):
        x, y, z = (term.sample_element(rng) for _ in range(3))
        if len({x, y, z}) == 3:
            assert cyclic_r(term, x, y, z) == cyclic_r(term, phi.forward(x), phi.forward(y),
                                                       phi.forward(z))
    back = ctlo_from_cyclic(term, phi, w.a, w.b, samples=500)
    assert validate_witness(back, samples=500).ok


def test_ctlo_from_cyclic_examples():
    ident = CyclicAutomorphism(Fin(4), lambda x: x, lambda y: y)
    w = ctlo_from_cyclic(Fin(4), ident, F(2), F(2))
    assert all(w.cut1(x) for x in Fin(4).enumerate())
    shift = CyclicAutomorphism(Zeta(), lambda x: Z(x.z + 5), lambda y: Z(y.z - 5))
    w = ctlo_from_cyclic(Zeta(), shift, Z(0), Z(5))
    rng = random.Random(1)
    assert all(w.cut1(Zeta().sample_element(rng)) for _ in range(200))
    with pytest.raises(PointMismatch):
        ctlo_from_cyclic(Zeta(), shift, Z(0), Z(4))
    flip = CyclicAutomorphism(Fin(3), lambda x: F(2 - x.i), lambda y: F(2 - y.i))
    with pytest.raises(NotAutomorphism):
        ctlo_from_cyclic(Fin(3), flip, F(0), F(2))


def test_inflationary_modify_examples():
    phi = lambda x: Z(x.z + 3)
    phi_inv = lambda y: Z(y.z - 3)
    g = inflationary_modify(Zeta(), phi, phi_inv, Z(0), Z(3))
    for c in range(-40, 40):
        assert g(Z(c)) == Z(c + 3)
    assert inflationary_modify(Zeta(), lambda x: x, lambda x: x, Z(1), Z(1))(Z(7)) == Z(7)
    step = lambda x: EtaElem(x.q + 1)
    back = lambda y: EtaElem(y.q - 1)
    g = inflationary_modify(Eta(), step, back, EtaElem(0), EtaElem(1))
    rng = random.Random(2)
    for _ in range(200):
        x = Eta().sample_element(rng)
        assert Eta().cmp(x, g(x)) <= 0
    with pytest.raises(SearchBoundExceeded):
        inflationary_modify(Zeta(), phi, phi_inv, Z(0), Z(3), bound=2)(Z(100))


# ---------------------------------------------------------------------------
# cyclic equivalences and transport

@pytest.mark.parametrize("ce", [omega_omegastar_zeta(), eta_eta_plus_one(), eta_one_plus_eta(),
                                zeta_eta_with_ends()], ids=lambda c: c.name)
def test_stock_equivalences_validate(ce):
    assert validate_cyc_equiv(ce, samples=500).ok
    assert validate_cyc_equiv(ce.inverted(), samples=200).ok


def test_stock_equivalence_list():
    assert len(stock_equivalences()) == 4


def test_omega_omegastar_zeta_maps():
    ce = omega_omegastar_zeta()
    assert ce.glue(SumElem(LEFT, OmegaElem(3))) == Z(3)
    assert ce.glue(SumElem(RIGHT, OmegaStarElem(0))) == Z(-1)


def test_transport_examples():
    w = witness_translation(Zeta(), Z(1), Z(4))
    assert witness_transport(identity_cyc_equiv(Zeta()), w) is w
    t = witness_transport(omega_omegastar_zeta(), w)
    assert t.term == Sum(Omega(), OmegaStar())
    assert validate_witness(t, samples=500).ok
    w = witness_translation(Eta(), EtaElem(0), EtaElem(Fraction(1, 2)))
    t = witness_transport(eta_eta_plus_one(), w)
    assert t.term == Sum(Eta(), Fin(1))
    assert validate_witness(t, samples=500).ok


def test_transport_to_zeta_eta_with_ends():
    ce = zeta_eta_with_ends()
    src = ce.term_l
    rng = random.Random(6)
    for _ in range(5):
        a, b = src.sample_element(rng), src.sample_element(rng)
        if src.cmp(a, b) > 0:
            a, b = b, a
        w = build_witness(src, a, b)
        t = witness_transport(ce, w, samples=200)
        assert validate_witness(t, samples=300).ok


# ---------------------------------------------------------------------------
# dispatch

@pytest.mark.parametrize("term, a, b, via", [
    (Fin(5), F(1), F(3), "rotation"),
    (Zeta(), Z(-2), Z(9), "translation"),
    (zpow(2), ExpElem(()), vec(p0=-3, p1=1), "translation"),
    (Prod(Zeta(), Fin(3)), P(Z(0), F(0)), P(Z(2), F(2)), "product-left"),
    (Prod(Prod(Zeta(), Fin(2)), Prod(Zeta(), Fin(2))),
     P(P(Z(5), F(1)), P(Z(0), F(0))), P(P(Z(0), F(0)), P(Z(1), F(1))), "product-discrete"),
    (Sum(Omega(), OmegaStar()), SumElem(LEFT, OmegaElem(2)), SumElem(RIGHT, OmegaStarElem(1)),
     "transport"),
])
def test_build_witness_dispatch(term, a, b, via):
    w = build_witness(term, a, b)
    assert w.via.startswith(via)
    assert w.f1(w.a) == w.b
    assert validate_witness(w, samples=300).ok


def test_build_witness_trivial_and_unsupported():
    assert build_witness(Omega(), OmegaElem(3), OmegaElem(3)).whole
    with pytest.raises(UnsupportedFamily):
        build_witness(Omega(), OmegaElem(0), OmegaElem(1))
