from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from endowb import _linalg as la
from endowb.catalog import get_datum, load_catalog
from endowb.rootdatum import (FrobeniusInvalid, GroupTooLarge, NonCartan, NotSubdatum, RootDatum,
                              build_root_datum, dominant_representative, fundamental_weights,
                              parse_datum, serialize_datum, subdatum, weyl_element_from_word, weyl_group)

import oracles

CATALOG = [e.name for e in load_catalog()]


def weights(rank, lo=-5, hi=5):
    return st.tuples(*[st.integers(lo, hi)] * rank)


def test_a1_from_description():
    d = build_root_datum({"rank": 1, "simple_roots": [[2]], "simple_coroots": [[1]]})
    assert sorted(d.roots) == [(-2,), (2,)]
    assert d.weyl_order == 2


def test_c2_roots_and_weyl_order():
    d = get_datum("C2")
    assert len(d.roots) == 8
    assert d.weyl_order == 8


def test_indefinite_pairing_rejected():
    with pytest.raises(NonCartan):
        build_root_datum({"rank": 2, "simple_roots": [[2, -1], [-4, 2]], "simple_coroots": [[1, 0], [0, 1]]})


def test_positive_off_diagonal_rejected():
    with pytest.raises(NonCartan):
        RootDatum(2, ((2, 1), (1, 2)), ((1, 0), (0, 1)))


@pytest.mark.parametrize("name", CATALOG)
def test_roots_match_reflection_closure(name):
    d = get_datum(name)
    pairs = oracles.root_closure(d.simple_roots, d.simple_coroots)
    assert sorted(d.roots) == sorted(a for a, _ in pairs)
    assert all(d.coroot_of[a] == c for a, c in pairs)
    assert len(d.positive_roots) * 2 == len(d.roots)


@pytest.mark.parametrize("name", CATALOG)
def test_weyl_group_matches_closure(name):
    d = get_datum(name)
    group = oracles.weyl_matrices(d.simple_roots, d.simple_coroots, d.rank)
    elems = weyl_group(d)
    assert {w.matrix for w in elems} == group
    assert len(elems) == d.weyl_order


def test_small_weyl_groups():
    assert [w.label() for w in weyl_group(get_datum("A1"))] == ["e", "s1"]
    a2 = weyl_group(get_datum("A2"))
    assert len(a2) == 6 and max(w.length for w in a2) == 3
    assert len(weyl_group(get_datum("G2"))) == 12


def test_weyl_guard():
    with pytest.raises(GroupTooLarge):
        weyl_group(get_datum("SO7"), guard=10)


@pytest.mark.parametrize("name", ["A2", "Sp4", "G2", "SO7", "GSp4"])
def test_word_matrix_and_sign(name):
    d = get_datum(name)
    for w in weyl_group(d):
        assert weyl_element_from_word(d, w.word).matrix == w.matrix
        assert w.sign == la.det(w.matrix) == (-1) ** w.length


def test_dominant_representative_examples():
    d = get_datum("A1")
    v, w = dominant_representative(d, (-3,))
    assert v == (3,) and w.label() == "s1"
    v, w = dominant_representative(d, (4,))
    assert v == (4,) and w.label() == "e"


@pytest.mark.parametrize("name", ["Sp4", "G2", "U3"])
@given(data=st.data())
def test_dominant_representative_lands_in_orbit(name, data):
    d = get_datum(name)
    lam = la.vec(data.draw(weights(d.rank)))
    v, w = dominant_representative(d, lam)
    assert d.is_dominant(v)
    assert w.act(lam) == v
    group = oracles.weyl_matrices(d.simple_roots, d.simple_coroots, d.rank)
    assert v in {tuple(sum(m[i][j] * lam[j] for j in range(d.rank)) for i in range(d.rank)) for m in group}


@pytest.mark.parametrize("name", CATALOG)
def test_reflections_permute_roots(name):
    d = get_datum(name)
    rs = set(d.roots)
    for a in d.roots:
        c = d.coroot_of[a]
        for b in rs:
            k = sum(x * y for x, y in zip(b, c))
            assert tuple(x - k * y for x, y in zip(b, a)) in rs


@pytest.mark.parametrize("name", CATALOG)
def test_rho_pairs_to_one(name):
    d = get_datum(name)
    assert all(la.dot(d.rho, c) == 1 for c in d.simple_coroots)
    assert all(la.dot(d.rho_check, a) == 1 for a in d.simple_roots)


@pytest.mark.parametrize("name", ["Sp4", "G2", "A2"])
@given(data=st.data())
def test_orbit_stabilizer(name, data):
    d = get_datum(name)
    lam = la.vec(data.draw(weights(d.rank, -3, 3)))
    stab = sum(1 for w in weyl_group(d) if w.act(lam) == lam)
    assert len(d.orbit(lam)) * stab == d.weyl_order


@given(lam=weights(2, 0, 6))
def test_frobenius_preserves_dominance(lam):
    d = get_datum("U3")
    if d.is_dominant(lam):
        assert d.is_dominant(la.matvec(d.frobenius, la.vec(lam)))


def test_frobenius_must_permute_simple_roots():
    with pytest.raises(FrobeniusInvalid):
        RootDatum(2, ((2, -1), (-1, 2)), ((1, 0), (0, 1)), ((1, 1), (0, 1)))
    with pytest.raises(FrobeniusInvalid):
        RootDatum(2, ((2, -1), (-1, 2)), ((1, 0), (0, 1)), ((2, 0), (0, 1)))


@pytest.mark.parametrize("name", CATALOG)
def test_file_round_trip(name):
    d = get_datum(name)
    text = serialize_datum(d)
    assert parse_datum(text) == d
    assert serialize_datum(parse_datum(text)) == text


@pytest.mark.parametrize("name", CATALOG)
def test_dual_is_involutive(name):
    d = get_datum(name)
    dd = d.dual().dual()
    assert (dd.simple_roots, dd.simple_coroots, dd.frobenius) == (d.simple_roots, d.simple_coroots, d.frobenius)
    assert d.dual().weyl_order == d.weyl_order


@pytest.mark.parametrize("name", ["A2", "Sp4", "G2", "SO7"])
def test_fundamental_weights_are_dual_to_coroots(name):
    d = get_datum(name)
    fw = fundamental_weights(d)
    for i, w in enumerate(fw):
        assert [la.dot(w, c) for c in d.simple_coroots] == [int(i == j) for j in range(len(fw))]


def test_integrality_and_dominance_are_computed():
    d = get_datum("SO5")
    assert d.rho == (Fraction(3, 2), Fraction(1, 2))
    assert not la.is_integral(d.rho)
    assert d.is_dominant((2, 1)) and not d.is_dominant((1, 2))


def test_subdatum_rejects_non_roots():
    d = get_datum("Sp4")
    with pytest.raises(NotSubdatum):
        subdatum(d, [(1, 1), (-1, -1), (5, 0), (-5, 0)])
    with pytest.raises(NotSubdatum):
        subdatum(d, [(1, 1)])
    h = subdatum(d, [(2, 0), (-2, 0), (0, 2), (0, -2)])
    assert h.type_label == "A1xA1"
