from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import given, settings, strategies as st

from endowb import _linalg as la
from endowb.arch import (InvalidMuStar, MuStarAmbiguous, NotRegular, TransferContext, check_mu_star,
                         coset_reps_omega, dimension_ratio, ep_transfer, expected_term_count, mu_star_default,
                         pseudo_transfer, rho_prime, transfer_atlas, transfer_weight, xi_set)
from endowb.catalog import get_datum, load_catalog
from endowb.endoscopy import enumerate_endoscopic, enumerate_hyper_paths
from endowb.reps import n_value
from endowb.rootdatum import dominant_weights_in_box, subdatum, torus_subdatum, weyl_group

import oracles

PATHS = [(e.name, i) for e in load_catalog() for i, _ in enumerate(enumerate_hyper_paths(e.datum))]


@lru_cache(maxsize=None)
def _regular(name, bound):
    return dominant_weights_in_box(get_datum(name), bound, regular=True)


def _path(name, i):
    d = get_datum(name)
    return d, enumerate_hyper_paths(d)[i]


def _long_a1xa1():
    c2 = get_datum("C2")
    return c2, subdatum(c2, [(2, 0), (-2, 0), (0, 2), (0, -2)])


def test_coset_examples():
    c2, h = _long_a1xa1()
    assert [w.label() for w in coset_reps_omega(c2, c2)] == ["e"]
    assert len(coset_reps_omega(c2, h)) == 2
    assert len(coset_reps_omega(c2, torus_subdatum(c2))) == 8


@pytest.mark.parametrize("name,i", PATHS)
def test_coset_counts_match_group_orders(name, i):
    d, p = _path(name, i)
    for g, h in zip(p.groups, p.groups[1:]):
        og = len(oracles.weyl_matrices(g.simple_roots, g.simple_coroots, g.rank))
        oh = len(oracles.weyl_matrices(h.simple_roots, h.simple_coroots, h.rank)) if h.simple_roots else 1
        reps = coset_reps_omega(g, h)
        assert len(reps) == og // oh
        # distinct cosets: no two representatives differ by an element of W_H
        wh = {w.matrix for w in weyl_group(h)}
        for a in reps:
            for b in reps:
                if a != b:
                    prod = la.matmul(a.matrix, la.inverse(b.matrix))
                    assert tuple(tuple(int(x) for x in r) for r in prod) not in wh


def test_transfer_weight_examples():
    c2, h = _long_a1xa1()
    e = weyl_group(c2)[0]
    assert transfer_weight(c2, c2, (2, 1), e, (0, 0)) == (2, 1)
    t = torus_subdatum(c2)
    for w in weyl_group(c2):
        assert transfer_weight(c2, t, (2, 1), w, (0, 0)) == w.act(la.add((2, 1), c2.rho))
    assert rho_prime(c2, h) == (1, 0)
    for w in coset_reps_omega(c2, h):
        out = transfer_weight(c2, h, (0, 0), w, (0, 0))
        assert out == la.sub(w.act(c2.rho), h.rho)
        assert h.is_dominant(out)


def test_ep_transfer_identity_and_count():
    c2, h = _long_a1xa1()
    same = ep_transfer(c2, c2, (2, 1))
    assert [(t.weight, t.sign) for t in same.terms] == [((2, 1), 1)]
    assert len(ep_transfer(c2, h, (2, 1))) == 2
    with pytest.raises(NotRegular):
        ep_transfer(c2, h, (1, 1))


def test_mu_star():
    c2, h = _long_a1xa1()
    assert mu_star_default(c2, c2) == (0, 0)
    assert mu_star_default(c2, h) == (0, 0)
    with pytest.raises(InvalidMuStar):
        check_mu_star(c2, h, (1, 0))
    so5 = get_datum("SO5")
    long_roots = subdatum(so5, [(1, 1), (-1, -1), (1, -1), (-1, 1)])
    with pytest.raises(MuStarAmbiguous):
        mu_star_default(so5, long_roots)
    u3 = get_datum("U3")
    h3 = enumerate_endoscopic(u3)[0].h_datum
    m = mu_star_default(u3, h3)
    assert not la.is_integral(rho_prime(u3, h3))
    assert check_mu_star(u3, h3, m) == m


@pytest.mark.parametrize("name,i", PATHS)
@settings(max_examples=10)
@given(data=st.data())
def test_pseudo_transfer_invariants(name, i, data):
    d, p = _path(name, i)
    mu = data.draw(st.sampled_from(_regular(name, 7)))
    kappa = {w.label(): data.draw(st.fractions(0, 1, max_denominator=12)) for w in weyl_group(d)}
    bars = tuple(data.draw(st.fractions(0, 1, max_denominator=12)) for _ in range(len(p)))
    ctx = TransferContext.default(p, kappa, bars)
    comb = pseudo_transfer(d, p, mu, 0, ctx)
    assert len(comb) == expected_term_count(p)
    for t in comb.terms:
        assert p.terminal.is_dominant_regular(t.weight)
        assert n_value(p.terminal, t.weight) >= n_value(d, mu)
        assert abs(abs(t.coefficient()) - 1) < 1e-12
    assert len(xi_set(d, p, mu, ctx)) <= expected_term_count(p)


def test_length_one_path_matches_ep_transfer():
    d, p = _path("Sp4", 0)
    pt = pseudo_transfer(d, p, (2, 1))
    ep = ep_transfer(d, p.terminal, (2, 1))
    assert [(t.weight, t.sign) for t in pt.terms] == [(t.weight, t.sign) for t in ep.terms]
    assert all(t.kappa_tag.startswith("kappa[") for t in pt.terms)


def test_omega0_changes_only_kappa_tags():
    d, p = _path("G2", 0)
    a = pseudo_transfer(d, p, (1, 1), 0)
    b = pseudo_transfer(d, p, (1, 1), 3)
    assert [(t.weight, t.sign) for t in a.terms] == [(t.weight, t.sign) for t in b.terms]
    assert [t.kappa_tag for t in a.terms] != [t.kappa_tag for t in b.terms]


def test_two_step_terms():
    d, p = _path("SO7", 1)
    comb = pseudo_transfer(d, p, (3, 2, 1))
    assert len(comb) == 6
    assert all(t.scale_tag.startswith("kbar[") for t in comb.terms)


def test_atlas_rows():
    d, p = _path("Sp4", 0)
    rows = transfer_atlas(d, p, (2, 1))
    assert [(r.weight, r.sign, r.dim) for r in rows] == [((3, 2), 1, 12), ((3, -2), -1, 12)]
    # dim_G(2,1) = 16 and m_G(2,1) = 2 by the Weyl formula
    assert dimension_ratio(d, p, (2, 1)) == Fraction(12, 16) * 2
