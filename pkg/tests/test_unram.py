from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from endowb import _linalg as la
from endowb.catalog import get_datum
from endowb.endoscopy import enumerate_endoscopic, enumerate_hyper_paths
from endowb.qpoly import QPoly, TwistedPoly
from endowb.reps import branch
from endowb.rootdatum import NotSubdatum, norm_std
from endowb.satake import dominant_coweights, project_Q
from endowb.unram import (CentralTwist, OrderViolation, WindowTooSmall, ZExtensionData, a_coefficient,
                          eta_character, leading_coefficient, pullback_b_eta, tau0_transfer_zext, tau_transfer,
                          transfer_composite, twist_stripped)

T = CentralTwist(get_datum("GSp4"), (Fraction(1, 8), 0, 0))
ZETA = la.vec((2, 1, 1))
ONE_T = TwistedPoly.lift(QPoly.const(1))


def _endo(name, i=0):
    d = get_datum(name)
    return d, enumerate_endoscopic(d)[i].h_datum


def test_twist_must_be_root_orthogonal():
    with pytest.raises(ValueError):
        CentralTwist(get_datum("GSp4"), (0, Fraction(1, 3), 0))


def test_pullback_examples():
    d = get_datum("Sp4")
    pb = pullback_b_eta(d, d, (1, 1))
    assert {nu: (e.c, e.rotation) for nu, e in pb.items()} == {(1, 1): (1, 0)}
    _, h = _endo("Sp4")
    pb = pullback_b_eta(d, h, (2, 1))
    assert {nu: e.c for nu, e in pb.items()} == branch(d.dual(), h.dual(), (2, 1))
    assert all(e.exact for e in pb.values())
    with pytest.raises(NotSubdatum):
        pullback_b_eta(d, get_datum("SO5"), (0, 0))


def test_pullback_central_shift():
    g, h = _endo("GSp4")
    for mu in dominant_coweights(g, 2):
        base = pullback_b_eta(g, h, mu, T)
        shifted = pullback_b_eta(g, h, la.add(mu, ZETA), T)
        for nu, e in base.items():
            s = shifted[la.add(nu, ZETA)]
            assert s.c == e.c
            assert s.rotation == (e.rotation + T.value(ZETA)) % 1


def test_a_coefficient_base_cases():
    g, h = _endo("Sp4")
    assert tau_transfer(g, h, (0, 0)).terms == {(0, 0): ONE_T}
    assert leading_coefficient(g, h, (0, 0)) == ONE_T
    with pytest.raises(OrderViolation):
        a_coefficient(g, h, (1, 0), (1, 1))


@pytest.mark.parametrize("name", ["Sp4", "G2", "A2", "GL2"])
def test_identity_transfer(name):
    d = get_datum(name)
    for lam in dominant_coweights(d, 2):
        assert tau_transfer(d, d, lam).terms == {lam: ONE_T}


def test_ramified_is_zero():
    g, h = _endo("Sp4")
    assert len(tau_transfer(g, h, (1, 0), ramified=True)) == 0


@pytest.mark.parametrize("name", ["Sp4", "SO5", "G2"])
def test_transfer_support_and_truncation(name):
    g = get_datum(name)
    for e in enumerate_endoscopic(g):
        h = e.h_datum
        for lam in dominant_coweights(g, 3):
            out = tau_transfer(g, h, lam)
            kappa = norm_std(g.dual(), lam)
            for xi in out.support():
                assert g.dual().leq(xi, lam)
                assert norm_std(h.dual(), xi) <= kappa


def test_twisted_modulus_matches_untwisted():
    g, h = _endo("GSp4")
    for lam in dominant_coweights(g, 1):
        plain = tau_transfer(g, h, lam)
        twisted = tau_transfer(g, h, lam, T)
        for xi, v in twisted.items():
            r, p = v.single_rotation()
            assert r == T.value(xi)
            assert p == twist_stripped(plain[xi])


def test_central_covariance():
    g, h = _endo("GSp4")
    for lam in dominant_coweights(g, 1):
        a = tau_transfer(g, h, lam, T)
        b = tau_transfer(g, h, la.add(lam, ZETA), T)
        assert b.terms == {la.add(k, ZETA): v.rotate(T.value(ZETA)) for k, v in a.terms.items()}


def test_eta_character():
    g = get_datum("GSp4")
    triv = CentralTwist.trivial(g)
    assert eta_character(triv, (3, 1, 2)) == 0
    for c in g.positive_coroots:
        assert eta_character(T, c) == 0


@given(st.tuples(*[st.integers(-4, 4)] * 3), st.tuples(*[st.integers(-4, 4)] * 3))
def test_eta_character_additive_and_q_invariant(lam, mu):
    assert eta_character(T, la.add(lam, mu)) == (eta_character(T, lam) + eta_character(T, mu)) % 1
    g = T.datum
    if project_Q(g, lam) == project_Q(g, mu):
        assert eta_character(T, lam) == eta_character(T, mu)


def test_composite_along_two_step_path():
    d = get_datum("SO7")
    p = enumerate_hyper_paths(d)[1]
    g, h1, h2 = p.groups
    for lam in dominant_coweights(d, 2):
        direct = tau_transfer(g, h2, lam)
        assert transfer_composite(p.groups, lam) == direct


def test_zext_windows():
    trivial = tau0_transfer_zext(ZExtensionData(2))
    assert trivial.terms == (((0, 0), 0),) and not trivial.truncated
    z = ZExtensionData(3, ((1, 1, 0),), (0,))
    w = tau0_transfer_zext(z, radius=2)
    assert len(w) == 5 and w.truncated and all(c == 0 for _, c in w.terms)
    z = ZExtensionData(2, ((0, 1),), (Fraction(1, 3),))
    w = dict(tau0_transfer_zext(z, radius=1).terms)
    assert w == {(0, 1): Fraction(1, 3), (0, -1): Fraction(2, 3), (0, 0): 0}
    with pytest.raises(WindowTooSmall):
        tau0_transfer_zext(z, radius=0)
    with pytest.raises(ValueError):
        ZExtensionData(2, ((0, 1),), ())
