from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from endowb import _linalg as la
from endowb.catalog import get_datum
from endowb.qpoly import ONE, QPoly
from endowb.satake import (BasisSingular, CutoffTooLarge, HeckeElement, NotSplit, b_matrix, chi_basis_element,
                           d_matrix, dominant_coweights, is_identity, norm_B, project_Q, satake_coefficient,
                           satake_matrices, truncated_algebra)
from endowb.rootdatum import weyl_group

import oracles


def test_norm_examples():
    a1 = get_datum("A1")
    assert norm_B(a1, (0,)) == 0
    for n in range(5):
        assert norm_B(a1, (n,)) == n
    with pytest.raises(BasisSingular):
        norm_B(a1, (1,), basis=[(0,)])


@given(st.tuples(st.integers(-5, 5), st.integers(-5, 5)))
def test_c2_norms_under_two_bases(lam):
    c2 = get_datum("C2")
    a = norm_B(c2, lam)
    b = norm_B(c2, lam, basis=c2.simple_coroots)
    assert a <= 4 * b and b <= 4 * a


def test_projection():
    g = get_datum("GSp4")
    zeta = (2, 1, 1)
    assert project_Q(g, zeta) == la.scale(g.weyl_order, zeta)
    for c in g.positive_coroots:
        assert project_Q(g, c) == (0, 0, 0)
    a2 = get_datum("A2")
    p = project_Q(a2, (1, 0))
    assert all(la.dot(p, a) == 0 for a in a2.roots)


def test_chi_basis_element():
    a1 = get_datum("A1")
    assert chi_basis_element(a1, (0,)).terms == {(0,): ONE}
    assert chi_basis_element(a1, (1,)).terms == {(1,): ONE, (0,): ONE}
    for lam in dominant_coweights(get_datum("Sp4"), 3):
        assert chi_basis_element(get_datum("Sp4"), lam)[lam] == ONE
    with pytest.raises(NotSplit):
        chi_basis_element(get_datum("U3"), (0, 0))


def test_truncations():
    a1 = get_datum("A1")
    assert truncated_algebra(a1, 3) == [(0,), (1,), (2,), (3,)]
    assert truncated_algebra(a1, 0) == [(0,)]
    g = get_datum("GSp4")
    shifted = truncated_algebra(g, 0, central=[(2, 1, 1)])
    assert shifted == sorted([(0, 0, 0), (2, 1, 1), (-2, -1, -1)], key=lambda v: (sum(abs(x) for x in v), v))
    sp4 = get_datum("Sp4")
    prev = set()
    for k in range(4):
        cur = set(truncated_algebra(sp4, k))
        assert prev <= cur
        for lam in cur:
            assert all(norm_B(sp4, w.act_coweight(lam)) == norm_B(sp4, lam) for w in weyl_group(sp4))
        prev = cur


@pytest.mark.parametrize("name,cutoff", [("A1", 4), ("A1_adj", 4), ("A2", 4), ("Sp4", 4), ("SO5", 3), ("G2", 3),
                                         ("GL2", 3)])
def test_triangular_inversion(name, cutoff):
    d = get_datum(name)
    b, dm = satake_matrices(d, cutoff)
    assert b.unitriangular and dm.unitriangular
    assert is_identity(b @ dm, b.index) and is_identity(dm @ b, b.index)


def test_guards():
    with pytest.raises(CutoffTooLarge):
        d_matrix(get_datum("GSp4"), 4, guard=10)
    with pytest.raises(NotSplit):
        b_matrix(get_datum("U3"), 2)


@pytest.mark.parametrize("name,group", [("A1", "SL2"), ("A1_adj", "PGL2")])
@pytest.mark.parametrize("q", [2, 3])
def test_rank_one_against_coset_counting(name, group, q):
    d = get_datum(name)
    cutoff = 4
    b = b_matrix(d, cutoff)
    for nu in range(cutoff + 1):
        counts = oracles.rank_one_coset_counts(group, nu, q, cutoff + nu + 1)
        for (lam,) in b.index:
            # #cosets = q^{<lam + nu, rho>} sum_mu b[lam, mu](q) dim V_mu(nu)
            total = sum((b[(lam,), mu].at_q(q) * oracles.rank_one_multiplicity(group, int(mu[0]), nu)
                         for mu in b.index), QPoly().at_q(q))
            scale = QPoly.q_power((lam + nu) * d.rho[0]).at_q(q)
            assert total * scale == counts.get(int(lam), 0)


def test_pgl2_second_generator():
    d = get_datum("A1_adj")
    b = b_matrix(d, 2)
    assert satake_coefficient(d, b, (2,), (2,)) == QPoly.q_power(1)
    assert satake_coefficient(d, b, (2,), (0,)) == QPoly.const(-1)


def test_hecke_elements_reject_non_dominant():
    with pytest.raises(ValueError):
        HeckeElement(get_datum("A1"), "tau", {(-1,): ONE})
