import itertools

import pytest

from affkz.liealg import so_algebra, sl_algebra
from affkz.uea import UEA
from affkz.indexsets import IndexSetCombination, combination_f_action


@pytest.fixture(scope="module")
def U5():
    return UEA(so_algebra(5))


@pytest.fixture(scope="module")
def U3():
    return UEA(sl_algebra(3))


def test_pbw_normalization(U5):
    # x*y = y*x + [x,y] for every generator pair, after normalization
    alg = U5.algebra
    for a in range(alg.dim):
        for b in range(a + 1, alg.dim):
            x, y = U5.generator(a), U5.generator(b)
            lhs = x * y - y * x
            rhs = U5.element()
            for c, v in alg.bracket(a, b).items():
                rhs = rhs + U5.generator(c).scale(v)
            assert (lhs - rhs).is_zero()


def test_pfaffian_three_terms(U5):
    pf = U5.pfaffian((1, 2, 3, 4))
    # F_12 F_34 - F_13 F_24 + F_14 F_23, each summand a two-letter word
    assert len(pf.terms) == 3
    assert all(len(w) == 2 for w in pf.terms)
    alg = U5.algebra
    w = tuple(sorted((alg.so_gen(1, 2)[1], alg.so_gen(3, 4)[1])))
    assert pf.terms[w] == 1


def test_pfaffian_index_order_canonicalized(U5):
    # the index set is canonicalized before expansion
    a = U5.pfaffian((1, 2, 3, 4))
    b = U5.pfaffian((2, 1, 3, 4))
    assert (a - b).is_zero()


def test_action_on_indexset_matches_wedge_action(U5):
    alg = U5.algebra
    el = U5.generator(alg.so_gen(2, 4)[1]) * U5.generator(alg.so_gen(1, 2)[1])
    # the left factor acts last
    direct = el.action_on_indexset((1, 2, 3))
    step = combination_f_action((1, 2), IndexSetCombination.basis((1, 2, 3)))
    step = combination_f_action((2, 4), step)
    assert direct == step


def test_capelli_two_central(U5):
    ok, witness = U5.capelli(2).is_central()
    assert ok, witness


def test_gelfand_third_central(U3):
    ok, witness = U3.gelfand_third().is_central()
    assert ok, witness


def test_commutator_antisymmetry(U5):
    x = U5.pfaffian((1, 2, 3, 4))
    y = U5.generator(3)
    assert (x.commutator(y) + y.commutator(x)).is_zero()
