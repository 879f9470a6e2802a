import itertools
from fractions import Fraction

from affkz.indexsets import (canon, set_minus, ordered_pair_partitions,
                             IndexSetCombination, f_action,
                             combination_f_action)


def test_canon_signs():
    assert canon((1, 2, 3, 4)) == (1, (1, 2, 3, 4))
    assert canon((2, 1, 3, 4)) == (-1, (1, 2, 3, 4))
    assert canon((1, 1, 2, 3))[0] == 0


def test_set_minus():
    sign, rest = set_minus((1, 2, 3, 4), (1, 2))
    assert sign == 1 and rest == (3, 4)
    sign, rest = set_minus((1, 2, 3, 4), (1, 3))
    assert sign == -1 and rest == (2, 4)
    assert set_minus((1, 2, 3, 4), (1, 5))[0] == 0


def test_ordered_pair_partitions():
    parts = ordered_pair_partitions((1, 2, 3, 4))
    assert len(parts) == 6
    # each ordered (pair, pair) split appears once and signs match set_minus
    seen = set()
    for I1, I2, s in parts:
        assert set(I1) | set(I2) == {1, 2, 3, 4} and not set(I1) & set(I2)
        seen.add((I1, I2))
        assert s == set_minus((1, 2, 3, 4), I1)[0]
    assert len(seen) == 6


def test_f_action_is_a_derivation():
    # F(e_X wedge e_Y) = F(e_X) wedge e_Y + e_X wedge F(e_Y)
    pair = (2, 5)
    X, Y = (1, 2), (3, 5)
    whole = f_action(pair, X + Y)
    split = IndexSetCombination()
    for Z, c in f_action(pair, X).terms.items():
        split = split.add(IndexSetCombination.basis(Z + Y), c)
    for Z, c in f_action(pair, Y).terms.items():
        split = split.add(IndexSetCombination.basis(X + Z), c)
    assert whole == split


def test_f_action_antisymmetry():
    for I in itertools.combinations(range(1, 6), 3):
        a = f_action((1, 4), I)
        b = f_action((4, 1), I)
        assert a == b.scale(-1)


def test_combination_action_brackets():
    # [F_12, F_23] acts as F_13 on wedges
    for I in itertools.combinations(range(1, 6), 2):
        base = IndexSetCombination.basis(I)
        ab = combination_f_action((1, 2), combination_f_action((2, 3), base))
        ba = combination_f_action((2, 3), combination_f_action((1, 2), base))
        assert ab.add(ba, -1) == combination_f_action((1, 3), base)
