import itertools
from fractions import Fraction

import pytest

from affkz.liealg import so_algebra, sl_algebra


@pytest.fixture(scope="module")
def so5():
    return so_algebra(5)


@pytest.fixture(scope="module")
def sl3():
    return sl_algebra(3)


def _bracket_vec(alg, x, y):
    out = {}
    for a, ca in x.items():
        for b, cb in y.items():
            for c, v in alg.bracket(a, b).items():
                out[c] = out.get(c, Fraction(0)) + ca * cb * v
    return {c: v for c, v in out.items() if v}


def test_jacobi(so5, sl3):
    for alg in (so5, sl3):
        dim = alg.dim
        # spot-check a spread of triples rather than all dim^3
        triples = list(itertools.islice(
            itertools.combinations(range(dim), 3), 0, None, 7))
        for a, b, c in triples:
            ea, eb, ec = ({a: Fraction(1)}, {b: Fraction(1)}, {c: Fraction(1)})
            s = {}
            for x, y, z in ((ea, eb, ec), (eb, ec, ea), (ec, ea, eb)):
                for idx, v in _bracket_vec(alg, x, _bracket_vec(alg, y, z)).items():
                    s[idx] = s.get(idx, Fraction(0)) + v
            assert all(v == 0 for v in s.values())


def test_form_invariance(so5, sl3):
    # kappa([a,b], c) + kappa(b, [a,c]) = 0
    for alg in (so5, sl3):
        for a in range(0, alg.dim, 3):
            for b in range(alg.dim):
                for c in range(b, alg.dim, 2):
                    lhs = sum(v * alg.pair(d, c) for d, v in alg.bracket(a, b).items())
                    rhs = sum(v * alg.pair(b, d) for d, v in alg.bracket(a, c).items())
                    assert lhs + rhs == 0


def test_pair_inverse(so5, sl3):
    for alg in (so5, sl3):
        for a in range(alg.dim):
            for c in range(alg.dim):
                s = sum(alg.pair(a, b) * alg.pair_inv(b, c) for b in range(alg.dim))
                assert s == (1 if a == c else 0)


def test_so_gen_sign(so5):
    for i, j in itertools.combinations(range(1, 6), 2):
        s1, a1 = so5.so_gen(i, j)
        s2, a2 = so5.so_gen(j, i)
        assert a1 == a2 and s1 == -s2 == 1


def test_d_tensor_symmetric_traceless(sl3):
    dr = sl3.d_raised()
    for (a, b, c), v in dr.items():
        for perm in itertools.permutations((a, b, c)):
            assert dr.get(perm, 0) == v
    # contraction with the form vanishes: kappa_{ab} d^{abc} = 0
    for c in range(sl3.dim):
        tot = sum(sl3.pair(a, b) * dr.get((a, b, c), Fraction(0))
                  for a in range(sl3.dim) for b in range(sl3.dim))
        assert tot == 0


def test_casimir_constant_matches_adjoint(so5, sl3):
    # 2g delta_c^e = kappa^{ab} f_{ca}^d f_{db}^e, checked on the diagonal
    for alg in (so5, sl3):
        g = alg.casimir_constant()
        c = 0
        tot = Fraction(0)
        for a in range(alg.dim):
            for b in range(alg.dim):
                kab = alg.pair_inv(a, b)
                if not kab:
                    continue
                for d, v1 in alg.bracket(c, a).items():
                    tot += kab * v1 * alg.bracket(d, b).get(c, Fraction(0))
        assert tot == 2 * g
