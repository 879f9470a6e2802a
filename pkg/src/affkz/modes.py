"""Vacuum-module mode oracle.

This module recomputes OPE coefficients without the field engine: states of
the vacuum module are words of creation modes J^a_m (m < 0) applied to |0>,
and the only inputs are the affine commutator

    [J^a_p, J^b_q] = f^{ab}_c J^c_{p+q} + k p kappa(a,b) delta_{p+q,0}

and the textbook mode expansion of a normal ordered product

    (x C)_(n) = sum_{j<=-1} x_(j) C_(n-1-j) + sum_{j>=0} C_(n-1-j) x_(j).

Everything is exact and symbolic in k.  `ope_coefficient(A, n, B)` returns
the state of A_(n)B and `state_of_field` maps an engine field to a state, so
the two pipelines can be compared term by term.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .scalars import Scalar, ZERO, ONE
from .ope import Field, word_weight

_F0 = Fraction(0)


def _add(dst, word, coeff):
    cur = dst.get(word)
    cur = coeff if cur is None else cur + coeff
    if cur.is_zero():
        dst.pop(word, None)
    else:
        dst[word] = cur


class VacuumModule:
    """Exact states over one Lie algebra: {mode word: Scalar}.

    A mode word is a tuple of (m, a) pairs with m < 0; the leftmost mode is
    applied last.  Words are kept sorted non-decreasingly in (m, a), which is
    a PBW basis of the vacuum module (swapping two creation modes only emits
    shorter words, never central terms, since m + m' < 0).
    """

    def __init__(self, algebra):
        self.algebra = algebra

    # -- canonical form -----------------------------------------------------

    def canonicalize(self, raw):
        out = {}
        for word, coeff in raw.items():
            for w2, c2 in self._sort_word(word).items():
                _add(out, w2, coeff * c2)
        return out

    def _sort_word(self, word):
        for i in range(len(word) - 1):
            x, y = word[i], word[i + 1]
            if x > y:
                acc = {}
                # swap: xy = yx + [x, y]
                base = word[:i] + (y, x) + word[i + 2:]
                for w2, c2 in self._sort_word(base).items():
                    _add(acc, w2, c2)
                m = x[0] + y[0]
                for c, v in self.algebra.bracket(x[1], y[1]).items():
                    shorter = word[:i] + ((m, c),) + word[i + 2:]
                    sc = Scalar.from_fraction(v)
                    for w2, c2 in self._sort_word(shorter).items():
                        _add(acc, w2, c2 * sc)
                return acc
        return {word: ONE}

    # -- single current modes ------------------------------------------------

    def apply_current(self, a, m, state):
        """J^a_m applied to a canonical state, result canonical."""
        out = {}
        for word, coeff in state.items():
            for w2, c2 in self._current_on_word(a, m, word).items():
                _add(out, w2, coeff * c2)
        return out

    def _current_on_word(self, a, m, word):
        if m < 0:
            return self._sort_word(((m, a),) + word)
        if not word:
            return {}
        out = {}
        (q, b), rest = word[0], word[1:]
        # commute past the first creation op
        if m + q == 0 and m != 0:
            kc = self.algebra.pair(a, b)
            if kc:
                sc = Scalar.k() * Scalar.from_fraction(kc * m)
                for w2, c2 in self._sort_word(rest).items():
                    _add(out, w2, c2 * sc)
        for c, v in self.algebra.bracket(a, b).items():
            sc = Scalar.from_fraction(v)
            for w2, c2 in self._current_on_word(c, m + q, rest).items():
                _add(out, w2, c2 * sc)
        for w2, c2 in self._current_on_word(a, m, rest).items():
            for w3, c3 in self._sort_word(((q, b),) + w2).items():
                _add(out, w3, c2 * c3)
        return out

    # -- composite field modes -------------------------------------------------

    def apply_field_word(self, fword, n, state):
        """(x1 (x2 (... xr)))_(n) applied to a state; fword uses engine atoms (p, a)."""
        if not fword:
            # identity field
            return dict(state) if n == -1 else {}
        (p, a), rest = fword[0], fword[1:]
        wrest = word_weight(rest)
        out = {}
        depth = max((-sum(m for m, _ in w) for w in state), default=0)
        # annihilation half: C_(n-1-j) x_(j), j >= 0
        for j in range(0, p + 1 + depth):
            mid = self._atom_mode(p, a, j, state)
            if not mid:
                continue
            for w2, c2 in self.apply_field_word(rest, n - 1 - j, mid).items():
                _add(out, w2, c2)
        # creation half: x_(j) C_(n-1-j), j <= -1; C_(q) kills states once
        # q - wrest + 1 exceeds their depth, bounding j from below
        j = -1
        jmin = n - wrest - depth
        while j >= jmin:
            mid = self.apply_field_word(rest, n - 1 - j, state)
            if mid:
                for w2, c2 in self._atom_mode(p, a, j, mid).items():
                    _add(out, w2, c2)
            j -= 1
        return out

    def _atom_mode(self, p, a, j, state):
        """(d^p J^a)_(j) on a state: (-1)^p j(j-1)...(j-p+1) J_{j-p}."""
        coef = Fraction(1)
        for t in range(p):
            coef *= -(j - t)
        if not coef:
            return {}
        res = self.apply_current(a, j - p, state)
        if coef != 1:
            sc = Scalar.from_fraction(coef)
            res = {w: c * sc for w, c in res.items()}
        return res

    # -- bridges to the engine ---------------------------------------------------

    def state_of_field(self, field):
        """Engine Field -> canonical state ((x C)) maps to x_(-1)state(C))."""
        out = {}
        for fword, coeff in field.terms.items():
            word = []
            norm = Fraction(1)
            for (p, a) in fword:
                word.append((-1 - p, a))
                norm *= math.factorial(p)
            for w2, c2 in self._sort_word(tuple(word)).items():
                _add(out, w2, coeff * c2 * Scalar.from_fraction(norm))
        return out

    def ope_coefficient(self, A, n, B):
        """State of A_(n)B for engine fields A, B, computed purely by modes."""
        out = {}
        stB = self.state_of_field(B)
        for fword, coeff in A.terms.items():
            for w2, c2 in self.apply_field_word(fword, n, stB).items():
                _add(out, w2, coeff * c2)
        return out

    def states_equal(self, s1, s2):
        if len(s1) != len(s2):
            return False
        return all(w in s2 and (s1[w] - s2[w]).is_zero() for w in s1)


def check_pair(A, B, regular_depth=0):
    """Compare every engine OPE coefficient of A(z)B(w) against the oracle.

    Returns (ok, report) where report lists each pole order checked.
    """
    from .ope import contract

    module = VacuumModule(A.algebra)
    res = contract(A, B, regular_depth=regular_depth)
    report = []
    ok = True
    top = A.max_weight() + B.max_weight()
    for m in range(top, -regular_depth - 1, -1):
        engine = res.field(m)
        oracle = module.ope_coefficient(A, m - 1, B)
        good = module.states_equal(module.state_of_field(engine), oracle)
        ok = ok and good
        report.append((m, good))
    return ok, report
