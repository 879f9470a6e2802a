"""Universal enveloping algebra with PBW normal form, plus the central
elements built from it: noncommutative pfaffians and their sums of squares
over so_N, and the cubic fully symmetric invariant over sl_N.

Monomials are tuples of basis indices; the normal form keeps indices
nondecreasing.  Coefficients are plain Fractions (no level variable is
needed at this finite-dimensional layer).
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .indexsets import IndexSetCombination, canon, combination_f_action

_F0 = Fraction(0)
_F1 = Fraction(1)


class UEA:
    """Enveloping algebra of one LieAlgebra, with a shared normal-form cache."""

    def __init__(self, algebra):
        self.algebra = algebra
        self._norm = {(): {(): _F1}}

    # -- normal form -----------------------------------------------------

    def normalize_word(self, word):
        """PBW normal form of a raw monomial, as {sorted word: Fraction}."""
        cached = self._norm.get(word)
        if cached is not None:
            return cached
        # find the first descent
        pos = None
        for i in range(len(word) - 1):
            if word[i] > word[i + 1]:
                pos = i
                break
        if pos is None:
            res = {word: _F1}
        else:
            x, y = word[pos], word[pos + 1]
            res = dict(self.normalize_word(word[:pos] + (y, x) + word[pos + 2 :]))
            for c, v in self.algebra.bracket(x, y).items():
                sub = self.normalize_word(word[:pos] + (c,) + word[pos + 2 :])
                for w, u in sub.items():
                    val = res.get(w, _F0) + v * u
                    if val:
                        res[w] = val
                    else:
                        res.pop(w, None)
        self._norm[word] = res
        return res

    def element(self, terms=None):
        return UEAElement(self, terms or {})

    def one(self):
        return UEAElement(self, {(): _F1})

    def generator(self, a):
        return UEAElement(self, {(a,): _F1})

    # -- so_N pfaffians -----------------------------------------------------

    def pfaffian(self, I):
        """Noncommutative pfaffian Pf F_I for an even index set I.

        (1 / (m! 2^m)) sum over permutations s of I of sgn(s)
        F_{s1 s2} ... F_{s(2m-1) s(2m)}.
        """
        if self.algebra.family != "so":
            raise ValueError("pfaffians live in U(so_N)")
        sign0, I = canon(I)
        if sign0 == 0 and len(I) > 0:
            raise ValueError("pfaffian of a repeated index set")
        if len(I) % 2:
            raise ValueError("pfaffian needs an even index set")
        if not I:
            return self.one()
        m = len(I) // 2
        coeff = Fraction(1, math.factorial(m) * 2**m)
        out = {}
        for perm in itertools.permutations(range(len(I))):
            s, _ = canon(perm)
            word = []
            for t in range(m):
                i, j = I[perm[2 * t]], I[perm[2 * t + 1]]
                g, idx = self.algebra.so_gen(i, j)
                s *= g
                word.append(idx)
            for w, v in self.normalize_word(tuple(word)).items():
                val = out.get(w, _F0) + s * coeff * v
                if val:
                    out[w] = val
                else:
                    out.pop(w, None)
        return UEAElement(self, out)

    def pfaffian_of_combination(self, combo):
        out = self.element()
        for I, c in combo.terms.items():
            out = out + self.pfaffian(I) * c
        return out

    def capelli(self, n):
        """Sum over |I| = n of (Pf F_I)^2; central in U(so_N) for even n."""
        if self.algebra.family != "so":
            raise ValueError("Capelli elements live in U(so_N)")
        if n % 2 or n < 2 or n > self.algebra.N:
            raise ValueError("need an even n with 2 <= n <= N")
        out = self.element()
        for I in itertools.combinations(range(1, self.algebra.N + 1), n):
            pf = self.pfaffian(I)
            out = out + pf * pf
        return out

    # -- sl_N cubic invariant --------------------------------------------------

    def gelfand_third(self):
        """d^{abc} x_a x_b x_c with all indices raised by the trace form."""
        if self.algebra.family != "sl":
            raise ValueError("the cubic invariant lives in U(sl_N)")
        out = {}
        for (a, b, c), v in self.algebra.d_raised().items():
            for w, u in self.normalize_word((a, b, c)).items():
                val = out.get(w, _F0) + v * u
                if val:
                    out[w] = val
                else:
                    out.pop(w, None)
        return UEAElement(self, out)


class UEAElement:
    """An element of U(g) in PBW normal form: {nondecreasing word: Fraction}."""

    __slots__ = ("uea", "terms")

    def __init__(self, uea, terms):
        self.uea = uea
        self.terms = {w: Fraction(c) for w, c in terms.items() if c}

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w, _F0) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return UEAElement(self.uea, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        return UEAElement(self.uea, {w: v * c for w, v in self.terms.items()} if c else {})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                for w, v in self.uea.normalize_word(w1 + w2).items():
                    val = out.get(w, _F0) + c1 * c2 * v
                    if val:
                        out[w] = val
                    else:
                        out.pop(w, None)
        return UEAElement(self.uea, out)

    __rmul__ = scale

    def commutator(self, other):
        return self * other - other * self

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, UEAElement) and self.terms == other.terms

    def is_central(self):
        """(True, None) if central, else (False, witness generator index)."""
        for a in range(self.uea.algebra.dim):
            if not self.commutator(self.uea.generator(a)).is_zero():
                return False, a
        return True, None

    def action_on_indexset(self, I):
        """Image of the wedge monomial e_I; the left factor of each
        monomial acts last.  Only defined over so_N."""
        if self.uea.algebra.family != "so":
            raise ValueError("index-set actions are defined over so_N")
        labels = self.uea.algebra.labels
        out = IndexSetCombination()
        for word, c in self.terms.items():
            combo = IndexSetCombination.basis(I)
            for g in reversed(word):
                combo = combination_f_action(labels[g], combo)
                if combo.is_zero():
                    break
            out = out.add(combo, c)
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        labels = self.uea.algebra.labels
        bits = []
        for w in sorted(self.terms):
            name = "*".join(str(labels[g]) for g in w) or "1"
            bits.append(f"{self.terms[w]}*{name}")
        return " + ".join(bits)
