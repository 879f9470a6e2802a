"""Signed index-set combinatorics for wedge monomials e_{i1} ^ ... ^ e_{im}.

Index sets are stored as strictly increasing tuples of 1-based integers.
Reordering a sequence into that form contributes the sign of the sorting
permutation; a repeated index kills the monomial.  These are exactly the
rules needed for noncommutative-pfaffian bookkeeping.
"""

from __future__ import annotations

from fractions import Fraction

_F1 = Fraction(1)


def canon(seq):
    """(sign, sorted tuple); sign is 0 when an index repeats."""
    seq = tuple(seq)
    if len(set(seq)) != len(seq):
        return 0, ()
    inv = 0
    n = len(seq)
    for a in range(n):
        for b in range(a + 1, n):
            if seq[a] > seq[b]:
                inv += 1
    return (-1) ** inv, tuple(sorted(seq))


def perm_sign(seq):
    sign, _ = canon(seq)
    return sign


def split_sign(I, I1, I2):
    """Sign (-1)^(I1, I2) of the shuffle putting I1 then I2 back into I.

    Raises ValueError unless I = I1 ⊔ I2 as sets.
    """
    I, I1, I2 = tuple(I), tuple(I1), tuple(I2)
    if sorted(I1 + I2) != sorted(I) or len(set(I1 + I2)) != len(I1) + len(I2):
        raise ValueError(f"{I1} and {I2} do not partition {I}")
    sign, _ = canon(I1 + I2)
    base, _ = canon(I)
    return sign * base


def set_minus(I, J):
    """Signed removal: I \\ J with the sign (-1)^(J, I\\J); (0, ()) if J ⊄ I."""
    I, J = tuple(I), tuple(J)
    if not set(J) <= set(I):
        return 0, ()
    rest = tuple(i for i in I if i not in set(J))
    sJ, Jc = canon(J)
    sI, Ic = canon(I)
    if sJ == 0 or sI == 0:
        return 0, ()
    s = split_sign(Ic, Jc, rest)
    return sJ * sI * s, rest


def ordered_pair_partitions(I):
    """All ordered splittings I = I1 ⊔ I2 into two 2-subsets, with signs.

    Yields (I1, I2, sign) with sign = (-1)^(I1, I2).  A 4-set yields six.
    """
    I = tuple(sorted(I))
    if len(I) != 4:
        raise ValueError("pair partitions are defined for 4-element sets")
    seen = []
    for a in range(4):
        for b in range(a + 1, 4):
            I1 = (I[a], I[b])
            I2 = tuple(x for x in I if x not in I1)
            seen.append((I1, I2, split_sign(I, I1, I2)))
    return seen


class IndexSetCombination:
    """Formal Q-linear combination of index sets (wedge monomials)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for I, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[tuple(I)] = c

    @classmethod
    def basis(cls, I, coeff=1):
        sign, Ic = canon(I)
        if sign == 0:
            return cls()
        return cls({Ic: Fraction(coeff) * sign})

    def add(self, other, coeff=1):
        out = dict(self.terms)
        coeff = Fraction(coeff)
        for I, c in other.terms.items():
            v = out.get(I, Fraction(0)) + c * coeff
            if v:
                out[I] = v
            else:
                out.pop(I, None)
        res = IndexSetCombination()
        res.terms = out
        return res

    def scale(self, coeff):
        coeff = Fraction(coeff)
        res = IndexSetCombination()
        if coeff:
            res.terms = {I: c * coeff for I, c in self.terms.items()}
        return res

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, IndexSetCombination) and self.terms == other.terms

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for I, c in sorted(self.terms.items()):
            bits.append(f"{c}*{{{','.join(map(str, I))}}}")
        return " + ".join(bits)


def f_action(pair, I):
    """Action of F_ij on the wedge monomial e_I, as an IndexSetCombination.

    F_ij e_j = e_i, F_ij e_i = -e_j, zero on everything else, extended as a
    derivation over the wedge factors.
    """
    i, j = pair
    if i == j:
        raise ValueError("F_ii vanishes identically")
    if i > j:
        return f_action((j, i), I).scale(-1)
    out = IndexSetCombination()
    I = tuple(I)
    for pos, idx in enumerate(I):
        if idx == j:
            repl = I[:pos] + (i,) + I[pos + 1 :]
            out = out.add(IndexSetCombination.basis(repl))
        elif idx == i:
            repl = I[:pos] + (j,) + I[pos + 1 :]
            out = out.add(IndexSetCombination.basis(repl, -1))
    return out


def combination_f_action(pair, combo):
    out = IndexSetCombination()
    for I, c in combo.terms.items():
        out = out.add(f_action(pair, I), c)
    return out
