"""Constructors for the named fields of the theory.

Currents, pfaffian fields, the quartic central field (sum of squared
pfaffian fields over 4-subsets), the cubic fully symmetric field over
sl_N together with its adjoint family, and the Sugawara stress tensor.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .indexsets import canon
from .ope import Field, nprod, nprod_chain
from .scalars import Scalar, ONE, K


def unit_field(algebra):
    return Field(algebra, {(): ONE})


def current(algebra, a):
    """J attached to basis element number a."""
    return Field(algebra, {((0, a),): ONE})


def current_combination(algebra, coeffs):
    """sum_a coeffs[a] * J_a, with Fraction or Scalar coefficients."""
    return Field(algebra, {((0, a),): c for a, c in coeffs.items()})


def raised_current(algebra, a):
    """J^a = kappa^{ab} J_b."""
    return current_combination(
        algebra, {b: algebra.pair_inv(a, b) for b in range(algebra.dim) if algebra.pair_inv(a, b)}
    )


def so_current(algebra, i, j):
    """The current of F_ij for arbitrary i != j (antisymmetric in i, j)."""
    sign, idx = algebra.so_gen(i, j)
    if sign == 0:
        return Field(algebra)
    return current(algebra, idx).scale(sign)


def pair_current(algebra, pair):
    return so_current(algebra, pair[0], pair[1])


def pf_field(algebra, I):
    """The pfaffian field Pf F_I(z): the normally ordered image of the
    noncommutative pfaffian, (1/(m! 2^m)) sum_s sgn(s) (F_{s1 s2} (F_{s3 s4} (...)))."""
    if algebra.family != "so":
        raise ValueError("pfaffian fields live over so_N")
    sign0, I = canon(I)
    if sign0 == 0 and I == ():
        pass
    if len(I) % 2:
        raise ValueError("pfaffian fields need an even index set")
    if not I:
        return unit_field(algebra)
    if sign0 == 0:
        raise ValueError("pfaffian of a repeated index set")
    m = len(I) // 2
    coeff = Fraction(1, math.factorial(m) * 2**m)
    out = Field(algebra)
    for perm in itertools.permutations(range(len(I))):
        s, _ = canon(perm)
        factors = []
        for t in range(m):
            factors.append(pair_current(algebra, (I[perm[2 * t]], I[perm[2 * t + 1]])))
        out = out + nprod_chain(*factors).scale(s * coeff)
    return out


def pf_field_combination(algebra, combo):
    """Pfaffian field of an IndexSetCombination (linear in the label)."""
    out = Field(algebra)
    for I, c in combo.terms.items():
        out = out + pf_field(algebra, I).scale(c)
    return out


def c4_field(algebra):
    """sum over 4-subsets I of (Pf F_I (Pf F_I)): the quartic central field."""
    if algebra.family != "so":
        raise ValueError("the quartic central field lives over so_N")
    if algebra.N < 4:
        raise ValueError("need N >= 4")
    out = Field(algebra)
    for I in itertools.combinations(range(1, algebra.N + 1), 4):
        pf = pf_field(algebra, I)
        out = out + nprod(pf, pf)
    return out


def gelfand_fields(algebra):
    """(W, [W^a]) over sl_N.

    W = d^{abc} (J_a (J_b J_c)) and W^a = (1/2) d^{abc} (J_b J_c), with the
    trace-form d tensor and all indices raised by the inverse trace form.
    """
    if algebra.family != "sl":
        raise ValueError("the cubic field lives over sl_N")
    dr = algebra.d_raised()
    W = Field(algebra)
    for (a, b, c), v in sorted(dr.items()):
        W = W + nprod_chain(
            current(algebra, a), current(algebra, b), current(algebra, c)
        ).scale(v)
    Was = []
    for a in range(algebra.dim):
        Wa = Field(algebra)
        for (a2, b, c), v in sorted(dr.items()):
            if a2 == a:
                Wa = Wa + nprod(current(algebra, b), current(algebra, c)).scale(
                    Fraction(1, 2) * v
                )
        Was.append(Wa)
    return W, Was


def sugawara_field(algebra):
    """T = kappa^{ab} (J_a J_b) / (2(k + g)).

    g is the effective Casimir constant of the chosen form (see
    LieAlgebra.casimir_constant); using the table-derived value rather than
    the abstract dual Coxeter number keeps T a Virasoro field for any sign
    convention of kappa.
    """
    out = Field(algebra)
    for a in range(algebra.dim):
        for b in range(algebra.dim):
            kab = algebra.pair_inv(a, b)
            if kab:
                out = out + nprod(current(algebra, a), current(algebra, b)).scale(kab)
    denom = K + Scalar.from_fraction(algebra.casimir_constant())
    return out.scale(ONE / (denom * Scalar.from_int(2)))


def normalization_display(N):
    """Display-only metadata for the front normalization of the quartic
    equation: sqrt(N / (18 (k+N)^2 (N+2k) (N^2-4))).  The square root is
    not a Scalar; this string is never used in computations."""
    return f"sqrt({N}/(18*(k+{N})^2*({N}+2k)*({N}^2-4)))"
