"""Field-level OPE engine over the vacuum sector of an affine current algebra.

A Field is an exact linear combination of canonical normally ordered words

    (x1 (x2 (... xn))),   xi = d^{p_i} J^{a_i},

stored right-nested with the atoms sorted non-increasingly by
(derivative order, generator index).  Sorted words are linearly
independent (their leading mode monomials are distinct), so equality of
fields is literal equality of the term maps.

Everything reduces to one primitive: apply(A, n, B), the n-th product of
two fields in the standard index convention

    A(z) B(w) = sum_n  (A_(n) B)(w) (z - w)^(-n-1),

so n >= 0 indexes the pole of order n + 1, n = -1 is the normal product,
and A_(-1-m) B = ((d^m A / m!) B).  The recursion is seeded by the current
OPE

    J^a(z) J^b(w) = k kappa(a,b)/(z-w)^2 + f_ab^c J^c(w)/(z-w)

and driven by three exact identities:

  * derivative shifts  (dA)_(n) = -n A_(n-1)  and
    A_(n) dB = d(A_(n) B) + n A_(n-1) B;
  * the commutator expansion
    [A_(m), B_(n)] = sum_j C(m, j) (A_(j) B)_(m+n-j),
    used both to contract against a composite and to sort words;
  * the composite expansion
    (A_(-1) B)_(n) = sum_{j>=0} A_(-1-j) B_(n+j) + sum_{j>=0} B_(n-1-j) A_(j).

The public helpers translate between this index convention and pole
orders / physics modes.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .scalars import Scalar, ZERO, ONE, K

# An atom is (p, a): p-th derivative of the current attached to basis index a.
# A word is a tuple of atoms, canonical when non-increasing; () is the identity.


def _binom(n, j):
    """Binomial coefficient C(n, j) for integer n (possibly negative), j >= 0."""
    num = 1
    for t in range(j):
        num *= n - t
    return Fraction(num, math.factorial(j))


class Field:
    """Exact combination of canonical normally ordered words of currents."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms=None):
        self.algebra = algebra
        self.terms = {}
        if terms:
            for w, c in terms.items():
                if isinstance(c, (int, Fraction)):
                    c = Scalar.from_fraction(c)
                if not c.is_zero():
                    self.terms[w] = c

    # -- ring-ish operations ------------------------------------------------

    def __add__(self, other):
        _same(self, other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w, ZERO) + c
            if v.is_zero():
                out.pop(w, None)
            else:
                out[w] = v
        return Field(self.algebra, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        if isinstance(c, (int, Fraction)):
            c = Scalar.from_fraction(c)
        if c.is_zero():
            return Field(self.algebra)
        return Field(self.algebra, {w: v * c for w, v in self.terms.items()})

    def __neg__(self):
        return self.scale(-1)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and self.algebra is other.algebra
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((id(self.algebra), tuple(sorted(self.terms.items(), key=lambda t: t[0]))))

    def weight(self):
        """Conformal weight; requires homogeneity (identity has weight 0)."""
        ws = {word_weight(w) for w in self.terms} or {0}
        if len(ws) > 1:
            raise ValueError(f"inhomogeneous field of weights {sorted(ws)}")
        return ws.pop()

    def max_weight(self):
        return max((word_weight(w) for w in self.terms), default=0)

    def words(self):
        return sorted(self.terms.items())

    def __repr__(self):
        from .printer import field_str

        return field_str(self)


def word_weight(w):
    return sum(1 + p for p, _a in w)


def _same(a, b):
    if a.algebra is not b.algebra:
        raise ValueError("fields live over different algebras")


# -- the engine ----------------------------------------------------------


class Engine:
    """Per-algebra memo tables for the word-level recursion."""

    def __init__(self, algebra):
        self.alg = algebra
        self._apply = {}

    # dict-of-words arithmetic (terms maps, not Field wrappers)

    @staticmethod
    def _acc(dst, src, coeff=ONE):
        if isinstance(coeff, (int, Fraction)):
            coeff = Scalar.from_fraction(coeff)
        if coeff.is_zero():
            return
        for w, c in src.items():
            v = dst.get(w, ZERO) + c * coeff
            if v.is_zero():
                dst.pop(w, None)
            else:
                dst[w] = v

    # -- atoms against atoms ----------------------------------------------

    def atom_atom(self, x, n, y):
        """x_(n) y for single atoms; n may be any integer >= -1 here, and
        derivative reduction can push it lower (handled via nprod)."""
        p, a = x
        q, b = y
        if p:
            if n == 0:
                return {}
            out = {}
            self._acc(out, self.atom_atom((p - 1, a), n - 1, y), Fraction(-n))
            return out
        if q:
            out = {}
            inner = self.atom_atom((0, a), n, (q - 1, b))
            self._acc(out, self.deriv_terms(inner))
            if n:
                self._acc(out, self.atom_atom((0, a), n - 1, (q - 1, b)), Fraction(n))
            return out
        # bare currents
        if n >= 2:
            return {}
        if n == 1:
            kab = self.alg.pair(a, b)
            return {(): K * Scalar.from_fraction(kab)} if kab else {}
        if n == 0:
            return {((0, c),): Scalar.from_fraction(v) for c, v in self.alg.bracket(a, b).items()}
        # normal products and below go through the generic path
        return self.apply_words(((0, a),), n, ((0, b),))

    # -- the master recursion ------------------------------------------------

    def apply_words(self, A, n, B):
        key = (A, n, B)
        hit = self._apply.get(key)
        if hit is not None:
            return hit
        res = self._apply_words(A, n, B)
        self._apply[key] = res
        return res

    def _apply_words(self, A, n, B):
        if not A:
            return {B: ONE} if n == -1 else {}
        if not B:
            if n == -1:
                return {A: ONE}
            if n >= 0:
                return {}
            m = -1 - n
            out = {}
            self._acc(out, self.deriv_terms({A: ONE}, m), Fraction(1, math.factorial(m)))
            return out
        if n <= -2:
            m = -1 - n
            dA = self.deriv_terms({A: ONE}, m)
            out = {}
            for w, c in dA.items():
                self._acc(out, self.apply_words(w, -1, B), c * Scalar.from_fraction(Fraction(1, math.factorial(m))))
            return out
        if n == -1:
            if len(A) == 1:
                return self._insert(A[0], B)
            return self._composite(A, -1, B)
        # n >= 0
        if len(A) == 1:
            if len(B) == 1:
                return self.atom_atom(A[0], n, B[0])
            return self._wick(A[0], n, B)
        return self._composite(A, n, B)

    def _insert(self, x, B):
        """Normal product x_(-1) B for an atom x and canonical word B."""
        if not B or x >= B[0]:
            return {(x,) + B: ONE}
        y, C = B[0], B[1:]
        out = {}
        # main term: y_(-1) (x_(-1) C)
        inner = self.apply_words((x,), -1, C)
        for w, c in inner.items():
            self._acc(out, self.apply_words((y,), -1, w), c)
        # corrections: sum_j (-1)^j (x_(j) y)_(-2-j) C
        maxj = (1 + x[0]) + (1 + y[0]) - 1
        for j in range(maxj + 1):
            xy = self.atom_atom(x, j, y)
            for w, c in xy.items():
                if not w:
                    continue  # d of a multiple of the identity vanishes
                (pu, au), = w
                coeff = c * Scalar.from_fraction(
                    Fraction((-1) ** j, math.factorial(1 + j))
                )
                bumped = self.apply_words(((pu + 1 + j, au),), -1, C)
                self._acc(out, bumped, coeff)
        return out

    def _wick(self, x, n, B):
        """x_(n) B for an atom x, n >= 0 and composite B = y C."""
        y, C = B[0], B[1:]
        out = {}
        inner = self.apply_words((x,), n, C)
        for w, c in inner.items():
            self._acc(out, self.apply_words((y,), -1, w), c)
        for j in range(n + 1):
            xy = self.atom_atom(x, j, y)
            if not xy:
                continue
            bn = Scalar.from_fraction(_binom(n, j))
            for w, c in xy.items():
                self._acc(out, self.apply_words(w, n - 1 - j, C), c * bn)
        return out

    def _composite(self, A, n, B):
        """(x_(-1) C)_(n) B via the composite expansion."""
        x, C = A[0], A[1:]
        out = {}
        wC = word_weight(C)
        wB = word_weight(B)
        wx = 1 + x[0]
        # sum_{j>=0} x_(-1-j) (C_(n+j) B); C_(m) B = 0 once m >= wC + wB
        jmax = wC + wB - 1 - n
        for j in range(max(jmax + 1, 0)):
            m = n + j
            V = self.apply_words(C, m, B)
            if not V:
                continue
            coeff = Scalar.from_fraction(Fraction(1, math.factorial(j)))
            for w, c in V.items():
                self._acc(out, self.apply_words(((x[0] + j, x[1]),), -1, w), c * coeff)
        # sum_{j>=0} C_(n-1-j) (x_(j) B)
        for j in range(wx + wB):
            V = self.apply_words((x,), j, B)
            if not V:
                continue
            for w, c in V.items():
                self._acc(out, self.apply_words(C, n - 1 - j, w), c)
        return out

    # -- derivatives ----------------------------------------------------------

    def deriv_terms(self, terms, times=1):
        cur = dict(terms)
        for _ in range(times):
            nxt = {}
            for w, c in cur.items():
                for i in range(len(w)):
                    p, a = w[i]
                    bumped = w[:i] + ((p + 1, a),) + w[i + 1 :]
                    self._acc(nxt, self._canonicalize(bumped), c)
            cur = nxt
        return cur

    def _canonicalize(self, raw):
        """Right-fold a raw atom tuple into canonical words."""
        out = {(): ONE}
        for atom in reversed(raw):
            nxt = {}
            for w, c in out.items():
                self._acc(nxt, self.apply_words((atom,), -1, w), c)
            out = nxt
        return out


def _engine(algebra):
    eng = getattr(algebra, "_ope_engine", None)
    if eng is None:
        eng = Engine(algebra)
        algebra._ope_engine = eng
    return eng


# -- public API ----------------------------------------------------------


def apply_product(A, n, B):
    """The n-th product A_(n) B of two fields (index convention above)."""
    _same(A, B)
    eng = _engine(A.algebra)
    out = {}
    for wa, ca in A.terms.items():
        for wb, cb in B.terms.items():
            eng._acc(out, eng.apply_words(wa, n, wb), ca * cb)
    return Field(A.algebra, out)


def nprod(A, B):
    """Normal product (AB), canonically reordered."""
    return apply_product(A, -1, B)


def nprod_chain(*fields):
    """Right-nested normal product (A (B (C ...)))."""
    out = fields[-1]
    for f in reversed(fields[:-1]):
        out = nprod(f, out)
    return out


def derivative(A, times=1):
    eng = _engine(A.algebra)
    out = {}
    for w, c in A.terms.items():
        eng._acc(out, eng.deriv_terms({w: ONE}, times), c)
    return Field(A.algebra, out)


class OPEResult:
    """Coefficients of A(z)B(w) = sum_m (AB)_m(w) (z-w)^(-m).

    Positive m are poles; m <= 0 are Taylor coefficients, computed down to
    m = -regular_depth.  Absent keys are zero fields.
    """

    def __init__(self, algebra, coefficients, regular_depth):
        self.algebra = algebra
        self.coefficients = {m: f for m, f in coefficients.items() if not f.is_zero()}
        self.regular_depth = regular_depth
        self.singular_depth = max((m for m in self.coefficients if m > 0), default=0)

    def field(self, m):
        if m <= -self.regular_depth - 1:
            raise ValueError(f"coefficient {m} below computed regular depth")
        return self.coefficients.get(m, Field(self.algebra))

    def poles(self):
        return sorted((m for m in self.coefficients if m > 0), reverse=True)

    def __repr__(self):
        from .printer import ope_str

        return ope_str(self)


def contract(A, B, regular_depth=0):
    """Full OPE of A(z)B(w): all singular coefficients and the Taylor
    coefficients down to order regular_depth.  Exact; memoized per algebra."""
    _same(A, B)
    if regular_depth < 0:
        raise ValueError("regular_depth must be >= 0")
    top = A.max_weight() + B.max_weight()
    coeffs = {}
    for m in range(top, -regular_depth - 1, -1):
        f = apply_product(A, m - 1, B)
        if not f.is_zero():
            coeffs[m] = f
    return OPEResult(A.algebra, coeffs, regular_depth)


def mode_action(A, n, B):
    """A_n B in physics-mode convention: for homogeneous A of weight h,
    A_n B = (AB)_{n+h} = A_(n+h-1) B."""
    h = A.weight()
    return apply_product(A, n + h - 1, B)


def rearrange_comm(A, B):
    """(BA) computed from the OPE of A with B through the reordering tower

        (BA) = (AB) + sum_{n>=1} (-1)^n/n! d^n (AB)_n,

    without ever forming (BA) directly."""
    _same(A, B)
    out = nprod(A, B)
    top = A.max_weight() + B.max_weight()
    for m in range(1, top + 1):
        coeff = apply_product(A, m - 1, B)
        if coeff.is_zero():
            continue
        out = out + derivative(coeff, m).scale(Fraction((-1) ** m, math.factorial(m)))
    return out


def field_commutator(A, B):
    """[A, B] := (AB) - (BA) as fields."""
    return nprod(A, B) - nprod(B, A)


def rearrange_assoc(A, B, E):
    """Returns (residual, rhs) for the reassociation identity

        ((AB)E) - (A(BE)) = (A[E,B]) + ([E,A]B) + [(AB),E],

    with [X,Y] = (XY) - (YX); both sides are computed independently."""
    residual = nprod(nprod(A, B), E) - nprod(A, nprod(B, E))
    rhs = (
        nprod(A, field_commutator(E, B))
        + nprod(field_commutator(E, A), B)
        + field_commutator(nprod(A, B), E)
    )
    return residual, rhs
