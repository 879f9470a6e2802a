"""Finite-dimensional Lie algebra backends with exact structure tables.

Two families are supported:

* so_N in the skew basis F_ij = E_ij - E_ji (i < j), with the invariant
  form normalized so kappa(F_ij, F_kl) = delta_ik delta_jl - delta_il delta_jk
  (i.e. the identity matrix on the canonical basis).  Structure constants
  are integers:

      [F_ij, F_kl] = d_kj F_il - d_il F_kj - d_ik F_jl + d_jl F_ki.

* sl_N in the integral basis E_ij (i != j) together with
  H_i = E_ii - E_{i+1,i+1}, with kappa(a, b) = Tr(ab) (trace form in the
  defining representation) and the fully symmetric invariant
  d(a, b, c) = Tr(a{b, c}).  Indices are raised with the inverse of kappa.

All coefficients are Fractions.  Tables are computed once per (family, N)
and cached.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

_F0 = Fraction(0)
_F1 = Fraction(1)


class LieAlgebra:
    """Structure tables for one simple Lie algebra instance.

    Attributes:
        family: "so" or "sl"
        N: rank parameter of the family
        dim: dimension
        labels: per-basis-element labels (so: (i, j) pairs with i < j,
            1-based; sl: ("E", i, j) or ("H", i))
        dual_coxeter: dual Coxeter number in this normalization
    """

    def __init__(self, family, N, labels, bracket_table, kappa, dual_coxeter):
        self.family = family
        self.N = N
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        self._bracket = bracket_table  # (a, b) -> {c: Fraction}, a < b only
        self.kappa = kappa  # tuple of tuples
        self.kappa_inv = _invert(kappa)
        self.dual_coxeter = dual_coxeter
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        self._casimir = None
        self._d_lower = None
        self._d_raised = None
        self._adjoint = {}

    # -- brackets and the form ---------------------------------------------

    def bracket(self, a, b):
        """[x_a, x_b] as {basis index: Fraction}."""
        if a == b:
            return {}
        if a < b:
            return self._bracket.get((a, b), {})
        return {c: -v for c, v in self._bracket.get((b, a), {}).items()}

    def pair(self, a, b):
        return self.kappa[a][b]

    def pair_inv(self, a, b):
        return self.kappa_inv[a][b]

    def index(self, label):
        return self._index[label]

    def casimir_constant(self):
        """The constant g with kappa^{ab} f_{ca}{}^{d} f_{db}{}^{e} = 2g delta_c^e.

        Computed from the bracket table and the form, so it carries the sign
        of the chosen kappa (e.g. it is negative when kappa is minus the
        trace form on the chosen basis).
        """
        if self._casimir is not None:
            return self._casimir
        n = self.dim
        ki = self.kappa_inv
        m = None
        for c in range(n):
            row = [_F0] * n
            for a in range(n):
                inner = self.bracket(c, a)
                if not inner:
                    continue
                for b in range(n):
                    kab = ki[a][b]
                    if not kab:
                        continue
                    for d, v in inner.items():
                        for e, u in self.bracket(d, b).items():
                            row[e] += kab * v * u
            for e in range(n):
                expect = row[c] if e == c else _F0
                if row[e] != expect:
                    raise ValueError("kappa^{ab} f f is not a multiple of the identity")
            if m is None:
                m = row[c]
            elif row[c] != m:
                raise ValueError("kappa^{ab} f f is not a multiple of the identity")
        self._casimir = m / 2
        return self._casimir

    # -- so-specific helpers -------------------------------------------------

    def so_gen(self, i, j):
        """(sign, index) of F_ij with arbitrary i, j (1-based); sign 0 if i == j."""
        if self.family != "so":
            raise ValueError("so_gen only makes sense for so_N")
        if i == j:
            return 0, None
        if i < j:
            return 1, self._index[(i, j)]
        return -1, self._index[(j, i)]

    # -- sl-specific tensors --------------------------------------------------

    def matrix(self, a):
        if self.family != "sl":
            raise ValueError("matrix() is only stored for sl_N")
        return self._matrices[a]

    def d_lower(self, a, b, c):
        """Fully symmetric invariant Tr(x_a {x_b, x_c}), all indices down."""
        self._ensure_d()
        return self._d_lower.get((a, b, c), _F0)

    def d_raised(self):
        """Nonzero entries of d with all three indices raised, as a dict."""
        self._ensure_d()
        if self._d_raised is None:
            raised = {}
            ki = self.kappa_inv
            n = self.dim
            # contract one index at a time to keep this cheap
            half = {}
            for (a, b, c), v in self._d_lower.items():
                for a2 in range(n):
                    w = ki[a2][a] * v
                    if w:
                        half[(a2, b, c)] = half.get((a2, b, c), _F0) + w
            half2 = {}
            for (a, b, c), v in half.items():
                if not v:
                    continue
                for b2 in range(n):
                    w = ki[b2][b] * v
                    if w:
                        half2[(a, b2, c)] = half2.get((a, b2, c), _F0) + w
            for (a, b, c), v in half2.items():
                if not v:
                    continue
                for c2 in range(n):
                    w = ki[c2][c] * v
                    if w:
                        raised[(a, b, c2)] = raised.get((a, b, c2), _F0) + w
            self._d_raised = {key: v for key, v in raised.items() if v}
        return self._d_raised

    def _ensure_d(self):
        if self.family != "sl":
            raise ValueError("the cubic invariant is only stored for sl_N")
        if self._d_lower is None:
            mats = self._matrices
            n = self.dim
            d = {}
            for b in range(n):
                for c in range(b, n):
                    anti = _mat_add(_mat_mul(mats[b], mats[c]), _mat_mul(mats[c], mats[b]))
                    for a in range(n):
                        v = _trace_prod(mats[a], anti)
                        if v:
                            d[(a, b, c)] = v
                            if b != c:
                                d[(a, c, b)] = v
            self._d_lower = d

    # -- adjoint action (for tensor evaluation) -------------------------------

    def adjoint_matrix(self, a):
        """Matrix of ad(x_a) on the basis: column b holds [x_a, x_b]."""
        if a not in self._adjoint:
            cols = []
            for b in range(self.dim):
                cols.append(self.bracket(a, b))
            self._adjoint[a] = cols
        return self._adjoint[a]

    def __repr__(self):
        return f"LieAlgebra({self.family}_{self.N}, dim={self.dim})"


# -- so_N -----------------------------------------------------------------


@lru_cache(maxsize=None)
def so_algebra(N):
    if N < 3:
        raise ValueError("so_N needs N >= 3")
    labels = [(i, j) for i in range(1, N + 1) for j in range(i + 1, N + 1)]
    index = {lab: n for n, lab in enumerate(labels)}

    def gen(i, j):
        if i == j:
            return 0, None
        if i < j:
            return 1, index[(i, j)]
        return -1, index[(j, i)]

    table = {}
    for a, (i, j) in enumerate(labels):
        for b in range(a + 1, len(labels)):
            k, l = labels[b]
            out = {}
            for sgn, (p, q) in (
                (1 if k == j else 0, (i, l)),
                (-1 if i == l else 0, (k, j)),
                (-1 if i == k else 0, (j, l)),
                (1 if j == l else 0, (k, i)),
            ):
                if not sgn:
                    continue
                s2, idx = gen(p, q)
                if idx is not None:
                    out[idx] = out.get(idx, _F0) + sgn * s2
            out = {c: v for c, v in out.items() if v}
            if out:
                table[(a, b)] = out
    dim = len(labels)
    kappa = tuple(
        tuple(_F1 if r == c else _F0 for c in range(dim)) for r in range(dim)
    )
    return LieAlgebra("so", N, labels, table, kappa, N - 2)


# -- sl_N -----------------------------------------------------------------


def _mat(N):
    return [[_F0] * N for _ in range(N)]


def _mat_mul(A, B):
    N = len(A)
    out = _mat(N)
    for i in range(N):
        Ai = A[i]
        for t in range(N):
            a = Ai[t]
            if a:
                Bt = B[t]
                row = out[i]
                for j in range(N):
                    if Bt[j]:
                        row[j] += a * Bt[j]
    return out

def _mat_add(A, B):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def _trace_prod(A, B):
    N = len(A)
    return sum(A[i][j] * B[j][i] for i in range(N) for j in range(N))


@lru_cache(maxsize=None)
def sl_algebra(N):
    if N < 2:
        raise ValueError("sl_N needs N >= 2")
    labels = []
    mats = []
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            if i != j:
                labels.append(("E", i, j))
                m = _mat(N)
                m[i - 1][j - 1] = _F1
                mats.append(m)
    for i in range(1, N):
        labels.append(("H", i))
        m = _mat(N)
        m[i - 1][i - 1] = _F1
        m[i][i] = -_F1
        mats.append(m)
    dim = len(labels)

    def expand(M):
        """Coordinates of a traceless matrix in the basis above."""
        out = {}
        for i in range(N):
            for j in range(N):
                if i != j and M[i][j]:
                    out[labels.index(("E", i + 1, j + 1))] = M[i][j]
        # diagonal: prefix sums against the H ladder
        acc = _F0
        base = N * (N - 1)
        for i in range(N - 1):
            acc += M[i][i]
            if acc:
                out[base + i] = acc
        return out

    table = {}
    for a in range(dim):
        for b in range(a + 1, dim):
            comm = _mat_add(
                _mat_mul(mats[a], mats[b]),
                [[-x for x in row] for row in _mat_mul(mats[b], mats[a])],
            )
            out = {c: v for c, v in expand(comm).items() if v}
            if out:
                table[(a, b)] = out
    kappa = tuple(
        tuple(_trace_prod(mats[a], mats[b]) for b in range(dim)) for a in range(dim)
    )
    alg = LieAlgebra("sl", N, labels, table, kappa, N)
    alg._matrices = mats
    return alg


# -- exact matrix inverse ----------------------------------------------------


def _invert(kappa):
    n = len(kappa)
    aug = [list(row) + [_F1 if i == j else _F0 for j in range(n)] for i, row in enumerate(kappa)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ValueError("invariant form is degenerate")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)
