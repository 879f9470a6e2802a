"""Emission and exact evaluation of the fourth-order current-algebra
correlator equation.

The quartic central field decomposes over mode words
F_{I1}^k F_{I2}^l F_{I1'}^p F_{I2'}^q with (k,l,p,q) ranging over the
admissible tuples (permutations of (0,1,-1,-1), (0,1,0,-2) and
(0,0,0,-1)).  Each mode acts on a correlator of a pfaffian primary at z_1
with adjoint primaries at z_2..z_r via the standard insertion rules:

    mode  0:  F^{(1)}                       (zero mode on the first slot)
    mode -1:  -sum_{j>=2} F^{(j)} / (z_1 - z_j)
    mode -2:  -sum_{j>=2} F^{(j)} / (z_1 - z_j)^2
    mode +1:  (k-2) * (PfF_J -> PfF_{J\\P})  (the engine-derived scalar;
              at most one mode +1 occurs per admissible tuple)

The emitted equation carries the first-slot pfaffian targets as tags.  The
numeric evaluator realizes a removed-pair target as an interior product on
the exterior algebra, which is the unique equivariant extension of the
tagged rewrite, so the whole right-hand side commutes exactly with the
simultaneous rotation of all slots.
"""

import itertools
from dataclasses import dataclass, field as _dcfield
from fractions import Fraction
from functools import lru_cache

from .liealg import so_algebra
from .scalars import Scalar, K, ONE
from .indexsets import set_minus, ordered_pair_partitions, f_action
from .suite import c4_pf_scalar

MODE1_SCALAR = K - Scalar.from_int(2)

_BASE_TUPLES = ((0, 1, -1, -1), (0, 1, 0, -2), (0, 0, 0, -1))


@dataclass(frozen=True)
class ModeTuple:
    modes: tuple
    multiplicity: int = 1


def admissible_tuples():
    """Deduplicated permutation closure of the three base tuples."""
    seen = set()
    for base in _BASE_TUPLES:
        for perm in itertools.permutations(base):
            seen.add(perm)
    return [ModeTuple(modes=m) for m in sorted(seen)]


@dataclass(frozen=True)
class CorrelatorTerm:
    scalar: Scalar
    poles: tuple          # ((i, j, p), ...) meaning 1/(z_i - z_j)^p, i always 1
    slot_ops: tuple       # ((pair, slot), ...) in word order, stably slot-sorted
    target: tuple         # ("PfJ",) or ("PfJminus", pair, sign)


@dataclass
class HigherKZEquation:
    N: int
    r: int
    J: tuple
    lhs_scalar: Scalar
    rhs: list = _dcfield(default_factory=list)


class KZError(ValueError):
    pass


def insertion_rules(mode, J2, r):
    """Branches for one mode factor: list of (scalar, poles, slot_ops, rewrite).

    `rewrite` is None except for mode +1, where it is the 2-set removed from
    the first-slot pfaffian label.
    """
    if mode == 0:
        return [(ONE, (), ((tuple(J2), 1),), None)]
    if mode in (-1, -2):
        return [(Scalar.from_int(-1), ((1, j, -mode),), ((tuple(J2), j),), None)
                for j in range(2, r + 1)]
    if mode == 1:
        return [(MODE1_SCALAR, (), (), tuple(J2))]
    raise KZError("unsupported mode: %r" % (mode,))


@lru_cache(maxsize=None)
def _abstract_terms(N, r):
    """The expansion before first-slot target specialization.

    Returns a tuple of (scalar, poles, slot_ops, mode1_pair) with the
    mode-one pair kept symbolic (None when the word has no mode one).
    Within each branch the slot operators are collected in word order.
    """
    quarter = Scalar.from_fraction(Fraction(1, 4))
    out = []
    tuples = admissible_tuples()
    for I in itertools.combinations(range(1, N + 1), 4):
        parts = ordered_pair_partitions(I)
        for I1, I2, s in parts:
            for I1p, I2p, sp in parts:
                base = quarter * Scalar.from_int(s * sp)
                pairs = (I1, I2, I1p, I2p)
                for mt in tuples:
                    branches = [(base, (), (), None)]
                    for mode, pair in zip(mt.modes, pairs):
                        new = []
                        for sc, poles, ops, m1 in branches:
                            for bsc, bpoles, bops, rew in insertion_rules(mode, pair, r):
                                if rew is not None and m1 is not None:
                                    raise KZError("two mode-one factors in one word")
                                new.append((sc * bsc, poles + bpoles, ops + bops,
                                            rew if rew is not None else m1))
                        branches = new
                    out.extend(branches)
    return tuple(out)


def _canonical_ops(ops):
    return tuple(sorted(ops, key=lambda op: op[1]))


def _merge(raw):
    acc = {}
    for sc, poles, ops, target in raw:
        key = (tuple(sorted(poles)), _canonical_ops(ops), target)
        acc[key] = acc.get(key, Scalar.from_int(0)) + sc
    terms = []
    for (poles, ops, target), sc in acc.items():
        if not sc.is_zero():
            terms.append(CorrelatorTerm(scalar=sc, poles=poles, slot_ops=ops,
                                        target=target))
    terms.sort(key=lambda t: (t.target, t.poles, t.slot_ops, t.scalar.canonical_str()))
    return terms


def _specialize(raw_terms, J):
    out = []
    for sc, poles, ops, m1 in raw_terms:
        if m1 is None:
            out.append((sc, poles, ops, ("PfJ",)))
        else:
            sign, rest = set_minus(J, m1)
            if sign == 0:
                continue
            out.append((sc, poles, ops, ("PfJminus", m1, sign)))
    return out


def emit_equation(N, r, J, cross_check=True):
    if N < 5:
        raise KZError("need N >= 5")
    if r < 2:
        raise KZError("need r >= 2")
    J = tuple(sorted(J))
    if len(J) != 4 or len(set(J)) != 4 or not all(1 <= i <= N for i in J):
        raise KZError("J must be a 4-subset of 1..N")
    terms = _merge(_specialize(_abstract_terms(N, r), J))
    if cross_check:
        ref = _merge(_expand_reference(N, r, J))
        if ref != terms:
            raise KZError("internal cross-check failed: the two expansion paths "
                          "disagree")
    return HigherKZEquation(N=N, r=r, J=J, lhs_scalar=c4_pf_scalar(N), rhs=terms)


def _expand_reference(N, r, J):
    """Independent termwise expansion (recursive, specialized from the start)."""
    quarter = Fraction(1, 4)
    out = []

    def expand(modes, pairs, sc, poles, ops, target):
        if not modes:
            out.append((sc, poles, ops, target))
            return
        mode, pair = modes[0], pairs[0]
        rest_m, rest_p = modes[1:], pairs[1:]
        if mode == 0:
            expand(rest_m, rest_p, sc, poles, ops + ((tuple(pair), 1),), target)
        elif mode in (-1, -2):
            for j in range(2, r + 1):
                expand(rest_m, rest_p, sc * Scalar.from_int(-1),
                       poles + ((1, j, -mode),), ops + ((tuple(pair), j),), target)
        elif mode == 1:
            sign, _ = set_minus(J, pair)
            if sign:
                expand(rest_m, rest_p, sc * MODE1_SCALAR, poles, ops,
                       ("PfJminus", tuple(pair), sign))
        else:
            raise KZError("unsupported mode: %r" % (mode,))

    for I in itertools.combinations(range(1, N + 1), 4):
        parts = ordered_pair_partitions(I)
        for I1, I2, s in parts:
            for I1p, I2p, sp in parts:
                sc0 = Scalar.from_fraction(quarter * s * sp)
                for mt in admissible_tuples():
                    expand(mt.modes, (I1, I2, I1p, I2p), sc0, (), (), ("PfJ",))
    return out


# ---------------------------------------------------------------------------
# serialization

def _target_str(target):
    if target[0] == "PfJ":
        return "PfJ"
    _, pair, sign = target
    return "PfJminus:%d,%d:%+d" % (pair[0], pair[1], sign)


def serialize(eq):
    lines = ["kz4 N=%d r=%d J=%s lhs=%s" % (eq.N, eq.r,
                                            ",".join(str(i) for i in eq.J),
                                            eq.lhs_scalar.canonical_str())]
    for t in eq.rhs:
        poles = ";".join("%d:%d:%d" % p for p in t.poles)
        ops = ";".join("%d,%d@%d" % (pair[0], pair[1], slot)
                       for pair, slot in t.slot_ops)
        lines.append("term scalar=%s poles=%s ops=%s target=%s"
                     % (t.scalar.canonical_str(), poles or "-", ops or "-",
                        _target_str(t.target)))
    return "\n".join(lines) + "\n"


def _parse_scalar(s):
    # canonical scalar strings are polynomials (or ratios) in k; re-evaluate
    # them through Scalar by simple parsing of the canonical form
    from .parser import parse_scalar
    return parse_scalar(s)


def deserialize(text):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = lines[0].split()
    if head[0] != "kz4":
        raise KZError("not a kz4 equation file")
    meta = dict(part.split("=", 1) for part in head[1:])
    eq = HigherKZEquation(N=int(meta["N"]), r=int(meta["r"]),
                          J=tuple(int(x) for x in meta["J"].split(",")),
                          lhs_scalar=_parse_scalar(meta["lhs"]))
    for ln in lines[1:]:
        fields = dict(part.split("=", 1) for part in ln.split()[1:])
        poles = tuple(tuple(int(x) for x in p.split(":"))
                      for p in fields["poles"].split(";")) if fields["poles"] != "-" else ()
        ops = ()
        if fields["ops"] != "-":
            for op in fields["ops"].split(";"):
                pair, slot = op.split("@")
                i, j = pair.split(",")
                ops += (((int(i), int(j)), int(slot)),)
        ts = fields["target"]
        if ts == "PfJ":
            target = ("PfJ",)
        else:
            _, pair, sign = ts.split(":")
            i, j = pair.split(",")
            target = ("PfJminus", (int(i), int(j)), int(sign))
        eq.rhs.append(CorrelatorTerm(scalar=_parse_scalar(fields["scalar"]),
                                     poles=poles, slot_ops=ops, target=target))
    return eq


# ---------------------------------------------------------------------------
# exact numeric evaluation
#
# States live in Lambda(C^N) (x) adjoint^(r-1): keys are
# (wedge_tuple, b_2, ..., b_r) with 1-based sorted wedge indices and 0-based
# adjoint basis indices; values are Fractions.

def _wedge_f(alg, pair, wedge):
    """Derivation action of F_pair on a wedge basis word, as {wedge: coeff}."""
    return {X: Fraction(c) for X, c in f_action(pair, wedge).terms.items()}


def _adjoint_f(alg, pair, b):
    sgn, a = alg.so_gen(*pair)
    out = {}
    for z, v in alg.bracket(a, b).items():
        out[z] = out.get(z, Fraction(0)) + sgn * v
    return out


def _interior(wedge, pair):
    """e_X -> sign * e_{X \\ pair}, zero when the pair is not inside X."""
    sign, rest = set_minus(wedge, pair)
    return (sign, rest) if sign else (0, ())


def _apply_slot_op(alg, state, pair, slot):
    out = {}
    for key, c in state.items():
        if slot == 1:
            for X, v in _wedge_f(alg, pair, key[0]).items():
                nk = (X,) + key[1:]
                out[nk] = out.get(nk, Fraction(0)) + c * v
        else:
            b = key[slot - 1]
            for z, v in _adjoint_f(alg, pair, b).items():
                nk = key[:slot - 1] + (z,) + key[slot:]
                out[nk] = out.get(nk, Fraction(0)) + c * v
    return {k: v for k, v in out.items() if v}


def _apply_target(state, target):
    if target[0] == "PfJ":
        return state
    _, pair, _sign = target
    out = {}
    for key, c in state.items():
        sign, rest = _interior(key[0], pair)
        if sign:
            nk = (rest,) + key[1:]
            out[nk] = out.get(nk, Fraction(0)) + c * sign
    return out


@lru_cache(maxsize=None)
def _operator_terms(N, r):
    """J-independent merged term list with mode-one factors realized as
    interior products.  This is the equivariant operator whose restriction
    to states built on the wedge word e_J reproduces the tagged equation."""
    raw = []
    for sc, poles, ops, m1 in _abstract_terms(N, r):
        target = ("PfJ",) if m1 is None else ("iota", m1, 1)
        raw.append((sc, poles, ops, target))
    return tuple(_merge(raw))


def evaluate_rhs(eq, k_value, points, state):
    """Apply the right-hand-side operator with exact rational arithmetic.

    `points` are the r insertion coordinates; `state` maps
    (wedge_tuple, b_2, ..., b_r) keys to Fractions.  The operator is rebuilt
    from the equation metadata with removed-pair rewrites realized as
    interior products on the exterior algebra, so it commutes exactly with
    the simultaneous rotation of all slots; its output may mix exterior
    degrees.
    """
    if len(points) != eq.r:
        raise KZError("need exactly r points")
    points = [Fraction(z) for z in points]
    if len(set(points)) != len(points):
        raise KZError("coincident insertion points")
    kv = Fraction(k_value)
    alg = so_algebra(eq.N)
    for key in state:
        if len(key) != eq.r:
            raise KZError("state keys must have one wedge slot and r-1 adjoint slots")
        if any(not (0 <= b < alg.dim) for b in key[1:]):
            raise KZError("adjoint index out of range")
        if any(not (1 <= i <= eq.N) for i in key[0]):
            raise KZError("wedge index out of range")
    result = {}
    for t in _operator_terms(eq.N, eq.r):
        weight = t.scalar.evaluate(kv)
        for i, j, p in t.poles:
            weight /= (points[i - 1] - points[j - 1]) ** p
        if not weight:
            continue
        cur = _apply_target(state, t.target)
        for pair, slot in reversed(t.slot_ops):
            if not cur:
                break
            cur = _apply_slot_op(alg, cur, pair, slot)
        for key, c in cur.items():
            result[key] = result.get(key, Fraction(0)) + weight * c
    return {k: v for k, v in result.items() if v}


def apply_generator(alg, pair, state):
    """Simultaneous rotation of all slots by F_pair (wedge derivation on the
    first slot, adjoint action on the rest)."""
    out = {}
    for key, c in state.items():
        for X, v in _wedge_f(alg, pair, key[0]).items():
            nk = (X,) + key[1:]
            out[nk] = out.get(nk, Fraction(0)) + c * v
        for slot in range(2, len(key) + 1):
            for z, v in _adjoint_f(alg, pair, key[slot - 1]).items():
                nk = key[:slot - 1] + (z,) + key[slot:]
                out[nk] = out.get(nk, Fraction(0)) + c * v
    return {k: v for k, v in out.items() if v}


def random_state(N, r, seed=0):
    import random as _random
    rnd = _random.Random(seed)
    alg = so_algebra(N)
    state = {}
    for wedge in itertools.combinations(range(1, N + 1), 4):
        for rest in itertools.product(range(alg.dim), repeat=r - 1):
            v = rnd.randrange(-3, 4)
            if v:
                state[(wedge,) + rest] = Fraction(v)
    return state
