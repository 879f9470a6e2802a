"""Surface-syntax parser for fields and scalars.

The grammar matches the printer's text output, so print -> parse -> print
is the identity on canonical forms:

    atom     F[i,j] | J[a] | Pf[i1,...,i2m] | C4 | T | W | W[a] | d(expr) | 1
    product  (expr expr)          normal ordered product, right nested
    scalar   integers, rationals p/q, k, k^n, implicit products like 3k
    expr     sums and differences of '*'-scaled atoms

Errors carry the character position and, for unexpected tokens, the set of
tokens that would have been accepted.
"""

import re
from fractions import Fraction

from .scalars import Scalar, ONE, K
from .fields import (unit_field, current, so_current, pf_field, c4_field,
                     gelfand_fields, sugawara_field)
from .ope import Field, nprod, derivative


class ParseError(ValueError):
    def __init__(self, message, pos, expected=None):
        self.pos = pos
        self.expected = sorted(expected) if expected else None
        tail = " (expected %s)" % ", ".join(self.expected) if self.expected else ""
        super().__init__("at position %d: %s%s" % (pos, message, tail))


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*)|([\[\](),+\-*/^]))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == m.start():
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError("unexpected character %r" % stripped[0],
                             pos + (len(text[pos:]) - len(stripped)))
        num, name, sym = m.groups()
        start = m.end() - len(num or name or sym)
        if num:
            tokens.append(("num", int(num), start))
        elif name:
            tokens.append(("name", name, start))
        else:
            tokens.append(("sym", sym, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    """Recursive descent over the token list.  Values are ('s', Scalar) or
    ('f', Field); the two kinds mix through scaling and unit-field lifts."""

    def __init__(self, text, algebra):
        self.text = text
        self.algebra = algebra
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind, value=None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            raise ParseError("unexpected %s" % (repr(tok[1]) if tok[0] != "end"
                                                else "end of input"),
                             tok[2], expected={value if value else kind})
        return self.next()

    # -- value combination ---------------------------------------------

    def _field(self, v, pos):
        kind, val = v
        if kind == "f":
            return val
        if self.algebra is None:
            raise ParseError("fields are not allowed here", pos)
        return unit_field(self.algebra).scale(val)

    def _add(self, a, b, pos, sign=1):
        if a[0] == "s" and b[0] == "s":
            return ("s", a[1] + b[1] if sign > 0 else a[1] - b[1])
        fa, fb = self._field(a, pos), self._field(b, pos)
        return ("f", fa + fb if sign > 0 else fa - fb)

    def _mul(self, a, b, pos):
        if a[0] == "s" and b[0] == "s":
            return ("s", a[1] * b[1])
        if a[0] == "s":
            return ("f", b[1].scale(a[1]))
        if b[0] == "s":
            return ("f", a[1].scale(b[1]))
        raise ParseError("'*' multiplies by scalars; use (a b) for the "
                         "normal ordered product", pos)

    def _div(self, a, b, pos):
        if b[0] != "s":
            raise ParseError("can only divide by a scalar", pos)
        if b[1].is_zero():
            raise ParseError("division by zero", pos)
        if a[0] == "s":
            return ("s", a[1] / b[1])
        return ("f", a[1].scale(ONE / b[1]))

    # -- grammar ---------------------------------------------------------

    def expr(self):
        v = self.term()
        while self.peek()[:2] in (("sym", "+"), ("sym", "-")):
            _, op, pos = self.next()
            v = self._add(v, self.term(), pos, sign=1 if op == "+" else -1)
        return v

    def term(self):
        v = self.unary()
        while self.peek()[:2] in (("sym", "*"), ("sym", "/")):
            _, op, pos = self.next()
            rhs = self.unary()
            v = self._mul(v, rhs, pos) if op == "*" else self._div(v, rhs, pos)
        return v

    def unary(self):
        if self.peek()[:2] == ("sym", "-"):
            _, _, pos = self.next()
            v = self.unary()
            return ("s", -v[1]) if v[0] == "s" else ("f", -v[1])
        return self.atom()

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "num":
            self.next()
            s = Scalar.from_int(val)
            if self.peek()[:2] == ("name", "k"):
                s = s * self._k_atom()
            return ("s", s)
        if kind == "name":
            return self.named(val, pos)
        if (kind, val) == ("sym", "("):
            self.next()
            first = self.expr()
            if self.peek()[:2] == ("sym", ")"):
                self.next()
                return first
            second = self.expr()
            close = self.peek()
            if close[:2] != ("sym", ")"):
                raise ParseError("unexpected %r" % (close[1],), close[2],
                                 expected={")"})
            self.next()
            fa = self._field(first, pos)
            fb = self._field(second, pos)
            return ("f", nprod(fa, fb))
        raise ParseError("unexpected %s" % (repr(val) if kind != "end"
                                            else "end of input"), pos,
                         expected={"number", "name", "("})

    def _k_atom(self):
        self.expect("name", "k")
        if self.peek()[:2] == ("sym", "^"):
            self.next()
            _, p, pos = self.expect("num")
            s = ONE
            for _ in range(p):
                s = s * K
            return s
        return K

    def _index_list(self, pos):
        self.expect("sym", "[")
        idx = [self.expect("num")[1]]
        while self.peek()[:2] == ("sym", ","):
            self.next()
            idx.append(self.expect("num")[1])
        self.expect("sym", "]")
        return idx

    def _need_algebra(self, pos, family=None):
        if self.algebra is None:
            raise ParseError("fields are not allowed here", pos)
        if family and self.algebra.family != family:
            raise ParseError("this field needs the %s family (got %s)"
                             % (family, self.algebra.family), pos)
        return self.algebra

    def named(self, name, pos):
        self.next()
        if name == "k":
            self.i -= 1
            return ("s", self._k_atom())
        if name == "d":
            self.expect("sym", "(")
            inner = self._field(self.expr(), pos)
            self.expect("sym", ")")
            return ("f", derivative(inner))
        if name == "F":
            alg = self._need_algebra(pos, "so")
            idx = self._index_list(pos)
            if len(idx) != 2:
                raise ParseError("F takes two indices", pos)
            i, j = idx
            if not (1 <= i <= alg.N and 1 <= j <= alg.N) or i == j:
                raise ParseError("F indices must be distinct and in 1..%d"
                                 % alg.N, pos)
            return ("f", so_current(alg, i, j))
        if name == "J":
            alg = self._need_algebra(pos)
            idx = self._index_list(pos)
            if len(idx) != 1 or not (0 <= idx[0] < alg.dim):
                raise ParseError("J takes one basis index in 0..%d"
                                 % (alg.dim - 1), pos)
            return ("f", current(alg, idx[0]))
        if name == "Pf":
            alg = self._need_algebra(pos, "so")
            idx = self._index_list(pos)
            if len(idx) % 2 or not idx:
                raise ParseError("Pf needs an even number of indices", pos)
            if len(set(idx)) != len(idx) or not all(1 <= i <= alg.N for i in idx):
                raise ParseError("Pf indices must be distinct and in 1..%d"
                                 % alg.N, pos)
            return ("f", pf_field(alg, idx))
        if name == "C4":
            return ("f", c4_field(self._need_algebra(pos, "so")))
        if name == "T":
            return ("f", sugawara_field(self._need_algebra(pos)))
        if name == "W":
            alg = self._need_algebra(pos, "sl")
            if self.peek()[:2] == ("sym", "["):
                idx = self._index_list(pos)
                if len(idx) != 1 or not (0 <= idx[0] < alg.dim):
                    raise ParseError("W takes one basis index in 0..%d"
                                     % (alg.dim - 1), pos)
                return ("f", gelfand_fields(alg)[1][idx[0]])
            return ("f", gelfand_fields(alg)[0])
        raise ParseError("unknown name %r" % name, pos,
                         expected={"F", "J", "Pf", "C4", "T", "W", "d", "k"})


def parse(text, algebra):
    """Parse an expression to a Field over the given algebra."""
    p = _Parser(text, algebra)
    v = p.expr()
    tok = p.peek()
    if tok[0] != "end":
        raise ParseError("trailing input %r" % (tok[1],), tok[2])
    return p._field(v, 0)


def parse_scalar(text):
    """Parse a purely scalar expression (polynomials or ratios in k)."""
    p = _Parser(text, None)
    v = p.expr()
    tok = p.peek()
    if tok[0] != "end":
        raise ParseError("trailing input %r" % (tok[1],), tok[2])
    if v[0] != "s":
        raise ParseError("expected a scalar expression", 0)
    return v[1]
