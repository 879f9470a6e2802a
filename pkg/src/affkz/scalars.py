"""Exact scalar arithmetic: rational functions in the formal level variable k.

Every OPE coefficient produced by the engine lives here.  A Scalar is a
reduced fraction of two polynomials in k with rational coefficients; the
denominator is kept monic and coprime to the numerator, so equality is
literal equality of coefficient tuples.  Plain numbers embed as degree-0
polynomials.  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction

# Polynomials are tuples of Fractions, lowest degree first, no trailing zeros.

_F0 = Fraction(0)
_F1 = Fraction(1)


def _trim(cs):
    n = len(cs)
    while n and cs[n - 1] == 0:
        n -= 1
    return tuple(cs[:n])


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _pneg(a):
    return tuple(-c for c in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [_F0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _trim(out)


def _pscale(a, c):
    if c == 0:
        return ()
    return tuple(x * c for x in a)


def _pdivmod(a, b):
    """Euclidean division of polynomials over Q."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [_F0] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lb = b[-1]
    db = len(b) - 1
    while len(r) >= len(b) and any(r):
        r = list(_trim(r))
        if len(r) < len(b):
            break
        c = r[-1] / lb
        d = len(r) - 1 - db
        q[d] = c
        for i, y in enumerate(b):
            r[d + i] -= c * y
        r = r[:-1]
    return _trim(q), _trim(r)


def _pgcd(a, b):
    """Monic gcd over Q."""
    while b:
        _, a2 = _pdivmod(a, b)
        a, b = b, a2
    if not a:
        return ()
    lead = a[-1]
    return tuple(c / lead for c in a)


def _pstr(a, var="k"):
    """Render an integer-coefficient polynomial, decreasing degree."""
    if not a:
        return "0"
    parts = []
    for d in range(len(a) - 1, -1, -1):
        c = a[d]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if d == 0:
            body = str(mag)
        else:
            kpow = var if d == 1 else f"{var}^{d}"
            body = kpow if mag == 1 else f"{mag}{kpow}"
        parts.append((sign, body))
    out = ""
    for i, (sign, body) in enumerate(parts):
        if i == 0:
            out = body if sign == "+" else "-" + body
        else:
            out += sign + body
    return out


class Scalar:
    """A rational function in k over Q, always kept in reduced canonical form."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=(_F1,)):
        num = _trim(tuple(Fraction(c) for c in num))
        den = _trim(tuple(Fraction(c) for c in den))
        if not den:
            raise ZeroDivisionError("Scalar with zero denominator")
        if not num:
            den = (_F1,)
        else:
            g = _pgcd(num, den)
            if len(g) > 1:
                num, _ = _pdivmod(num, g)
                den, _ = _pdivmod(den, g)
            lead = den[-1]
            if lead != 1:
                num = tuple(c / lead for c in num)
                den = tuple(c / lead for c in den)
        self.num = num
        self.den = den

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_fraction(cls, q):
        q = Fraction(q)
        return cls((q,)) if q else ZERO

    @classmethod
    def from_int(cls, n):
        return cls.from_fraction(n)

    @classmethod
    def k(cls):
        return K

    @classmethod
    def poly(cls, coeffs):
        """Scalar from {degree: coefficient}."""
        if not coeffs:
            return ZERO
        top = max(coeffs)
        cs = [_F0] * (top + 1)
        for d, c in coeffs.items():
            cs[d] = Fraction(c)
        return cls(cs)

    # -- predicates -------------------------------------------------------

    def is_zero(self):
        return not self.num

    def is_one(self):
        return self.num == (_F1,) and self.den == (_F1,)

    def is_polynomial(self):
        return self.den == (_F1,)

    def degree(self):
        """Degree in k of the numerator (-1 for zero); meaningful mostly
        for polynomial scalars."""
        return len(self.num) - 1

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return Scalar(_padd(self.num, other.num), self.den)
        return Scalar(
            _padd(_pmul(self.num, other.den), _pmul(other.num, self.den)),
            _pmul(self.den, other.den),
        )

    __radd__ = __add__

    def __neg__(self):
        s = Scalar.__new__(Scalar)
        s.num = _pneg(self.num)
        s.den = self.den
        return s

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return ZERO
        if self.is_one():
            return other
        if other.is_one():
            return self
        return Scalar(_pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero Scalar")
        return Scalar(_pmul(self.num, other.den), _pmul(self.den, other.num))

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar.from_fraction(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    # -- evaluation / printing ---------------------------------------------

    def evaluate(self, kval):
        """Exact value at a rational k; raises ZeroDivisionError on poles."""
        kval = Fraction(kval)
        n = sum(c * kval**d for d, c in enumerate(self.num)) if self.num else _F0
        d = sum(c * kval**d for d, c in enumerate(self.den))
        return n / d

    def _integer_parts(self):
        """Rescale num/den to coprime integer-coefficient polynomials."""
        from math import gcd, lcm

        ln = lcm(*(c.denominator for c in self.num)) if self.num else 1
        ld = lcm(*(c.denominator for c in self.den))
        num = [int(c * ln) for c in self.num]
        den = [int(c * ld) for c in self.den]
        # value is (num/ln)/(den/ld) = num*ld / (den*ln)
        num = [c * ld for c in num]
        den = [c * ln for c in den]
        g = 0
        for c in num + den:
            g = gcd(g, abs(c))
        if g > 1:
            num = [c // g for c in num]
            den = [c // g for c in den]
        if den and den[-1] < 0:
            num = [-c for c in num]
            den = [-c for c in den]
        return tuple(num), tuple(den)

    def canonical_str(self):
        """Canonical text form: integer coefficients, decreasing degree,
        '/denominator' only when nontrivial."""
        if self.is_zero():
            return "0"
        num, den = self._integer_parts()
        ns = _pstr(num)
        if den == (1,):
            return ns
        nterms = sum(1 for c in num if c)
        dterms = sum(1 for c in den if c)
        if nterms > 1:
            ns = f"({ns})"
        ds = _pstr(den)
        if dterms > 1 or len(den) > 1:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def latex(self):
        if self.is_zero():
            return "0"
        num, den = self._integer_parts()
        ns = _pstr(num)
        if den == (1,):
            return ns
        return r"\frac{%s}{%s}" % (ns, _pstr(den))

    def __repr__(self):
        return f"Scalar({self.canonical_str()})"


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar.from_fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")


ZERO = Scalar(())
ONE = Scalar((_F1,))
K = Scalar((_F0, _F1))
