"""Exact coefficient fields.

Everything downstream (matrices, polynomials, linear systems) is generic over
a small field protocol: a field object owns the arithmetic and elements stay
in their raw machine representation (mpq for the rationals, int for prime
fields, mpq tuples for number field elements, coefficient-tuple pairs for
rational functions). Keeping elements raw keeps gmpy2 in the inner loops;
there is deliberately no per-element wrapper class.

The protocol every field here satisfies:

    zero, one          identity elements (raw)
    char               field characteristic
    add, sub, mul, div, neg, inv
    is_zero(a), eq(a, b)
    from_int(n), from_q(x)   embeddings of ZZ and QQ
    fmt(a)             short printable form
"""

from fractions import Fraction

import gmpy2
from gmpy2 import mpq, mpz
import sympy


class FieldError(ValueError):
    """Domain error in exact field arithmetic (bad modulus, bad prime...)."""


def _as_mpq(x):
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


class RationalField:
    """The rationals, elements are gmpy2.mpq."""

    char = 0
    degree = 1

    def __init__(self):
        self.zero = mpq(0)
        self.one = mpq(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero")
        return a / b

    def is_zero(self, a):
        return not a

    def eq(self, a, b):
        return a == b

    def from_int(self, n):
        return mpq(n)

    def from_q(self, x):
        return _as_mpq(x)

    def fmt(self, a):
        return str(a)

    def sqrt(self, a):
        """Exact square root as mpq, or None if a is not a rational square."""
        if a < 0:
            return None
        num, den = a.numerator, a.denominator
        if not (gmpy2.is_square(num) and gmpy2.is_square(den)):
            return None
        return mpq(gmpy2.isqrt(num), gmpy2.isqrt(den))

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class PrimeField:
    """GF(p), elements are plain ints in [0, p)."""

    degree = 1

    def __init__(self, p):
        p = int(p)
        if p < 2 or not sympy.isprime(p):
            raise FieldError("modulus %d is not prime" % p)
        self.p = p
        self.char = p
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero mod %d" % self.p)
        return pow(a, -1, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def is_zero(self, a):
        return a % self.p == 0

    def eq(self, a, b):
        return (a - b) % self.p == 0

    def from_int(self, n):
        return int(n) % self.p

    def from_q(self, x):
        x = _as_mpq(x)
        den = int(x.denominator)
        if den % self.p == 0:
            raise FieldError(
                "denominator %d not invertible mod %d" % (den, self.p))
        return int(x.numerator) * pow(den, -1, self.p) % self.p

    def fmt(self, a):
        return str(a % self.p)

    def __repr__(self):
        return "GF(%d)" % self.p


# ---------------------------------------------------------------------------
# small dense polynomial helpers over mpq tuples, low degree first.
# These back the number field and rational function arithmetic; the public
# polynomial class lives in unipoly.py and is field-generic.

def _trim(c):
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


def _pdeg(c):
    return len(c) - 1  # -1 for the zero polynomial


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def _pneg(a):
    return tuple(-x for x in a)


def _psub(a, b):
    return _padd(a, _pneg(b))


def _pscale(a, s):
    if not s:
        return ()
    return tuple(x * s for x in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [mpq(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _pdivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db, lb = _pdeg(b), b[-1]
    q = [mpq(0)] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            c = c / lb
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    return _trim(q), _trim(a)


def _pgcd(a, b):
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if a:
        a = _pscale(a, 1 / a[-1])  # monic
    return a


def nf_invert(a, modulus):
    """Inverse of a modulo a monic polynomial, by the extended Euclid scheme.

    Both arguments are mpq coefficient tuples, low degree first.  Raises
    FieldError when a is a zero divisor; the message carries the common
    factor, which is a witness that the modulus is reducible.
    """
    a = _trim(a)
    if not a:
        raise ZeroDivisionError("inverse of zero")
    r0, r1 = _trim(modulus), a
    s0, s1 = (), (mpq(1),)
    while r1:
        q, r = _pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1))
    if _pdeg(r0) != 0:
        raise FieldError(
            "zero divisor: modulus has factor gcd = %s (modulus reducible)"
            % (r0,))
    return _pscale(s0, 1 / r0[0])


class NumberField:
    """Q[t]/(m(t)) for m monic of degree >= 1, elements are mpq tuples.

    Elements are fixed-length tuples of mpq (length = degree of the modulus,
    low power first).  Irreducibility of the modulus is not checked up
    front; inverting a zero divisor raises FieldError with the factor it
    found, per the nf_invert contract.
    """

    char = 0

    def __init__(self, modulus, name="t"):
        m = _trim(tuple(_as_mpq(c) for c in modulus))
        if _pdeg(m) < 1:
            raise FieldError("modulus must have degree >= 1")
        if m[-1] != 1:
            raise FieldError("modulus must be monic")
        self.modulus = m
        self.degree = _pdeg(m)
        self.name = name
        d = self.degree
        self.zero = (mpq(0),) * d
        self.one = (mpq(1),) + (mpq(0),) * (d - 1)
        # reduction table: t^(d+k) mod m for k = 0 .. d-2
        red = []
        cur = _psub((), m[:-1])  # t^d = -(m - t^d)
        cur = tuple(cur) + (mpq(0),) * (d - len(cur))
        for _ in range(d - 1):
            red.append(cur)
            nxt = [mpq(0)] * (d + 1)
            for i, c in enumerate(cur):
                nxt[i + 1] = c
            top = nxt[d]
            cur = tuple(nxt[i] + top * red[0][i] for i in range(d))
        self._red = red

    def _fix(self, c):
        c = tuple(c)
        d = self.degree
        if len(c) < d:
            return c + (mpq(0),) * (d - len(c))
        return c[:d]

    def gen(self):
        if self.degree == 1:
            return self._fix(_psub((), self.modulus[:-1]))
        return self._fix((mpq(0), mpq(1)))

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        d = self.degree
        if d == 1:
            return (a[0] * b[0],)
        full = [mpq(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    full[i + j] += x * y
        out = full[:d]
        for k in range(d, 2 * d - 1):
            c = full[k]
            if c:
                row = self._red[k - d]
                for i in range(d):
                    out[i] += c * row[i]
        return tuple(out)

    def inv(self, a):
        return self._fix(nf_invert(a, self.modulus))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return not any(a)

    def eq(self, a, b):
        return all(x == y for x, y in zip(a, b))

    def from_int(self, n):
        return self._fix((mpq(n),))

    def from_q(self, x):
        return self._fix((_as_mpq(x),))

    def fmt(self, a):
        terms = []
        for i, c in enumerate(a):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append("%s*%s" % (c, self.name))
            else:
                terms.append("%s*%s^%d" % (c, self.name, i))
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        mon = []
        for i, c in enumerate(self.modulus):
            if c:
                mon.append("%s*%s^%d" % (c, self.name, i))
        return "QQ[%s]/(%s)" % (self.name, " + ".join(mon))


class FunctionField:
    """Q(t), elements are (numerator, denominator) mpq coefficient tuples.

    Normal form: denominator monic, gcd(num, den) = 1, zero is ((), (1,)).
    Used for symbolic assembly of parameter-dependent systems; most entries
    in practice are polynomials (denominator 1) so the gcd stays cheap.
    """

    char = 0
    degree = 1

    def __init__(self, name="t"):
        self.name = name
        self.zero = ((), (mpq(1),))
        self.one = ((mpq(1),), (mpq(1),))

    def _norm(self, num, den):
        num, den = _trim(num), _trim(den)
        if not den:
            raise ZeroDivisionError("zero denominator in Q(%s)" % self.name)
        if not num:
            return ((), (mpq(1),))
        g = _pgcd(num, den)
        if _pdeg(g) > 0:
            num = _pdivmod(num, g)[0]
            den = _pdivmod(den, g)[0]
        lc = den[-1]
        if lc != 1:
            num = _pscale(num, 1 / lc)
            den = _pscale(den, 1 / lc)
        return (num, den)

    def gen(self):
        return ((mpq(0), mpq(1)), (mpq(1),))

    def from_poly(self, coeffs):
        return self._norm(tuple(_as_mpq(c) for c in coeffs), (mpq(1),))

    def add(self, a, b):
        return self._norm(
            _padd(_pmul(a[0], b[1]), _pmul(b[0], a[1])), _pmul(a[1], b[1]))

    def sub(self, a, b):
        return self._norm(
            _psub(_pmul(a[0], b[1]), _pmul(b[0], a[1])), _pmul(a[1], b[1]))

    def mul(self, a, b):
        return self._norm(_pmul(a[0], b[0]), _pmul(a[1], b[1]))

    def neg(self, a):
        return (_pneg(a[0]), a[1])

    def inv(self, a):
        if not a[0]:
            raise ZeroDivisionError("inverse of zero")
        return self._norm(a[1], a[0])

    def div(self, a, b):
        if not b[0]:
            raise ZeroDivisionError("division by zero")
        return self._norm(_pmul(a[0], b[1]), _pmul(a[1], b[0]))

    def is_zero(self, a):
        return not a[0]

    def eq(self, a, b):
        return a[0] == b[0] and a[1] == b[1]

    def from_int(self, n):
        if not n:
            return self.zero
        return ((mpq(n),), (mpq(1),))

    def from_q(self, x):
        x = _as_mpq(x)
        if not x:
            return self.zero
        return ((x,), (mpq(1),))

    def fmt(self, a):
        def side(c):
            terms = []
            for i, x in enumerate(c):
                if not x:
                    continue
                if i == 0:
                    terms.append(str(x))
                elif i == 1:
                    terms.append("%s*%s" % (x, self.name))
                else:
                    terms.append("%s*%s^%d" % (x, self.name, i))
            return " + ".join(terms) if terms else "0"
        if a[1] == (mpq(1),):
            return side(a[0])
        return "(%s)/(%s)" % (side(a[0]), side(a[1]))

    def eval_at(self, a, x):
        """Evaluate at a rational point; raises on a pole."""
        x = _as_mpq(x)
        num = mpq(0)
        for c in reversed(a[0]):
            num = num * x + c
        den = mpq(0)
        for c in reversed(a[1]):
            den = den * x + c
        if not den:
            raise ZeroDivisionError("pole at %s = %s" % (self.name, x))
        return num / den

    def __repr__(self):
        return "QQ(%s)" % self.name


def fpow(F, a, n):
    """a**n in the field F by binary powering, n >= 0."""
    if n < 0:
        raise ValueError("negative exponent")
    out = F.one
    while n:
        if n & 1:
            out = F.mul(out, a)
        a = F.mul(a, a)
        n >>= 1
    return out
