"""Dense univariate polynomials, generic over the field protocol."""

from gmpy2 import mpq
import sympy

from .fields import QQ, FieldError, PrimeField, fpow


class UniPoly:
    """Coefficient tuple, low degree first, trailing zeros stripped."""

    __slots__ = ("F", "c")

    def __init__(self, F, coeffs):
        self.F = F
        c = list(coeffs)
        while c and F.is_zero(c[-1]):
            c.pop()
        self.c = tuple(c)

    @classmethod
    def from_ints(cls, coeffs, F=QQ):
        return cls(F, [F.from_int(n) for n in coeffs])

    @classmethod
    def zero(cls, F=QQ):
        return cls(F, [])

    @classmethod
    def x(cls, F=QQ):
        return cls(F, [F.zero, F.one])

    @classmethod
    def const(cls, a, F=QQ):
        return cls(F, [a])

    @property
    def degree(self):
        return len(self.c) - 1

    def is_zero(self):
        return not self.c

    @property
    def lc(self):
        if not self.c:
            raise ValueError("leading coefficient of zero")
        return self.c[-1]

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        if len(self.c) != len(other.c):
            return False
        return all(self.F.eq(a, b) for a, b in zip(self.c, other.c))

    def __hash__(self):
        return hash((len(self.c),))

    def __add__(self, other):
        F = self.F
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] = F.add(out[i], x)
        return UniPoly(F, out)

    def __sub__(self, other):
        F = self.F
        n = max(len(self.c), len(other.c))
        out = []
        za, zb = self.c, other.c
        for i in range(n):
            x = za[i] if i < len(za) else F.zero
            y = zb[i] if i < len(zb) else F.zero
            out.append(F.sub(x, y))
        return UniPoly(F, out)

    def __neg__(self):
        return UniPoly(self.F, [self.F.neg(x) for x in self.c])

    def __mul__(self, other):
        F = self.F
        if isinstance(other, UniPoly):
            if not self.c or not other.c:
                return UniPoly(F, [])
            out = [F.zero] * (len(self.c) + len(other.c) - 1)
            for i, x in enumerate(self.c):
                if not F.is_zero(x):
                    for j, y in enumerate(other.c):
                        out[i + j] = F.add(out[i + j], F.mul(x, y))
            return UniPoly(F, out)
        return UniPoly(F, [F.mul(x, other) for x in self.c])

    def scale(self, s):
        return UniPoly(self.F, [self.F.mul(x, s) for x in self.c])

    def divmod(self, other):
        F = self.F
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        a = list(self.c)
        db = other.degree
        lb_inv = F.inv(other.lc)
        q = [F.zero] * max(len(a) - db, 0)
        for i in range(len(a) - 1, db - 1, -1):
            c = a[i]
            if F.is_zero(c):
                continue
            c = F.mul(c, lb_inv)
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = F.sub(a[i - db + j], F.mul(c, other.c[j]))
        return UniPoly(F, q), UniPoly(F, a)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def monic(self):
        if self.is_zero():
            return self
        F = self.F
        if F.eq(self.lc, F.one):
            return self
        inv = F.inv(self.lc)
        return UniPoly(F, [F.mul(x, inv) for x in self.c])

    def deriv(self):
        F = self.F
        return UniPoly(F, [F.mul(x, F.from_int(i))
                           for i, x in enumerate(self.c)][1:])

    def eval(self, x):
        F = self.F
        out = F.zero
        for c in reversed(self.c):
            out = F.add(F.mul(out, x), c)
        return out

    def compose(self, other):
        F = self.F
        out = UniPoly(F, [])
        for c in reversed(self.c):
            out = out * other + UniPoly.const(c, F)
        return out

    def shift_var(self, a):
        """p(x + a)."""
        F = self.F
        return self.compose(UniPoly(F, [a, F.one]))

    def fmt(self, name="x"):
        F = self.F
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            c = self.c[i]
            if F.is_zero(c):
                continue
            s = F.fmt(c)
            if " " in s and i > 0:
                s = "(%s)" % s
            if i == 0:
                terms.append(s)
            elif i == 1:
                terms.append("%s*%s" % (s, name))
            else:
                terms.append("%s*%s^%d" % (s, name, i))
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return "UniPoly(%s)" % self.fmt()


def gcd(f, g):
    """Monic gcd by the Euclid scheme."""
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def gcd_many(polys):
    out = None
    for p in polys:
        out = p if out is None else gcd(out, p)
        if out.degree == 0 and not out.is_zero():
            return out.monic()
    return out


def resultant(f, g):
    """Resultant of two univariate polynomials over their common field.

    Euclidean remainder sequence with the classical lc/sign bookkeeping;
    validated against Sylvester determinants in the tests.
    """
    F = f.F
    if f.is_zero() or g.is_zero():
        return F.zero
    if f.degree == 0:
        return fpow(F, f.c[0], g.degree)
    if g.degree == 0:
        return fpow(F, g.c[0], f.degree)
    s = F.one
    a, b = f, g
    if a.degree < b.degree:
        if (a.degree * b.degree) % 2:
            s = F.neg(s)
        a, b = b, a
    while True:
        r = a % b
        if r.is_zero():
            return F.zero
        if (a.degree * b.degree) % 2:
            s = F.neg(s)
        s = F.mul(s, fpow(F, b.lc, a.degree - r.degree))
        a, b = b, r
        if b.degree == 0:
            return F.mul(s, fpow(F, b.c[0], a.degree))


def squarefree_part(f):
    """f divided by gcd(f, f'), monic.

    Exact in characteristic zero; over GF(p) the primes used in this
    package dwarf every degree in sight, so the same formula applies.
    """
    if f.is_zero():
        raise FieldError("squarefree part of zero")
    if f.degree == 0:
        return UniPoly.const(f.F.one, f.F)
    d = f.deriv()
    if d.is_zero():
        raise FieldError("vanishing derivative (p-th power input)")
    return (f // gcd(f, d)).monic()


def newton_interpolate(xs, ys, F=QQ):
    """Unique polynomial of degree < len(xs) through the given points."""
    n = len(xs)
    if n != len(ys) or n == 0:
        raise ValueError("need matching nonempty sample lists")
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            num = F.sub(coef[i], coef[i - 1])
            den = F.sub(xs[i], xs[i - j])
            coef[i] = F.div(num, den)
    poly = UniPoly.const(coef[n - 1], F)
    for i in range(n - 2, -1, -1):
        xi = UniPoly(F, [F.neg(xs[i]), F.one])
        poly = poly * xi + UniPoly.const(coef[i], F)
    return poly


# --- sympy bridge (univariate factorization only) ------------------------

_X = sympy.Symbol("x")


def _to_sympy(f):
    return sympy.Poly(
        [sympy.Rational(int(c.numerator), int(c.denominator))
         for c in reversed(f.c)], _X, domain="QQ")


def _from_sympy(p, F=QQ):
    coeffs = [mpq(c.p, c.q) for c in p.all_coeffs()]
    return UniPoly(F, list(reversed(coeffs)))


def q_gcd(f, g):
    """Monic gcd over QQ via sympy, for inputs too big for plain Euclid.

    The Euclid scheme is fine at the degrees local computations produce,
    but interpolated resultants reach degrees in the hundreds with huge
    coefficients, where the rational remainder sequence swells badly.
    """
    if f.F is not QQ or g.F is not QQ:
        raise FieldError("q_gcd needs rational polynomials")
    if f.is_zero():
        return g.monic() if not g.is_zero() else g
    if g.is_zero():
        return f.monic()
    h = sympy.gcd(_to_sympy(f), _to_sympy(g))
    return _from_sympy(sympy.Poly(h, _X, domain="QQ")).monic()


def q_factor(f):
    """Factor over QQ via sympy: returns (content, [(monic factor, mult)]).

    Factors are sorted by (degree, coefficient tuple) so output order is
    reproducible.
    """
    if f.F is not QQ:
        raise FieldError("q_factor needs a rational polynomial")
    if f.is_zero():
        raise FieldError("factor of zero")
    cont, facs = _to_sympy(f).factor_list()
    out = []
    for p, e in facs:
        q = _from_sympy(p)
        lc = q.lc
        cont = sympy.Rational(int(lc.numerator), int(lc.denominator)) ** e * cont
        out.append((q.monic(), int(e)))
    out.sort(key=lambda t: (t[0].degree, tuple(t[0].c)))
    return mpq(cont.p, cont.q), out


def rational_roots(f):
    """Sorted rational roots (with multiplicity dropped)."""
    _, facs = q_factor(f)
    roots = [-p.c[0] for p, _ in facs if p.degree == 1]
    roots.sort()
    return roots


def is_irreducible_q(f):
    if f.degree <= 0:
        return False
    _, facs = q_factor(f)
    return len(facs) == 1 and facs[0][1] == 1


def gfp_factor(f, p):
    """Factor over GF(p) via sympy: [(monic factor, mult)], sorted."""
    Fp = f.F
    if not isinstance(Fp, PrimeField) or Fp.p != p:
        raise FieldError("gfp_factor field mismatch")
    if f.is_zero():
        raise FieldError("factor of zero")
    sp = sympy.Poly([int(c) for c in reversed(f.c)], _X, modulus=p,
                    symmetric=False)
    _, facs = sp.factor_list()
    out = []
    for q, e in facs:
        coeffs = [int(c) % p for c in q.all_coeffs()]
        out.append((UniPoly(Fp, list(reversed(coeffs))).monic(), int(e)))
    out.sort(key=lambda t: (t[0].degree, tuple(t[0].c)))
    return out


def _nf_norm(g, K, s):
    """Norm of g(y - s*theta) down to Q[y], by interpolated resultants.

    Writes U(y, t) = sum_j A_j(t) (y - s t)^j with A_j the lift of the
    j-th coefficient of g, and returns Res_t(m, U) where m is the modulus
    of K.  Sample values of y with a t-degree drop are skipped so every
    sample evaluates the same generic Sylvester determinant.
    """
    from math import comb
    mq = mpq(-s)
    biv = {}
    for j, a in enumerate(g.c):
        for r in range(j + 1):
            cbin = mpq(comb(j, r)) * mq ** r
            if not cbin:
                continue
            for i, ai in enumerate(a):
                if not ai:
                    continue
                key = (i + r, j - r)
                cur = biv.get(key)
                biv[key] = ai * cbin if cur is None else cur + ai * cbin
    biv = {k: v for k, v in biv.items() if v}
    if not biv:
        raise ValueError("norm of zero")
    Dt = max(dt for dt, _dy in biv)
    lc_top = {}
    for (dt, dy), v in biv.items():
        if dt == Dt:
            lc_top[dy] = v
    lc_poly = UniPoly(QQ, [lc_top.get(i, mpq(0))
                           for i in range(max(lc_top) + 1)])
    m_poly = UniPoly(QQ, K.modulus)
    bound = K.degree * max(g.degree, 0)

    def stream():
        yield mpq(0)
        k = 1
        while True:
            yield mpq(k)
            yield mpq(-k)
            k += 1

    def sample(y0):
        tco = [mpq(0)] * (Dt + 1)
        yp = {0: mpq(1)}
        for (dt, dy), v in biv.items():
            p = yp.get(dy)
            if p is None:
                p = y0 ** dy
                yp[dy] = p
            tco[dt] += v * p
        return resultant(m_poly, UniPoly(QQ, tco))

    xs, ys = [], []
    src = stream()
    while len(xs) < bound + 1:
        y0 = next(src)
        if not lc_poly.eval(y0):
            continue
        xs.append(y0)
        ys.append(sample(y0))
    N = newton_interpolate(xs, ys, QQ)
    while True:
        y0 = next(src)
        if lc_poly.eval(y0):
            if N.eval(y0) != sample(y0):
                raise AssertionError("norm degree bound violated")
            return N


def nf_factor(u, K):
    """Factor over a number field by the norm method.

    Returns (leading coefficient, [(monic irreducible factor, mult)]),
    factors sorted by (degree, coefficients).  Needs the modulus of K
    irreducible; a reducible one surfaces as FieldError from inversion.
    """
    if u.is_zero():
        raise ValueError("factor of zero")
    if u.degree == 0:
        return u.c[0], []
    lc = u.lc
    um = u.monic()
    usf = (um // gcd(um, um.deriv())).monic()
    theta = K.gen()
    s = None
    N = None
    for cand in range(0, 2 * usf.degree * K.degree + 2):
        sv = (cand + 1) // 2 * (1 if cand % 2 == 0 else -1)
        N = _nf_norm(usf, K, sv)
        if gcd(N, N.deriv()).degree == 0:
            s = sv
            break
    if s is None:
        raise AssertionError("no squarefree norm shift found")
    _, h_facs = q_factor(N)
    shift = K.mul(K.from_int(s), theta)
    irreducibles = []
    for h, _e in h_facs:
        h_k = UniPoly(K, [K.from_q(c) for c in h.c])
        f = gcd(usf, h_k.shift_var(shift))
        if f.degree >= 1:
            irreducibles.append(f)
    out = []
    rem = um
    total = 0
    for f in irreducibles:
        mult = 0
        while True:
            q, r = rem.divmod(f)
            if not r.is_zero():
                break
            rem = q
            mult += 1
        if mult == 0:
            raise AssertionError("norm factor does not divide")
        out.append((f, mult))
        total += f.degree * mult
    if total != um.degree:
        raise AssertionError("number field factorization incomplete")
    out.sort(key=lambda t: (t[0].degree, tuple(t[0].c)))
    return lc, out


def nf_roots(u, K):
    """Roots of u lying in K, as [(element, multiplicity)], sorted."""
    _, facs = nf_factor(u, K)
    out = [(K.neg(f.c[0]), m) for f, m in facs if f.degree == 1]
    out.sort(key=lambda rm: rm[0])
    return out
