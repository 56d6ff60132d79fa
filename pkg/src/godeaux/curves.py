r"""Homogeneous plane curves with exact sparse coefficients.

A curve of degree d is a dict mapping exponent triples (e_x, e_y, e_z) with
e_x + e_y + e_z = d to nonzero field elements.  The canonical term order
everywhere (printing, golden files, coefficient vectors) is descending
lexicographic on the exponent triple, so x^d comes first and z^d last.

Golden curve files are plain text, one term per line:

    # optional comment
    15625 8 4 0

meaning 15625 * x^8 y^4 z^0.  Lines are ordered by the canonical term order
and coefficients are written exactly (integers or a/b fractions).
"""

from gmpy2 import mpq

from .fields import QQ, FieldError, PrimeField
from .linalg import kernel_basis, mat_vec


def term_key(mono):
    a, b, c = mono
    return (-a, -b, -c)


def monomial_basis(d):
    """All exponent triples of total degree d, canonical order."""
    out = []
    for a in range(d, -1, -1):
        for b in range(d - a, -1, -1):
            out.append((a, b, d - a - b))
    return out


def monomial_count(d):
    return (d + 1) * (d + 2) // 2


class PlaneCurve:
    """Sparse homogeneous polynomial in x, y, z over a field."""

    __slots__ = ("F", "degree", "terms")

    def __init__(self, F, degree, terms):
        self.F = F
        self.degree = int(degree)
        clean = {}
        for mono, c in terms.items():
            a, b, cc = mono
            if a < 0 or b < 0 or cc < 0 or a + b + cc != self.degree:
                raise ValueError(
                    "exponent triple %r not homogeneous of degree %d"
                    % (mono, self.degree))
            if not F.is_zero(c):
                clean[(int(a), int(b), int(cc))] = c
        self.terms = clean

    @classmethod
    def from_q_terms(cls, degree, terms, F=QQ):
        return cls(F, degree, {m: F.from_q(c) for m, c in terms.items()})

    @classmethod
    def zero(cls, degree, F=QQ):
        return cls(F, degree, {})

    @classmethod
    def line(cls, coeffs, F=QQ):
        """Linear form a*x + b*y + c*z from its coefficient triple."""
        a, b, c = coeffs
        return cls(F, 1, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})

    def is_zero(self):
        return not self.terms

    def ordered_terms(self):
        return sorted(self.terms.items(), key=lambda kv: term_key(kv[0]))

    def coeff(self, mono):
        return self.terms.get(tuple(mono), self.F.zero)

    def coeff_vector(self):
        """Coefficients along monomial_basis(degree)."""
        F = self.F
        return [self.terms.get(m, F.zero) for m in monomial_basis(self.degree)]

    @classmethod
    def from_coeff_vector(cls, degree, vec, F=QQ):
        basis = monomial_basis(degree)
        if len(vec) != len(basis):
            raise ValueError("coefficient vector length mismatch")
        return cls(F, degree, dict(zip(basis, vec)))

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValueError("degree mismatch in sum")
        F = self.F
        out = dict(self.terms)
        for m, c in other.terms.items():
            cur = out.get(m)
            s = F.add(cur, c) if cur is not None else c
            if F.is_zero(s):
                out.pop(m, None)
            else:
                out[m] = s
        return PlaneCurve(F, self.degree, out)

    def __sub__(self, other):
        return self + other.scale(self.F.neg(self.F.one))

    def scale(self, s):
        F = self.F
        if F.is_zero(s):
            return PlaneCurve(F, self.degree, {})
        return PlaneCurve(F, self.degree,
                          {m: F.mul(c, s) for m, c in self.terms.items()})

    def __mul__(self, other):
        F = self.F
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                p = F.mul(c1, c2)
                cur = out.get(m)
                s = F.add(cur, p) if cur is not None else p
                if F.is_zero(s):
                    out.pop(m, None)
                else:
                    out[m] = s
        return PlaneCurve(F, self.degree + other.degree, out)

    def evaluate(self, point):
        F = self.F
        x, y, z = point
        # power tables up to the degree
        d = self.degree
        px = [F.one]
        py = [F.one]
        pz = [F.one]
        for _ in range(d):
            px.append(F.mul(px[-1], x))
            py.append(F.mul(py[-1], y))
            pz.append(F.mul(pz[-1], z))
        out = F.zero
        for (a, b, c), coef in self.terms.items():
            t = F.mul(coef, F.mul(px[a], F.mul(py[b], pz[c])))
            out = F.add(out, t)
        return out

    def partial(self, var):
        """d/dx, d/dy or d/dz for var = 0, 1, 2."""
        F = self.F
        out = {}
        for m, c in self.terms.items():
            e = m[var]
            if e == 0:
                continue
            nm = list(m)
            nm[var] = e - 1
            nc = F.mul(c, F.from_int(e))
            if not F.is_zero(nc):
                out[tuple(nm)] = nc
        return PlaneCurve(F, self.degree - 1, out)

    def substitute(self, M):
        """f(M . (x,y,z)): compose with the linear map given by 3x3 rows M."""
        F = self.F
        lin = []
        for i in range(3):
            row = {}
            for j, mono in enumerate(((1, 0, 0), (0, 1, 0), (0, 0, 1))):
                if not F.is_zero(M[i][j]):
                    row[mono] = M[i][j]
            lin.append(PlaneCurve(F, 1, row))
        d = self.degree
        pows = []
        for i in range(3):
            table = [PlaneCurve(F, 0, {(0, 0, 0): F.one})]
            for _ in range(d):
                table.append(table[-1] * lin[i])
            pows.append(table)
        out = PlaneCurve(F, d, {})
        for (a, b, c), coef in self.terms.items():
            t = pows[0][a] * pows[1][b] * pows[2][c]
            out = out + t.scale(coef)
        return out

    def dehomogenize(self, chart):
        """Set the chart variable to one; returns {(i, j): coeff} in the two
        remaining variables, in their x,y,z order."""
        keep = [v for v in (0, 1, 2) if v != chart]
        out = {}
        F = self.F
        for m, c in self.terms.items():
            key = (m[keep[0]], m[keep[1]])
            cur = out.get(key)
            s = F.add(cur, c) if cur is not None else c
            if not F.is_zero(s):
                out[key] = s
            elif cur is not None:
                del out[key]
        return out

    def eq(self, other):
        if self.degree != other.degree:
            return False
        if set(self.terms) != set(other.terms):
            return False
        F = self.F
        return all(F.eq(c, other.terms[m]) for m, c in self.terms.items())

    def proportional_to(self, other):
        """Equal up to a nonzero scalar."""
        if self.degree != other.degree or self.is_zero() != other.is_zero():
            return False
        if self.is_zero():
            return True
        if set(self.terms) != set(other.terms):
            return False
        F = self.F
        m0 = next(iter(self.terms))
        ratio = F.div(other.terms[m0], self.terms[m0])
        return all(F.eq(F.mul(c, ratio), other.terms[m])
                   for m, c in self.terms.items())

    def fmt(self):
        names = ("x", "y", "z")
        parts = []
        for m, c in self.ordered_terms():
            mono = "*".join(
                "%s^%d" % (names[i], m[i]) if m[i] > 1 else names[i]
                for i in range(3) if m[i] > 0) or "1"
            s = self.F.fmt(c)
            if " " in s:
                s = "(%s)" % s
            parts.append("%s*%s" % (s, mono))
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        n = len(self.terms)
        return "PlaneCurve(deg %d, %d terms)" % (self.degree, n)


def normalize_integer(f):
    """Rescale a rational curve to coprime integer coefficients with the
    canonically first term positive."""
    if f.F is not QQ:
        raise FieldError("normalize_integer needs a rational curve")
    if f.is_zero():
        return f
    from gmpy2 import gcd, lcm
    den = 1
    for c in f.terms.values():
        den = lcm(den, c.denominator)
    num = 0
    for c in f.terms.values():
        num = gcd(num, (c * den).numerator)
    scale = mpq(den, num)
    first = min(f.terms, key=term_key)
    if f.terms[first] < 0:
        scale = -scale
    return f.scale(scale)


def reduce_mod_p(f, p):
    """Reduce coefficients mod p; FieldError lists offending denominators."""
    Fp = PrimeField(p)
    bad = []
    out = {}
    for m, c in f.terms.items():
        if int(c.denominator) % p == 0:
            bad.append((m, c))
    if bad:
        bad.sort(key=lambda t: term_key(t[0]))
        raise FieldError(
            "denominators not invertible mod %d at %s" %
            (p, ", ".join("%r: %s" % (m, c) for m, c in bad)))
    for m, c in f.terms.items():
        v = Fp.from_q(c)
        if v:
            out[m] = v
    return PlaneCurve(Fp, f.degree, out)


def write_curve_txt(f, path):
    lines = []
    for m, c in f.ordered_terms():
        lines.append("%s %d %d %d" % (f.F.fmt(c), m[0], m[1], m[2]))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_curve_txt(path, F=QQ):
    terms = {}
    degree = None
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 4:
                raise ValueError("bad curve line: %r" % raw)
            c = F.from_q(mpq(parts[0]))
            m = (int(parts[1]), int(parts[2]), int(parts[3]))
            d = m[0] + m[1] + m[2]
            if degree is None:
                degree = d
            elif degree != d:
                raise ValueError("mixed degrees in curve file")
            if m in terms:
                raise ValueError("duplicate monomial %r" % (m,))
            terms[m] = c
    if degree is None:
        raise ValueError("empty curve file")
    return PlaneCurve(F, degree, terms)


class ProjInvolution:
    """A projective involution given by a 3x3 matrix with M^2 = s*I.

    The normalized representative M/sqrt(s) (first nonzero entry positive)
    acts on curves by substitution; its +1/-1 eigenvalues drive the
    eigenspace split of the monomial space.  Requires sqrt(s) rational.
    """

    def __init__(self, M, F=QQ):
        self.F = F
        M = [[F.from_q(x) if F is QQ else x for x in row] for row in M]
        if len(M) != 3 or any(len(r) != 3 for r in M):
            raise ValueError("need a 3x3 matrix")
        # M^2 must be scalar
        M2 = [[_dot3(F, M[i], [M[0][j], M[1][j], M[2][j]]) for j in range(3)]
              for i in range(3)]
        s = None
        for i in range(3):
            for j in range(3):
                if i == j:
                    if s is None:
                        s = M2[i][i]
                    elif not F.eq(s, M2[i][i]):
                        raise FieldError("matrix does not square to a scalar")
                elif not F.is_zero(M2[i][j]):
                    raise FieldError("matrix does not square to a scalar")
        if F.is_zero(s):
            raise FieldError("singular involution matrix")
        if F is not QQ:
            raise FieldError(
                "involution normalization implemented over QQ only")
        r = F.sqrt(s)
        if r is None:
            raise FieldError(
                "square scalar %s has no rational square root; eigenvalues "
                "live outside the field" % F.fmt(s))
        inv = F.inv(r)
        N = [[F.mul(inv, x) for x in row] for row in M]
        first = next(x for row in N for x in row if not F.is_zero(x))
        if first < 0:
            N = [[F.neg(x) for x in row] for row in N]
        self.matrix = N

    def apply_point(self, p):
        return tuple(mat_vec(self.matrix, list(p), self.F))

    def apply_line(self, line_coeffs):
        """Image of the line {l . v = 0} under v -> Mv, as a coefficient
        triple: M^T l up to scale (M is its own inverse up to scalar)."""
        M = self.matrix
        return tuple(_dot3(self.F, [M[0][j], M[1][j], M[2][j]], line_coeffs)
                     for j in range(3))

    def apply_curve(self, f):
        return f.substitute(self.matrix)

    def is_diagonal(self):
        F = self.F
        return all(F.is_zero(self.matrix[i][j])
                   for i in range(3) for j in range(3) if i != j)


def _dot3(F, a, b):
    s = F.zero
    for x, y in zip(a, b):
        s = F.add(s, F.mul(x, y))
    return s


def eigen_split(d, inv):
    """Split the degree-d monomial space into the +1 and -1 eigenspaces of
    f -> f(Mv) for the normalized involution matrix M.

    Returns (plus_basis, minus_basis): lists of PlaneCurve, each list a
    basis of its eigenspace, ordered canonically.  For a diagonal M the
    basis vectors are single monomials; otherwise they are monomials in the
    eigencoordinate linear forms expanded back to x, y, z.
    """
    F = inv.F
    M = inv.matrix
    if inv.is_diagonal():
        plus, minus = [], []
        diag = [M[0][0], M[1][1], M[2][2]]
        for i, lam in enumerate(diag):
            if not (F.eq(lam, F.one) or F.eq(lam, F.neg(F.one))):
                raise FieldError("normalized involution has eigenvalue %s"
                                 % F.fmt(lam))
        for mono in monomial_basis(d):
            sign = 1
            for i in range(3):
                if mono[i] % 2 and F.eq(diag[i], F.neg(F.one)):
                    sign = -sign
            curve = PlaneCurve(F, d, {mono: F.one})
            (plus if sign > 0 else minus).append(curve)
        if len(plus) + len(minus) != monomial_count(d):
            raise AssertionError("eigenspace dimensions do not add up")
        return plus, minus
    # general case: eigencoordinates from the +1 and -1 kernels
    rows_p = [[F.sub(M[i][j], F.one if i == j else F.zero) for j in range(3)]
              for i in range(3)]
    rows_m = [[F.add(M[i][j], F.one if i == j else F.zero) for j in range(3)]
              for i in range(3)]
    vecs_p = kernel_basis(rows_p, 3, F)
    vecs_m = kernel_basis(rows_m, 3, F)
    if len(vecs_p) + len(vecs_m) != 3:
        raise FieldError("involution matrix is not diagonalizable over the "
                         "field")
    P = [[None] * 3 for _ in range(3)]
    signs = []
    for k, v in enumerate(vecs_p + vecs_m):
        for i in range(3):
            P[i][k] = v[i]
        signs.append(1 if k < len(vecs_p) else -1)
    from .linalg import mat_inv
    Pinv = mat_inv(P, F)
    # linear forms l_k(x) = (P^-1 x)_k
    forms = [PlaneCurve(F, 1, {
        (1, 0, 0): Pinv[k][0], (0, 1, 0): Pinv[k][1], (0, 0, 1): Pinv[k][2]})
        for k in range(3)]
    plus, minus = [], []
    d0 = PlaneCurve(F, 0, {(0, 0, 0): F.one})
    pow_tables = []
    for k in range(3):
        table = [d0]
        for _ in range(d):
            table.append(table[-1] * forms[k])
        pow_tables.append(table)
    for mono in monomial_basis(d):
        curve = pow_tables[0][mono[0]] * pow_tables[1][mono[1]] * \
            pow_tables[2][mono[2]]
        sign = 1
        for k in range(3):
            if mono[k] % 2 and signs[k] < 0:
                sign = -sign
        (plus if sign > 0 else minus).append(curve)
    if len(plus) + len(minus) != monomial_count(d):
        raise AssertionError("eigenspace dimensions do not add up")
    return plus, minus
