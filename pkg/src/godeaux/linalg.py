"""Exact linear algebra over the field protocol.

Two elimination engines share one pivot rule (first nonzero entry in a
column-major scan, rows never reordered except the pivot swap): a
fraction-free Bareiss echelon over the integers, used for every rational
matrix after clearing row denominators, and a plain division echelon for
arbitrary fields (number fields, GF(p), Q(t)).  Kernel bases are normalized
so the first nonzero coordinate of each basis vector is 1 and are ordered by
free column; reruns produce identical output by construction.
"""

from gmpy2 import mpq, mpz

from .fields import QQ


def _lcm(a, b):
    from gmpy2 import gcd
    return a // gcd(a, b) * b


def rows_to_integer(rows):
    """Clear denominators row by row; mpq rows in, mpz rows out.

    Row scaling leaves rank and right kernel unchanged.
    """
    out = []
    for row in rows:
        den = mpz(1)
        for x in row:
            d = x.denominator
            if d != 1:
                den = _lcm(den, d)
        out.append([mpz(x * den) for x in row])
    return out


def bareiss_echelon(rows):
    """Fraction-free echelon form of an integer matrix, in place.

    Returns (rank, pivot_cols, sign) where sign tracks row swaps (for
    determinants).  Entries below each pivot are zeroed; the rows above and
    including the pivot row carry the Bareiss minors.
    """
    if not rows:
        return 0, [], 1
    m, n = len(rows), len(rows[0])
    piv_cols = []
    sign = 1
    prev = mpz(1)
    r = 0
    for c in range(n):
        pr = -1
        for i in range(r, m):
            if rows[i][c]:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
            sign = -sign
        pv = rows[r][c]
        for i in range(r + 1, m):
            ric = rows[i][c]
            row_i, row_r = rows[i], rows[r]
            if ric:
                for j in range(c + 1, n):
                    row_i[j] = (pv * row_i[j] - ric * row_r[j]) // prev
                row_i[c] = mpz(0)
            else:
                # the Bareiss update degenerates to a scaling, but it must
                # still happen or the divisibility invariant breaks
                for j in range(c + 1, n):
                    row_i[j] = pv * row_i[j] // prev
        prev = pv
        piv_cols.append(c)
        r += 1
        if r == m:
            break
    return r, piv_cols, sign


def bareiss_det(rows):
    """Determinant of a square integer matrix (Bareiss, exact)."""
    if not rows:
        return mpz(1)
    n = len(rows)
    assert all(len(r) == n for r in rows)
    work = [[mpz(x) for x in row] for row in rows]
    rank, piv, sign = bareiss_echelon(work)
    if rank < n:
        return mpz(0)
    return sign * work[n - 1][n - 1]


def echelon(rows, F):
    """Division echelon form over an arbitrary field, in place.

    Pivot rows are rescaled to leading coefficient one.  Returns
    (rank, pivot_cols, sign).
    """
    if not rows:
        return 0, [], 1
    m, n = len(rows), len(rows[0])
    piv_cols = []
    sign = 1
    r = 0
    for c in range(n):
        pr = -1
        for i in range(r, m):
            if not F.is_zero(rows[i][c]):
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
            sign = -sign
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        row_r = rows[r]
        for i in range(r + 1, m):
            lead = rows[i][c]
            if not F.is_zero(lead):
                row_i = rows[i]
                rows[i] = [F.sub(row_i[j], F.mul(lead, row_r[j]))
                           for j in range(n)]
        piv_cols.append(c)
        r += 1
        if r == m:
            break
    return r, piv_cols, sign


def _kernel_from_echelon(rows, piv_cols, n, F):
    rank = len(piv_cols)
    piv_set = set(piv_cols)
    free = [c for c in range(n) if c not in piv_set]
    basis = []
    for fc in free:
        v = [F.zero] * n
        v[fc] = F.one
        # back substitution bottom-up over the pivot rows
        for r in range(rank - 1, -1, -1):
            c = piv_cols[r]
            if c > fc:
                continue
            s = F.zero
            row = rows[r]
            for j in range(c + 1, n):
                if not F.is_zero(v[j]) and not F.is_zero(row[j]):
                    s = F.add(s, F.mul(row[j], v[j]))
            v[c] = F.neg(F.div(s, row[c]))
        # leading coefficient one
        lead = next(x for x in v if not F.is_zero(x))
        if not F.eq(lead, F.one):
            inv = F.inv(lead)
            v = [F.mul(inv, x) for x in v]
        basis.append(v)
    return basis


def matrix_rank(rows, F=QQ):
    """Rank of a matrix given as a list of rows over F."""
    if not rows:
        return 0
    if F is QQ:
        work = rows_to_integer([[QQ.from_q(x) for x in row] for row in rows])
        rank, _, _ = bareiss_echelon(work)
        return rank
    work = [list(row) for row in rows]
    rank, _, _ = echelon(work, F)
    return rank


def kernel_basis(rows, ncols=None, F=QQ):
    """Right kernel basis of a matrix over F.

    Returns a list of length-ncols vectors, first nonzero coordinate 1,
    ordered by free column.  An empty matrix (no rows) has the full space
    as kernel, so ncols must be given in that case.
    """
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        basis = []
        for j in range(ncols):
            v = [F.zero] * ncols
            v[j] = F.one
            basis.append(v)
        return basis
    n = len(rows[0])
    if ncols is not None and ncols != n:
        raise ValueError("ncols mismatch")
    if F is QQ:
        work = rows_to_integer([[QQ.from_q(x) for x in row] for row in rows])
        rank, piv, _ = bareiss_echelon(work)
        qrows = [[mpq(x) for x in work[r]] for r in range(rank)]
        return _kernel_from_echelon(qrows, piv, n, QQ)
    work = [list(row) for row in rows]
    rank, piv, _ = echelon(work, F)
    return _kernel_from_echelon(work[:rank], piv, n, F)


def det(rows, F=QQ):
    """Determinant over F (Bareiss over the integers when F is QQ)."""
    n = len(rows)
    if n == 0:
        return F.one
    assert all(len(r) == n for r in rows)
    if F is QQ:
        qrows = [[QQ.from_q(x) for x in row] for row in rows]
        scale = mpq(1)
        work = []
        for row in qrows:
            den = mpz(1)
            for x in row:
                if x.denominator != 1:
                    den = _lcm(den, x.denominator)
            scale *= den
            work.append([mpz(x * den) for x in row])
        return mpq(bareiss_det(work)) / scale
    return det_field(rows, F)


def det_field(rows, F):
    """Determinant over an arbitrary field by division-free expansion for
    tiny sizes and pivot tracking otherwise."""
    n = len(rows)
    if n == 0:
        return F.one
    if n == 1:
        return rows[0][0]
    if n == 2:
        return F.sub(F.mul(rows[0][0], rows[1][1]),
                     F.mul(rows[0][1], rows[1][0]))
    if n == 3:
        a, b, c = rows[0]
        d, e, f = rows[1]
        g, h, i = rows[2]
        t1 = F.mul(a, F.sub(F.mul(e, i), F.mul(f, h)))
        t2 = F.mul(b, F.sub(F.mul(d, i), F.mul(f, g)))
        t3 = F.mul(c, F.sub(F.mul(d, h), F.mul(e, g)))
        return F.add(F.sub(t1, t2), t3)
    # general: track pivots during elimination without rescaling
    work = [list(row) for row in rows]
    out = F.one
    for c in range(n):
        pr = -1
        for i in range(c, n):
            if not F.is_zero(work[i][c]):
                pr = i
                break
        if pr < 0:
            return F.zero
        if pr != c:
            work[c], work[pr] = work[pr], work[c]
            out = F.neg(out)
        pv = work[c][c]
        out = F.mul(out, pv)
        inv = F.inv(pv)
        for i in range(c + 1, n):
            lead = work[i][c]
            if not F.is_zero(lead):
                fac = F.mul(lead, inv)
                work[i] = [F.sub(work[i][j], F.mul(fac, work[c][j]))
                           for j in range(n)]
    return out


def mat_mul(A, B, F=QQ):
    n, k = len(A), len(B)
    m = len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = F.zero
            for t in range(k):
                s = F.add(s, F.mul(A[i][t], B[t][j]))
            row.append(s)
        out.append(row)
    return out


def mat_vec(A, v, F=QQ):
    out = []
    for row in A:
        s = F.zero
        for a, x in zip(row, v):
            s = F.add(s, F.mul(a, x))
        out.append(s)
    return out


def mat_identity(n, F=QQ):
    return [[F.one if i == j else F.zero for j in range(n)]
            for i in range(n)]


def mat_inv(A, F=QQ):
    """Inverse of a small square matrix by augmented elimination."""
    n = len(A)
    work = [list(A[i]) + list(mat_identity(n, F)[i]) for i in range(n)]
    rank, piv, _ = echelon(work, F)
    if rank < n or piv != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    # back substitution to reduced form
    for r in range(n - 1, -1, -1):
        for i in range(r):
            lead = work[i][r]
            if not F.is_zero(lead):
                work[i] = [F.sub(work[i][j], F.mul(lead, work[r][j]))
                           for j in range(2 * n)]
    return [row[n:] for row in work]


def z2_kernel(rows):
    """Right kernel of a 0/1 matrix over GF(2).

    Input is a list of equal-length rows of integers (reduced mod 2);
    returns a list of 0/1 vectors forming a kernel basis, ordered by free
    column.  Rows are packed into Python ints internally.
    """
    if not rows:
        raise ValueError("z2_kernel of an empty matrix is the full space; "
                         "pass rows of zeros for that")
    n = len(rows[0])
    packed = []
    for row in rows:
        if len(row) != n:
            raise ValueError("ragged matrix")
        b = 0
        for j, x in enumerate(row):
            if int(x) & 1:
                b |= 1 << j
        packed.append(b)
    piv_cols = []
    r = 0
    m = len(packed)
    for c in range(n):
        bit = 1 << c
        pr = -1
        for i in range(r, m):
            if packed[i] & bit:
                pr = i
                break
        if pr < 0:
            continue
        packed[r], packed[pr] = packed[pr], packed[r]
        for i in range(m):
            if i != r and packed[i] & bit:
                packed[i] ^= packed[r]
        piv_cols.append(c)
        r += 1
        if r == m:
            break
    piv_set = set(piv_cols)
    basis = []
    for fc in range(n):
        if fc in piv_set:
            continue
        v = [0] * n
        v[fc] = 1
        bit = 1 << fc
        for r2, c in enumerate(piv_cols):
            if packed[r2] & bit:
                v[c] = 1
        basis.append(v)
    return basis


class ExactMatrix:
    """Thin wrapper bundling rows with their field."""

    def __init__(self, rows, F=QQ):
        self.rows = [list(r) for r in rows]
        self.F = F
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0

    def rank(self):
        return matrix_rank(self.rows, self.F)

    def kernel(self):
        return kernel_basis(self.rows, self.ncols or None, self.F)

    def det(self):
        if self.F is QQ:
            return det(self.rows, QQ)
        return det_field(self.rows, self.F)

    def __repr__(self):
        return "ExactMatrix(%d x %d over %r)" % (
            self.nrows, self.ncols, self.F)


def rank_mod_p(rows, p):
    """Rank over GF(p) of integer rows, with inline modular elimination.

    Much faster than echelon over PrimeField for the big dense matrices
    (the increments stay plain ints and rows update via comprehensions).
    """
    work = [[int(x) % p for x in row] for row in rows]
    m = len(work)
    if not m:
        return 0
    n = len(work[0])
    r = 0
    for c in range(n):
        piv = -1
        for i in range(r, m):
            if work[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        work[r], work[piv] = work[piv], work[r]
        row_r = work[r]
        inv = pow(row_r[c], -1, p)
        for i in range(r + 1, m):
            fi = work[i][c]
            if fi:
                mult = (fi * inv) % p
                work[i] = [(a - mult * b) % p
                           for a, b in zip(work[i], row_r)]
        r += 1
        if r == m:
            break
    return r
