r"""Linear systems of curves with prescribed singularities.

LinearSystem stacks the condition rows of a scheme over the degree-d
monomial basis, optionally restricted to one eigenspace of an involution,
and answers rank/dimension/solution questions exactly.  ParamScheme moves
one scheme through a rational parameter; rank_drop_locus interpolates the
relevant determinant from exact specializations, factors it, strips
parameter values where the scheme itself degenerates, and certifies every
surviving factor by recomputing the rank at the root (over Q for rational
roots, over the number field cut out by the factor otherwise).  Nothing in
the reports depends on timing or thread count; pivot order and sample
streams are fixed.
"""

from gmpy2 import mpq

from .curves import (
    PlaneCurve, eigen_split, monomial_basis, monomial_count,
    normalize_integer)
from .fields import QQ, FunctionField, NumberField
from .linalg import echelon, kernel_basis, matrix_rank, rows_to_integer
from .singular import (
    ProjPoint, Scheme, SchemeError, SchemeItem, SingChain, Tangent,
    UnsupportedChain, _index_sets, conditions, line_coeffs, local_frame)
from .unipoly import UniPoly, newton_interpolate, q_factor, squarefree_part
from .verify import curve_is_reduced


def _chain_equivalent(F, ch1, ch2, inv):
    """ch2 matches the image of ch1 under the involution."""
    if ch1.mults != ch2.mults:
        return False
    for t1, t2 in zip(ch1.tangents, ch2.tangents):
        if t1.free != t2.free:
            return False
        if not t1.free:
            img = inv.apply_line(line_coeffs(t1.line))
            if not PlaneCurve.line(img, F).proportional_to(t2.line):
                return False
    return True


def orbit_decompose(scheme, inv, F=QQ):
    """Validate setwise stability and pick orbit representatives.

    Returns a list of (item, partner_index_or_None); partner None marks a
    fixed item.  Raises SchemeError naming the first offending point.
    """
    items = list(scheme)
    reps = []
    used = set()
    for i, it in enumerate(items):
        img = ProjPoint(inv.apply_point(it.point.coords), F)
        if img.eq(it.point):
            if not _chain_equivalent(F, it.chain, it.chain, inv):
                raise SchemeError(
                    "item at fixed point %s has unstable tangent data"
                    % it.point.fmt())
            if i not in used:
                reps.append((it, None))
                used.add(i)
            continue
        partner = None
        for j, other in enumerate(items):
            if other.point.eq(img):
                partner = j
                break
        if partner is None:
            raise SchemeError(
                "scheme not stable: image of %s is not a scheme point"
                % it.point.fmt())
        if not _chain_equivalent(F, it.chain, items[partner].chain, inv):
            raise SchemeError(
                "scheme not stable: chains differ along the orbit of %s"
                % it.point.fmt())
        if i not in used:
            reps.append((it, partner))
            used.add(i)
            used.add(partner)
    return reps


def scheme_closure(scheme_items, inv, F=QQ):
    """Close a list of items under the involution, checking consistency."""
    items = list(scheme_items)
    out = list(items)
    for it in items:
        img = ProjPoint(inv.apply_point(it.point.coords), F)
        hit = None
        for other in out:
            if other.point.eq(img):
                hit = other
                break
        if hit is None:
            mapped_tangents = []
            for tg in it.chain.tangents:
                if tg.free:
                    mapped_tangents.append(Tangent())
                else:
                    c = inv.apply_line(line_coeffs(tg.line))
                    mapped_tangents.append(Tangent(PlaneCurve.line(c, F)))
            if it.chain._virtual:
                ch = SingChain.virtual(it.chain.mults, mapped_tangents)
            else:
                ch = SingChain(it.chain.mults, mapped_tangents)
            out.append(SchemeItem(img, ch,
                                  (it.name + "'") if it.name else None))
        elif not _chain_equivalent(F, it.chain, hit.chain, inv):
            raise SchemeError(
                "involution image of %s conflicts with declared item at %s"
                % (it.point.fmt(), hit.point.fmt()))
    return Scheme(out)


class LinearSystem:
    """Curves of one degree through a singularity scheme, possibly inside
    an involution eigenspace."""

    def __init__(self, degree, scheme, sym=None, eigenspace="plus", F=QQ):
        if eigenspace not in ("plus", "minus"):
            raise ValueError("eigenspace must be 'plus' or 'minus'")
        self.degree = int(degree)
        self.scheme = scheme
        self.sym = sym
        self.eigenspace = eigenspace
        self.F = F
        self._rows = None
        self._basis = None
        self._rank = None

    def assemble(self):
        """Condition rows and the coefficient basis they act on."""
        if self._rows is not None:
            return self._rows, self._basis
        F = self.F
        d = self.degree
        if self.sym is not None and F is not QQ:
            raise ValueError(
                "eigenspace restriction is only set up over the rationals")
        if self.sym is None:
            rows = []
            for it in self.scheme:
                rows.extend(conditions(d, it.point, it.chain, F))
            basis = [PlaneCurve(F, d, {m: F.one})
                     for m in monomial_basis(d)]
        else:
            reps = orbit_decompose(self.scheme, self.sym, F)
            plus, minus = eigen_split(d, self.sym)
            basis = plus if self.eigenspace == "plus" else minus
            basis_vecs = [b.coeff_vector() for b in basis]
            rows = []
            for it, _partner in reps:
                for row in conditions(d, it.point, it.chain, F):
                    restricted = []
                    for vec in basis_vecs:
                        s = F.zero
                        for rv, bv in zip(row, vec):
                            if not F.is_zero(rv) and not F.is_zero(bv):
                                s = F.add(s, F.mul(rv, bv))
                        restricted.append(s)
                    rows.append(restricted)
        self._rows, self._basis = rows, basis
        return rows, basis

    def rank(self):
        if self._rank is None:
            rows, basis = self.assemble()
            self._rank = matrix_rank(rows, self.F) if rows else 0
        return self._rank

    def dimension(self):
        """Projective dimension: kernel dimension minus one (-1 = empty)."""
        rows, basis = self.assemble()
        return len(basis) - self.rank() - 1

    def solve_basis(self):
        """Curves spanning the solution space."""
        rows, basis = self.assemble()
        ker = kernel_basis(rows, len(basis), self.F)
        out = []
        for v in ker:
            curve = PlaneCurve(self.F, self.degree, {})
            for c, b in zip(v, basis):
                if not self.F.is_zero(c):
                    curve = curve + b.scale(c)
            out.append(curve)
        return out

    def solve_unique(self):
        """The unique projective solution; error if dimension != 0."""
        sols = self.solve_basis()
        if len(sols) != 1:
            raise SchemeError(
                "system has projective dimension %d, not 0"
                % (len(sols) - 1))
        f = sols[0]
        if self.F is QQ:
            f = normalize_integer(f)
        return f


def restrict_through_component(rows, degree, Z):
    """Rewrite degree-`degree` condition rows as rows on curves of degree
    degree - deg Z, for solutions of the shape Z * g."""
    F = Z.F
    small = monomial_basis(degree - Z.degree)
    prod_vecs = []
    for m in small:
        g = PlaneCurve(F, degree - Z.degree, {m: F.one})
        prod_vecs.append((Z * g).coeff_vector())
    out = []
    for row in rows:
        out.append([
            _dot(F, row, vec) for vec in prod_vecs])
    return out


def _dot(F, a, b):
    s = F.zero
    for x, y in zip(a, b):
        if not F.is_zero(x) and not F.is_zero(y):
            s = F.add(s, F.mul(x, y))
    return s


# --- parameter families ----------------------------------------------------

class ParamScheme:
    """A scheme whose points and tangent lines may depend polynomially on
    one rational parameter."""

    def __init__(self, degree, items, field=None, name="t"):
        self.degree = int(degree)
        self.FF = field or FunctionField(name)
        self.items = list(items)
        for it in self.items:
            for tg in it.chain.tangents:
                if tg.free:
                    raise UnsupportedChain(
                        "free tangents inside parameter families are not "
                        "supported")
                lc = line_coeffs(tg.line)
                val = self.FF.zero
                for a, b in zip(lc, it.point.coords):
                    val = self.FF.add(val, self.FF.mul(a, b))
                if not self.FF.is_zero(val):
                    raise SchemeError(
                        "tangent at %s leaves the point for generic "
                        "parameter" % it.point.fmt())

    def specialize_in(self, F, tval):
        """Specialized Scheme over F at parameter value tval (an F element
        fed to polynomial evaluation).  Raises SchemeError on degeneracy."""
        def ev(elem):
            num, den = elem
            nv = _horner(F, num, tval)
            dv = _horner(F, den, tval)
            if F.is_zero(dv):
                raise SchemeError("parameter value hits a pole")
            return F.div(nv, dv)

        items = []
        for it in self.items:
            coords = [ev(c) for c in it.point.coords]
            if all(F.is_zero(c) for c in coords):
                raise SchemeError(
                    "point %s collapses at this parameter value"
                    % it.point.fmt())
            p = ProjPoint(coords, F)
            tangents = []
            for tg in it.chain.tangents:
                lc = [ev(c) for c in line_coeffs(tg.line)]
                if all(F.is_zero(c) for c in lc):
                    raise SchemeError("tangent line collapses")
                tangents.append(Tangent(PlaneCurve.line(lc, F)))
            chain = SingChain(it.chain.mults, tangents) \
                if not it.chain._virtual else \
                SingChain.virtual(it.chain.mults, tangents)
            items.append(SchemeItem(p, chain, it.name))
        return Scheme(items)

    def specialize(self, tval):
        return self.specialize_in(QQ, QQ.from_q(tval))


def _horner(F, coeffs, x):
    out = F.zero
    for c in reversed(coeffs):
        out = F.add(F.mul(out, x), F.from_q(c))
    return out


class RankDropFactor:
    __slots__ = ("poly", "status", "detail", "rank_at_root")

    def __init__(self, poly, status, detail, rank_at_root=None):
        self.poly = poly
        self.status = status
        self.detail = detail
        self.rank_at_root = rank_at_root

    def __repr__(self):
        return "RankDropFactor(deg %d, %s)" % (self.poly.degree, self.status)


class RankDropReport:
    __slots__ = ("nrows", "ncols", "generic_rank", "generic_dimension",
                 "everything", "det_poly", "locus", "factors",
                 "samples_used")

    def summary(self):
        lines = []
        lines.append("generic rank %d (%d x %d), generic dimension %d"
                     % (self.generic_rank, self.nrows, self.ncols,
                        self.generic_dimension))
        if self.everything:
            lines.append("system solvable for every parameter value")
        lines.append("interpolated determinant degree %d, locus degree %d"
                     % (self.det_poly.degree, self.locus.degree))
        for f in self.factors:
            extra = "" if f.rank_at_root is None else \
                " (rank %d)" % f.rank_at_root
            lines.append("  factor deg %d [%s]%s %s"
                         % (f.poly.degree, f.status, extra, f.detail))
        return "\n".join(lines)


def _sample_stream():
    yield mpq(0)
    k = 1
    while True:
        yield mpq(k)
        yield mpq(-k)
        k += 1


def _row_degree(row):
    d = 0
    for num, den in row:
        if len(den) != 1:
            raise AssertionError("row not cleared of denominators")
        if num:
            d = max(d, len(num) - 1)
    return d


def _clear_row(FF, row):
    """Multiply a row of FF elements by the lcm of its denominators."""
    den = (mpq(1),)
    from .fields import _pdivmod, _pgcd, _pmul
    for _num, d in row:
        g = _pgcd(den, d)
        den = _pmul(_pdivmod(den, g)[0], d)
    out = []
    for num, d in row:
        extra = _pdivmod(den, d)[0]
        out.append((_pmul(num, extra), (mpq(1),)))
    return out


def rank_drop_locus(pscheme, prefilter_prime=None):
    """Parameter locus where the system's rank drops below generic.

    Assembles the condition matrix once over Q(t), interpolates the pivot
    minor determinant from exact rational specializations, factors it, and
    classifies every irreducible factor: scheme degeneracies are stripped
    with their reason, rational roots are certified by an exact rank
    computation of the freshly specialized system, and irrational factors
    by the same computation over Q[t]/(factor).  A certified drop whose
    unique solution turns out to be a non-reduced divisor is reported with
    status "non-reduced" and kept out of the locus, since no curve with
    the declared singularities appears there.  The optional prime only
    reorders the certification work, it never replaces the exact step.
    """
    FF = pscheme.FF
    d = pscheme.degree
    sym_rows = []
    for it in pscheme.items:
        sym_rows.extend(conditions(d, it.point, it.chain, FF))
    sym_rows = [_clear_row(FF, row) for row in sym_rows]
    ncols = monomial_count(d)
    nrows = len(sym_rows)

    def eval_rows(tval):
        out = []
        for row in sym_rows:
            out.append([_horner(QQ, num, tval) for num, _den in row])
        return out

    # generic rank from samples; a sample rank is a lower bound for the
    # generic rank, and full rank at any sample settles the question
    stream = _sample_stream()
    target = min(nrows, ncols)
    r0 = 0
    t_best = None
    pivot_rows = None
    for _ in range(7):
        t0 = next(stream)
        piv = _pivot_row_indices(eval_rows(t0))
        if len(piv) > r0:
            r0, t_best, pivot_rows = len(piv), t0, piv
        if r0 == target:
            break
    if r0 < target:
        # deficient samples are not conclusive; certify the generic rank
        # over Q(t) and, if the samples were all unlucky, keep sampling
        # until one attains it
        r_ff = _ff_rank(FF, [list(row) for row in sym_rows])
        while r0 < r_ff:
            t0 = next(stream)
            piv = _pivot_row_indices(eval_rows(t0))
            if len(piv) > r0:
                r0, t_best, pivot_rows = len(piv), t0, piv
    if pivot_rows is None:
        raise SchemeError("zero system; no rank structure to analyze")
    # a square submatrix generically of full rank r0: pivot rows, then
    # pivot columns of the transposed selection at the witnessing sample
    sub_rows_sym = [sym_rows[i] for i in pivot_rows]
    sub_eval = [[_horner(QQ, num, t_best) for num, _d in row]
                for row in sub_rows_sym]
    sel_cols = _pivot_row_indices(_transpose(sub_eval))
    if len(sel_cols) != r0:
        raise SchemeError("pivot selection failed to reach generic rank")
    minor_sym = [[row[c] for c in sel_cols] for row in sub_rows_sym]

    D = sum(_row_degree(row) for row in minor_sym)
    xs, ys = [], []
    stream = _sample_stream()
    for _ in range(D + 1):
        t0 = next(stream)
        rows = [[_horner(QQ, num, t0) for num, _d in row]
                for row in minor_sym]
        xs.append(t0)
        ys.append(_det_q(rows))
    P = newton_interpolate(xs, ys, QQ)
    # safety sample beyond the bound
    t_extra = next(stream)
    rows = [[_horner(QQ, num, t_extra) for num, _d in row]
            for row in minor_sym]
    if P.eval(t_extra) != _det_q(rows):
        raise AssertionError("determinant degree bound violated")

    factors = []
    locus = UniPoly.const(QQ.one)
    if P.is_zero():
        # the selected minor vanishes identically; the generic rank logic
        # above guarantees this cannot happen for r0 reached at a sample
        raise AssertionError("generically nonsingular minor interpolated "
                             "to zero")
    sq = squarefree_part(P)
    _content, irr = q_factor(sq)
    order = []
    if prefilter_prime:
        order = _modp_candidate_order(pscheme, irr, r0, prefilter_prime)
    else:
        order = list(range(len(irr)))
    for idx in order:
        q, _mult = irr[idx]
        if q.degree == 0:
            continue
        fac = _certify_factor(pscheme, q, r0)
        factors.append(fac)
        if fac.status == "confirmed":
            locus = locus * q
    rep = RankDropReport()
    rep.nrows, rep.ncols = nrows, ncols
    rep.generic_rank = r0
    rep.generic_dimension = ncols - r0 - 1
    rep.everything = r0 < ncols
    rep.det_poly = _int_normalize_poly(P)
    rep.locus = _int_normalize_poly(locus)
    rep.factors = factors
    rep.samples_used = D + 2
    return rep


def _certify_factor(pscheme, q, r0):
    d = pscheme.degree
    if q.degree == 1:
        F, tval = QQ, -q.c[0]
        where = "at t = %s" % tval
    else:
        F = NumberField([c for c in q.c], name="t")
        tval = F.gen()
        where = "over the degree-%d root field" % q.degree
    try:
        scheme = pscheme.specialize_in(F, tval)
    except SchemeError as e:
        prefix = "t = %s: " % tval if q.degree == 1 \
            else "over splitting field: "
        return RankDropFactor(q, "degenerate", prefix + str(e))
    sys_k = LinearSystem(d, scheme, F=F)
    r = sys_k.rank()
    if r >= r0:
        return RankDropFactor(
            q, "spurious",
            "rank stays %d %s (assembly artifact)" % (r, where), r)
    # the drop is real; it only counts when the opened system contains an
    # honest curve, so a unique solution that is a non-reduced divisor (a
    # polynomial with a repeated factor) is set aside with its own status
    if sys_k.dimension() == 0:
        if not curve_is_reduced(sys_k.solve_unique()):
            return RankDropFactor(
                q, "non-reduced",
                "unique solution %s is a non-reduced divisor" % where, r)
    return RankDropFactor(
        q, "confirmed", "rank drops to %d %s" % (r, where), r)


def _modp_candidate_order(pscheme, irr, r0, p):
    """Cheap mod-p rank probes to sort candidates (most likely drops
    first).  Ordering only; certification still runs for every factor."""
    from .fields import PrimeField
    scores = []
    Fp = PrimeField(p)
    for idx, (q, _m) in enumerate(irr):
        score = 0
        if q.degree == 1:
            try:
                t0 = Fp.from_q(-q.c[0])
                scheme = pscheme.specialize_in(Fp, t0)
                rows = []
                for it in scheme:
                    rows.extend(conditions(pscheme.degree, it.point,
                                           it.chain, Fp))
                if matrix_rank(rows, Fp) < r0:
                    score = 1
            except Exception:
                score = 0
        scores.append((-score, idx))
    scores.sort()
    return [idx for _s, idx in scores]


def _transpose(rows):
    return [list(col) for col in zip(*rows)]


def _pivot_row_indices(rows):
    """Indices of the rows that carry pivots under the standard scan."""
    work = rows_to_integer([[QQ.from_q(x) for x in row] for row in rows])
    m = len(work)
    n = len(work[0]) if m else 0
    order = list(range(m))
    from gmpy2 import mpz
    prev = mpz(1)
    r = 0
    out = []
    for c in range(n):
        pr = -1
        for i in range(r, m):
            if work[i][c]:
                pr = i
                break
        if pr < 0:
            continue
        work[r], work[pr] = work[pr], work[r]
        order[r], order[pr] = order[pr], order[r]
        pv = work[r][c]
        for i in range(r + 1, m):
            ric = work[i][c]
            if ric:
                for j in range(c + 1, n):
                    work[i][j] = (pv * work[i][j] - ric * work[r][j]) // prev
                work[i][c] = mpz(0)
            else:
                for j in range(c + 1, n):
                    work[i][j] = pv * work[i][j] // prev
        prev = pv
        out.append(order[r])
        r += 1
        if r == m:
            break
    return out


def _det_q(rows):
    from .linalg import det
    return det(rows)


def _int_normalize_poly(p):
    """Scale a rational polynomial to coprime integers, leading > 0."""
    if p.is_zero():
        return p
    from gmpy2 import gcd, lcm
    den = 1
    for c in p.c:
        den = lcm(den, c.denominator)
    num = 0
    for c in p.c:
        num = gcd(num, (c * den).numerator)
    s = mpq(den, num)
    if p.lc < 0:
        s = -s
    return p.scale(s)


# --- free tangent enumeration ----------------------------------------------

class FreeBranch:
    """One candidate tangent direction for a free chain."""

    __slots__ = ("kind", "tangent", "min_poly", "dimension", "curves")

    def __init__(self, kind, tangent=None, min_poly=None, dimension=None,
                 curves=None):
        self.kind = kind            # "rational" | "algebraic" | "everything"
        self.tangent = tangent      # PlaneCurve line (rational case)
        self.min_poly = min_poly    # UniPoly (algebraic case)
        self.dimension = dimension  # projective dimension on the branch
        self.curves = curves or []

    def __repr__(self):
        return "FreeBranch(%s, dim %r)" % (self.kind, self.dimension)


def solve_with_free_tangent(degree, scheme, F=QQ):
    """Enumerate tangent directions for a scheme with one free chain.

    The free condition set is direction dependent, so there is no flat row
    description; instead the first level is imposed, the leftover kernel is
    intersected with the level-two rows for a symbolic direction, and the
    parameter values where that intersection jumps are found by a gcd of
    maximal minors.  Rational candidate directions come back as solved
    branches; irrational ones carry their minimal polynomial.
    """
    free_items = [it for it in scheme
                  if any(t.free for t in it.chain.tangents)]
    if len(free_items) != 1:
        raise UnsupportedChain(
            "exactly one free-tangent item supported, got %d"
            % len(free_items))
    it_free = free_items[0]
    rows = []
    for it in scheme:
        if it is it_free:
            rows.extend(conditions(degree, it.point,
                                   SingChain([it.chain.mults[0]]), F))
        else:
            rows.extend(conditions(degree, it.point, it.chain, F))
    ncols = monomial_count(degree)
    ker = kernel_basis(rows, ncols, F)
    if not ker:
        return []
    k = len(ker)
    FF = FunctionField("w")
    # point and frame over Q(w)
    p_ff = ProjPoint([FF.from_q(c) for c in it_free.point.coords], FF)
    A = local_frame(ProjPoint(it_free.point.coords, F), None, F)
    w = FF.gen()

    def direction_line(field, a, b):
        # line joining p and A . (a, b, 0)
        q = [field.add(field.mul(field.from_q(A[i][0]), a),
                       field.mul(field.from_q(A[i][1]), b))
             for i in range(3)]
        pc = [field.from_q(c) for c in it_free.point.coords]
        l = (field.sub(field.mul(pc[1], q[2]), field.mul(pc[2], q[1])),
             field.sub(field.mul(pc[2], q[0]), field.mul(pc[0], q[2])),
             field.sub(field.mul(pc[0], q[1]), field.mul(pc[1], q[0])))
        return PlaneCurve.line(l, field)

    branches = []
    seen_tangents = []

    def try_fixed_direction(line):
        for prev in seen_tangents:
            if prev.proportional_to(line):
                return
        seen_tangents.append(line)
        full = []
        for it in scheme:
            if it is it_free:
                ch = SingChain(it_free.chain.mults, [Tangent(line)])
                full.extend(conditions(degree, it.point, ch, F))
            else:
                full.extend(conditions(degree, it.point, it.chain, F))
        kb = kernel_basis(full, ncols, F)
        if kb:
            curves = [PlaneCurve.from_coeff_vector(degree, v, F)
                      for v in kb]
            branches.append(FreeBranch(
                "rational", tangent=line, dimension=len(kb) - 1,
                curves=curves))

    # symbolic direction (1, w); matrix of level-two rows against the kernel
    line_w = direction_line(FF, FF.one, w)
    ch_w = SingChain(it_free.chain.mults, [Tangent(line_w)])
    rows_w = conditions(degree, p_ff, ch_w, FF)
    level1_count = SingChain([it_free.chain.mults[0]]).count_conditions()
    rows_w = rows_w[level1_count:]
    R = []
    for row in rows_w:
        R.append([
            _dot_ff(FF, row, kv) for kv in ker])
    r_gen = _ff_rank(FF, R)
    if r_gen < k:
        # solutions exist for every direction
        branches.append(FreeBranch("everything", dimension=k - r_gen - 1))
        return branches
    # candidates: gcd of numerators of all k x k minors
    minors = _all_minors_ff(FF, R, k)
    g = None
    for m in minors:
        num = m[0]
        poly = UniPoly(QQ, num)
        g = poly if g is None else _poly_gcd(g, poly)
        if g.degree == 0 and not g.is_zero():
            break
    if g is not None and g.degree > 0:
        sq = squarefree_part(g)
        _c, irr = q_factor(sq)
        for qf, _m in irr:
            if qf.degree == 1:
                w0 = -qf.c[0]
                try_fixed_direction(direction_line(F, F.one, F.from_q(w0)))
            else:
                branches.append(FreeBranch("algebraic", min_poly=qf))
    # directions where the symbolic frame itself degenerates are invisible
    # to the minor gcd; probe them individually
    frame_w = local_frame(p_ff, line_w, FF)
    fdet = _det3_ff(FF, frame_w)
    fnum = UniPoly(QQ, fdet[0])
    if not fnum.is_zero() and fnum.degree > 0:
        from .unipoly import rational_roots
        for w0 in rational_roots(fnum):
            try_fixed_direction(direction_line(F, F.one, F.from_q(w0)))
    # the direction missed by the (1, w) chart
    try_fixed_direction(direction_line(F, F.zero, F.one))
    return branches


def _dot_ff(FF, row, kvec):
    s = FF.zero
    for rv, kv in zip(row, kvec):
        if FF.is_zero(rv):
            continue
        s = FF.add(s, FF.mul(rv, FF.from_q(kv)))
    return s


def _ff_rank(FF, rows):
    if not rows:
        return 0
    work = [list(r) for r in rows]
    rank, _piv, _sign = echelon(work, FF)
    return rank


def _all_minors_ff(FF, rows, k):
    from itertools import combinations
    from .linalg import det_field
    out = []
    for sel in combinations(range(len(rows)), k):
        sub = [rows[i] for i in sel]
        out.append(det_field(sub, FF))
    return out


def _poly_gcd(a, b):
    from .unipoly import gcd as ugcd
    return ugcd(a, b)


def _det3_ff(FF, rows):
    from .singular import _det3_cols
    cols = [tuple(rows[r][c] for r in range(3)) for c in range(3)]
    return _det3_cols(FF, cols[0], cols[1], cols[2])


# --- symmetric condition counting ------------------------------------------

def _eigenvalue_on(F, M, v):
    """The scalar e with M v = e v, or None if v is not an eigenvector."""
    w = [F.zero, F.zero, F.zero]
    for i in range(3):
        s = F.zero
        for j in range(3):
            s = F.add(s, F.mul(M[i][j], v[j]))
        w[i] = s
    e = None
    for wi, vi in zip(w, v):
        if not F.is_zero(vi):
            e = F.div(wi, vi)
            break
    if e is None:
        return None
    for wi, vi in zip(w, v):
        if not F.eq(wi, F.mul(e, vi)):
            return None
    return e


def expected_conditions_sym(scheme, inv, degree, eigenspace="plus", F=QQ):
    """Condition count against one eigenspace, counted once per orbit.

    An orbit pair contributes its full count once.  At a fixed point the
    local frame columns are (generically) eigenvectors of the involution
    with eigenvalues e1, e2, e3, and the functional c_ij vanishes
    identically on the chosen eigenspace unless e1^i e2^j e3^(d-i-j)
    matches the space's sign; only the surviving pairs are counted.  If a
    frame column fails to be an eigenvector no reduction is claimed for
    that item.
    """
    want = F.one if eigenspace == "plus" else F.from_int(-1)
    M = inv.matrix
    total = 0
    for it, partner in orbit_decompose(scheme, inv, F):
        full = it.chain.count_conditions()
        for tg in it.chain.tangents:
            if tg.free:
                full -= 1
        if partner is not None:
            total += full
            continue
        if any(tg.free for tg in it.chain.tangents):
            total += full
            continue
        tangent_line = it.chain.tangents[0].line if it.chain.tangents \
            else None
        frame = local_frame(it.point, tangent_line, F)
        cols = [tuple(frame[r][c] for r in range(3)) for c in range(3)]
        evs = [_eigenvalue_on(F, M, col) for col in cols]
        if any(e is None for e in evs):
            total += full
            continue
        e1, e2, e3 = evs
        level1, level2 = _index_sets(it.chain.mults)
        kept = 0

        def spow(e, n):
            # eigenvalues of an involution are +-1, only parity matters
            return e if n % 2 else F.one

        for (i, j) in level1 + level2:
            val = F.mul(F.mul(spow(e1, i), spow(e2, j)),
                        spow(e3, degree - i - j))
            if F.eq(val, want):
                kept += 1
        total += kept
    return total


def virtual_dimension_sym(degree, scheme, inv, eigenspace="plus"):
    """Expected projective dimension inside one eigenspace."""
    plus, minus = eigen_split(degree, inv)
    space = plus if eigenspace == "plus" else minus
    return len(space) - expected_conditions_sym(
        scheme, inv, degree, eigenspace) - 1
