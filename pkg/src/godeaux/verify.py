"""Exact verification of declared singularity data.

Three independent checks live here, all in exact arithmetic:

* ``chain_verify`` expands a curve locally at each declared singular point
  and follows the infinitely-near chain through explicit blow-ups,
  classifying every item as exact, worse than declared, or insufficient.

* ``singular_locus_scan`` finds the full singular locus of a plane curve
  from scratch (no declared data), including points with algebraic
  coordinates, via interpolated resultants and gcd confirmation.

* ``absolute_factor_count`` counts irreducible factors over the algebraic
  closure by the kernel dimension of a first-order differential system,
  so irreducibility over the complex numbers becomes a rank computation.

Everything returns report objects with a ``summary()`` method; nothing
here prints or truncates a series.
"""

from math import comb

from .fields import QQ, NumberField, PrimeField, FieldError, fpow
from .linalg import rows_to_integer, rank_mod_p, matrix_rank
from .unipoly import (UniPoly, gcd, gcd_many, q_gcd, resultant,
                      newton_interpolate, q_factor, nf_factor, gfp_factor)
from .curves import PlaneCurve
from .singular import ProjPoint, SchemeError, local_frame

__all__ = [
    "local_series", "multiplicity_at", "chain_verify", "ChainVerdict",
    "VerifyReport", "singular_locus_scan", "ScanReport", "ExtensionPoint",
    "absolute_factor_count", "FactorCountResult", "geometric_genus",
    "delta_invariant", "EXACT", "WORSE", "INSUFFICIENT",
]


# ---------------------------------------------------------------------------
# local expansion


def local_series(f, point, tangent_line=None):
    """Affine expansion of f centred at the point.

    Returns a dict {(i, j): coeff} in local coordinates (u, v) with the
    point at the origin.  When a tangent line is supplied the frame puts
    it along {v = 0}, so tangency shows up as missing low v-powers.
    """
    A = local_frame(point, tangent_line, F=f.F)
    return f.substitute(A).dehomogenize(2)


def _series_mult(ser):
    if not ser:
        return None
    return min(i + j for (i, j) in ser)


def multiplicity_at(f, point):
    """Exact multiplicity of the curve at a point (0 when off the curve)."""
    mu = _series_mult(local_series(f, point))
    if mu is None:
        raise SchemeError("curve vanishes identically")
    return mu


def _clean(ser, F):
    return {k: v for k, v in ser.items() if not F.is_zero(v)}


def _shear_series(ser, w0, F):
    """Substitute v -> v + w0*u in a local series dict."""
    out = {}
    for (i, j), c in ser.items():
        for k in range(j + 1):
            key = (i + j - k, k)
            add = F.mul(c, F.mul(F.from_int(comb(j, k)),
                                 fpow(F, w0, j - k)))
            cur = out.get(key)
            cur = add if cur is None else F.add(cur, add)
            if F.is_zero(cur):
                out.pop(key, None)
            else:
                out[key] = cur
    return out


def _blow_up(ser, m):
    """Strict transform in the chart that keeps the {v = 0} direction.

    (u, v) -> (u, u*v) divided by u^m; the exceptional curve is {u = 0}
    and the direction v = w0*u sits at (0, w0).
    """
    return {(i + j - m, j): c for (i, j), c in ser.items()}


def _blow_up_other(ser, m):
    """Strict transform in the complementary chart (u, v) -> (u*v, v),
    which keeps the direction {u = 0} at the origin."""
    return {(i, i + j - m): c for (i, j), c in ser.items()}


def _cone_poly(ser, m, F):
    """Tangent cone as a polynomial in w = v/u (degree <= m)."""
    cs = [F.zero] * (m + 1)
    for (i, j), c in ser.items():
        if i + j == m:
            cs[j] = c
    return UniPoly(F, cs)


def _single_direction(ser, m, F):
    """If the tangent cone is one m-fold direction, name it.

    Returns ("w", w0) for the direction v = w0*u, ("u",) for the
    direction {u = 0}, or None when the cone has several directions.
    """
    t = _cone_poly(ser, m, F)
    if t.degree == 0:
        # cone = c*u^m, which vanishes only on {u = 0}
        return ("u",)
    if t.degree < m:
        # u^(m - deg t) divides the cone along with the roots of t
        return None
    lc = t.c[-1]
    w0 = F.div(F.neg(t.c[m - 1]), F.mul(F.from_int(m), lc))
    for k in range(m + 1):
        want = F.mul(lc, F.mul(F.from_int(comb(m, k)),
                               fpow(F, F.neg(w0), m - k)))
        if not F.eq(t.c[k], want):
            return None
    return ("w", w0)


def _extends_equal(ser, m, F):
    """Does the chain continue with another point of multiplicity m?

    True when the tangent cone is a single direction and the strict
    transform still has multiplicity m at the matching point of the
    exceptional curve.
    """
    d = _single_direction(ser, m, F)
    if d is None:
        return False
    if d[0] == "u":
        nxt = _blow_up_other(ser, m)
    else:
        sheared = ser if F.is_zero(d[1]) else _shear_series(ser, d[1], F)
        nxt = _blow_up(sheared, m)
    mu = _series_mult(_clean(nxt, F))
    return mu is not None and mu >= m


EXACT = "EXACT"
WORSE = "WORSE"
INSUFFICIENT = "INSUFFICIENT"

_SEVERITY = {EXACT: 0, WORSE: 1, INSUFFICIENT: 2}


class ChainVerdict:
    """Outcome of checking one declared chain item."""

    __slots__ = ("point", "declared", "status", "detail")

    def __init__(self, point, declared, status, detail):
        self.point = point
        self.declared = declared
        self.status = status
        self.detail = detail

    def __repr__(self):
        return "ChainVerdict(%s, %s, %s)" % (
            self.point.fmt(), list(self.declared), self.status)


class VerifyReport:
    __slots__ = ("verdicts",)

    def __init__(self, verdicts):
        self.verdicts = verdicts

    @property
    def status(self):
        worst = EXACT
        for v in self.verdicts:
            if _SEVERITY[v.status] > _SEVERITY[worst]:
                worst = v.status
        return worst

    def all_exact(self):
        return all(v.status == EXACT for v in self.verdicts)

    def summary(self):
        lines = ["chain check: %s" % self.status]
        for v in self.verdicts:
            lines.append("  %s  declared %s  %s  (%s)" % (
                v.point.fmt(), list(v.declared), v.status, v.detail))
        return "\n".join(lines)


def _verify_item(f, point, chain, F):
    declared = chain.mults
    if chain.tangents and chain.tangents[0].free:
        raise SchemeError("free tangents have no fixed chain to verify")
    tl = chain.tangents[0].line if chain.tangents else None
    ser = _clean(local_series(f, point, tl), F)

    for level, m_dec in enumerate(declared):
        mu = _series_mult(ser)
        if mu is None:
            return ChainVerdict(point, declared, WORSE,
                                "a whole branch follows the chain")
        if mu != m_dec:
            status = INSUFFICIENT if mu < m_dec else WORSE
            return ChainVerdict(
                point, declared, status,
                "multiplicity %d at level %d, declared %d" % (
                    mu, level, m_dec))
        if level + 1 < len(declared):
            # the frame put the declared tangent along {v = 0}, which the
            # blow-up chart keeps at w = 0, so no shear is needed; but the
            # direction must actually lie in the tangent cone.
            cone = _cone_poly(ser, mu, F)
            if not F.is_zero(cone.c[0]):
                return ChainVerdict(
                    point, declared, INSUFFICIENT,
                    "declared tangent is not in the tangent cone "
                    "at level %d" % level)
            ser = _clean(_blow_up(ser, mu), F)
    if declared[-1] >= 2 and _extends_equal(ser, declared[-1], F):
        return ChainVerdict(
            point, declared, WORSE,
            "chain continues at multiplicity %d past the declared end"
            % declared[-1])
    return ChainVerdict(point, declared, EXACT, "all levels match")


def chain_verify(f, scheme):
    """Check every declared chain of the scheme against the curve."""
    F = f.F
    verdicts = [_verify_item(f, it.point, it.chain, F) for it in scheme]
    return VerifyReport(verdicts)


# ---------------------------------------------------------------------------
# full singular locus scan


def _factor_over(u, F):
    """Monic irreducible factors with multiplicity over QQ, GF(p) or a
    number field."""
    if F is QQ:
        return q_factor(u)[1]
    if isinstance(F, PrimeField):
        return gfp_factor(u, F.p)
    if isinstance(F, NumberField):
        return nf_factor(u, F)[1]
    raise FieldError("no factorization routine over %r" % (F,))


def _as_y_poly(dic, F):
    """Bivariate dict -> list over the second variable of UniPoly in the
    first; trailing zero layers are trimmed."""
    if not dic:
        return []
    ny = max(j for _i, j in dic)
    layers = []
    for j in range(ny + 1):
        col = {i: c for (i, jj), c in dic.items() if jj == j}
        if col:
            layers.append(UniPoly(F, [col.get(i, F.zero)
                                      for i in range(max(col) + 1)]))
        else:
            layers.append(UniPoly(F, []))
    while layers and layers[-1].is_zero():
        layers.pop()
    return layers


def _ypoly_at(layers, x0, F):
    """Specialize the first variable, leaving a UniPoly in the second."""
    return UniPoly(F, [c.eval(x0) for c in layers])


def _sample_points(F):
    if isinstance(F, PrimeField):
        for a in range(F.p):
            yield a
        raise FieldError("prime field too small for interpolation")
    k = 0
    while True:
        if k == 0:
            yield F.zero
        else:
            yield F.from_int(k)
            yield F.from_int(-k)
        k += 1


def _max_layer_degree(layers):
    return max(c.degree for c in layers if not c.is_zero())


def _res_y_interp(p1, p2, F):
    """Resultant in the second variable of two layered bivariate polys,
    as a UniPoly in the first variable, by interpolation.

    Samples where either leading layer vanishes are skipped, so every
    sample evaluates the same generic Sylvester determinant.
    """
    if not p1 or not p2:
        return UniPoly(F, [])
    n1, n2 = len(p1) - 1, len(p2) - 1
    if n1 == 0 and n2 == 0:
        return UniPoly(F, [F.one])
    d1 = _max_layer_degree(p1)
    d2 = _max_layer_degree(p2)
    bound = n2 * d1 + n1 * d2
    lc1, lc2 = p1[-1], p2[-1]
    xs, ys = [], []
    stream = _sample_points(F)
    while len(xs) < bound + 1:
        x0 = next(stream)
        if F.is_zero(lc1.eval(x0)) or F.is_zero(lc2.eval(x0)):
            continue
        xs.append(x0)
        ys.append(resultant(_ypoly_at(p1, x0, F), _ypoly_at(p2, x0, F)))
    P = newton_interpolate(xs, ys, F=F)
    while True:
        x0 = next(stream)
        if F.is_zero(lc1.eval(x0)) or F.is_zero(lc2.eval(x0)):
            continue
        got = resultant(_ypoly_at(p1, x0, F), _ypoly_at(p2, x0, F))
        assert F.eq(P.eval(x0), got), "resultant degree bound violated"
        return P


class ExtensionPoint:
    """A singular point whose chart coordinates need a field extension.

    Each affine chart coordinate is recorded either as a value
    (``c*_val``) or as a minimal polynomial over the scan's base field
    (``c*_min``).  ``mult`` is None when pinning the point down exactly
    would need a tower of two extensions.
    """

    __slots__ = ("chart", "c1_min", "c1_val", "c2_min", "c2_val", "mult")

    def __init__(self, chart, c1_min=None, c1_val=None,
                 c2_min=None, c2_val=None, mult=None):
        self.chart = chart
        self.c1_min = c1_min
        self.c1_val = c1_val
        self.c2_min = c2_min
        self.c2_val = c2_val
        self.mult = mult

    @staticmethod
    def _side(mn, val, F):
        if mn is not None:
            return "root of " + mn.fmt("T")
        if val is None:
            return "?"
        try:
            return F.fmt(val)
        except Exception:
            return str(val)

    def fmt(self, F):
        return "chart %s: (%s, %s) mult %s" % (
            self.chart, self._side(self.c1_min, self.c1_val, F),
            self._side(self.c2_min, self.c2_val, F),
            "?" if self.mult is None else self.mult)


class ScanReport:
    __slots__ = ("field", "rational", "extension")

    def __init__(self, field, rational, extension):
        self.field = field
        self.rational = rational      # [(ProjPoint, mult)]
        self.extension = extension    # [ExtensionPoint]

    def total(self):
        """Points found, counting one per conjugate root of each minimal
        polynomial (an upper bound for unresolved tower records)."""
        n = len(self.rational)
        for e in self.extension:
            degs = [mn.degree for mn in (e.c1_min, e.c2_min)
                    if mn is not None]
            d = 1
            for dd in degs:
                d *= dd
            n += d
        return n

    def summary(self):
        lines = ["singular locus: %d point(s) over the base field, "
                 "%d extension record(s)" % (
                     len(self.rational), len(self.extension))]
        for p, m in self.rational:
            lines.append("  %s  mult %d" % (p.fmt(), m))
        for e in self.extension:
            lines.append("  " + e.fmt(self.field))
        return "\n".join(lines)


def _mult_at(f, pt, F):
    return _series_mult(_clean(local_series(f, pt), F))


def _lift_poly(u, K):
    """Coefficient-wise embedding of a rational UniPoly into K."""
    return UniPoly(K, [K.from_q(c) for c in u.c])


def _lift_curve(f, K):
    return PlaneCurve(K, f.degree,
                      {m: K.from_q(c) for m, c in f.terms.items()})


def _scan_fiber(f, K, x0, pg, pgx, pgy, rational, extension, lift):
    """Confirm and classify singular points above one x-fiber.

    K is the working field (the base, or one extension of it); lift is
    the minimal polynomial of x0 over the base when K extends it.
    """
    u = _ypoly_at(pg, x0, K)
    ux = _ypoly_at(pgx, x0, K)
    uy = _ypoly_at(pgy, x0, K)
    if u.is_zero() and ux.is_zero() and uy.is_zero():
        raise SchemeError("a whole fiber is singular; the curve has a "
                          "repeated factor")
    w = gcd(gcd(u, ux), uy)
    if w.degree <= 0:
        return
    for qy, _m in _factor_over(w, K):
        if qy.degree == 1:
            y0 = K.neg(qy.c[0])
            pt = ProjPoint([x0, y0, K.one], F=K)
            mu = _mult_at(f, pt, K)
            if lift is None:
                rational.append((pt, mu))
            else:
                extension.append(ExtensionPoint(
                    "z", c1_min=lift, c2_val=y0, mult=mu))
        elif lift is None and K is QQ:
            Ky = NumberField(tuple(qy.c), name="b")
            fy = _lift_curve(f, Ky)
            pt = ProjPoint([Ky.from_q(x0), Ky.gen(), Ky.one], F=Ky)
            mu = _mult_at(fy, pt, Ky)
            extension.append(ExtensionPoint(
                "z", c1_val=x0, c2_min=qy, mult=mu))
        else:
            extension.append(ExtensionPoint(
                "z", c1_min=lift, c1_val=x0 if lift is None else None,
                c2_min=qy))


def _xpoly_at(layers, y0, F):
    """Specialize the second variable, leaving a UniPoly in the first."""
    acc = UniPoly(F, [])
    for lay in reversed(layers):
        acc = UniPoly(F, [F.mul(c, y0) for c in acc.c]) + lay
    return acc


def _layer_columns(layers, F):
    """Transpose a layered bivariate poly into UniPolys in the second
    variable, one per power of the first."""
    cols = {}
    for i, lay in enumerate(layers):
        for j, c in enumerate(lay.c):
            if not F.is_zero(c):
                cols.setdefault(j, {})[i] = c
    out = {}
    for j, col in cols.items():
        out[j] = UniPoly(F, [col.get(i, F.zero)
                             for i in range(max(col) + 1)])
    return out


def _columns_to_layers(cols, F):
    dic = {}
    for j, u in cols.items():
        for i, c in enumerate(u.c):
            if not F.is_zero(c):
                dic[(j, i)] = c
    return _as_y_poly(dic, F)


def _split_second_var_content(pg, F):
    """Factor out the components that only involve the second variable.

    Returns (content, primitive layers).  Such components make the
    resultant against the first partial vanish identically, so they are
    scanned separately (their crossings with the rest are singular
    points) and the resultant machinery runs on the primitive part.
    """
    cols = _layer_columns(pg, F)
    cont = gcd_many(list(cols.values()))
    if cont is None or cont.degree <= 0:
        return None, pg
    prim = {j: u // cont for j, u in cols.items()}
    return cont, _columns_to_layers(prim, F)


def _layers_dx(layers, F):
    out = [lay.deriv() for lay in layers]
    while out and out[-1].is_zero():
        out.pop()
    return out


def _layers_dy(layers, F):
    out = []
    for i in range(1, len(layers)):
        k = F.from_int(i)
        out.append(UniPoly(F, [F.mul(k, c) for c in layers[i].c]))
    while out and out[-1].is_zero():
        out.pop()
    return out


def _scan_cross_lines(f, F, cont, bl, rational, extension):
    """Singular points contributed by second-variable-only components.

    cont is a squarefree product of lines {second variable = const}; its
    crossings with the primitive part bl are singular points of f.  The
    lines meet each other only at infinity, which the infinity scan
    covers.
    """
    for c, _m in _factor_over(cont, F):
        if c.degree == 1:
            y0 = F.neg(c.c[0])
            u = _xpoly_at(bl, y0, F)
            for qx, _m2 in _factor_over(u, F):
                if qx.degree == 1:
                    x0 = F.neg(qx.c[0])
                    pt = ProjPoint([x0, y0, F.one], F=F)
                    rational.append((pt, _mult_at(f, pt, F)))
                elif F is QQ:
                    Kx = NumberField(tuple(qx.c), name="a")
                    fx = _lift_curve(f, Kx)
                    pt = ProjPoint([Kx.gen(), Kx.from_q(y0), Kx.one],
                                   F=Kx)
                    extension.append(ExtensionPoint(
                        "z", c1_min=qx, c2_val=Kx.from_q(y0),
                        mult=_mult_at(fx, pt, Kx)))
                else:
                    extension.append(ExtensionPoint(
                        "z", c1_min=qx, c2_val=y0))
        elif F is QQ:
            Ky = NumberField(tuple(c.c), name="b")
            blK = [_lift_poly(l, Ky) for l in bl]
            u = _xpoly_at(blK, Ky.gen(), Ky)
            fK = _lift_curve(f, Ky)
            for qx, _m2 in _factor_over(u, Ky):
                if qx.degree == 1:
                    x0 = Ky.neg(qx.c[0])
                    pt = ProjPoint([x0, Ky.gen(), Ky.one], F=Ky)
                    mu = _mult_at(fK, pt, Ky)
                    if not any(x0[1:]):
                        x0 = x0[0]
                    extension.append(ExtensionPoint(
                        "z", c1_val=x0, c2_min=c, mult=mu))
                else:
                    extension.append(ExtensionPoint("z", c2_min=c))
        else:
            extension.append(ExtensionPoint("z", c2_min=c))


def _scan_chart_z(f, F, rational, extension):
    g = f.dehomogenize(2)
    pg = _as_y_poly(g, F)
    cont, pg = _split_second_var_content(pg, F)
    if cont is not None:
        if gcd(cont, cont.deriv()).degree > 0:
            raise SchemeError("curve has a repeated factor (independent "
                              "of the first chart variable)")
        _scan_cross_lines(f, F, cont, pg, rational, extension)
    if len(pg) <= 1:
        # no second variable left: a union of vertical lines, smooth
        # away from crossings (which the content pass above and the
        # infinity scan account for) as long as no line repeats
        if len(pg) == 1 and gcd(pg[0], pg[0].deriv()).degree > 0:
            raise SchemeError("curve has a repeated factor (independent "
                              "of the second chart variable)")
        return
    pgx = _layers_dx(pg, F)
    pgy = _layers_dy(pg, F)
    R = _res_y_interp(pg, pgy, F)
    if R.is_zero():
        raise SchemeError("curve is not squarefree: the discriminant "
                          "resultant vanishes identically")
    S = _res_y_interp(pg, pgx, F)
    if S.is_zero():
        G = R.monic()
    elif F is QQ:
        G = q_gcd(R, S)
    else:
        G = gcd(R, S)
    if G.degree <= 0:
        return
    for q, _m in _factor_over(G, F):
        if q.degree == 1:
            x0 = F.neg(q.c[0])
            _scan_fiber(f, F, x0, pg, pgx, pgy, rational, extension,
                        lift=None)
        elif F is QQ:
            K = NumberField(tuple(q.c), name="a")
            pgK = [_lift_poly(c, K) for c in pg]
            pgxK = [_lift_poly(c, K) for c in pgx]
            pgyK = [_lift_poly(c, K) for c in pgy]
            _scan_fiber(_lift_curve(f, K), K, K.gen(), pgK, pgxK, pgyK,
                        rational, extension, lift=q)
        else:
            extension.append(ExtensionPoint("z", c1_min=q))


def _restrict_to_second_zero(dic, F):
    """Chart dict {(i, j)} restricted to {second variable = 0}, as a
    UniPoly in the first variable."""
    cs = {i: c for (i, j), c in dic.items() if j == 0}
    if not cs:
        return UniPoly(F, [])
    return UniPoly(F, [cs.get(k, F.zero) for k in range(max(cs) + 1)])


def _scan_line_at_infinity(f, F, rational, extension):
    """Points with z = 0, through chart x plus the single point [0,1,0]."""
    polys = [_restrict_to_second_zero(f.dehomogenize(0), F)]
    for v in range(3):
        polys.append(_restrict_to_second_zero(
            f.partial(v).dehomogenize(0), F))
    a = None
    for u in polys:
        if u.is_zero():
            continue
        a = u if a is None else gcd(a, u)
        if a.degree == 0:
            break
    if a is None:
        raise SchemeError("the line z = 0 is singular everywhere; the "
                          "curve has a repeated factor")
    if a.degree > 0:
        for q, _m in _factor_over(a, F):
            if q.degree == 1:
                y0 = F.neg(q.c[0])
                pt = ProjPoint([F.one, y0, F.zero], F=F)
                rational.append((pt, _mult_at(f, pt, F)))
            elif F is QQ:
                K = NumberField(tuple(q.c), name="c")
                fK = _lift_curve(f, K)
                pt = ProjPoint([K.one, K.gen(), K.zero], F=K)
                extension.append(ExtensionPoint(
                    "x", c1_min=q, c2_val=F.zero,
                    mult=_mult_at(fK, pt, K)))
            else:
                extension.append(ExtensionPoint("x", c1_min=q))
    coords = (F.zero, F.one, F.zero)
    vals = [f.evaluate(coords)]
    vals += [f.partial(v).evaluate(coords) for v in range(3)]
    if all(F.is_zero(v) for v in vals):
        pt = ProjPoint([F.zero, F.one, F.zero], F=F)
        rational.append((pt, _mult_at(f, pt, F)))


def singular_locus_scan(f):
    """Find all singular points of the curve, from scratch.

    Points rational over the coefficient field come back as
    (ProjPoint, multiplicity) pairs; conjugate clusters come back as
    ExtensionPoint records carrying minimal polynomials.  Raises
    SchemeError when the curve has a repeated factor.
    """
    F = f.F
    rational = []
    extension = []
    _scan_chart_z(f, F, rational, extension)
    _scan_line_at_infinity(f, F, rational, extension)
    seen = set()
    uniq = []
    for p, m in rational:
        k = p.key()
        if k not in seen:
            seen.add(k)
            uniq.append((p, m))
    uniq.sort(key=lambda pm: pm[0].key())
    extension.sort(key=lambda e: (e.chart, e.fmt(F)))
    return ScanReport(F, uniq, extension)


# ---------------------------------------------------------------------------
# absolute irreducibility


class FactorCountResult:
    __slots__ = ("count", "method", "shear")

    def __init__(self, count, method, shear):
        self.count = count
        self.method = method
        self.shear = shear

    def summary(self):
        s = "absolute factor count: %d (%s)" % (self.count, self.method)
        if self.shear is not None:
            return s + ", after the shear z -> %d*x + %d*y + z" % self.shear
        return s


def _bideg(dic):
    return (max(i for i, _j in dic), max(j for _i, j in dic))


def _full_degree_chart(f, d):
    """Chart-z dict when it keeps total degree d with both partial
    degrees positive, else None."""
    g = f.dehomogenize(2)
    if not g or max(i + j for (i, j) in g) != d:
        return None
    n1, n2 = _bideg(g)
    if n1 == 0 or n2 == 0:
        return None
    return g


def _ruppert_rows(g, F):
    """Equation rows of the closed-1-form system for a bivariate dict g.

    Unknowns are the coefficients of P (bidegree <= (n1-1, n2)) and Q
    (bidegree <= (n1, n2-1)) in the condition that (P/g) dx + (Q/g) dy
    is closed, i.e. P_y*g - P*g_y = Q_x*g - Q*g_x.  For squarefree g in
    characteristic zero the kernel dimension equals the number of
    absolutely irreducible factors; (g_x, g_y) is always in the kernel.
    """
    n1, n2 = _bideg(g)
    pm = [(i, j) for i in range(n1) for j in range(n2 + 1)]
    qm = [(i, j) for i in range(n1 + 1) for j in range(n2)]
    ncols = len(pm) + len(qm)
    rows_ix = {}
    for aa in range(2 * n1):
        for bb in range(2 * n2):
            rows_ix[(aa, bb)] = len(rows_ix)
    mat = [[F.zero] * ncols for _ in range(len(rows_ix))]
    for col, (i, j) in enumerate(pm):
        # rows of d/dy(x^i y^j) * g - x^i y^j * g_y
        for (u, v), c in g.items():
            if j + v == 0:
                continue
            r = rows_ix[(i + u, j + v - 1)]
            mat[r][col] = F.add(mat[r][col], F.mul(F.from_int(j - v), c))
    off = len(pm)
    for col, (i, j) in enumerate(qm):
        # minus the same with the roles of the variables swapped
        for (u, v), c in g.items():
            if i + u == 0:
                continue
            r = rows_ix[(i + u - 1, j + v)]
            mat[r][off + col] = F.sub(mat[r][off + col],
                                      F.mul(F.from_int(i - u), c))
    return mat, ncols


def _squarefree_guard(f, F):
    """Exact squarefreeness certificate for the chart-z polynomial."""
    pg = _as_y_poly(f.dehomogenize(2), F)
    pgy = _as_y_poly(f.partial(1).dehomogenize(2), F)
    if len(pg) > 1:
        # one nonzero valid sample of the generic discriminant resultant
        # rules out any repeated factor with positive y-degree
        lcg, lcgy = pg[-1], pgy[-1]
        d1 = _max_layer_degree(pg)
        d2 = _max_layer_degree(pgy)
        bound = (len(pgy) - 1) * d1 + (len(pg) - 1) * d2
        zeros = 0
        stream = _sample_points(F)
        while True:
            x0 = next(stream)
            if F.is_zero(lcg.eval(x0)) or F.is_zero(lcgy.eval(x0)):
                continue
            r = resultant(_ypoly_at(pg, x0, F), _ypoly_at(pgy, x0, F))
            if not F.is_zero(r):
                break
            zeros += 1
            if zeros > bound:
                raise SchemeError("curve is not squarefree")
    content = None
    for c in pg:
        if c.is_zero():
            continue
        content = c if content is None else gcd(content, c)
        if content.degree == 0:
            break
    if content is not None and content.degree > 0:
        if gcd(content, content.deriv()).degree > 0:
            raise SchemeError("curve is not squarefree")


def _chart_with_full_degree(f):
    """The curve presented on an affine chart that keeps its total degree,
    after an optional shear of the z coordinate.  Returns (work, chart,
    shear), or None when f is a power of a single coordinate and no shear
    can help."""
    d = f.degree
    F = f.F
    g = _full_degree_chart(f, d)
    if g is not None:
        return f, g, None
    for (al, be) in [(a, 1) for a in range(d + 1)] + [(1, 0)]:
        M = [[F.one, F.zero, F.zero],
             [F.zero, F.one, F.zero],
             [F.from_int(al), F.from_int(be), F.one]]
        fs = f.substitute(M)
        g = _full_degree_chart(fs, d)
        if g is not None:
            return fs, g, (al, be)
    return None


def curve_is_reduced(f):
    """True when the defining polynomial has no repeated factor.

    Characteristic zero only.  Runs the same discriminant certificate
    the factor count uses, as a predicate instead of a guard."""
    got = _chart_with_full_degree(f)
    if got is None:
        # a power of one coordinate: reduced exactly in degree one
        return f.degree == 1
    work, _g, _shear = got
    try:
        _squarefree_guard(work, work.F)
    except SchemeError:
        return False
    return True


def absolute_factor_count(f, prime_shortcut=None):
    """Number of irreducible factors of the curve over the algebraic
    closure of its coefficient field.

    The count is the kernel dimension of an exact linear system.  With
    ``prime_shortcut`` set to a prime p (rational coefficients only),
    the kernel of the reduced system mod p is computed first; reduction
    can only enlarge a kernel, so dimension one mod p certifies count
    one unconditionally and skips the exact elimination.  Any other
    modular outcome falls back to the exact computation.
    """
    F = f.F
    if isinstance(F, PrimeField):
        raise FieldError("the factor count needs characteristic zero")
    got = _chart_with_full_degree(f)
    if got is None:
        if f.degree == 1:
            return FactorCountResult(1, "single line", None)
        raise SchemeError("curve is a repeated line")
    work, g, shear = got
    _squarefree_guard(work, F)
    mat, ncols = _ruppert_rows(g, F)
    if prime_shortcut is not None and F is QQ:
        p = int(prime_shortcut)
        dim_p = ncols - rank_mod_p(rows_to_integer(mat), p)
        if dim_p == 1:
            return FactorCountResult(1, "certified mod %d" % p, shear)
    r = matrix_rank(mat, F=F)
    return FactorCountResult(ncols - r, "exact kernel", shear)


# ---------------------------------------------------------------------------
# genus bookkeeping


def delta_invariant(chain):
    """Local genus drop of one declared chain: the sum of m(m-1)/2 over
    its infinitely near points."""
    return sum(m * (m - 1) // 2 for m in chain.mults)


def geometric_genus(degree, scheme):
    """Genus of the normalization, taking the declared chains as the full
    story (run chain_verify first).  Raises when the data is impossible."""
    g = (degree - 1) * (degree - 2) // 2
    for it in scheme:
        g -= delta_invariant(it.chain)
    if g < 0:
        raise SchemeError(
            "declared singularities exceed the genus budget of a degree "
            "%d curve (virtual genus %d)" % (degree, g))
    return g
