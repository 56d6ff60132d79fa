r"""Singularity schemes: points, infinitely near chains, condition rows.

A chain [m_1, m_2] at a point p with assigned tangent l prescribes
multiplicity m_1 at p and multiplicity m_2 at the point of the first
exceptional curve picked out by l.  Working in a local frame A that sends p
to the origin of the chart w = 1 and the tangent direction to v = 0, write

    f(A . (u, v, 1)) = sum c_ij u^i v^j.

Multiplicity >= m_1 at p is the vanishing of all c_ij with i + j < m_1.
Blowing up, the strict transform is sum c_ij u^(i+j-m_1) w^j in the chart
toward v = 0, so multiplicity >= m_2 at the infinitely near point is the
vanishing of the c_ij with i + j >= m_1 and i + 2j < m_1 + m_2.  Those
coefficient functionals, expressed on the monomial coefficients of f, are
the rows this module produces.  They are linear in f, independent of the
(deterministic) frame choice in their span, and are emitted in (level,
local degree) order so reruns are identical.
"""

from .curves import PlaneCurve, monomial_basis
from .fields import QQ


class SchemeError(ValueError):
    """Invalid singularity data (bad chain, coincident points...)."""


class UnsupportedChain(SchemeError):
    """Structurally valid chain the closed-form generator cannot express."""


FREE = object()  # sentinel for an unassigned (free) tangent direction


class ProjPoint:
    """Projective point, normalized so the last nonzero coordinate is 1."""

    __slots__ = ("F", "coords")

    def __init__(self, coords, F=QQ):
        self.F = F
        c = [F.from_q(x) if F is QQ else x for x in coords]
        if len(c) != 3:
            raise SchemeError("need three coordinates")
        last = None
        for i in (2, 1, 0):
            if not F.is_zero(c[i]):
                last = i
                break
        if last is None:
            raise SchemeError("zero vector is not a projective point")
        inv = F.inv(c[last])
        self.coords = tuple(F.mul(inv, x) for x in c)

    def eq(self, other):
        F = self.F
        return all(F.eq(a, b) for a, b in zip(self.coords, other.coords))

    def on_line(self, line):
        return self.F.is_zero(line.evaluate(self.coords))

    def key(self):
        """Deterministic sort key (format strings, stable across runs)."""
        return tuple(self.F.fmt(c) for c in self.coords)

    def fmt(self):
        return "[%s]" % ", ".join(self.F.fmt(c) for c in self.coords)

    def __repr__(self):
        return "ProjPoint(%s)" % self.fmt()


class Tangent:
    """Assigned tangent line or the free marker."""

    __slots__ = ("line",)

    def __init__(self, line=None):
        if line is not None:
            if not isinstance(line, PlaneCurve) or line.degree != 1 \
                    or line.is_zero():
                raise SchemeError("tangent must be a nonzero linear form")
        self.line = line

    @property
    def free(self):
        return self.line is None

    def __repr__(self):
        return "Tangent(free)" if self.free else \
            "Tangent(%s)" % self.line.fmt()


class SingChain:
    """Multiplicity chain of length one or two, second entry tangent-tagged.

    The public constructor enforces the supported shape: length <= 2,
    multiplicities positive and non-increasing, tangent present exactly
    when the length is 2.  Internal callers (adjoint systems) may build
    relaxed virtual chains through the `virtual` classmethod.
    """

    __slots__ = ("mults", "tangents", "_virtual")

    def __init__(self, mults, tangents=()):
        mults = tuple(int(m) for m in mults)
        tangents = tuple(tangents)
        if len(mults) == 0:
            raise SchemeError("empty chain")
        if any(m < 1 for m in mults):
            raise SchemeError("chain multiplicities must be positive")
        if len(mults) > 2:
            raise UnsupportedChain(
                "chains of length > 2 are not supported (got %r)"
                % (mults,))
        if any(mults[i + 1] > mults[i] for i in range(len(mults) - 1)):
            raise UnsupportedChain(
                "non-monotone chain %r is not supported" % (mults,))
        if len(tangents) != len(mults) - 1:
            raise SchemeError("need exactly one tangent per chain step")
        if any(not isinstance(t, Tangent) for t in tangents):
            raise SchemeError("tangents must be Tangent instances")
        self.mults = mults
        self.tangents = tangents
        self._virtual = False

    @classmethod
    def virtual(cls, mults, tangents=()):
        """Relaxed chain for internal (adjoint) use; skips the monotonicity
        and positivity checks but keeps the structural ones."""
        self = object.__new__(cls)
        mults = tuple(int(m) for m in mults)
        tangents = tuple(tangents)
        if len(mults) == 0 or len(mults) > 2:
            raise SchemeError("virtual chain length must be 1 or 2")
        if any(m < 0 for m in mults):
            raise SchemeError("negative multiplicity")
        if len(tangents) != len(mults) - 1:
            raise SchemeError("need exactly one tangent per chain step")
        self.mults = mults
        self.tangents = tangents
        self._virtual = True
        return self

    def __len__(self):
        return len(self.mults)

    def count_conditions(self):
        """Number of condition rows the chain imposes (free tangents counted
        by the assigned-tangent convention)."""
        return len(_index_sets(self.mults)[0]) + len(_index_sets(self.mults)[1])

    def __repr__(self):
        if len(self.mults) == 1:
            return "SingChain[%d]" % self.mults
        return "SingChain[%d,%d; %r]" % (
            self.mults[0], self.mults[1], self.tangents[0])


class SchemeItem:
    __slots__ = ("point", "chain", "name")

    def __init__(self, point, chain, name=None):
        self.point = point
        self.chain = chain
        self.name = name

    def __repr__(self):
        nm = self.name or self.point.fmt()
        return "SchemeItem(%s, %r)" % (nm, self.chain)


class Scheme:
    """A list of singularity items at pairwise distinct proper points."""

    def __init__(self, items):
        self.items = list(items)
        for i in range(len(self.items)):
            for j in range(i + 1, len(self.items)):
                if self.items[i].point.eq(self.items[j].point):
                    raise SchemeError(
                        "coincident scheme points %s" %
                        self.items[i].point.fmt())

    def __iter__(self):
        return iter(self.items)

    def __len__(self):
        return len(self.items)

    def count_conditions(self):
        return sum(it.chain.count_conditions() for it in self.items)


def _cross(F, a, b):
    return (
        F.sub(F.mul(a[1], b[2]), F.mul(a[2], b[1])),
        F.sub(F.mul(a[2], b[0]), F.mul(a[0], b[2])),
        F.sub(F.mul(a[0], b[1]), F.mul(a[1], b[0])),
    )


def _is_zero_vec(F, v):
    return all(F.is_zero(x) for x in v)


def _det3_cols(F, c1, c2, c3):
    t1 = F.mul(c1[0], F.sub(F.mul(c2[1], c3[2]), F.mul(c2[2], c3[1])))
    t2 = F.mul(c2[0], F.sub(F.mul(c1[1], c3[2]), F.mul(c1[2], c3[1])))
    t3 = F.mul(c3[0], F.sub(F.mul(c1[1], c2[2]), F.mul(c1[2], c2[1])))
    return F.add(F.sub(t1, t2), t3)


def line_coeffs(line):
    """Coefficient triple of a linear form."""
    return (line.coeff((1, 0, 0)), line.coeff((0, 1, 0)),
            line.coeff((0, 0, 1)))


def local_frame(point, tangent_line=None, F=None):
    """Deterministic invertible frame with third column the point.

    Returns the 3x3 matrix A (list of rows) whose columns are (c1, c2, p).
    The affine chart map is (u, v) -> A . (u, v, 1).  When a tangent line
    through the point is given, c1 lies on it, so the pullback of the line
    is proportional to v.
    """
    F = F or point.F
    p = point.coords
    basis = ((F.one, F.zero, F.zero), (F.zero, F.one, F.zero),
             (F.zero, F.zero, F.one))
    if tangent_line is not None:
        l = line_coeffs(tangent_line)
        if not F.is_zero(
                F.add(F.add(F.mul(l[0], p[0]), F.mul(l[1], p[1])),
                      F.mul(l[2], p[2]))):
            raise SchemeError("tangent line does not pass through the point")
        c1 = None
        for e in basis:
            cand = _cross(F, l, e)
            if _is_zero_vec(F, cand):
                continue
            if not _is_zero_vec(F, _cross(F, cand, p)):
                c1 = cand
                break
        if c1 is None:
            raise SchemeError("degenerate tangent line")
    else:
        c1 = None
        for e in basis:
            if not _is_zero_vec(F, _cross(F, e, p)):
                c1 = e
                break
    c2 = None
    for e in basis:
        if not F.is_zero(_det3_cols(F, c1, e, p)):
            c2 = e
            break
    if c2 is None:
        raise SchemeError("no completing frame vector (degenerate data)")
    return [[c1[i], c2[i], p[i]] for i in range(3)]


# --- truncated bivariate expansions ---------------------------------------

def _tmul(a, b, K, F):
    out = {}
    for (i, j), x in a.items():
        for (k, l), y in b.items():
            ii, jj = i + k, j + l
            if ii + jj > K:
                continue
            key = (ii, jj)
            p = F.mul(x, y)
            cur = out.get(key)
            s = F.add(cur, p) if cur is not None else p
            if F.is_zero(s):
                out.pop(key, None)
            else:
                out[key] = s
    return out


def local_expansions(d, frame, K, F):
    """Truncated local expansions of all degree-d monomials in the frame.

    Returns a list aligned with monomial_basis(d) of dicts {(i, j): coeff}
    containing the terms of x^a y^b z^c (A (u,v,1)) of total degree <= K.
    """
    lin = []
    for r in range(3):
        row = {}
        if not F.is_zero(frame[r][0]):
            row[(1, 0)] = frame[r][0]
        if not F.is_zero(frame[r][1]):
            row[(0, 1)] = frame[r][1]
        if not F.is_zero(frame[r][2]):
            row[(0, 0)] = frame[r][2]
        lin.append(row)
    one = {(0, 0): F.one}
    pows = []
    for r in range(3):
        table = [one]
        for _ in range(d):
            table.append(_tmul(table[-1], lin[r], K, F))
        pows.append(table)
    out = []
    for (a, b, c) in monomial_basis(d):
        t = _tmul(_tmul(pows[0][a], pows[1][b], K, F), pows[2][c], K, F)
        out.append(t)
    return out


def _index_sets(mults):
    """Condition index pairs (i, j): level one, then level two."""
    m1 = mults[0]
    level1 = [(i, s - i) for s in range(m1) for i in range(s, -1, -1)]
    level1.sort(key=lambda ij: (ij[0] + ij[1], ij[1]))
    level2 = []
    if len(mults) == 2:
        m2 = mults[1]
        top = m1 + m2 - 1
        for s in range(m1, top + 1):
            for j in range(s + 1):
                i = s - j
                if i >= 0 and i + 2 * j <= top:
                    level2.append((i, j))
        level2.sort(key=lambda ij: (ij[0] + ij[1], ij[1]))
    return level1, level2


def conditions(d, point, chain, F=None):
    """Condition rows for one scheme item on the degree-d monomial basis.

    Each row is a coefficient list aligned with monomial_basis(d); a curve
    satisfies the item exactly when all rows annihilate its coefficient
    vector.  Chains with a free tangent have no fixed row description and
    raise UnsupportedChain (the linear system layer enumerates the
    candidate directions instead).
    """
    F = F or point.F
    tangent_line = None
    if len(chain.mults) == 2:
        tg = chain.tangents[0]
        if tg.free:
            raise UnsupportedChain(
                "free tangent at position 2 has no fixed condition rows; "
                "use the branching solver")
        tangent_line = tg.line
    level1, level2 = _index_sets(chain.mults)
    wanted = level1 + level2
    if not wanted:
        return []
    K = max(i + j for i, j in wanted)
    frame = local_frame(point, tangent_line, F)
    exps = local_expansions(d, frame, K, F)
    rows = []
    for ij in wanted:
        rows.append([e.get(ij, F.zero) for e in exps])
    return rows


def expected_conditions(scheme):
    """Naive condition count: sum over items, free tangents discounted by
    one (the assigned-tangent counting convention)."""
    total = 0
    for it in scheme:
        total += it.chain.count_conditions()
        for tg in it.chain.tangents:
            if tg.free:
                total -= 1
    return total


def virtual_dimension(d, scheme):
    """Expected projective dimension d(d+3)/2 - expected_conditions."""
    return d * (d + 3) // 2 - expected_conditions(scheme)
