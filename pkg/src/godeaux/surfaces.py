"""Blown-up-plane lattices and double cover invariants.

A double cover of the plane branched along a curve of even degree has
numerical invariants that depend only on combinatorial data: the branch
degree and the multiplicity chains of its singular points.  This module
keeps that bookkeeping on the intersection lattice of an iterated blow-up,
applies the canonical resolution rule to the branch, and derives chi(O),
K^2, the adjoint count of global 2-forms, a divisor self-consistency
report, the mod-2 component kernel (order of the 2-torsion), the degree-8
test curve deciding Z/2 versus Z/4, and the cubic obstruction test.

Everything here is exact integer arithmetic on small vectors; the heavy
polynomial work is delegated to the linear-system and verification
modules.
"""

from .fields import QQ, NumberField
from .curves import PlaneCurve, monomial_basis, monomial_count, \
    normalize_integer
from .linalg import matrix_rank, kernel_basis, rank_mod_p
from .singular import SchemeError, ProjPoint, Tangent, SingChain, \
    SchemeItem, conditions, line_coeffs
from .linsys import LinearSystem, restrict_through_component
from .unipoly import UniPoly, gcd as upoly_gcd, q_gcd
from .verify import geometric_genus, absolute_factor_count, \
    singular_locus_scan, chain_verify, local_series, EXACT


# --- lattice arithmetic ----------------------------------------------------

class LatticeError(ValueError):
    pass


class DivisorClass:
    """Integer divisor class h*H + sum e_i E_i on a blown-up plane.

    The basis is the pulled-back hyperplane H together with the total
    transforms E_i of the blow-up centers, so H.H = 1, E_i.E_i = -1 and
    mixed products vanish.  `e` stores the actual (signed) coefficients
    of the E_i.
    """

    __slots__ = ("h", "e")

    def __init__(self, h, e):
        self.h = int(h)
        self.e = tuple(int(x) for x in e)

    def dot(self, other):
        if len(self.e) != len(other.e):
            raise LatticeError("classes live on different blow-ups")
        return self.h * other.h - sum(a * b for a, b in zip(self.e, other.e))

    def selfint(self):
        return self.dot(self)

    def __add__(self, other):
        if len(self.e) != len(other.e):
            raise LatticeError("classes live on different blow-ups")
        return DivisorClass(self.h + other.h,
                            tuple(a + b for a, b in zip(self.e, other.e)))

    def __sub__(self, other):
        if len(self.e) != len(other.e):
            raise LatticeError("classes live on different blow-ups")
        return DivisorClass(self.h - other.h,
                            tuple(a - b for a, b in zip(self.e, other.e)))

    def scale(self, n):
        n = int(n)
        return DivisorClass(self.h * n, tuple(n * x for x in self.e))

    def is_even(self):
        return self.h % 2 == 0 and all(x % 2 == 0 for x in self.e)

    def __eq__(self, other):
        return isinstance(other, DivisorClass) and \
            self.h == other.h and self.e == other.e

    def __hash__(self):
        return hash((self.h, self.e))

    def fmt(self, names=None):
        parts = []
        if self.h:
            parts.append("%dH" % self.h)
        for i, c in enumerate(self.e):
            if not c:
                continue
            nm = names[i] if names else str(i + 1)
            parts.append("%+dE(%s)" % (c, nm))
        return " ".join(parts) if parts else "0"

    def __repr__(self):
        return "DivisorClass(%s)" % self.fmt()


def intersect(a, b):
    """Intersection number of two classes on the same blow-up."""
    return a.dot(b)


# --- blow-up bookkeeping ---------------------------------------------------

class Center:
    """One blow-up center.

    Proper centers carry a ProjPoint; infinitely near ones carry the index
    of their parent and the tangent line singling out their position on the
    parent's exceptional curve.  `m` is the total branch multiplicity at
    the center and `d` its half, rounded down.
    """

    __slots__ = ("name", "point", "parent", "tangent", "m", "d")

    def __init__(self, name, point=None, parent=None, tangent=None, m=0):
        self.name = name
        self.point = point
        self.parent = parent
        self.tangent = tangent
        self.m = int(m)
        self.d = self.m // 2

    @property
    def odd(self):
        return self.m % 2 == 1

    def __repr__(self):
        where = self.point.fmt() if self.point is not None \
            else "above #%d" % self.parent
        return "Center(%s, %s, m=%d)" % (self.name, where, self.m)


class BlowupTree:
    """Ordered list of centers, parents before children."""

    __slots__ = ("centers",)

    def __init__(self, centers):
        self.centers = list(centers)
        for i, c in enumerate(self.centers):
            if c.parent is not None and c.parent >= i:
                raise LatticeError("parent must precede child")

    def __len__(self):
        return len(self.centers)

    def __iter__(self):
        return iter(self.centers)

    def names(self):
        return [c.name for c in self.centers]

    def children(self, i):
        return [j for j, c in enumerate(self.centers) if c.parent == i]

    def hyperplane(self):
        return DivisorClass(1, (0,) * len(self.centers))

    def exceptional(self, i):
        e = [0] * len(self.centers)
        e[i] = 1
        return DivisorClass(0, tuple(e))

    def strict_exceptional(self, i):
        """Class of the exceptional curve minus its later centers."""
        e = [0] * len(self.centers)
        e[i] = 1
        for j in self.children(i):
            e[j] = -1
        return DivisorClass(0, tuple(e))

    def canonical(self):
        return DivisorClass(-3, (1,) * len(self.centers))

    def strict_class(self, degree, mults):
        """Strict transform class of a plane curve of the given degree with
        multiplicity mults[i] at center i (a dict, missing entries zero)."""
        e = [-mults.get(i, 0) for i in range(len(self.centers))]
        return DivisorClass(degree, tuple(e))


# --- canonical resolution of a declared branch -----------------------------

def _line_meet(F, l1, l2):
    a = line_coeffs(l1)
    b = line_coeffs(l2)
    v = (F.sub(F.mul(a[1], b[2]), F.mul(a[2], b[1])),
         F.sub(F.mul(a[2], b[0]), F.mul(a[0], b[2])),
         F.sub(F.mul(a[0], b[1]), F.mul(a[1], b[0])))
    if all(F.is_zero(x) for x in v):
        return None
    return ProjPoint(v, F=F)


class _Prop:
    # working record for one proper point during the merge
    __slots__ = ("name", "point", "chains", "on_lines", "groups")

    def __init__(self, name, point):
        self.name = name
        self.point = point
        self.chains = []        # (part index, SingChain)
        self.on_lines = []      # line indices
        self.groups = []        # [tangent line, [(part, m2)], [line idx]]


def _merge_configuration(parts, lines, F):
    """Collect the declared branch data point by point.

    Returns the list of _Prop records: every declared scheme point of every
    curve part, plus every pairwise meeting point of the branch lines.
    Level-two declarations are grouped by tangent direction, and each line
    is attached to the groups whose tangent it is.
    """
    props = []

    def find(point):
        for pr in props:
            if pr.point.eq(point):
                return pr
        return None

    for pi, (_deg, scheme) in enumerate(parts):
        for it in scheme:
            pr = find(it.point)
            if pr is None:
                pr = _Prop(it.name or "p%d" % (len(props) + 1), it.point)
                props.append(pr)
            pr.chains.append((pi, it.chain))

    for li in range(len(lines)):
        for lj in range(li + 1, len(lines)):
            if lines[li].proportional_to(lines[lj]):
                raise SchemeError("branch lines %d and %d coincide"
                                  % (li + 1, lj + 1))
            pt = _line_meet(F, lines[li], lines[lj])
            if find(pt) is None:
                props.append(_Prop("x%d%d" % (li + 1, lj + 1), pt))

    for pr in props:
        for li, line in enumerate(lines):
            if pr.point.on_line(line):
                pr.on_lines.append(li)

    for pr in props:
        for pi, chain in pr.chains:
            if len(chain.mults) != 2:
                continue
            tg = chain.tangents[0]
            if tg.free:
                raise SchemeError(
                    "free tangent at %s: the resolution needs an assigned "
                    "direction" % pr.name)
            grp = None
            for g in pr.groups:
                if g[0].proportional_to(tg.line):
                    grp = g
                    break
            if grp is None:
                grp = [tg.line, [], []]
                pr.groups.append(grp)
            grp[1].append((pi, chain.mults[1]))
        for li in pr.on_lines:
            for g in pr.groups:
                if g[0].proportional_to(lines[li]):
                    g[2].append(li)
                    break
    return props


class BranchLedger:
    """Per-center branch bookkeeping of a canonical resolution.

    Holds the half-class L with 2L equal to the reduced branch class, the
    canonical class, and the final branch components with labels, so that
    torsion and self-check computations can read everything off the
    lattice.
    """

    __slots__ = ("k", "L", "K", "branch_class", "components", "names")

    def __init__(self, k, L, K, branch_class, components, names):
        self.k = k
        self.L = L
        self.K = K
        self.branch_class = branch_class
        self.components = components   # [(label, DivisorClass)]
        self.names = names

    def component_classes(self):
        return [cls for _label, cls in self.components]

    def negative_two_labels(self):
        """Branch components whose half on the cover is a (-1)-curve."""
        KL = self.K + self.L
        out = []
        for label, cls in self.components:
            if cls.selfint() == -2 and KL.dot(cls) == -1:
                out.append(label)
        return out

    def summary(self):
        lines = ["branch 2L with L = %s" % self.L.fmt(self.names)]
        for label, cls in self.components:
            lines.append("  component %s = %s (self-int %d)"
                         % (label, cls.fmt(self.names), cls.selfint()))
        return "\n".join(lines)


class Resolution:
    """Result of canonical_resolution: tree, ledger and the two numbers."""

    __slots__ = ("tree", "ledger", "chi", "ksq_cover")

    def __init__(self, tree, ledger, chi, ksq_cover):
        self.tree = tree
        self.ledger = ledger
        self.chi = chi
        self.ksq_cover = ksq_cover

    def __iter__(self):
        return iter((self.tree, self.ledger, self.chi, self.ksq_cover))

    def report(self):
        led = self.ledger
        names = led.names
        exc = led.negative_two_labels()
        lines = [
            "branch degree %d (k = %d), %d centers"
            % (2 * led.k, led.k, len(self.tree)),
            "centers: " + ", ".join(
                "%s:%d" % (c.name, c.d) for c in self.tree),
            "L = %s" % led.L.fmt(names),
            "L.L = %d, K.L = %d" % (led.L.selfint(), led.K.dot(led.L)),
            "chi = %d, Ksq_cover = %d" % (self.chi, self.ksq_cover),
            "(-2)-components in the branch: %d (%s)"
            % (len(exc), ", ".join(exc) if exc else "none"),
            "expected minimal K^2 = %d" % (self.ksq_cover + len(exc)),
        ]
        return "\n".join(lines)


def canonical_resolution(parts, lines=()):
    """Resolve a declared branch configuration and compute its invariants.

    `parts` lists the curve components of the branch as (degree, scheme)
    pairs (a PlaneCurve may stand in for the degree); `lines` lists linear
    components as PlaneCurve objects.  Line multiplicities are derived,
    never declared: a line adds one to every declared point it passes
    through, meets the other lines where it must, and follows a declared
    chain downstairs exactly when it is the assigned tangent there.

    At every center of total branch multiplicity m the branch class drops
    by 2*floor(m/2) times the exceptional class, and the exceptional curve
    itself joins the branch exactly when m is odd.  Returns a Resolution
    with chi = 2 + (L.L + K.L)/2 and K^2 of the smooth double cover,
    after checking that the final branch class is even and that its
    components are pairwise disjoint (the declared scheme really was the
    complete intersection picture).
    """
    norm = []
    for part in parts:
        head, scheme = part
        deg = head.degree if isinstance(head, PlaneCurve) else int(head)
        norm.append((deg, scheme))
    parts = norm
    lines = list(lines)

    total = sum(d for d, _s in parts) + len(lines)
    if total % 2 != 0:
        raise SchemeError("branch degree %d is odd; a double cover needs "
                          "an even branch" % total)
    k = total // 2

    F = None
    for _d, scheme in parts:
        for it in scheme:
            F = it.point.F
            break
        if F is not None:
            break
    if F is None:
        F = lines[0].F if lines else QQ

    props = _merge_configuration(parts, lines, F)

    # total multiplicity at each proper point; keep only actual centers
    kept = []
    for pr in props:
        m = sum(ch.mults[0] for _pi, ch in pr.chains) + len(pr.on_lines)
        if m >= 2:
            kept.append((pr, m))
        elif pr.groups:
            raise SchemeError(
                "%s has an infinitely near declaration but multiplicity %d"
                % (pr.name, m))

    centers = []
    part_mults = [{} for _ in parts]   # center index -> multiplicity
    line_mults = [{} for _ in lines]
    for pr, m in kept:
        idx = len(centers)
        centers.append(Center(pr.name, point=pr.point, m=m))
        for pi, chain in pr.chains:
            part_mults[pi][idx] = part_mults[pi].get(idx, 0) + chain.mults[0]
        for li in pr.on_lines:
            line_mults[li][idx] = 1
        parent_odd = m % 2 == 1

        grouped_lines = set()
        for g in pr.groups:
            grouped_lines.update(g[2])
        if parent_odd:
            # residue of a curve part crossing the branch exceptional
            # curve away from any declared child cannot be placed
            for pi, chain in pr.chains:
                follow = sum(m2 for g in pr.groups
                             for pj, m2 in g[1] if pj == pi)
                if chain.mults[0] > follow:
                    raise SchemeError(
                        "odd multiplicity %d at %s: part %d meets the "
                        "branch exceptional curve at undeclared points"
                        % (m, pr.name, pi + 1))
            # a stray line still crossing the branch exceptional curve
            # makes a known double point; blow it up as well
            for li in pr.on_lines:
                if li not in grouped_lines:
                    pr.groups.append([lines[li], [], [li]])

        primes = ""
        for g in pr.groups:
            tangent, members, gls = g
            if not pr.point.on_line(tangent):
                raise SchemeError(
                    "tangent %s at %s does not pass through the point"
                    % (tangent.fmt(), pr.name))
            mc = sum(m2 for _pi, m2 in members) + len(gls) + \
                (1 if parent_odd else 0)
            if mc < 2:
                continue
            primes += "'"
            if mc % 2 == 1:
                raise SchemeError(
                    "odd multiplicity %d at %s%s: chains of depth > 2 "
                    "are not supported" % (mc, pr.name, primes))
            cidx = len(centers)
            centers.append(Center(pr.name + primes, parent=idx,
                                  tangent=tangent, m=mc))
            for pi, m2 in members:
                part_mults[pi][cidx] = m2
            for li in gls:
                line_mults[li][cidx] = 1

    tree = BlowupTree(centers)
    names = tree.names()

    components = []
    for pi, (deg, _scheme) in enumerate(parts):
        label = "B" if len(parts) == 1 else "B%d" % (pi + 1)
        components.append((label, tree.strict_class(deg, part_mults[pi])))
    for li in range(len(lines)):
        components.append(("r%d" % (li + 1),
                           tree.strict_class(1, line_mults[li])))
    for i, c in enumerate(centers):
        if c.odd:
            components.append(("E(%s)" % c.name, tree.strict_exceptional(i)))

    branch = DivisorClass(0, (0,) * len(centers))
    for _label, cls in components:
        branch = branch + cls
    for i, c in enumerate(centers):
        if branch.e[i] % 2 != 0:
            raise SchemeError(
                "final branch class is odd along E(%s); the parity "
                "bookkeeping does not close" % c.name)
    if branch.h % 2 != 0:
        raise SchemeError("final branch class has odd degree %d" % branch.h)

    for i in range(len(components)):
        for j in range(i + 1, len(components)):
            li, ci = components[i]
            lj, cj = components[j]
            n = ci.dot(cj)
            if n != 0:
                raise SchemeError(
                    "branch components %s and %s still meet (product %d); "
                    "the declared scheme is not the complete intersection "
                    "picture" % (li, lj, n))

    L = DivisorClass(k, tuple(-c.d for c in centers))
    K = tree.canonical()
    if branch != L.scale(2):
        raise SchemeError("branch class does not equal 2L")

    two_chi = L.selfint() + K.dot(L)
    if two_chi % 2 != 0:
        raise SchemeError("L.L + K.L = %d is odd" % two_chi)
    chi = 2 + two_chi // 2
    # same number from the plane-side count; disagreement means a bug
    alt = k * (k - 3) // 2 + 2 - sum(c.d * (c.d - 1) // 2 for c in centers)
    if chi != alt:
        raise SchemeError("chi bookkeeping mismatch: %d vs %d" % (chi, alt))
    KL = K + L
    ksq = 2 * KL.selfint()

    ledger = BranchLedger(k, L, K, branch, components, names)
    return Resolution(tree, ledger, chi, ksq)


# --- adjoint count of 2-forms ----------------------------------------------

def pg_adjoint(res):
    """h^0 of the adjoint system of a resolved double cover.

    Plane curves of degree k-3 with multiplicity d_i - 1 at every center,
    infinitely near structure included.  The count is the number of
    independent global 2-forms on the cover.
    """
    led = res.ledger
    deg = led.k - 3
    if deg < 0:
        return 0
    tree = res.tree
    F = None
    rows = []
    for i, c in enumerate(tree):
        if c.point is None:
            continue
        if F is None:
            F = c.point.F
        a = c.d - 1
        kids = tree.children(i)
        if not kids:
            if a >= 1:
                ch = SingChain.virtual((a,))
                rows.extend(conditions(deg, c.point, ch, F))
            continue
        for j in kids:
            child = tree.centers[j]
            b = child.d - 1
            if a == 0 and b == 0:
                continue
            ch = SingChain.virtual((a, b), (Tangent(child.tangent),))
            rows.extend(conditions(deg, c.point, ch, F))
    ncols = monomial_count(deg)
    if not rows:
        return ncols
    if F is None:
        F = QQ
    rank = matrix_rank(rows, F)
    return ncols - rank


# --- divisor self-check ----------------------------------------------------

class SelfcheckReport:
    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = entries   # [(name, ok, got, want)]

    @property
    def ok(self):
        return all(ok for _n, ok, _g, _w in self.entries)

    def summary(self):
        out = []
        for name, ok, got, want in self.entries:
            out.append("%s: %s (got %s, want %s)"
                       % (name, "ok" if ok else "FAIL", got, want))
        return "\n".join(out)


def divisor_selfcheck(res):
    """Identity checks on D = 2K + B0 in the resolved lattice.

    B0 is the strict transform of the first curve part of the branch.  For
    a correct configuration D.D = 2, K.D = 0 and p_a(D) = 2, and the full
    branch class is even; a corrupted scheme breaks at least one of these.
    """
    led = res.ledger
    B0 = led.components[0][1]
    K = led.K
    D = K.scale(2) + B0
    dsq = D.selfint()
    kd = K.dot(D)
    pa2 = dsq + kd + 2
    entries = [
        ("branch even", led.branch_class.is_even(),
         led.branch_class.fmt(led.names), "even class"),
        ("D.D", dsq == 2, dsq, 2),
        ("K.D", kd == 0, kd, 0),
    ]
    if pa2 % 2 == 0:
        entries.append(("p_a(D)", pa2 // 2 == 2, pa2 // 2, 2))
    else:
        entries.append(("p_a(D)", False, "%d/2" % pa2, 2))
    return SelfcheckReport(entries)


# --- 2-torsion from the branch components ----------------------------------

def beauville_tors2(components):
    """Order of the 2-torsion group from the branch component classes.

    The kernel of the mod-2 map sending a choice of components to the
    parity class of their sum always contains the all-ones vector (the
    total branch is even); the group order is 2^(kernel dimension - 1).
    """
    if not components:
        raise SchemeError("no components")
    n = len(components[0].e)
    total = DivisorClass(0, (0,) * n)
    for cls in components:
        total = total + cls
    if not total.is_even():
        raise SchemeError("component sum %s is not even; no double cover"
                          % total.fmt())
    rows = [[cls.h % 2] + [x % 2 for x in cls.e] for cls in components]
    rank = rank_mod_p(rows, 2)
    dim_ker = len(components) - rank
    return 2 ** (dim_ker - 1)


# --- the branch configuration of the classification ------------------------

class DuValConfig:
    """Branch shape: two lines and a degree-12 part with four [4]-points,
    two [4,4]-points along the lines, and one [3,3]-point.

    The roles are recovered from the chains, not from declaration order:
    q0 is the [4]-point on both lines, q1 and q2 the [4,4]-points whose
    tangents are the lines, q3..q5 the remaining [4]-points, q6 the
    [3,3]-point with its tangent t6.
    """

    __slots__ = ("degree", "scheme", "r1", "r2", "curve", "F",
                 "q0", "q1", "q2", "q3", "q4", "q5", "q6", "t6")

    def __init__(self, scheme, r1, r2, curve=None, degree=12):
        self.scheme = scheme
        self.r1 = r1
        self.r2 = r2
        self.curve = curve
        self.degree = curve.degree if curve is not None else int(degree)
        items = list(scheme)
        if len(items) != 7:
            raise SchemeError("expected 7 scheme items, got %d" % len(items))
        self.F = items[0].point.F
        quad, dbl4, tac = [], [], []
        for it in items:
            if it.chain.mults == (4,):
                quad.append(it)
            elif it.chain.mults == (4, 4):
                dbl4.append(it)
            elif it.chain.mults == (3, 3):
                tac.append(it)
            else:
                raise SchemeError("unexpected chain %r at %s"
                                  % (it.chain.mults, it.point.fmt()))
        if len(quad) != 4 or len(dbl4) != 2 or len(tac) != 1:
            raise SchemeError(
                "need four [4], two [4,4] and one [3,3] item "
                "(got %d/%d/%d)" % (len(quad), len(dbl4), len(tac)))

        on_both = [it for it in quad
                   if it.point.on_line(r1) and it.point.on_line(r2)]
        if len(on_both) != 1:
            raise SchemeError("exactly one [4]-point must lie on both "
                              "lines, found %d" % len(on_both))
        self.q0 = on_both[0].point
        rest = [it.point for it in quad if it is not on_both[0]]
        if any(p.on_line(r1) or p.on_line(r2) for p in rest):
            raise SchemeError("a [4]-point other than the meeting point "
                              "lies on a branch line")
        self.q3, self.q4, self.q5 = rest

        self.q1 = self.q2 = None
        for it in dbl4:
            tg = it.chain.tangents[0]
            if tg.free:
                raise SchemeError("the [4,4] tangents must be assigned")
            if tg.line.proportional_to(r1) and it.point.on_line(r1):
                self.q1 = it.point
            elif tg.line.proportional_to(r2) and it.point.on_line(r2):
                self.q2 = it.point
        if self.q1 is None or self.q2 is None:
            raise SchemeError("the [4,4]-points must lie on the lines with "
                              "the lines as tangents")
        t = tac[0]
        tg = t.chain.tangents[0]
        if tg.free:
            raise SchemeError("the [3,3] tangent must be assigned")
        self.q6 = t.point
        self.t6 = tg.line


# --- torsion criterion via the degree-8 curve ------------------------------

TORS_Z4 = "Z/4"
TORS_Z2 = "Z/2"


class TorsionReport:
    __slots__ = ("group", "witness", "dim", "shape", "fixed", "notes")

    def __init__(self, group, witness, dim, shape, fixed, notes):
        self.group = group
        self.witness = witness
        self.dim = dim
        self.shape = shape
        self.fixed = fixed
        self.notes = notes

    def summary(self):
        out = ["torsion %s (degree-8 system %dx%d, dimension %d)"
               % (self.group, self.shape[0], self.shape[1], self.dim)]
        out.extend(self.notes)
        return "\n".join(out)


def _torsion_scheme(cfg):
    return [
        SchemeItem(cfg.q0, SingChain((2,)), name="q0"),
        SchemeItem(cfg.q1, SingChain((3, 2), (Tangent(cfg.r1),)), name="q1"),
        SchemeItem(cfg.q2, SingChain((3, 2), (Tangent(cfg.r2),)), name="q2"),
        SchemeItem(cfg.q3, SingChain((3,)), name="q3"),
        SchemeItem(cfg.q4, SingChain((3,)), name="q4"),
        SchemeItem(cfg.q5, SingChain((3,)), name="q5"),
        SchemeItem(cfg.q6, SingChain((2, 2), (Tangent(cfg.t6),)), name="q6"),
    ]


def duval_torsion(cfg, fixed_component=None):
    """Decide Z/2 versus Z/4 through the degree-8 test curve.

    The test system asks for degree-8 curves with a double point at q0,
    [3,2] along each line at q1 and q2, triple points at q3..q5 and a
    tacnode at q6 sharing the branch tangent there.  A solution means Z/4;
    an empty system means Z/2.  With `fixed_component` the solution is
    required to contain that known component, and the residual system is
    solved instead.
    """
    notes = []
    if fixed_component is None:
        g = geometric_genus(cfg.degree, cfg.scheme)
        if g != 1:
            raise SchemeError(
                "criterion not applicable: the declared branch part has "
                "genus %d, not 1" % g)
        notes.append("hypotheses: branch part of genus 1, q1/q2 proper")
    else:
        notes.append("hypotheses: reducible branch with fixed component "
                     "of degree %d" % fixed_component.degree)

    items = _torsion_scheme(cfg)
    sys8 = LinearSystem(8, items, F=cfg.F)
    rows, basis = sys8.assemble()

    if fixed_component is None:
        shape = (len(rows), len(basis))
        dim = sys8.dimension()
        if dim > 0:
            raise SchemeError(
                "degenerate configuration: the degree-8 system has "
                "dimension %d" % dim)
        if dim == 0:
            w = sys8.solve_unique()
            notes.append("unique degree-8 curve found")
            return TorsionReport(TORS_Z4, w, dim, shape, None, notes)
        return TorsionReport(TORS_Z2, None, dim, shape, None, notes)

    deg_res = 8 - fixed_component.degree
    if deg_res < 0:
        raise SchemeError("fixed component degree exceeds 8")
    rows7 = restrict_through_component(rows, 8, fixed_component)
    ncols = monomial_count(deg_res)
    shape = (len(rows7), ncols)
    rank = matrix_rank(rows7, cfg.F) if rows7 else 0
    dim = ncols - rank - 1
    if dim > 0:
        raise SchemeError(
            "degenerate configuration: the residual system has "
            "dimension %d" % dim)
    if dim < 0:
        return TorsionReport(TORS_Z2, None, dim, shape,
                             fixed_component, notes)
    vec = kernel_basis(rows7, ncols, cfg.F)[0]
    terms = {m: c for m, c in zip(monomial_basis(deg_res), vec)
             if not cfg.F.is_zero(c)}
    w = fixed_component * PlaneCurve(cfg.F, deg_res, terms)
    if cfg.F is QQ:
        w = normalize_integer(w)
    notes.append("unique degree-8 curve through the fixed component")
    return TorsionReport(TORS_Z4, w, dim, shape, fixed_component, notes)


# --- cubic obstruction test ------------------------------------------------

NOT_CAMPEDELLI = "NOT_CAMPEDELLI"
INCONCLUSIVE = "INCONCLUSIVE"


class ObstructionReport:
    __slots__ = ("verdict", "cubic", "notes")

    def __init__(self, verdict, cubic, notes):
        self.verdict = verdict
        self.cubic = cubic
        self.notes = notes

    def summary(self):
        return "\n".join(["verdict %s" % self.verdict] + self.notes)


def _eval_at_cluster(cubic, rec):
    """Evaluate a rational curve at a conjugate singular point cluster.

    Returns True when the curve misses every point of the cluster, False
    when it passes through one, None when the record is not resolved
    enough to decide.
    """
    F = cubic.F
    if F is not QQ:
        return None
    if rec.c1_min is not None and rec.c2_val is not None:
        K = NumberField(tuple(rec.c1_min.c), name="s")
        lift = PlaneCurve(K, cubic.degree,
                          {m: K.from_q(c) for m, c in cubic.terms.items()})
        if rec.chart == "x":
            pt = (K.one, K.gen(), K.zero)
        else:
            pt = (K.gen(), rec.c2_val, K.one)
        return not K.is_zero(lift.evaluate(pt))
    if rec.c1_val is not None and rec.c2_min is not None:
        K = NumberField(tuple(rec.c2_min.c), name="s")
        lift = PlaneCurve(K, cubic.degree,
                          {m: K.from_q(c) for m, c in cubic.terms.items()})
        pt = (K.from_q(rec.c1_val), K.gen(), K.one)
        return not K.is_zero(lift.evaluate(pt))
    return None


def campedelli_obstruction(cfg):
    """Solve the nine-condition cubic and test it against the branch.

    The cubic passes through q0, q3..q6 and is tangent to the lines at q1
    and q2.  If it is unique, absolutely irreducible, and misses every
    singular point of the branch part beyond the declared scheme, the
    configuration cannot come from the degree-10 shape; otherwise the test
    is inconclusive.
    """
    if cfg.curve is None:
        raise SchemeError("the obstruction test needs the branch curve")
    F = cfg.F
    items = [
        SchemeItem(cfg.q0, SingChain((1,)), name="q0"),
        SchemeItem(cfg.q1, SingChain((1, 1), (Tangent(cfg.r1),)), name="q1"),
        SchemeItem(cfg.q2, SingChain((1, 1), (Tangent(cfg.r2),)), name="q2"),
        SchemeItem(cfg.q3, SingChain((1,)), name="q3"),
        SchemeItem(cfg.q4, SingChain((1,)), name="q4"),
        SchemeItem(cfg.q5, SingChain((1,)), name="q5"),
        SchemeItem(cfg.q6, SingChain((1,)), name="q6"),
    ]
    sys3 = LinearSystem(3, items, F=F)
    dim = sys3.dimension()
    if dim != 0:
        raise SchemeError("degenerate configuration: the cubic system has "
                          "dimension %d" % dim)
    cubic = sys3.solve_unique()
    notes = ["unique cubic: %s" % cubic.fmt()]

    ok = True
    count = absolute_factor_count(cubic).count
    if count != 1:
        ok = False
        notes.append("cubic splits into %d absolute factors" % count)
    else:
        notes.append("cubic is absolutely irreducible")

    declared = {it.point.key() for it in cfg.scheme}
    scan = singular_locus_scan(cfg.curve)
    extra = [(p, m) for p, m in scan.rational if p.key() not in declared]
    if not extra and not scan.extension:
        notes.append("no singular points beyond the declared scheme")
    for p, m in extra:
        if F.is_zero(cubic.evaluate(p.coords)):
            ok = False
            notes.append("cubic passes through the stray singular point %s"
                         % p.fmt())
        else:
            notes.append("cubic misses the stray singular point %s"
                         % p.fmt())
    undecided = False
    for rec in scan.extension:
        misses = _eval_at_cluster(cubic, rec)
        if misses is None:
            undecided = True
            notes.append("unresolved singular cluster %s left undecided"
                         % rec.fmt(F))
        elif not misses:
            ok = False
            notes.append("cubic passes through the singular cluster %s"
                         % rec.fmt(F))
        else:
            notes.append("cubic misses the singular cluster %s"
                         % rec.fmt(F))
    if undecided:
        ok = False
    return ObstructionReport(NOT_CAMPEDELLI if ok else INCONCLUSIVE,
                             cubic, notes)


# --- cross-check against the actual equations ------------------------------

def _cone_parts(ser, F):
    """Split the lowest-degree form of a local series.

    Returns (m, s, t): the multiplicity m, the exponent s of the frame
    direction {u = 0} in the tangent cone, and the cone in the slope
    chart as a UniPoly t with t(w) carrying the direction {v = w*u}.
    """
    m = min(i + j for (i, j) in ser)
    cs = {j: c for (i, j), c in ser.items() if i + j == m}
    t = UniPoly(F, [cs.get(k, F.zero) for k in range(max(cs) + 1)])
    return m, m - t.degree, t


def _deflate(t, w0, F):
    # exact synthetic division by (w - w0); t(w0) must vanish
    cs = list(t.c)
    n = len(cs) - 1
    q = [F.zero] * n
    carry = cs[n]
    for k in range(n - 1, -1, -1):
        q[k] = carry
        carry = F.add(cs[k], F.mul(w0, carry))
    return UniPoly(F, q)


def _strip_direction(s, t, line, point, F):
    """Remove one declared direction from a cone, to its full power.

    The direction is given by a line through the point; its slope is read
    off in the same deterministic frame the cone was computed in.  Returns
    (multiplicity removed, s, t).
    """
    lser = {k: v for k, v in local_series(line, point).items()
            if not F.is_zero(v)}
    a = lser.get((1, 0), F.zero)
    b = lser.get((0, 1), F.zero)
    if F.is_zero(b):
        return s, 0, t
    w0 = F.div(F.neg(a), b)
    mu = 0
    while t.degree > 0 and F.is_zero(t.eval(w0)):
        t = _deflate(t, w0, F)
        mu += 1
    return mu, s, t


def _is_squarefree(t, F):
    if t.degree <= 1:
        return True
    g = q_gcd(t, t.deriv()) if F is QQ else upoly_gcd(t, t.deriv())
    return g.degree == 0


def cross_check_resolution(parts, lines=()):
    """Recompute the declared singularity picture from the equations.

    `parts` must carry actual PlaneCurve objects.  Four things are
    checked, and any shortfall raises SchemeError:

      * every part matches its own declared chains exactly (chain_verify),
      * the product of all components has no singular points beyond the
        declared ones,
      * at each declared point the tangent cone of the product is fully
        accounted for: after stripping the declared tangent directions the
        remainder must be reduced, and empty when the total multiplicity
        is odd,
      * along each declared tangent the strict transform one level up has
        exactly the declared multiplicity and again a reduced cone, never
        tangent to the exceptional direction when the parity puts the
        exceptional curve into the branch.

    Stronger-than-declared contact is exactly what would silently change
    the resolution combinatorics; these cone conditions exclude it.
    Returns a short report string on success.
    """
    for head, _s in parts:
        if not isinstance(head, PlaneCurve):
            raise SchemeError("cross-check needs the actual curves")
    F = parts[0][0].F
    lines = list(lines)
    props = _merge_configuration(parts, lines, F)

    for pi, (curve, scheme) in enumerate(parts):
        rep = chain_verify(curve, scheme)
        bad = [v for v in rep.verdicts if v.status != EXACT]
        if bad:
            raise SchemeError(
                "part %d disagrees with its declared chains:\n" % (pi + 1)
                + "\n".join("%s %s: %s" % (v.point.fmt(), v.status,
                                           v.detail) for v in bad))

    product = None
    for curve, _s in parts:
        product = curve if product is None else product * curve
    for line in lines:
        product = line if product is None else product * line

    declared = set()
    ncenters = 0
    for pr in props:
        m_dec = sum(ch.mults[0] for _pi, ch in pr.chains) + len(pr.on_lines)
        if m_dec < 2:
            continue
        declared.add(pr.point.key())
        ncenters += 1
        ser = {k: v for k, v in local_series(product, pr.point).items()
               if not F.is_zero(v)}
        m, s, t = _cone_parts(ser, F)
        if m != m_dec:
            raise SchemeError("product multiplicity %d at %s, declared %d"
                              % (m, pr.name, m_dec))
        odd = m % 2 == 1

        grouped = set()
        groups = [(g[0], g[1], g[2]) for g in pr.groups]
        for _tg, _mem, gls in groups:
            grouped.update(gls)
        for li in pr.on_lines:
            if li not in grouped:
                if odd:
                    # becomes its own center; nothing else may share
                    # the direction
                    mu, s, t = _strip_direction(s, t, lines[li],
                                                pr.point, F)
                    if mu != 1:
                        raise SchemeError(
                            "line %d has cone multiplicity %d at %s; "
                            "an undeclared component is tangent to it"
                            % (li + 1, mu, pr.name))
                    groups.append((lines[li], [], [li]))
                # at even centers the line direction stays in the
                # remainder and the reducedness test covers it

        for tangent, members, gls in groups:
            expect = sum(m2 for _pi, m2 in members) + len(gls)
            if members:
                mu, s, t = _strip_direction(s, t, tangent, pr.point, F)
                if mu < expect:
                    raise SchemeError(
                        "tangent cone at %s carries the declared "
                        "direction %d times, need at least %d"
                        % (pr.name, mu, expect))

            ser2 = {k: v
                    for k, v in local_series(product, pr.point,
                                             tangent).items()
                    if not F.is_zero(v)}
            strict = {(i + j - m, j): c for (i, j), c in ser2.items()}
            m2, s2, t2 = _cone_parts(strict, F)
            if m2 != expect:
                raise SchemeError(
                    "strict transform above %s has multiplicity %d along "
                    "the declared tangent, declared %d"
                    % (pr.name, m2, expect))
            if not _is_squarefree(t2, F):
                raise SchemeError(
                    "undeclared repeated contact above %s along the "
                    "declared tangent" % pr.name)
            if s2 > (0 if odd else 1):
                raise SchemeError(
                    "branch tangent to the exceptional direction above %s"
                    % pr.name)

        if odd:
            if s != 0 or t.degree != 0:
                raise SchemeError(
                    "odd multiplicity %d at %s leaves unaccounted tangent "
                    "directions in the cone" % (m, pr.name))
        else:
            if s > 1 or not _is_squarefree(t, F):
                raise SchemeError(
                    "undeclared repeated tangent direction at %s"
                    % pr.name)

    scan = singular_locus_scan(product)
    stray = [p for p, _mm in scan.rational if p.key() not in declared]
    if stray or scan.extension:
        msgs = [p.fmt() for p in stray]
        msgs.extend(rec.fmt(F) for rec in scan.extension)
        raise SchemeError("undeclared singular points on the branch: "
                          + "; ".join(msgs))
    return "cross-check passed: %d centers verified, %d singular points, " \
        "no strays" % (ncenters, len(scan.rational))
