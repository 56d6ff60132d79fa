"""Scene files: a line-oriented description of a branch configuration.

A scene declares the coefficient field, named points and lines, the
singularity scheme, an optional involution, the curve degree, and the
tasks the file is meant for.  Parsing validates everything it can and
reports every problem at once, each with its line number.

    # a comment
    field rational
    degree 12
    point q0 = [0, 0, 1]
    line r1 = x - y
    involution [[1, 0, 0], [0, -1, 0], [0, 0, 1]]
    sing q0 mult 4
    sing q1 chain [4, 4] tangent r1
    branch line r1
    task solve

Coordinates are rationals, or polynomials in t when the scene declares
`param t` (one rational parameter) or `field nf <monic poly>` (a number
field residue).  Line forms are rational combinations of x, y, z.
"""

import re

from gmpy2 import mpq

from .curves import PlaneCurve, ProjInvolution
from .fields import QQ, FunctionField, NumberField
from .singular import ProjPoint, SchemeItem, SingChain, Tangent
from .unipoly import UniPoly

_TASKS = ("dim", "solve", "verify", "invariants", "torsion")
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


class SceneError(ValueError):
    """All problems found in one scene text, each with a line number."""

    def __init__(self, errors):
        self.errors = list(errors)
        msg = "\n".join(_fmt_err(n, m) for n, m in self.errors)
        super().__init__(msg)


def _fmt_err(lineno, msg):
    if lineno == 0:
        return "scene: %s" % msg
    return "line %d: %s" % (lineno, msg)


# ---------------------------------------------------------------------------
# term-level parsing


def _parse_q(text):
    t = text.strip()
    if not re.fullmatch(r"-?\d+(/\d+)?", t):
        raise ValueError("malformed rational %r" % text.strip())
    try:
        return mpq(t)
    except ZeroDivisionError:
        raise ValueError("malformed rational %r (zero denominator)"
                         % text.strip())


def _split_terms(text):
    """Chunks of a +/- separated expression, sign attached."""
    s = text.strip()
    if not s:
        raise ValueError("empty expression")
    out = []
    buf = ""
    for ch in s:
        if ch in "+-" and buf.strip():
            out.append(buf.strip())
            buf = ch
        elif ch in "+-" and buf.strip() in ("", "+", "-"):
            if buf.strip():
                raise ValueError("malformed expression %r" % text.strip())
            buf = ch
        else:
            buf += ch
    if not buf.strip() or buf.strip() in ("+", "-"):
        raise ValueError("malformed expression %r" % text.strip())
    out.append(buf.strip())
    return out


_TERM_RE = re.compile(
    r"(?P<sign>[+-])?\s*(?P<num>\d+(?:/\d+)?)?\s*\*?\s*"
    r"(?P<var>[A-Za-z])?\s*(?:\^(?P<exp>\d+))?$")


def _parse_term(chunk):
    """(coefficient, variable or None, exponent) of one monomial chunk."""
    m = _TERM_RE.fullmatch(chunk.strip())
    if not m or (m.group("num") is None and m.group("var") is None):
        raise ValueError("malformed rational %r" % chunk.strip())
    if m.group("var") is None and m.group("exp") is not None:
        raise ValueError("malformed rational %r" % chunk.strip())
    try:
        c = mpq(m.group("num")) if m.group("num") is not None else mpq(1)
    except ZeroDivisionError:
        raise ValueError("malformed rational %r (zero denominator)"
                         % chunk.strip())
    if m.group("sign") == "-":
        c = -c
    var = m.group("var")
    exp = int(m.group("exp")) if m.group("exp") is not None else \
        (1 if var is not None else 0)
    return c, var, exp


def _parse_tpoly(text):
    """A polynomial in t with rational coefficients, as a UniPoly."""
    coeffs = {}
    for chunk in _split_terms(text):
        c, var, exp = _parse_term(chunk)
        if var is not None and var != "t":
            raise ValueError("unexpected variable %r (only t is allowed "
                             "in coordinates)" % var)
        coeffs[exp] = coeffs.get(exp, mpq(0)) + c
    top = max(coeffs)
    return UniPoly(QQ, [coeffs.get(k, mpq(0)) for k in range(top + 1)])


def _parse_linear_form(text):
    """Rational coefficients (a, b, c) of a*x + b*y + c*z."""
    acc = {"x": mpq(0), "y": mpq(0), "z": mpq(0)}
    for chunk in _split_terms(text):
        c, var, exp = _parse_term(chunk)
        if var is None:
            raise ValueError("constant term %r in a line form" %
                             chunk.strip())
        if var not in acc:
            raise ValueError("unexpected variable %r in a line form" % var)
        if exp != 1:
            raise ValueError("line forms must be linear (saw %s^%d)"
                             % (var, exp))
        acc[var] += c
    if all(v == 0 for v in acc.values()):
        raise ValueError("zero line form")
    return (acc["x"], acc["y"], acc["z"])


def _parse_matrix(text):
    s = re.sub(r"\s+", "", text)
    m = re.fullmatch(r"\[(\[[^][]*\],\[[^][]*\],\[[^][]*\])\]", s)
    if not m:
        raise ValueError("malformed involution matrix")
    rows = []
    for rt in re.findall(r"\[([^][]*)\]", m.group(1)):
        cells = rt.split(",")
        if len(cells) != 3:
            raise ValueError("involution rows need 3 entries")
        rows.append(tuple(_parse_q(c) for c in cells))
    return tuple(rows)


# ---------------------------------------------------------------------------
# the scene object


class SceneFile:
    """Parsed scene: raw declarations in their declaration order."""

    __slots__ = ("field_kind", "modulus", "param", "degree", "point_names",
                 "points", "line_names", "lines", "involution", "sings",
                 "branch_lines", "fixed_lines", "tasks")

    def __init__(self):
        self.field_kind = "rational"
        self.modulus = None
        self.param = False
        self.degree = None
        self.point_names = []
        self.points = {}
        self.line_names = []
        self.lines = {}
        self.involution = None
        self.sings = []
        self.branch_lines = []
        self.fixed_lines = []
        self.tasks = []

    def _key(self):
        return (self.field_kind,
                None if self.modulus is None else tuple(self.modulus.c),
                self.param, self.degree,
                tuple(self.point_names),
                {n: tuple(tuple(c.c) for c in cs)
                 for n, cs in self.points.items()},
                tuple(self.line_names), self.lines, self.involution,
                tuple(self.sings), tuple(self.branch_lines),
                tuple(self.fixed_lines), tuple(self.tasks))

    def __eq__(self, other):
        if not isinstance(other, SceneFile):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        raise TypeError("scenes are not hashable")

    def make_field(self):
        if self.field_kind == "nf":
            return NumberField(tuple(self.modulus.c), name="t")
        if self.param:
            return FunctionField("t")
        return QQ

    def realize(self):
        """Live field, points, lines, scheme items and involution."""
        F = self.make_field()

        def ev(u):
            out = F.zero
            for c in reversed(u.c):
                out = F.add(F.mul(out, _tgen(F)), F.from_q(c))
            return out

        points = {}
        for n in self.point_names:
            points[n] = ProjPoint([ev(u) for u in self.points[n]], F)
        lines = {}
        for n in self.line_names:
            lines[n] = PlaneCurve.line(
                [F.from_q(c) for c in self.lines[n]], F)
        items = []
        for pname, mults, tangent in self.sings:
            if tangent is None:
                ch = SingChain(mults)
            elif tangent == "free":
                ch = SingChain(mults, [Tangent()])
            else:
                ch = SingChain(mults, [Tangent(lines[tangent])])
            items.append(SchemeItem(points[pname], ch, pname))
        inv = None
        if self.involution is not None:
            inv = ProjInvolution([list(r) for r in self.involution])
        return RealizedScene(self, F, points, lines, items, inv)


def _tgen(F):
    if isinstance(F, (FunctionField, NumberField)):
        return F.gen()
    return F.zero


class RealizedScene:
    __slots__ = ("scene", "F", "points", "lines", "items", "involution")

    def __init__(self, scene, F, points, lines, items, involution):
        self.scene = scene
        self.F = F
        self.points = points
        self.lines = lines
        self.items = items
        self.involution = involution

    @property
    def degree(self):
        return self.scene.degree

    def branch_line_curves(self):
        return [self.lines[n] for n in self.scene.branch_lines]

    def fixed_line_curves(self):
        return [self.lines[n] for n in self.scene.fixed_lines]


# ---------------------------------------------------------------------------
# parsing


def _logical_lines(text):
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield i, line


def parse_scene(text):
    """Parse and validate a scene text.

    Returns a SceneFile, or raises SceneError carrying every problem
    found, each tagged with its line number.
    """
    sc = SceneFile()
    errors = []
    seen_field = seen_param = seen_degree = None
    sing_points = set()
    sing_linenos = {}

    for lineno, line in _logical_lines(text):
        words = line.split(None, 1)
        kw = words[0]
        rest = words[1] if len(words) > 1 else ""
        if kw == "field":
            if seen_field is not None:
                errors.append((lineno, "duplicate field declaration "
                               "(first on line %d)" % seen_field))
                continue
            seen_field = lineno
            if rest.strip() == "rational":
                sc.field_kind = "rational"
            elif rest.startswith("nf"):
                sc.field_kind = "nf"
                try:
                    u = _parse_tpoly(rest[2:])
                except ValueError as e:
                    errors.append((lineno, str(e)))
                    continue
                if u.degree < 2 or u.c[-1] != 1 or \
                        any(c.denominator != 1 for c in u.c):
                    errors.append((lineno, "number field modulus must be "
                                   "a monic integer polynomial in t of "
                                   "degree at least 2"))
                    continue
                sc.modulus = u
            else:
                errors.append((lineno, "field must be 'rational' or "
                               "'nf <polynomial>'"))
        elif kw == "param":
            if seen_param is not None:
                errors.append((lineno, "duplicate param declaration"))
            elif rest.strip() != "t":
                errors.append((lineno, "only 'param t' is supported"))
            else:
                seen_param = lineno
                sc.param = True
        elif kw == "degree":
            if seen_degree is not None:
                errors.append((lineno, "duplicate degree declaration; a "
                               "scene carries exactly one"))
                continue
            seen_degree = lineno
            if not re.fullmatch(r"\d+", rest.strip()) or \
                    int(rest.strip()) < 1:
                errors.append((lineno, "degree must be a positive integer"))
            else:
                sc.degree = int(rest.strip())
        elif kw == "point":
            m = re.fullmatch(r"(\S+)\s*=\s*\[([^]]*)\]", rest.strip())
            if not m:
                errors.append((lineno, "expected: point <name> = [a, b, c]"))
                continue
            name, body = m.group(1), m.group(2)
            if not _NAME_RE.fullmatch(name):
                errors.append((lineno, "bad point name %r" % name))
                continue
            if name in sc.points:
                errors.append((lineno, "duplicate point name %r" % name))
                continue
            cells = body.split(",")
            if len(cells) != 3:
                errors.append((lineno, "points need 3 coordinates"))
                continue
            try:
                coords = tuple(_parse_tpoly(c) for c in cells)
            except ValueError as e:
                errors.append((lineno, str(e)))
                continue
            if all(u.is_zero() for u in coords):
                errors.append((lineno, "point %r has all coordinates "
                               "zero" % name))
                continue
            sc.point_names.append(name)
            sc.points[name] = coords
        elif kw == "line":
            m = re.fullmatch(r"(\S+)\s*=\s*(.+)", rest.strip())
            if not m:
                errors.append((lineno, "expected: line <name> = <form>"))
                continue
            name, form = m.group(1), m.group(2)
            if not _NAME_RE.fullmatch(name):
                errors.append((lineno, "bad line name %r" % name))
                continue
            if name in sc.lines:
                errors.append((lineno, "duplicate line name %r" % name))
                continue
            try:
                sc.lines[name] = _parse_linear_form(form)
            except ValueError as e:
                errors.append((lineno, str(e)))
                continue
            sc.line_names.append(name)
        elif kw == "involution":
            if sc.involution is not None:
                errors.append((lineno, "duplicate involution"))
                continue
            try:
                sc.involution = _parse_matrix(rest)
            except ValueError as e:
                errors.append((lineno, str(e)))
        elif kw == "sing":
            mm = re.fullmatch(r"(\S+)\s+mult\s+(\d+)", rest.strip())
            mc = re.fullmatch(
                r"(\S+)\s+chain\s*\[([^]]*)\]\s+tangent\s+(\S+)",
                rest.strip())
            if mm:
                name, mults, tangent = mm.group(1), \
                    (int(mm.group(2)),), None
                if mults[0] < 1:
                    errors.append((lineno, "multiplicity must be at "
                                   "least 1"))
                    continue
            elif mc:
                name = mc.group(1)
                try:
                    mults = tuple(_parse_int(c)
                                  for c in mc.group(2).split(","))
                except ValueError as e:
                    errors.append((lineno, str(e)))
                    continue
                tangent = mc.group(3)
            else:
                errors.append((lineno, "expected: sing <point> mult <m> "
                               "or sing <point> chain [m1, m2] tangent "
                               "<line|free>"))
                continue
            if name not in sc.points:
                errors.append((lineno, "undeclared point %r" % name))
                continue
            if tangent is not None and tangent != "free" and \
                    tangent not in sc.lines:
                errors.append((lineno, "undeclared line %r" % tangent))
                continue
            if name in sing_points:
                errors.append((lineno, "point %r already carries a "
                               "singularity (line %d)"
                               % (name, sing_linenos[name])))
                continue
            sing_points.add(name)
            sing_linenos[name] = lineno
            sc.sings.append((name, mults, tangent))
        elif kw == "branch":
            m = re.fullmatch(r"line\s+(\S+)", rest.strip())
            if not m:
                errors.append((lineno, "expected: branch line <name>"))
            elif m.group(1) not in sc.lines:
                errors.append((lineno, "undeclared line %r" % m.group(1)))
            elif m.group(1) in sc.branch_lines:
                errors.append((lineno, "line %r already in the branch"
                               % m.group(1)))
            else:
                sc.branch_lines.append(m.group(1))
        elif kw == "fixed":
            m = re.fullmatch(r"line\s+(\S+)", rest.strip())
            if not m:
                errors.append((lineno, "expected: fixed line <name>"))
            elif m.group(1) not in sc.lines:
                errors.append((lineno, "undeclared line %r" % m.group(1)))
            elif m.group(1) in sc.fixed_lines:
                errors.append((lineno, "line %r already fixed"
                               % m.group(1)))
            else:
                sc.fixed_lines.append(m.group(1))
        elif kw == "task":
            t = rest.strip()
            if t not in _TASKS:
                errors.append((lineno, "unknown task %r" % t))
            elif t in sc.tasks:
                errors.append((lineno, "duplicate task %r" % t))
            else:
                sc.tasks.append(t)
        else:
            errors.append((lineno, "unknown keyword %r" % kw))

    if seen_field is None:
        errors.append((0, "missing field declaration"))
    if sc.degree is None:
        errors.append((0, "missing degree declaration"))
    if sc.param and sc.field_kind == "nf":
        errors.append((seen_param, "param t cannot be combined with a "
                       "number field"))
    if not sc.param and sc.field_kind != "nf":
        for n in sc.point_names:
            if any(u.degree > 0 for u in sc.points[n]):
                errors.append((0, "point %r uses the parameter t but the "
                               "scene declares neither param t nor a "
                               "number field" % n))

    # tangency and involution checks need field arithmetic
    if not errors:
        try:
            rs = sc.realize()
        except (ValueError, ArithmeticError) as e:
            errors.append((0, str(e)))
        else:
            for pname, _mults, tangent in sc.sings:
                if tangent is None or tangent == "free":
                    continue
                if not rs.points[pname].on_line(rs.lines[tangent]):
                    errors.append((sing_linenos[pname],
                                   "tangent %s does not pass through %s"
                                   % (tangent, pname)))
    if errors:
        errors.sort(key=lambda e: e[0])
        raise SceneError(errors)
    return sc


def _parse_int(text):
    t = text.strip()
    if not re.fullmatch(r"\d+", t) or int(t) < 1:
        raise ValueError("chain entries must be positive integers, "
                         "got %r" % text.strip())
    return int(t)


# ---------------------------------------------------------------------------
# serialization


def _fmt_q(c):
    return str(c)


def _fmt_tpoly(u):
    if u.is_zero():
        return "0"
    parts = []
    for k in range(u.degree, -1, -1):
        c = u.c[k]
        if c == 0:
            continue
        if k == 0:
            body = _fmt_q(abs(c))
        else:
            v = "t" if k == 1 else "t^%d" % k
            body = v if abs(c) == 1 else "%s*%s" % (_fmt_q(abs(c)), v)
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


def _fmt_form(coeffs):
    parts = []
    for c, v in zip(coeffs, ("x", "y", "z")):
        if c == 0:
            continue
        body = v if abs(c) == 1 else "%s*%s" % (_fmt_q(abs(c)), v)
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


def serialize_scene(sc):
    """Canonical text for a scene; parse_scene gives back an equal one."""
    out = []
    if sc.field_kind == "nf":
        out.append("field nf %s" % _fmt_tpoly(sc.modulus))
    else:
        out.append("field rational")
    if sc.param:
        out.append("param t")
    out.append("degree %d" % sc.degree)
    for n in sc.point_names:
        out.append("point %s = [%s]" % (
            n, ", ".join(_fmt_tpoly(u) for u in sc.points[n])))
    for n in sc.line_names:
        out.append("line %s = %s" % (n, _fmt_form(sc.lines[n])))
    if sc.involution is not None:
        out.append("involution [%s]" % ", ".join(
            "[%s]" % ", ".join(_fmt_q(c) for c in row)
            for row in sc.involution))
    for pname, mults, tangent in sc.sings:
        if tangent is None:
            out.append("sing %s mult %d" % (pname, mults[0]))
        else:
            out.append("sing %s chain [%s] tangent %s" % (
                pname, ", ".join(str(m) for m in mults), tangent))
    for n in sc.branch_lines:
        out.append("branch line %s" % n)
    for n in sc.fixed_lines:
        out.append("fixed line %s" % n)
    for t in sc.tasks:
        out.append("task %s" % t)
    return "\n".join(out) + "\n"
