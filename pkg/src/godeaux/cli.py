"""Command line front end.

    godeaux dim <scene>            dimension of the declared linear system
    godeaux solve <scene>          the curves the system contains
    godeaux verify <scene> --curve f   check a curve against the scheme
    godeaux invariants <scene>     resolution invariants of the branch
    godeaux torsion <scene>        the degree-8 torsion test
    godeaux reproduce <target>     rebuild a shipped worked example

Exit codes: 0 on success, 1 on a mathematical negative (empty system,
failed verification, reproduction mismatch), 2 on usage or scene errors.
Reports are deterministic: the same invocation prints the same bytes.
"""

import argparse
import importlib.resources
import json
import sys

from gmpy2 import is_prime, mpq

from .curves import (PlaneCurve, normalize_integer, read_curve_txt,
                     write_curve_txt)
from .fields import QQ, FunctionField
from .linalg import rank_mod_p, rows_to_integer
from .linsys import (LinearSystem, ParamScheme, rank_drop_locus,
                     scheme_closure)
from .scenes import SceneError, parse_scene
from .singular import Scheme, SchemeError
from .surfaces import (DuValConfig, TORS_Z2, TORS_Z4, NOT_CAMPEDELLI,
                       beauville_tors2, campedelli_obstruction,
                       canonical_resolution, cross_check_resolution,
                       duval_torsion)
from .unipoly import q_factor
from .verify import absolute_factor_count, chain_verify


class UsageError(Exception):
    pass


class Negative(Exception):
    """A mathematically meaningful no: reported normally, exit code 1."""


def _positive_int(text):
    n = int(text)
    if n < 1:
        raise ValueError("must be at least 1")
    return n


def _prime(text):
    n = int(text)
    if n < 2 or not is_prime(n):
        raise ValueError("%r is not a prime" % text)
    return n


def _common_flags(sp):
    sp.add_argument("--json", action="store_true",
                    help="machine readable report")
    sp.add_argument("--modp", type=_prime, metavar="P",
                    help="use a mod-P prefilter where one applies")
    sp.add_argument("--eigenspace", choices=("plus", "minus"),
                    default="plus",
                    help="involution eigenspace for symmetric scenes")
    sp.add_argument("--threads", type=_positive_int, metavar="N",
                    help="accepted for compatibility; evaluation is "
                    "deterministic and single threaded")


def _build_parser():
    p = argparse.ArgumentParser(
        prog="godeaux",
        description="exact plane-curve linear systems and double covers")
    sub = p.add_subparsers(dest="command", required=True)
    for name, doc in (("dim", "dimension of the scene's linear system"),
                      ("solve", "solve the scene's linear system"),
                      ("verify", "check a curve file against the scheme"),
                      ("invariants", "branch resolution invariants"),
                      ("torsion", "degree-8 torsion test")):
        sp = sub.add_parser(name, help=doc)
        sp.add_argument("scene", help="path to a .scene file")
        sp.add_argument("--curve", metavar="FILE",
                        required=(name == "verify"),
                        help="curve coefficient file")
        _common_flags(sp)
    rp = sub.add_parser("reproduce", help="rebuild a shipped example")
    rp.add_argument("target",
                    choices=("ex-z4", "ex-deg11", "ex-deg11-full"))
    _common_flags(rp)
    return p


# ---------------------------------------------------------------------------
# scene plumbing


def _load_scene(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError(str(e))
    return parse_scene(text)


def _packaged_scene(name):
    ref = importlib.resources.files("godeaux.data") / name
    return parse_scene(ref.read_text())


def _packaged_curve(name):
    ref = importlib.resources.files("godeaux.data") / name
    with importlib.resources.as_file(ref) as path:
        return read_curve_txt(str(path))


def _realized(scene):
    rs = scene.realize()
    if isinstance(rs.F, FunctionField):
        raise UsageError(
            "parametric scene: use 'godeaux reproduce ex-deg11' style "
            "rank-drop analysis instead of a direct solve")
    return rs


def _closed(rs):
    if rs.involution is not None:
        return scheme_closure(rs.items, rs.involution)
    return Scheme(rs.items)


def _system(rs, sch, args):
    return LinearSystem(rs.degree, sch, sym=rs.involution,
                        eigenspace=args.eigenspace)


def _read_curve_arg(args, rs):
    if args.curve is None:
        return None
    try:
        cur = read_curve_txt(args.curve, F=rs.F)
    except (OSError, ValueError) as e:
        raise UsageError(str(e))
    return cur


# ---------------------------------------------------------------------------
# commands


def cmd_dim(args):
    rs = _realized(_load_scene(args.scene))
    sch = _closed(rs)
    ls = _system(rs, sch, args)
    data = {"degree": rs.degree, "eigenspace":
            args.eigenspace if rs.involution is not None else None}
    if args.modp is not None:
        rows, basis = ls.assemble()
        dim_p = len(basis) - rank_mod_p(rows_to_integer(rows),
                                        args.modp) - 1
        if dim_p == -1:
            # the modular rank bounds the exact rank from below, so an
            # empty modular system certifies emptiness outright
            data["dimension"] = -1
            data["certified"] = "mod %d" % args.modp
            return _outcome(["dimension -1"], data, {},
                            negative=True)
    dim = ls.dimension()
    data["dimension"] = dim
    return _outcome(["dimension %d" % dim], data, {}, negative=dim < 0)


def cmd_solve(args):
    rs = _realized(_load_scene(args.scene))
    sch = _closed(rs)
    ls = _system(rs, sch, args)
    dim = ls.dimension()
    data = {"degree": rs.degree, "dimension": dim}
    if dim < 0:
        return _outcome(["empty (dimension -1)"], data, {}, negative=True)
    if dim == 0:
        cur = ls.solve_unique()
        lines = ["dimension 0",
                 "curve with %d terms:" % len(cur.terms),
                 "  " + cur.fmt()]
        return _outcome(lines, data, {"curve": cur.fmt()})
    basis = ls.solve_basis()
    lines = ["dimension %d" % dim,
             "basis of %d curves:" % len(basis)]
    wits = {}
    for i, b in enumerate(basis):
        lines.append("  [%d] %s" % (i, b.fmt()))
        wits["basis_%d" % i] = b.fmt()
    return _outcome(lines, data, wits)


def cmd_verify(args):
    rs = _realized(_load_scene(args.scene))
    sch = _closed(rs)
    cur = _read_curve_arg(args, rs)
    if cur.degree != rs.degree:
        raise UsageError("curve degree %d does not match scene degree %d"
                         % (cur.degree, rs.degree))
    rep = chain_verify(cur, sch)
    lines = rep.summary().splitlines()
    data = {"status": rep.status,
            "verdicts": [[v.point.fmt(), list(v.declared), v.status]
                         for v in rep.verdicts]}
    return _outcome(lines, data, {}, negative=not rep.all_exact())


def cmd_invariants(args):
    rs = _realized(_load_scene(args.scene))
    sch = _closed(rs)
    cur = _read_curve_arg(args, rs)
    part = cur if cur is not None else rs.degree
    res = canonical_resolution([(part, sch)], rs.branch_line_curves())
    lines = ["chi %d, Ksq_cover %d" % (res.chi, res.ksq_cover)]
    lines.extend(res.report().splitlines())
    order = beauville_tors2(res.ledger.component_classes())
    lines.append("2-torsion subgroup order %d" % order)
    data = {"chi": res.chi, "ksq_cover": res.ksq_cover,
            "tors2_order": order,
            "components": [lab for lab, _c in res.ledger.components],
            "neg2": res.ledger.negative_two_labels()}
    if cur is not None:
        msg = cross_check_resolution([(cur, sch)],
                                     rs.branch_line_curves())
        lines.append(msg)
        data["cross_check"] = msg
    return _outcome(lines, data, {})


def cmd_torsion(args):
    rs = _realized(_load_scene(args.scene))
    sch = _closed(rs)
    bl = rs.branch_line_curves()
    if len(bl) != 2:
        raise UsageError("the torsion test needs exactly two branch "
                         "lines, the scene declares %d" % len(bl))
    cur = _read_curve_arg(args, rs)
    cfg = DuValConfig(list(sch), bl[0], bl[1], curve=cur,
                      degree=rs.degree)
    fixed = rs.fixed_line_curves()
    rep = duval_torsion(cfg, fixed_component=fixed[0] if fixed else None)
    lines = ["torsion %s" % rep.group]
    for n in rep.notes:
        lines.append("  " + n)
    wits = {}
    if rep.witness is not None:
        lines.append("  witness: %s" % rep.witness.fmt())
        wits["degree8"] = rep.witness.fmt()
    data = {"group": rep.group, "dimension": rep.dim,
            "shape": list(rep.shape)}
    return _outcome(lines, data, wits)


# ---------------------------------------------------------------------------
# reproductions


def _reproduce_z4(args, lines, data, wits):
    sc = _packaged_scene("ex-z4.scene")
    rs = sc.realize()
    sch = scheme_closure(rs.items, rs.involution)
    ls = LinearSystem(12, sch, sym=rs.involution, eigenspace="plus")
    dim = ls.dimension()
    lines.append("symmetric system dimension %d" % dim)
    data["dimension"] = dim
    if dim != 0:
        lines.append("MISMATCH: expected dimension 0")
        return False
    cur = ls.solve_unique()
    golden = _packaged_curve("z4_branch_degree12.txt")
    if cur.terms == golden.terms:
        lines.append("curve matches the embedded golden coefficients "
                     "(%d terms)" % len(cur.terms))
    else:
        lines.append("MISMATCH against the golden coefficients:")
        lines.extend(_curve_diff(cur, golden))
        return False
    wits["curve"] = cur.fmt()

    ver = chain_verify(cur, sch)
    lines.append("scheme verification: %s at all %d points"
                 % (ver.status, len(ver.verdicts)))
    if not ver.all_exact():
        lines.append("MISMATCH: expected EXACT everywhere")
        return False

    fc = absolute_factor_count(cur, prime_shortcut=args.modp)
    lines.append("absolute factor count: %d" % fc.count)
    data["absolute_factors"] = fc.count
    if fc.count != 1:
        lines.append("MISMATCH: expected an absolutely irreducible curve")
        return False

    bl = rs.branch_line_curves()
    cfg = DuValConfig(list(sch), bl[0], bl[1], curve=cur)
    tors = duval_torsion(cfg)
    lines.append("torsion %s" % tors.group)
    data["torsion"] = tors.group
    if tors.group != TORS_Z4:
        lines.append("MISMATCH: expected Z/4")
        return False
    sextic = _packaged_curve("z4_torsion_sextic.txt")
    lm = PlaneCurve.line([QQ.zero, QQ.one, QQ.from_q(-1)], QQ)
    lp = PlaneCurve.line([QQ.zero, QQ.one, QQ.one], QQ)
    expected = normalize_integer(sextic * lm * lp)
    if tors.witness.terms == expected.terms:
        lines.append("torsion witness matches the sextic times the two "
                     "bitangent lines")
    else:
        lines.append("MISMATCH: unexpected torsion witness")
        return False
    wits["degree8"] = tors.witness.fmt()

    out = "ex-z4-curve.txt"
    write_curve_txt(cur, out)
    lines.append("wrote %s" % out)
    return True


def _reproduce_deg11_locus(args):
    sc = _packaged_scene("ex-deg11.scene")
    rs = sc.realize()
    ps = ParamScheme(sc.degree, rs.items, field=rs.F)
    return rank_drop_locus(ps, prefilter_prime=args.modp)


def _reproduce_deg11(args, lines, data, wits):
    rep = _reproduce_deg11_locus(args)
    lines.append("generic rank %d of %d x %d, generic dimension %d"
                 % (rep.generic_rank, rep.nrows, rep.ncols,
                    rep.generic_dimension))
    _c, irr = q_factor(rep.locus)
    degs = sorted(f.degree for f, _m in irr)
    data["locus_degree"] = rep.locus.degree
    data["factor_degrees"] = degs
    data["locus"] = [str(c) for c in rep.locus.c]
    if rep.locus.degree == 15 and degs == [5, 10]:
        lines.append("p(t): degree 15 = 5 + 10")
        return True
    lines.append("MISMATCH: locus degree %d with factor degrees %s "
                 "(expected 15 = 5 + 10)"
                 % (rep.locus.degree, degs))
    return False


def _reproduce_deg11_full(args, lines, data, wits):
    rep = _reproduce_deg11_locus(args)
    _c, irr = q_factor(rep.locus)
    by_deg = {f.degree: f for f, _m in irr}
    if sorted(by_deg) != [5, 10]:
        lines.append("MISMATCH: expected factor degrees 5 and 10, got %s"
                     % sorted(by_deg))
        return False
    lines.append("p(t): degree 15 = 5 + 10")
    sc = _packaged_scene("ex-deg11.scene")
    rs = sc.realize()
    ps = ParamScheme(sc.degree, rs.items, field=rs.F)
    ok = True
    from .fields import NumberField
    for dg, want_group in ((5, TORS_Z4), (10, TORS_Z2)):
        tag = "degree-%d factor" % dg
        K = NumberField(tuple(by_deg[dg].c), name="t")
        sch = ps.specialize_in(K, K.gen())
        ls = LinearSystem(sc.degree, sch, F=K)
        dim = ls.dimension()
        lines.append("%s: specialized dimension %d" % (tag, dim))
        if dim != 0:
            lines.append("MISMATCH: expected dimension 0")
            ok = False
            continue
        b1 = ls.solve_unique()
        ver = chain_verify(b1, sch)
        lines.append("%s: scheme verification %s" % (tag, ver.status))
        if not ver.all_exact():
            ok = False
            continue
        r1k = PlaneCurve.line([K.one, K.zero, K.zero], K)
        r2k = PlaneCurve.line([K.one, K.neg(K.one), K.zero], K)
        r3k = PlaneCurve.line([K.zero, K.one, K.zero], K)
        cfg = _duval_config_for_deg11(sch, b1, r1k, r2k, r3k, K)
        tors = duval_torsion(cfg, fixed_component=r3k)
        lines.append("%s: torsion %s" % (tag, tors.group))
        data["torsion_deg%d" % dg] = tors.group
        if tors.group != want_group:
            lines.append("MISMATCH: expected %s" % want_group)
            ok = False
            continue
        obs = campedelli_obstruction(cfg)
        lines.append("%s: obstruction %s" % (tag, obs.verdict))
        data["obstruction_deg%d" % dg] = obs.verdict
        if obs.verdict != NOT_CAMPEDELLI:
            lines.append("MISMATCH: expected %s" % NOT_CAMPEDELLI)
            for n in obs.notes:
                lines.append("  " + n)
            ok = False
    return ok


def _duval_config_for_deg11(sch, b1, r1k, r2k, r3k, K):
    """The degree-12 branch shape of the split curve r3 * b1."""
    from .singular import SchemeItem, SingChain, Tangent
    pts = {it.name: it.point for it in sch}
    items = [
        SchemeItem(pts["q0"], SingChain((4,)), name="q0"),
        SchemeItem(pts["q1"], SingChain((4, 4), (Tangent(r1k),)),
                   name="q1"),
        SchemeItem(pts["q2"], SingChain((4, 4), (Tangent(r2k),)),
                   name="q2"),
        SchemeItem(pts["q3"], SingChain((4,)), name="q3"),
        SchemeItem(pts["q4"], SingChain((4,)), name="q4"),
        SchemeItem(pts["q5"], SingChain((4,)), name="q5"),
        SchemeItem(pts["q6"], SingChain((3, 3), (Tangent(r3k),)),
                   name="q6"),
    ]
    return DuValConfig(items, r1k, r2k, curve=b1 * r3k)


def cmd_reproduce(args):
    lines = ["reproduce %s" % args.target]
    data = {"target": args.target}
    wits = {}
    fn = {"ex-z4": _reproduce_z4,
          "ex-deg11": _reproduce_deg11,
          "ex-deg11-full": _reproduce_deg11_full}[args.target]
    ok = fn(args, lines, data, wits)
    data["ok"] = ok
    return _outcome(lines, data, wits, negative=not ok)


def _curve_diff(got, want):
    out = []
    keys = sorted(set(got.terms) | set(want.terms), reverse=True)
    for m in keys:
        a = got.terms.get(m)
        b = want.terms.get(m)
        if a != b:
            out.append("  x^%d y^%d z^%d: got %s, want %s"
                       % (m[0], m[1], m[2],
                          "0" if a is None else got.F.fmt(a),
                          "0" if b is None else want.F.fmt(b)))
    return out


# ---------------------------------------------------------------------------
# outcome plumbing


class _Outcome:
    __slots__ = ("lines", "data", "witnesses", "negative")

    def __init__(self, lines, data, witnesses, negative):
        self.lines = lines
        self.data = data
        self.witnesses = witnesses
        self.negative = negative


def _outcome(lines, data, witnesses, negative=False):
    return _Outcome(lines, data, witnesses, negative)


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {"dim": cmd_dim, "solve": cmd_solve, "verify": cmd_verify,
                "invariants": cmd_invariants, "torsion": cmd_torsion,
                "reproduce": cmd_reproduce}
    try:
        out = handlers[args.command](args)
    except SceneError as e:
        for err in str(e).splitlines():
            print(err, file=sys.stderr)
        return 2
    except UsageError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    except SchemeError as e:
        if args.json:
            print(json.dumps({"task": args.command, "status": "error",
                              "data": {"message": str(e)},
                              "witnesses": {}}, indent=2, sort_keys=True))
        else:
            print("no: %s" % e)
        return 1
    status = "negative" if out.negative else "ok"
    if args.json:
        print(json.dumps({"task": args.command, "status": status,
                          "data": out.data, "witnesses": out.witnesses},
                         indent=2, sort_keys=True))
    else:
        for ln in out.lines:
            print(ln)
    return 1 if out.negative else 0


if __name__ == "__main__":
    sys.exit(main())
