import importlib.resources

import pytest
from gmpy2 import mpq

from godeaux.curves import PlaneCurve, read_curve_txt, reduce_mod_p
from godeaux.fields import QQ, PrimeField
from godeaux.singular import (
    ProjPoint, Scheme, SchemeError, SchemeItem, SingChain, Tangent)
from godeaux.unipoly import UniPoly
from godeaux.verify import (
    EXACT, INSUFFICIENT, WORSE, absolute_factor_count, chain_verify,
    delta_invariant, geometric_genus, local_series, multiplicity_at,
    singular_locus_scan)


def line(a, b, c, F=QQ):
    return PlaneCurve.line([F.from_q(a), F.from_q(b), F.from_q(c)], F)


def curve(degree, terms):
    return PlaneCurve.from_q_terms(degree, terms)


def cusp():
    return curve(3, {(0, 2, 1): 1, (3, 0, 0): -1})


def tacnode():
    return curve(4, {(0, 2, 2): 1, (4, 0, 0): -1})


def node_cubic():
    return curve(3, {(0, 2, 1): 1, (2, 0, 1): -1, (3, 0, 0): -1})


def one_item(point, chain):
    return Scheme([SchemeItem(ProjPoint(point), chain)])


def z4_scheme():
    return Scheme([
        SchemeItem(ProjPoint([0, 0, 1]), SingChain([4]), "q0"),
        SchemeItem(ProjPoint([1, 1, 1]),
                   SingChain([4, 4], [Tangent(line(1, -1, 0))]), "q1"),
        SchemeItem(ProjPoint([1, -1, 1]),
                   SingChain([4, 4], [Tangent(line(1, 1, 0))]), "q2"),
        SchemeItem(ProjPoint([1, 0, 0]), SingChain([4]), "q3"),
        SchemeItem(ProjPoint([0, 1, 1]), SingChain([4]), "q4"),
        SchemeItem(ProjPoint([0, -1, 1]), SingChain([4]), "q5"),
        SchemeItem(ProjPoint([-2, 0, 1]),
                   SingChain([3, 3], [Tangent(line(1, 0, 2))]), "q6"),
    ])


def golden_curve():
    ref = importlib.resources.files("godeaux.data") / \
        "z4_branch_degree12.txt"
    with importlib.resources.as_file(ref) as path:
        return read_curve_txt(str(path))


# --- local expansion -------------------------------------------------------


def test_multiplicity_at_basic():
    f = node_cubic()
    assert multiplicity_at(f, ProjPoint([0, 0, 1])) == 2
    assert multiplicity_at(f, ProjPoint([-1, 0, 1])) == 1
    assert multiplicity_at(f, ProjPoint([1, 1, 1])) == 0


def test_local_series_aligns_tangent():
    ser = local_series(cusp(), ProjPoint([0, 0, 1]), line(0, 1, 0))
    assert ser == {(0, 2): mpq(1), (3, 0): mpq(-1)}


# --- chain verification ----------------------------------------------------


def test_cusp_declared_double_point_is_exact():
    rep = chain_verify(cusp(), one_item([0, 0, 1], SingChain([2])))
    assert rep.status == EXACT
    assert rep.all_exact()


def test_cusp_declared_simple_point_is_worse():
    rep = chain_verify(cusp(), one_item([0, 0, 1], SingChain([1])))
    assert rep.status == WORSE


def test_tacnode_needs_the_second_level():
    rep = chain_verify(tacnode(), one_item([0, 0, 1], SingChain([2])))
    assert rep.status == WORSE
    assert "continues" in rep.verdicts[0].detail
    full = SingChain([2, 2], [Tangent(line(0, 1, 0))])
    rep = chain_verify(tacnode(), one_item([0, 0, 1], full))
    assert rep.status == EXACT


def test_smooth_point_overdeclared_is_insufficient():
    conic = curve(2, {(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): -2})
    rep = chain_verify(conic, one_item([1, 1, 1], SingChain([2])))
    assert rep.status == INSUFFICIENT
    rep = chain_verify(conic, one_item([1, 1, 1], SingChain([1])))
    assert rep.status == EXACT
    rep = chain_verify(conic, one_item([1, 0, 0], SingChain([1])))
    assert rep.status == INSUFFICIENT


def test_node_chain_depends_on_declared_tangent():
    f = node_cubic()
    bad = SingChain([2, 1], [Tangent(line(0, 1, 0))])
    rep = chain_verify(f, one_item([0, 0, 1], bad))
    assert rep.status == INSUFFICIENT
    assert "tangent cone" in rep.verdicts[0].detail
    good = SingChain([2, 1], [Tangent(line(1, -1, 0))])
    rep = chain_verify(f, one_item([0, 0, 1], good))
    assert rep.status == EXACT


def test_free_tangent_cannot_be_verified():
    ch = SingChain([2, 1], [Tangent()])
    with pytest.raises(SchemeError):
        chain_verify(node_cubic(), one_item([0, 0, 1], ch))


def test_branch_curve_chains_are_all_exact():
    rep = chain_verify(golden_curve(), z4_scheme())
    assert [v.status for v in rep.verdicts] == [EXACT] * 7
    assert rep.all_exact()


# --- singular locus scan ---------------------------------------------------


def test_scan_smooth_conic_finds_nothing():
    rep = singular_locus_scan(curve(2, {(2, 0, 0): 1, (0, 1, 1): 1}))
    assert rep.rational == []
    assert rep.extension == []
    assert rep.total() == 0


def test_scan_node_cubic():
    rep = singular_locus_scan(node_cubic())
    assert len(rep.rational) == 1
    pt, mu = rep.rational[0]
    assert pt.eq(ProjPoint([0, 0, 1]))
    assert mu == 2
    assert rep.extension == []


def test_scan_conjugate_pair_in_x():
    # conic times a secant line; the two intersections are conjugate
    # points [sqrt(2), 0, 1] and [-sqrt(2), 0, 1]
    f = curve(2, {(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): -2}) * \
        line(0, 1, 0)
    rep = singular_locus_scan(f)
    assert rep.rational == []
    assert len(rep.extension) == 1
    e = rep.extension[0]
    assert e.c1_min == UniPoly.from_ints([-2, 0, 1])
    assert e.c2_min is None
    assert e.mult == 2
    assert rep.total() == 2


def test_scan_conjugate_pair_in_y():
    # line times a conjugate pair of lines: [0, +-sqrt(2), 1] plus the
    # rational intersection [1, 0, 0] of the conjugate lines
    f = line(1, 0, 0) * curve(2, {(0, 2, 0): 1, (0, 0, 2): -2})
    rep = singular_locus_scan(f)
    assert len(rep.rational) == 1
    assert rep.rational[0][0].eq(ProjPoint([1, 0, 0]))
    assert rep.rational[0][1] == 2
    assert len(rep.extension) == 1
    e = rep.extension[0]
    assert e.c1_val == mpq(0)
    assert e.c2_min == UniPoly.from_ints([-2, 0, 1])
    assert e.mult == 2
    assert rep.total() == 3


def test_scan_rejects_repeated_factors():
    with pytest.raises(SchemeError):
        singular_locus_scan(curve(3, {(2, 1, 0): 1}))
    sq = line(1, 1, 1) * line(1, 1, 1)
    with pytest.raises(SchemeError):
        singular_locus_scan(sq)


def test_scan_over_prime_field():
    rep = singular_locus_scan(reduce_mod_p(node_cubic(), 101))
    assert len(rep.rational) == 1
    pt, mu = rep.rational[0]
    assert tuple(pt.coords) == (0, 0, 1)
    assert mu == 2


def test_scan_branch_curve_matches_declared_scheme():
    rep = singular_locus_scan(golden_curve())
    assert rep.extension == []
    expected = {it.point.key(): it.chain.mults[0] for it in z4_scheme()}
    found = {pt.key(): mu for pt, mu in rep.rational}
    assert found == expected
    assert rep.total() == 7


# --- absolute factor count -------------------------------------------------


def test_factor_count_products_of_lines():
    f = line(1, 1, 1) * line(1, 2, 1)
    assert absolute_factor_count(f).count == 2
    g = line(1, 1, 1) * line(1, 2, 1) * line(1, 0, 0)
    assert absolute_factor_count(g).count == 3


def test_factor_count_sees_conjugate_factors():
    f = curve(2, {(2, 0, 0): 1, (0, 2, 0): -2})
    assert absolute_factor_count(f).count == 2
    g = curve(3, {(3, 0, 0): 1, (0, 3, 0): -2})
    assert absolute_factor_count(g).count == 3


def test_factor_count_irreducible_cusp():
    res = absolute_factor_count(cusp())
    assert res.count == 1
    assert res.method == "exact kernel"


def test_factor_count_tacnode_splits():
    assert absolute_factor_count(tacnode()).count == 2


def test_factor_count_single_line():
    res = absolute_factor_count(line(1, 0, 0))
    assert res.count == 1


def test_factor_count_mod_p_certificate():
    res = absolute_factor_count(cusp(), prime_shortcut=1000003)
    assert res.count == 1
    assert res.method.startswith("certified mod")


def test_factor_count_shears_away_a_line_component():
    # z * (y^3 + x^2 z) needs a chart move before the chart keeps the
    # full degree
    f = curve(4, {(0, 3, 1): 1, (2, 0, 2): 1})
    res = absolute_factor_count(f)
    assert res.count == 2
    assert res.shear is not None


def test_factor_count_rejects_repeated_line():
    with pytest.raises(SchemeError):
        absolute_factor_count(curve(3, {(2, 1, 0): 1}))


def test_factor_count_branch_curve_certified():
    res = absolute_factor_count(golden_curve(), prime_shortcut=1000003)
    assert res.count == 1
    assert res.method == "certified mod 1000003"


# --- genus ------------------------------------------------------------------


def test_delta_invariant():
    assert delta_invariant(SingChain([2])) == 1
    assert delta_invariant(SingChain([3, 3], [Tangent(line(1, 0, 0))])) == 6
    assert delta_invariant(SingChain([4, 4], [Tangent(line(1, 0, 0))])) == 12


def test_geometric_genus_branch_curve():
    assert geometric_genus(12, z4_scheme()) == 1


def test_geometric_genus_rejects_overdeclared():
    ch = SingChain([2, 2], [Tangent(line(0, 1, 0))])
    with pytest.raises(SchemeError):
        geometric_genus(2, one_item([0, 0, 1], ch))
