import random

import pytest
import sympy
from gmpy2 import mpq

from godeaux.fields import QQ, FieldError, NumberField, PrimeField
from godeaux.unipoly import (
    UniPoly, gcd, gfp_factor, is_irreducible_q, newton_interpolate,
    nf_factor, nf_roots, q_factor, rational_roots, resultant,
    squarefree_part)


def P(*coeffs):
    """Low-first integer coefficients over QQ."""
    return UniPoly.from_ints(coeffs)


def test_arith_and_divmod():
    f = P(1, 0, 1) * P(-1, 1)  # (x^2+1)(x-1)
    q, r = f.divmod(P(-1, 1))
    assert r.is_zero()
    assert q == P(1, 0, 1)
    q, r = f.divmod(P(1, 1, 1))
    assert (q * P(1, 1, 1) + r) == f


def test_gcd():
    f = P(-1, 0, 1)          # x^2 - 1
    g = P(1, 2, 1)           # (x+1)^2
    assert gcd(f, g) == P(1, 1)
    assert gcd(f, P(1, 0, 1)).degree == 0


def test_eval_compose_shift():
    f = P(1, 2, 3)
    assert f.eval(mpq(2)) == 1 + 4 + 12
    g = f.shift_var(mpq(1))  # f(x+1)
    assert g.eval(mpq(1)) == f.eval(mpq(2))


def _sylvester_det(fc, gc):
    """Determinant of the Sylvester matrix (deg g rows of f, deg f of g)."""
    m, n = len(fc) - 1, len(gc) - 1
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for j, c in enumerate(reversed(fc)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(reversed(gc)):
            row[i + j] = c
        rows.append(row)
    return int(sympy.Matrix(rows).det()) if size else 1


def test_resultant_matches_sylvester_determinant():
    # sympy.resultant has argument-order sign quirks, so the oracle here is
    # the Sylvester determinant built explicitly
    rng = random.Random(17)
    for _ in range(40):
        df, dg = rng.randint(0, 4), rng.randint(0, 4)
        fc = [rng.randint(-5, 5) for _ in range(df)] + [rng.choice([1, 2, -3])]
        gc = [rng.randint(-5, 5) for _ in range(dg)] + [rng.choice([1, -1, 4])]
        f, g = P(*fc), P(*gc)
        assert resultant(f, g) == mpq(_sylvester_det(fc, gc))


def test_resultant_common_root():
    f = P(-2, 1) * P(3, 1)
    g = P(-2, 1) * P(5, 2)
    assert resultant(f, g) == 0


def test_squarefree_part():
    f = P(-1, 1) * P(-1, 1) * P(1, 0, 1)
    s = squarefree_part(f)
    assert s == (P(-1, 1) * P(1, 0, 1)).monic()
    with pytest.raises(FieldError):
        squarefree_part(UniPoly.zero())


def test_newton_interpolation():
    f = P(3, -2, 0, 5)
    xs = [mpq(i) for i in range(5)]
    ys = [f.eval(v) for v in xs]
    assert newton_interpolate(xs, ys) == f


def test_interpolation_over_number_field():
    K = NumberField([-2, 0, 1])
    s = K.gen()
    xs = [K.from_int(i) for i in range(3)]
    # f = s*x^2 + 1 evaluated exactly
    f = UniPoly(K, [K.one, K.zero, s])
    ys = [f.eval(v) for v in xs]
    assert newton_interpolate(xs, ys, K) == f


def test_q_factor():
    f = P(0, -4, 0, 1)  # x^3 - 4x = x(x-2)(x+2)
    cont, facs = q_factor(f)
    assert cont == 1
    assert [p.degree for p, e in facs] == [1, 1, 1]
    assert rational_roots(f) == [mpq(-2), mpq(0), mpq(2)]
    assert is_irreducible_q(P(-2, 0, 1))
    assert not is_irreducible_q(P(-1, 0, 1))


def test_q_factor_content():
    f = P(2, 2) * P(3, 3)  # 6(x+1)^2
    cont, facs = q_factor(f)
    assert cont == 6
    assert facs == [(P(1, 1), 2)]


def test_gfp_factor():
    F = PrimeField(5)
    f = UniPoly(F, [F.from_int(c) for c in (4, 0, 1)])  # x^2 + 4 = x^2 - 1
    facs = gfp_factor(f, 5)
    assert [p.degree for p, e in facs] == [1, 1]
    prod = UniPoly(F, [F.one])
    for p, e in facs:
        for _ in range(e):
            prod = prod * p
    assert prod == f.monic()


def test_resultant_over_gfp():
    F = PrimeField(101)
    f = UniPoly(F, [F.from_int(c) for c in (1, 2, 1)])
    g = UniPoly(F, [F.from_int(c) for c in (-1, 0, 1)])
    # shared root x = -1 mod 101
    assert F.is_zero(resultant(f, g))


def test_nf_factor_cubic_root_field():
    # y^3 - 2 splits off the generator over its own root field
    K = NumberField([-2, 0, 0, 1])
    t = K.gen()
    u = UniPoly(K, [K.from_int(-2), K.zero, K.zero, K.one])
    lc, facs = nf_factor(u, K)
    assert K.eq(lc, K.one)
    assert [(f.degree, m) for f, m in facs] == [(1, 1), (2, 1)]
    lin = facs[0][0]
    assert K.eq(K.neg(lin.c[0]), t)
    quad = facs[1][0]
    assert K.eq(quad.c[1], t)
    prod = lin * quad
    assert prod == u


def test_nf_factor_biquadratic_and_multiplicity():
    K = NumberField([-2, 0, 1])
    s = K.gen()
    u = UniPoly(K, [K.from_int(6), K.zero, K.from_int(-5), K.zero, K.one])
    _, facs = nf_factor(u, K)
    assert [(f.degree, m) for f, m in facs] == [(1, 1), (1, 1), (2, 1)]
    roots = nf_roots(u, K)
    assert roots == [(K.neg(s), 1), (s, 1)]
    ymt = UniPoly(K, [K.neg(s), K.one])
    u2 = ymt * ymt * UniPoly(K, [K.one, K.zero, K.one])
    assert nf_roots(u2, K) == [(s, 2)]


def test_nf_factor_degree_one_field_matches_q_factor():
    K = NumberField([-7, 1])  # Q with generator 7
    u = UniPoly(K, [K.from_int(-4), K.zero, K.one])  # y^2 - 4
    _, facs = nf_factor(u, K)
    assert [(f.degree, m) for f, m in facs] == [(1, 1), (1, 1)]
    assert sorted(r for r, _m in nf_roots(u, K)) == [(mpq(-2),), (mpq(2),)]
