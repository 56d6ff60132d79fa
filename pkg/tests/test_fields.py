import random

import pytest
from gmpy2 import mpq

from godeaux.fields import (
    QQ, FieldError, FunctionField, NumberField, PrimeField, fpow, nf_invert)


def test_qq_basics():
    assert QQ.add(mpq(1, 2), mpq(1, 3)) == mpq(5, 6)
    assert QQ.mul(mpq(2, 3), mpq(3, 2)) == 1
    assert QQ.inv(mpq(-4)) == mpq(-1, 4)
    assert QQ.is_zero(QQ.sub(QQ.one, QQ.one))
    assert QQ.from_q("7/3") == mpq(7, 3)
    with pytest.raises(ZeroDivisionError):
        QQ.inv(QQ.zero)


def test_qq_sqrt():
    assert QQ.sqrt(mpq(49, 64)) == mpq(7, 8)
    assert QQ.sqrt(mpq(2)) is None
    assert QQ.sqrt(mpq(-1)) is None
    assert QQ.sqrt(mpq(0)) == 0


def test_prime_field():
    F = PrimeField(7)
    assert F.add(5, 4) == 2
    assert F.mul(3, 5) == 1
    assert F.inv(3) == 5
    assert F.from_q(mpq(1, 2)) == 4
    with pytest.raises(FieldError):
        PrimeField(6)
    with pytest.raises(FieldError):
        F.from_q(mpq(3, 7))


def test_nf_invert_quadratic():
    # t^2 - 2: (1 + t)^-1 = -1 + t up to the right scaling: (1+t)(t-1) = 1
    m = (mpq(-2), mpq(0), mpq(1))
    inv = nf_invert((mpq(1), mpq(1)), m)
    assert inv == (mpq(-1), mpq(1))


def test_nf_invert_zero_divisor_witness():
    # t^2 - 1 is reducible; t - 1 is a zero divisor
    m = (mpq(-1), mpq(0), mpq(1))
    with pytest.raises(FieldError):
        nf_invert((mpq(-1), mpq(1)), m)


def test_number_field_arith():
    # K = QQ[t]/(t^3 - t - 1)
    K = NumberField([-1, -1, 0, 1])
    t = K.gen()
    t3 = fpow(K, t, 3)
    assert K.eq(t3, K.add(t, K.one))
    # random inverses
    rng = random.Random(5)
    for _ in range(20):
        a = tuple(mpq(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(3))
        if K.is_zero(a):
            continue
        assert K.eq(K.mul(a, K.inv(a)), K.one)


def test_number_field_degree_one():
    K = NumberField([-3, 1])  # t - 3, so t = 3
    assert K.gen() == (mpq(3),)
    assert K.mul(K.gen(), K.gen()) == (mpq(9),)


def test_number_field_reduction_table():
    # t^4 + 2t + 7: check t^6 reduction against direct remainder arithmetic
    K = NumberField([7, 2, 0, 0, 1])
    t = K.gen()
    t6 = fpow(K, t, 6)
    # t^4 = -2t - 7, t^5 = -2t^2 - 7t, t^6 = -2t^3 - 7t^2
    assert t6 == (mpq(0), mpq(0), mpq(-7), mpq(-2))


def test_function_field():
    R = FunctionField()
    t = R.gen()
    a = R.div(R.add(R.mul(t, t), R.from_int(-1)), R.add(t, R.from_int(1)))
    # (t^2 - 1)/(t + 1) = t - 1
    assert a == ((mpq(-1), mpq(1)), (mpq(1),))
    assert R.eval_at(a, mpq(5)) == 4
    b = R.inv(R.add(t, R.from_int(-2)))
    with pytest.raises(ZeroDivisionError):
        R.eval_at(b, 2)
    assert R.eq(R.mul(b, R.add(t, R.from_int(-2))), R.one)


def test_fpow():
    assert fpow(QQ, mpq(3), 0) == 1
    assert fpow(QQ, mpq(2, 3), 3) == mpq(8, 27)
