from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from app.core.exceptions import InvariantViolation, OverflowGuardError
from app.utils.intmath import INT128_BOUND, checked, cramer, det3, ext_gcd, inverse3, matmul


@given(st.integers(-10_000, 10_000), st.integers(-10_000, 10_000))
def test_ext_gcd_bezout(a, b):
    """測試 s·a + t·b = g 且 g 非負"""
    g, s, t = ext_gcd(a, b)

    assert g >= 0
    assert s * a + t * b == g
    if a or b:
        assert a % g == 0 and b % g == 0


def test_overflow_guard():
    """測試超出 128 位元時拋出 OverflowGuardError，屬於不變量違反"""
    assert checked(INT128_BOUND - 1) == INT128_BOUND - 1
    with pytest.raises(OverflowGuardError) as exc:
        checked(INT128_BOUND)

    assert isinstance(exc.value, InvariantViolation)
    assert exc.value.check == "overflow-guard"
    assert exc.value.exit_code == 2


def test_det3_overflow():
    """測試行列式中間值過大時拋出錯誤"""
    big = 1 << 50
    with pytest.raises(OverflowGuardError):
        det3(((big, 0, 0), (0, big, 0), (0, 0, big)))


def test_cramer():
    """測試 Cramer 法則解出整數係數"""
    rows = ((4, 1, 0), (2, 1, 1), (1, 2, 0))

    assert cramer(rows, (7, 0, 0)) == (Fraction(2), Fraction(0), Fraction(-1))


def test_inverse3():
    """測試 A·A⁻¹ = I"""
    rows = ((0, 1, 2), (1, 0, 3), (1, 2, 0))

    product = matmul(rows, inverse3(rows))

    assert product == tuple(tuple(Fraction(int(i == j)) for j in range(3)) for i in range(3))
