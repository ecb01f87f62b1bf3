import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from leptin.qphi import PHI, PHI_FLOAT, SQRT5, QPhi, parse_number, sign_u_v_sqrt5

small_q = st.fractions(min_value=-50, max_value=50, max_denominator=30)
qphis = st.builds(QPhi, small_q, small_q)


def test_constants():
    assert PHI * PHI == PHI + 1
    assert SQRT5 * SQRT5 == 5
    assert float(SQRT5) == pytest.approx(math.sqrt(5))
    assert PHI.conjugate() == 1 - PHI


def test_parse_number():
    assert parse_number("3/4") == Fraction(3, 4)
    assert parse_number("0.618") == Fraction(618, 1000)
    assert parse_number("-1") == -1
    assert parse_number("phi") == PHI
    assert parse_number("-1+2*phi") == SQRT5
    assert parse_number("1/2 - phi") == QPhi(Fraction(1, 2), -1)
    assert parse_number("1e-3") == Fraction(1, 1000)
    with pytest.raises(ValueError):
        parse_number("")


@given(qphis, qphis)
def test_field_axioms(x, y):
    assert x + y - y == x
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
    if y:
        assert x / y * y == x


@given(qphis, qphis)
def test_order_matches_floats(x, y):
    fx, fy = float(x), float(y)
    if abs(fx - fy) > 1e-9:
        assert (x < y) == (fx < fy)


@given(small_q, small_q)
def test_sign_matches_floats(u, v):
    val = float(u) + float(v) * math.sqrt(5)
    s = sign_u_v_sqrt5(u, v)
    if abs(val) > 1e-9:
        assert s == (1 if val > 0 else -1)
    if u == 0 and v == 0:
        assert s == 0


@given(qphis)
def test_enclosure_floor_ceil(x):
    lo, hi = x.enclosure(Fraction(1, 10**6))
    assert lo <= x <= hi and hi - lo <= Fraction(1, 10**6)
    assert x.floor() <= x < x.floor() + 1
    assert x.ceil() - 1 < x <= x.ceil()
    assert abs(float(x) - (x.a + x.b * Fraction(PHI_FLOAT))) < 1e-6
