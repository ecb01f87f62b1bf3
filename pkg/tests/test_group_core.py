from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leptin.errors import InvalidElement
from leptin.group_core import element, heisenberg, int_lattice, inverse, multiply, parse_group, power, real_boxes

H = heisenberg()
ints = st.integers(-50, 50)
h_elems = st.tuples(ints, ints, ints)
z2_elems = st.tuples(ints, ints)
r2_elems = st.tuples(st.fractions(max_denominator=20), st.fractions(max_denominator=20))


def test_heisenberg_product_rule():
    assert multiply(H, (1, 0, 0), (0, 1, 0)) == (1, 1, 1)
    assert multiply(H, (0, 1, 0), (1, 0, 0)) == (1, 1, 0)


def test_identity_in_z2():
    assert multiply(int_lattice(2), (2, 3), (0, 0)) == (2, 3)


def test_inverses():
    assert inverse(int_lattice(1), (5,)) == (-5,)
    assert inverse(H, (1, 1, 1)) == (-1, -1, 0)


@given(h_elems)
def test_heisenberg_inverse_formula(g):
    a, b, c = g
    assert inverse(H, g) == (-a, -b, -c + a * b)
    assert multiply(H, g, inverse(H, g)) == (0, 0, 0)
    assert multiply(H, inverse(H, g), g) == (0, 0, 0)


@pytest.mark.parametrize(
    "ctx, elems",
    [(H, h_elems), (int_lattice(2), z2_elems), (real_boxes(2), r2_elems)],
    ids=["H3", "Z2", "R2"],
)
def test_group_axioms(ctx, elems):
    @settings(max_examples=300, deadline=None)
    @given(elems, elems, elems)
    def check(g, h, k):
        assert multiply(ctx, multiply(ctx, g, h), k) == multiply(ctx, g, multiply(ctx, h, k))
        e = ctx.identity()
        assert multiply(ctx, e, g) == multiply(ctx, g, e) == g
        assert inverse(ctx, inverse(ctx, g)) == g

    check()


def test_arity_and_integrality_checks():
    with pytest.raises(InvalidElement):
        multiply(int_lattice(2), (1,), (1, 2))
    with pytest.raises(InvalidElement):
        element(int_lattice(1), (Fraction(1, 2),))
    assert element(real_boxes(1), (Fraction(1, 2),)) == (Fraction(1, 2),)


def test_power_and_names():
    assert power(H, (1, 1, 0), 3) == (3, 3, 3)
    assert parse_group("H3Z").kind == "H3"
    assert parse_group("Z2") == int_lattice(2)
    assert parse_group("R1").haar_norm == "lebesgue"
    assert H.haar_norm == "counting"
    with pytest.raises(ValueError):
        parse_group("SL2")
