from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leptin.boundaries import (
    boundary,
    comparison_inclusions,
    folner_boundary,
    strong_folner_boundary,
    van_hove_boundary,
)
from leptin.group_core import heisenberg, int_lattice, inverse, multiply, real_boxes
from leptin.set_algebra import GSet, measure

Z1, Z2, H, R1 = int_lattice(1), int_lattice(2), heisenberg(), real_boxes(1)
K3 = GSet.points(Z1, [(-1,), (0,), (1,)])
A10 = GSet.box(Z1, (0,), (10,))


def test_integer_examples():
    assert folner_boundary(Z1, K3, A10) == GSet.points(Z1, [(-1,), (10,)])
    want = GSet.points(Z1, [(-1,), (0,), (9,), (10,)])
    assert strong_folner_boundary(Z1, K3, A10) == want
    assert van_hove_boundary(Z1, K3, A10) == want


@pytest.mark.parametrize("kind", ["folner", "strong", "vanhove"])
def test_trivial_K_gives_empty_boundary(kind):
    e = GSet.points(Z1, [(0,)])
    assert boundary(Z1, e, A10, kind).is_empty()


def test_real_line_examples():
    eps = Fraction(1, 10)
    fb = folner_boundary(R1, GSet.interval(R1, -eps, eps), GSet.interval(R1, 0, 1))
    assert fb == GSet.boxes(R1, [((-eps, 0),), ((1, 1 + eps),)])
    K = GSet.interval(R1, -1, 1)
    A = GSet.interval(R1, 0, 10)
    assert strong_folner_boundary(R1, K, A) == GSet.boxes(R1, [((-1, 1),), ((9, 11),)])
    assert measure(R1, van_hove_boundary(R1, K, A)) == 4


def _oracle_strong(ctx, K, A, G):
    # direct definition over a finite window of candidate g
    return {g for g in G if any(multiply(ctx, k, g) in A.pointset for k in K.pointset)
            and any(multiply(ctx, k, g) not in A.pointset for k in K.pointset)}


small = st.integers(-3, 3)


@st.composite
def sym_nbhd(draw, ctx):
    gens = draw(st.lists(st.tuples(*([st.integers(-1, 1)] * ctx.dim)), max_size=3))
    pts = {ctx.identity()} | set(gens) | {inverse(ctx, g) for g in gens}
    return GSet.points(ctx, pts)


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_strong_boundary_matches_definition_in_heisenberg(data):
    K = data.draw(sym_nbhd(H))
    A = GSet.points(H, data.draw(st.frozensets(st.tuples(small, small, small), min_size=1, max_size=8)))
    window = {(a, b, c) for a in range(-5, 6) for b in range(-5, 6) for c in range(-14, 15)}
    assert strong_folner_boundary(H, K, A).pointset == _oracle_strong(H, K, A, window)


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_five_inclusions_z2(data):
    K = data.draw(sym_nbhd(Z2))
    A = GSet.points(Z2, data.draw(st.frozensets(st.tuples(small, small), min_size=1, max_size=12)))
    assert all(comparison_inclusions(Z2, K, A).values())


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_five_inclusions_real_line(data):
    eps = data.draw(st.fractions(min_value=Fraction(1, 20), max_value=1, max_denominator=20))
    K = GSet.interval(R1, -eps, eps)
    starts = data.draw(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=1, max_size=4))
    A = GSet.boxes(R1, [((s, s + Fraction(1, 2)),) for s in starts])
    assert all(comparison_inclusions(R1, K, A).values())
