from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leptin import io
from leptin.cutproject import FibonacciZphi
from leptin.group_core import heisenberg, int_lattice, real_boxes
from leptin.set_algebra import GSet

Z2, H, R2 = int_lattice(2), heisenberg(), real_boxes(2)


@given(st.frozensets(st.tuples(st.integers(-9, 9), st.integers(-9, 9), st.integers(-99, 99)), max_size=20))
def test_heisenberg_points_round_trip(pts):
    A = GSet.points(H, pts)
    assert io.loads(io.dumps(A)) == A


q = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(q, q, q, q), min_size=1, max_size=4))
def test_box_round_trip(rows):
    boxes = [((a, a + 1 + abs(b)), (c, c + Fraction(1, 3) + abs(d))) for a, b, c, d in rows]
    A = GSet.boxes(R2, boxes)
    text = io.dumps(A)
    assert text.startswith("# group=R d=2 format=boxes")
    assert io.loads(text) == A


def test_fibonacci_patch_round_trip(tmp_path):
    sch = FibonacciZphi()
    patch = sch.patch(sch.window((0, 1)), [(0, 30)])
    path = tmp_path / "fib.txt"
    io.write(path, patch)
    assert io.read(path).pairs == patch.pairs


def test_bad_input():
    with pytest.raises(ValueError):
        io.loads("0 1\n")
    with pytest.raises(ValueError):
        io.loads("# group=Q d=1\n0\n")
    with pytest.raises(ValueError):
        io.loads("# group=R d=2 format=boxes\n0 1 2\n")
