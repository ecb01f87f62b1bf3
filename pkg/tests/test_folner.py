from fractions import Fraction

import pytest

from leptin.errors import MissingWitness, NotSymmetric
from leptin.folner import (
    comb_R1,
    cubes_Rd,
    cubes_Zd,
    heisenberg_boxes,
    intersection_ratio,
    is_monotile,
    lattice_aligned_check,
    ratio,
    thicken,
)
from leptin.density import tb_witness
from leptin.group_core import heisenberg, int_lattice, real_boxes
from leptin.lattices import HeisenbergGamma, integers
from leptin.measures import PeriodicComb
from leptin.set_algebra import GSet, measure

Z1, Z2, H, R1 = int_lattice(1), int_lattice(2), heisenberg(), real_boxes(1)
K3 = GSet.points(Z1, [(-1,), (0,), (1,)])


def test_cube_folner_ratio():
    assert ratio(Z1, cubes_Zd(1), 10, K3, "folner") == Fraction(2, 10)
    vals = [ratio(Z1, cubes_Zd(1), n, K3, "folner") for n in range(1, 30)]
    assert vals == [Fraction(2, n) for n in range(1, 30)]


def test_generated_sets_have_positive_measure():
    for seq in (cubes_Zd(2), cubes_Rd(2), comb_R1(), heisenberg_boxes()):
        for n in (2, 3, 4):
            assert measure(seq.ctx, seq(n)) > 0
    # the comb at n = 1 has gap 1 and so is empty
    assert measure(R1, comb_R1()(1)) == 0
    assert measure(H, heisenberg_boxes()(3)) == 81


def test_comb_ratio_closed_form():
    eps = Fraction(1, 10)
    K = GSet.interval(R1, -eps, eps)
    for n in (10, 100):
        expected = ((n - 1) * (Fraction(1, n) + 2 * eps) + 4 * eps) / (n - 1)
        assert ratio(R1, comb_R1(eps), n, K) == expected
    # the Folner ratio counts the filled gaps too, and still decays
    for n in (10, 100):
        assert ratio(R1, comb_R1(eps), n, K, "folner") == (2 * eps + Fraction(n - 1, n)) / (n - 1)


def test_thickening():
    eps = Fraction(1, 10)
    K = GSet.interval(R1, -eps, eps)
    thick = thicken(R1, comb_R1(eps), GSet.interval(R1, -1, 1))
    for n in (10, 20, 50):
        assert thick(n) == GSet.interval(R1, -1, n + 1 - Fraction(1, n))
        assert ratio(R1, thick, n, K) <= Fraction(3, n)
    same = thicken(Z2, cubes_Zd(2), GSet.points(Z2, [(0, 0)]))
    assert same(4) == cubes_Zd(2)(4)
    grown = thicken(Z2, cubes_Zd(2), GSet.box(Z2, (-1, -1), (2, 2)))
    assert grown(4) == GSet.box(Z2, (-1, -1), (5, 5))
    with pytest.raises(NotSymmetric):
        thicken(Z1, cubes_Zd(1), GSet.points(Z1, [(0,), (1,)]))


def test_intersection_ratio_tends_to_one():
    vals = [intersection_ratio(Z1, cubes_Zd(1)(n), K3) for n in (10, 100, 1000)]
    assert vals == [Fraction(n - 2, n) for n in (10, 100, 1000)]


def test_lattice_aligned_check():
    nu = PeriodicComb(integers(1))
    w = tb_witness(nu, K3, GSet.box(Z1, (0,), (5,)))
    bound = lattice_aligned_check(Z1, cubes_Zd(1), K3, K3, 100, w)
    # boundary {-1,0,99,100}, spread by B_u L = {-2..2}: {-3..2} and {97..102}
    assert bound == w.C_u / 3 * Fraction(12, 100)
    e = GSet.points(Z1, [(0,)])
    assert lattice_aligned_check(Z1, cubes_Zd(1), e, e, 10, w) == 0
    with pytest.raises(MissingWitness):
        lattice_aligned_check(Z1, cubes_Zd(1), K3, K3, 10, None)


def test_lattice_aligned_check_heisenberg_decays():
    nu = PeriodicComb(HeisenbergGamma(2))
    K = GSet.points(H, [(0, 0, 0), (1, 0, 0), (-1, 0, 0)])
    w = tb_witness(nu, K, GSet.points(H, [(0, 0, 0)]))
    bounds = [lattice_aligned_check(H, heisenberg_boxes(), K, K, n, w) for n in (4, 8, 16)]
    assert bounds[0] > bounds[1] > bounds[2]
    assert bounds[2] * 16 <= bounds[0] * 4 * 2


def test_heisenberg_boxes_are_monotiles():
    for n in (1, 2, 3):
        assert is_monotile(heisenberg_boxes(), n, HeisenbergGamma(n))
    assert not is_monotile(heisenberg_boxes(), 2, HeisenbergGamma(3))
