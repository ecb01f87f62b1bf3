from fractions import Fraction

import pytest

from leptin.cutproject import (
    FibonacciZphi,
    IntCyclic,
    almost_periods,
    density_formula_check,
    model_set_patch,
    period_inclusion_holds,
    uniform_density_check,
)
from leptin.errors import EmptyRegion, NoWindowFound
from leptin.folner import cubes_Rd, cubes_Zd
from leptin.group_core import int_lattice, real_boxes
from leptin.qphi import PHI_FLOAT, SQRT5
from leptin.set_algebra import GSet

Z1, R1 = int_lattice(1), real_boxes(1)


def test_int_cyclic_patch_and_density():
    sch = IntCyclic(5)
    W = sch.window([0, 1])
    patch = model_set_patch(sch, W, GSet.box(Z1, (0,), (10,)))
    assert patch == GSet.points(Z1, [(0,), (1,), (5,), (6,)])
    rec = density_formula_check(sch, W, cubes_Zd(1), 100)
    assert rec.empirical == Fraction(2, 5) == rec.target_lo == rec.target_hi
    assert sch.covolume() == 5


def test_empty_region():
    sch = IntCyclic(5)
    with pytest.raises(EmptyRegion):
        model_set_patch(sch, sch.window([0]), GSet.empty(Z1))


def _fib_oracle(lo, hi, wlo, whi):
    # floats with a wide margin; the values used here avoid near-boundary points
    out = set()
    for n in range(-80, 81):
        for m in range(-200, 201):
            x = m + n * PHI_FLOAT
            xs = m + n * (1 - PHI_FLOAT)
            if lo <= x < hi and wlo <= xs < whi:
                out.add((m, n))
    return out


def test_fibonacci_patch_matches_brute_force():
    sch = FibonacciZphi()
    W = sch.window((Fraction(-1, 2), Fraction(1, 2)))
    got = model_set_patch(sch, W, [(Fraction(-37, 3), Fraction(61, 2))])
    assert got.pointset == frozenset(_fib_oracle(-37 / 3, 61 / 2, -0.5, 0.5))
    assert sch.covolume() == SQRT5


def test_fibonacci_density_enclosure():
    sch = FibonacciZphi()
    W = sch.window((0, 1))
    assert sch.density_of(W) == 1 / SQRT5
    rec = density_formula_check(sch, W, cubes_Rd(1), 2000)
    assert rec.target_lo <= 1 / SQRT5 <= rec.target_hi
    assert abs(rec.empirical - rec.target_lo) < Fraction(1, 100)


def test_almost_periods_exact_window():
    sch = IntCyclic(6)
    W = sch.window([0, 1, 2])
    rec = almost_periods(sch, W, 0, GSet.box(Z1, (-12,), (12,)))
    assert rec.U.residues == frozenset({0}) and rec.bound == 0
    assert rec.periods.pointset == {(k,) for k in range(-12, 12, 6)}
    for (t,) in rec.periods.pointset:
        assert period_inclusion_holds(sch, W, rec.edge, t, GSet.box(Z1, (-30,), (30,)))


def test_almost_periods_fibonacci():
    sch = FibonacciZphi()
    W = sch.window((Fraction(-1, 2), Fraction(1, 2)))
    region = [(-50, 50)]
    rec = almost_periods(sch, W, Fraction(1, 10), region)
    assert rec.bound_hi <= Fraction(1, 10)
    for t in list(rec.periods)[:20]:
        assert period_inclusion_holds(sch, W, rec.edge, t, region)


def test_almost_periods_gives_up():
    # an interval window always has a nonempty edge, so eps = 0 is unreachable
    sch = FibonacciZphi()
    with pytest.raises(NoWindowFound) as info:
        almost_periods(sch, sch.window((0, 1)), 0, [(0, 10)])
    assert info.value.best_bound > 0


def test_uniform_density():
    sch = IntCyclic(5)
    W = sch.window([0, 1])
    rec = uniform_density_check(sch, W, cubes_Zd(1), 10, [(x, h) for x in range(5) for h in range(5)])
    assert rec.max_deviation == 0
    rec = uniform_density_check(sch, W, cubes_Zd(1), 7, [(x, 0) for x in range(5)])
    counts = [sum(1 for k in range(x, x + 7) if k % 5 in (0, 1)) for x in range(5)]
    assert rec.max_deviation == max(abs(Fraction(c, 7) - Fraction(2, 5)) for c in counts)
    fib = FibonacciZphi()
    W = fib.window((0, 1))
    rec = uniform_density_check(fib, W, cubes_Rd(1), 200, [(Fraction(k, 3), 0) for k in range(5)])
    assert rec.deviation_hi < Fraction(1, 20)
