from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leptin.cutproject import FibonacciZphi, IntCyclic
from leptin.density import (
    EXACT,
    HEURISTIC,
    Periodic,
    a_density,
    beurling_density,
    check_period,
    density_report,
    gks_density,
    leptin_probe,
    period_density,
    periodic_leptin,
    tb_witness,
)
from leptin.errors import EmptyFamily, InvalidPeriod, NoCertificate, NotSymmetric
from leptin.folner import cubes_Zd, heisenberg_boxes
from leptin.group_core import heisenberg, int_lattice, real_boxes
from leptin.lattices import HeisenbergGamma, IntSublattice, integers
from leptin.measures import DiracComb, HaarMeasure, PeriodicComb, zero_measure
from leptin.set_algebra import GSet, measure, minkowski

Z1, Z2, H, R1 = int_lattice(1), int_lattice(2), heisenberg(), real_boxes(1)
K3 = GSet.points(Z1, [(-1,), (0,), (1,)])


def iv(k):
    return GSet.box(Z1, (0,), (k,))


def test_periodic_densities():
    assert period_density(PeriodicComb(IntSublattice([[2]]))) == Fraction(1, 2)
    assert period_density(PeriodicComb(HeisenbergGamma(2))) == Fraction(1, 16)
    assert period_density(PeriodicComb(IntSublattice.diagonal(2, 3))) == Fraction(1, 6)
    assert a_density(PeriodicComb(IntSublattice([[2]])), cubes_Zd(1), 10) == Fraction(1, 2)
    assert a_density(PeriodicComb(HeisenbergGamma(2)), heisenberg_boxes(), 4) == Fraction(1, 16)


def test_check_period():
    nu = PeriodicComb(IntSublattice([[4]]), [(0,), (2,)])
    check_period(nu, IntSublattice([[2]]))
    with pytest.raises(InvalidPeriod):
        check_period(nu, IntSublattice([[3]]))


def test_beurling_exact_for_periodic():
    nu = IntCyclic(5).measure(IntCyclic(5).window([0, 1]))
    rec = beurling_density(nu, cubes_Zd(1), 7, Periodic(nu.lattice))
    counts = [sum(1 for k in range(s, s + 7) if k % 5 in (0, 1)) for s in range(5)]
    assert rec.B_minus_n == Fraction(min(counts), 7)
    assert rec.B_plus_n == Fraction(max(counts), 7)
    assert rec.flags == {"B_minus_n": EXACT, "B_plus_n": EXACT}
    rec = beurling_density(nu, cubes_Zd(1), 10, Periodic(nu.lattice))
    assert rec.B_minus_n == rec.B_plus_n == Fraction(2, 5)
    with pytest.raises(EmptyFamily):
        beurling_density(nu, cubes_Zd(1), 10, [])


@settings(max_examples=40, deadline=None)
@given(st.frozensets(st.integers(0, 11), min_size=1), st.integers(1, 30), st.integers(-20, 20))
def test_report_chain_and_translation_invariance(res, n, t):
    lat = IntSublattice([[12]])
    nu = PeriodicComb(lat, [(r,) for r in res])
    rep = density_report(nu, cubes_Zd(1), n, Periodic(lat))
    assert rep.chain_holds() and rep.all_exact()
    assert rep.D_minus == Fraction(len(res), 12)
    moved = density_report(nu.translated((t,)), cubes_Zd(1), n, Periodic(lat))
    assert (moved.B_minus_n, moved.B_plus_n) == (rep.B_minus_n, rep.B_plus_n)


def test_report_for_finite_comb_is_sampled():
    nu = DiracComb(Z1, [(k,) for k in range(0, 40, 3)])
    rep = density_report(nu, cubes_Zd(1), 9, iv(10))
    assert rep.chain_holds() and not rep.all_exact()


def test_tb_witness_examples():
    w = tb_witness(PeriodicComb(integers(1)), K3, iv(5))
    assert (w.C_u, w.C_l) == (5, 3) and w.flags["C_u"] == EXACT
    w = tb_witness(HaarMeasure(R1), GSet.interval(R1, -1, 1), GSet.interval(R1, 0, 5))
    assert (w.upper_bound(R1), w.lower_bound(R1)) == (2, Fraction(1, 2))
    w = tb_witness(zero_measure(Z1), K3, iv(5))
    assert w.C_u == 0 and w.B_l is None
    with pytest.raises(NotSymmetric):
        tb_witness(PeriodicComb(integers(1)), iv(2), iv(5))


@settings(max_examples=30, deadline=None)
@given(st.frozensets(st.integers(0, 5), min_size=1), st.integers(1, 3))
def test_tb_witness_sandwiches_density(res, r):
    lat = IntSublattice([[6]])
    nu = PeriodicComb(lat, [(x,) for x in res])
    B = GSet.box(Z1, (-r,), (r + 1,))
    w = tb_witness(nu, B, iv(6))
    dens = period_density(nu)
    assert dens <= w.upper_bound(Z1)
    if w.B_l is None:
        assert w.flags["C_l"] == "none"
    else:
        assert w.lower_bound(Z1) <= dens
    # brute-force oracle for C_u over one period of shifts
    B2 = minkowski(Z1, B, B)
    assert w.C_u == max(nu.eval(GSet.points(Z1, [(b[0] + s,) for b in B2.elements()])) for s in range(6))


def test_tb_witness_fibonacci_sandwich():
    sch = FibonacciZphi()
    nu = sch.measure(sch.window((0, 1)))
    w = tb_witness(nu, GSet.interval(R1, -2, 2), GSet.interval(R1, 0, 40))
    assert w.lower_bound(R1) <= Fraction(447, 1000) and w.upper_bound(R1) >= Fraction(448, 1000)


def test_leptin():
    nu = PeriodicComb(integers(1))
    rec = leptin_probe(nu, [K3], [iv(10)])
    assert (rec.raw_minus, rec.raw_plus) == (Fraction(12, 10), Fraction(10, 12))
    assert rec.flags["lep_minus"] == HEURISTIC
    rec = leptin_probe(nu, [K3], [iv(10)], periodic=True)
    assert rec.lep_minus_probe == rec.lep_plus_probe == 1
    value, K = periodic_leptin(PeriodicComb(IntSublattice.diagonal(2, 3)))
    assert value == Fraction(1, 6) and len(K) == 15
    rec = leptin_probe(zero_measure(Z1), [K3], [iv(4)])
    assert rec.flags["lep_minus"] == EXACT and rec.lep_plus_probe == 0
    with pytest.raises(EmptyFamily):
        leptin_probe(nu, [], [iv(3)])


@settings(max_examples=30, deadline=None)
@given(st.frozensets(st.integers(0, 7), min_size=1), st.lists(st.integers(1, 12), min_size=1, max_size=4))
def test_periodic_leptin_certificate(res, lens):
    # the certified K must bound every probe A from both sides
    lat = IntSublattice([[8]])
    nu = PeriodicComb(lat, [(x,) for x in res])
    value, K = periodic_leptin(nu)
    for k in lens:
        A = iv(k)
        KA = minkowski(Z1, K, A)
        assert nu.eval(KA) / measure(Z1, A) >= value >= nu.eval(A) / measure(Z1, KA)


def test_gks():
    Ks = [iv(k) for k in range(1, 12)]
    rec = gks_density(PeriodicComb(IntSublattice([[2]])), integers(1), [Fraction(1, 2), Fraction(1, 4)], Ks)
    assert rec.d_minus_lo == rec.d_plus_hi == Fraction(1, 2)
    assert rec.product_identity()
    rec = gks_density(PeriodicComb(integers(1)), integers(1), [Fraction(1, 10)], Ks)
    assert rec.d_minus_lo == 1 and all(len(c.K) == 1 for c in rec.certificates)
    sch = IntCyclic(5)
    rec = gks_density(sch.measure(sch.window([0, 1])), integers(1), [Fraction(1, 3)], Ks)
    assert rec.d_plus_hi == Fraction(2, 5) and rec.product_identity()
    with pytest.raises(NoCertificate):
        gks_density(PeriodicComb(IntSublattice([[2]])), integers(1), [Fraction(1, 1000)], Ks[:1])
