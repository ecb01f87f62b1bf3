from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leptin.errors import NotCovering, SingularBasis
from leptin.folner import cubes_Zd, heisenberg_boxes
from leptin.group_core import heisenberg, int_lattice, multiply
from leptin.lattices import (
    HeisenbergGamma,
    IntSublattice,
    canonical_domain,
    covers,
    covolume,
    fd_equation_count,
    integers,
    lattice_density,
    siegel_fundamental_domain,
    tiling_defects,
)
from leptin.set_algebra import GSet

Z1, Z2, H = int_lattice(1), int_lattice(2), heisenberg()


def test_covolumes():
    assert covolume(IntSublattice.diagonal(2, 3)) == 6
    assert covolume(HeisenbergGamma(2)) == 16
    assert covolume(IntSublattice([[1, 1], [0, 1]])) == 1
    with pytest.raises(SingularBasis):
        IntSublattice([[1, 2], [2, 4]])


def test_lattice_densities():
    lat = IntSublattice.diagonal(2, 3)
    for k in (1, 2, 3):
        assert lattice_density(lat, cubes_Zd(2), 6 * k) == Fraction(1, 6)
    for n in (2, 4, 6):
        assert lattice_density(HeisenbergGamma(2), heisenberg_boxes(), n) == Fraction(1, 16)
    assert lattice_density(integers(1), cubes_Zd(1), 7) == 1


def test_siegel_examples():
    lat = IntSublattice([[2]])
    fd = siegel_fundamental_domain(lat, GSet.box(Z1, (0,), (4,)))
    assert fd.cells == GSet.points(Z1, [(0,), (1,)])
    fd = siegel_fundamental_domain(integers(1), GSet.points(Z1, [(-3,), (0,), (5,)]))
    assert len(fd.cells) == 1
    lat = IntSublattice.diagonal(2, 2)
    U = GSet.box(Z2, (0, 0), (2, 2)) | GSet.points(Z2, [(2, 0)])
    fd = siegel_fundamental_domain(lat, U)
    assert fd.cells <= U and fd.measure() == 4 and not tiling_defects(fd)
    with pytest.raises(NotCovering):
        siegel_fundamental_domain(lat, GSet.points(Z2, [(0, 0), (1, 0)]))


def test_canonical_domains():
    fd = canonical_domain(IntSublattice([[2, 1], [0, 3]]))
    assert fd.measure() == 6 and not tiling_defects(fd)
    hd = canonical_domain(HeisenbergGamma(2))
    assert hd.measure() == 16 and not tiling_defects(hd, 1)
    for g in ((0, 0, 0), (2, 2, 4), (-2, 4, 8)):
        assert fd_equation_count(hd, g) == 1


def test_heisenberg_reductions():
    lat = HeisenbergGamma(2)
    g = (5, 7, -3)
    gam, f = lat.reduce_left(g)
    assert multiply(H, gam, f) == g and lat.contains(gam) and f in lat.fundamental_domain()
    f2, gam2 = lat.reduce_right(g)
    assert multiply(H, f2, gam2) == g and lat.contains(gam2) and f2 in lat.fundamental_domain()


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(-3, 3), min_size=4, max_size=4).filter(lambda v: v[0] * v[3] - v[1] * v[2] != 0),
    st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), max_size=6),
    st.integers(0, 10**6),
)
def test_siegel_domain_properties(v, extra, salt):
    lat = IntSublattice([v[:2], v[2:]])
    # cover: every canonical cell moved by some lattice element, plus noise
    pts = set(extra)
    for i, f in enumerate(lat.fundamental_domain().elements()):
        c = ((salt >> i) % 3 - 1, (salt >> (i + 7)) % 3 - 1)
        pts.add(multiply(Z2, lat.from_coords(c), f))
    U = GSet.points(Z2, pts)
    assert covers(lat, U)
    fd = siegel_fundamental_domain(lat, U)
    assert fd.cells <= U
    assert fd.measure() == lat.covolume()
    assert not tiling_defects(fd, 1)
