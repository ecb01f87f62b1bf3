"""Exact densities of measures on groups: Leptin, Beurling and averaged
densities, boundary operators, lattices and cut-and-project model sets."""

from .boundaries import boundary, folner_boundary, strong_folner_boundary, van_hove_boundary
from .cutproject import FibonacciZphi, IntCyclic, almost_periods, density_formula_check, model_set_patch
from .density import (
    Periodic,
    TBWitness,
    a_density,
    beurling_density,
    density_report,
    gks_density,
    leptin_probe,
    tb_witness,
)
from .folner import comb_R1, cubes_Rd, cubes_Zd, heisenberg_boxes, ratio, thicken
from .group_core import heisenberg, int_lattice, inverse, multiply, real_boxes
from .lattices import HeisenbergGamma, IntSublattice, covolume, lattice_density, siegel_fundamental_domain
from .measures import DiracComb, HaarMeasure, PeriodicComb
from .qphi import PHI, QPhi
from .set_algebra import GSet, erode, greedy_packing, measure, minkowski

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
