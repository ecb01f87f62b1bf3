"""Cut-and-project schemes, model sets and their density checks.

Two schemes are built in:

``IntCyclic(N)``
    ``G = Z``, ``H = Z_N``, lattice ``{(n, n mod N)}``; covolume ``N``.
    Model sets are periodic, so every density statement is exact.

``FibonacciZphi()``
    ``G = H = R``, lattice ``{(m + n*phi, m + n*phi')}`` with
    ``phi' = 1 - phi``; covolume ``sqrt 5``. Points are kept as integer pairs
    ``(m, n)`` and all membership tests run in exact Q(phi) arithmetic.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from . import boxes as bx
from .errors import EmptyRegion, NoWindowFound
from .group_core import GroupCtx, int_lattice, real_boxes
from .measures import PeriodicComb, PMeasure
from .qphi import PHI_FLOAT, QPhi, SQRT5, sign_u_v_sqrt5, to_qphi
from .set_algebra import GSet, measure


# --- windows ------------------------------------------------------------


@dataclass(frozen=True)
class CyclicWindow:
    """Subset of ``Z_N``; in the discrete topology it is open and closed."""

    N: int
    residues: frozenset

    @classmethod
    def of(cls, N: int, residues: Iterable[int]) -> "CyclicWindow":
        return cls(N, frozenset(r % N for r in residues))

    def measure(self) -> Fraction:
        return Fraction(len(self.residues))

    interior_measure = closure_measure = measure

    def shifted(self, h: int) -> "CyclicWindow":
        return CyclicWindow(self.N, frozenset((r + h) % self.N for r in self.residues))

    def __contains__(self, r):
        return r % self.N in self.residues

    def __le__(self, other):
        return self.residues <= other.residues

    def __str__(self):
        return "{" + ",".join(map(str, sorted(self.residues))) + "} mod " + str(self.N)


@dataclass(frozen=True)
class IntervalWindow:
    """Finite union of half-open intervals of ``R`` with Q(phi) endpoints.

    Its boundary is finite, hence Haar-null: interior, window and closure
    all have the same measure.
    """

    slabs: tuple

    @classmethod
    def of(cls, *intervals) -> "IntervalWindow":
        ivs = [((to_qphi(lo), to_qphi(hi)),) for lo, hi in intervals]
        return cls(bx.union_many(ivs, 1))

    def intervals(self) -> List[Tuple[QPhi, QPhi]]:
        return [(lo, hi) for lo, hi, _ in self.slabs]

    def measure(self) -> QPhi:
        return QPhi.lift(bx.measure(self.slabs, 1))

    interior_measure = closure_measure = measure

    def shifted(self, h) -> "IntervalWindow":
        return IntervalWindow(bx.translate(self.slabs, (to_qphi(h),), 1))

    def dilate(self, U: "IntervalWindow") -> "IntervalWindow":
        return IntervalWindow(bx.minkowski_sum(self.slabs, U.slabs, 1))

    def erode(self, U: "IntervalWindow") -> "IntervalWindow":
        return IntervalWindow(bx.erode(self.slabs, U.slabs, 1))

    def __sub__(self, other):
        return IntervalWindow(bx.difference(self.slabs, other.slabs, 1))

    def __and__(self, other):
        return IntervalWindow(bx.intersection(self.slabs, other.slabs, 1))

    def __or__(self, other):
        return IntervalWindow(bx.union(self.slabs, other.slabs, 1))

    def __contains__(self, x):
        return bx.contains_point(self.slabs, (to_qphi(x),))

    def __le__(self, other):
        return bx.is_empty(bx.difference(self.slabs, other.slabs, 1))

    def is_empty(self):
        return bx.is_empty(self.slabs)

    def __str__(self):
        return " u ".join(f"[{lo}, {hi})" for lo, hi in self.intervals()) or "{}"


# --- exact integer helpers for the Fibonacci scheme --------------------


def _scaled(x: QPhi) -> Tuple[int, int, int]:
    """``x = (P + Q*phi) / D`` with integers and ``D > 0``."""
    D = x.a.denominator * x.b.denominator // math.gcd(x.a.denominator, x.b.denominator)
    return int(x.a * D), int(x.b * D), D


def _ceil_scaled(P: int, Q: int, D: int) -> int:
    """Smallest integer ``c`` with ``c*D >= P + Q*phi``."""
    e = (P + Q * PHI_FLOAT) / D
    c = math.ceil(e)
    if abs(e - round(e)) > 1e-7 * (1.0 + abs(e)):
        return c
    c = round(e) - 2
    # c*D - P - Q*phi >= 0  <=>  (2(cD - P) - Q) + (-Q) sqrt5 >= 0
    while sign_u_v_sqrt5(2 * (c * D - P) - Q, -Q) < 0:
        c += 1
    return c


def _fib_points(lo: QPhi, hi: QPhi, wlo: QPhi, whi: QPhi) -> List[Tuple[int, int]]:
    """Lattice pairs ``(m, n)`` with ``m + n*phi in [lo, hi)`` and
    ``m + n*phi' in [wlo, whi)``."""
    if not (lo < hi and wlo < whi):
        return []
    # x - x* = n*sqrt5, so n is confined to an interval
    n_min = ((lo - whi) / SQRT5).floor()
    n_max = ((hi - wlo) / SQRT5).ceil()
    P0, Q0, D0 = _scaled(lo)
    P1, Q1, D1 = _scaled(hi)
    R0, S0, E0 = _scaled(wlo)
    R1, S1, E1 = _scaled(whi)
    out = []
    for n in range(n_min, n_max + 1):
        # m + n phi >= lo            <=> m >= lo - n phi
        # m + n - n phi >= wlo       <=> m >= wlo - n + n phi
        m_lo = max(_ceil_scaled(P0, Q0 - n * D0, D0), _ceil_scaled(R0 - n * E0, S0 + n * E0, E0))
        m_hi = min(_ceil_scaled(P1, Q1 - n * D1, D1), _ceil_scaled(R1 - n * E1, S1 + n * E1, E1))
        for m in range(m_lo, m_hi):
            out.append((m, n))
    return out


@dataclass(frozen=True)
class ModelPatch:
    """Finite patch of a model set in ``R``; points stored as lattice pairs."""

    pairs: Tuple[Tuple[int, int], ...]

    @classmethod
    def of(cls, pairs: Iterable[Tuple[int, int]]) -> "ModelPatch":
        return cls(tuple(sorted(set(pairs), key=lambda p: p[0] + p[1] * PHI_FLOAT)))

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __contains__(self, p):
        return p in self.pointset

    @property
    def pointset(self) -> frozenset:
        return frozenset(self.pairs)

    def values(self) -> List[QPhi]:
        return [QPhi(m, n) for m, n in self.pairs]

    def floats(self) -> List[float]:
        return [m + n * PHI_FLOAT for m, n in self.pairs]

    def shifted(self, t: Tuple[int, int]) -> "ModelPatch":
        return ModelPatch.of((m + t[0], n + t[1]) for m, n in self.pairs)

    def star(self) -> List[QPhi]:
        return [QPhi(m + n, -n) for m, n in self.pairs]


# --- schemes ------------------------------------------------------------


class CPScheme:
    kind: str
    ctx: GroupCtx

    def covolume(self):
        raise NotImplementedError

    def density_of(self, W):
        """``m_H(W) / covol``."""
        raise NotImplementedError

    def describe(self) -> dict:
        return {"scheme": self.kind, "covolume": str(self.covolume()), "haar": "counting x counting" if self.ctx.discrete else "lebesgue x lebesgue"}


class IntCyclic(CPScheme):
    def __init__(self, N: int):
        if N < 1:
            raise ValueError("modulus must be positive")
        self.N = N
        self.kind = f"IntCyclic({N})"
        self.ctx = int_lattice(1)

    def covolume(self) -> Fraction:
        return Fraction(self.N)

    def star(self, n: int) -> int:
        return n % self.N

    def window(self, residues) -> CyclicWindow:
        return CyclicWindow.of(self.N, residues)

    def full_window(self) -> CyclicWindow:
        return CyclicWindow.of(self.N, range(self.N))

    def density_of(self, W: CyclicWindow) -> Fraction:
        return W.measure() / self.covolume()

    def patch(self, W: CyclicWindow, region: GSet) -> GSet:
        N = self.N
        return GSet._raw(self.ctx, (p for p in region.pointset if p[0] % N in W.residues))

    def measure(self, W: CyclicWindow) -> PeriodicComb:
        from .lattices import IntSublattice

        return PeriodicComb(IntSublattice([[self.N]]), {(r,): 1 for r in W.residues}, label=f"model[{W}]")

    def count(self, W: CyclicWindow, region: GSet) -> int:
        return len(self.patch(W, region).pointset)


class FibonacciZphi(CPScheme):
    def __init__(self):
        self.kind = "FibonacciZphi"
        self.ctx = real_boxes(1)

    def covolume(self) -> QPhi:
        return SQRT5

    def star(self, pair) -> QPhi:
        m, n = pair
        return QPhi(m + n, -n)

    def window(self, *intervals) -> IntervalWindow:
        return IntervalWindow.of(*intervals)

    def density_of(self, W: IntervalWindow) -> QPhi:
        return W.measure() / SQRT5

    def _intervals(self, region) -> List[Tuple[QPhi, QPhi]]:
        if isinstance(region, GSet):
            if region.ctx != self.ctx:
                raise ValueError("region must be a box union in R")
            return [(QPhi.lift(lo), QPhi.lift(hi)) for lo, hi, _ in region.slabs]
        return [(to_qphi(lo), to_qphi(hi)) for lo, hi in region]

    def patch(self, W: IntervalWindow, region) -> ModelPatch:
        pairs = []
        for lo, hi in self._intervals(region):
            for wlo, whi in W.intervals():
                pairs.extend(_fib_points(lo, hi, wlo, whi))
        return ModelPatch.of(pairs)

    def count(self, W: IntervalWindow, region) -> int:
        total = 0
        for lo, hi in self._intervals(region):
            for wlo, whi in W.intervals():
                total += len(_fib_points(lo, hi, wlo, whi))
        return total

    def measure(self, W: IntervalWindow) -> "ModelSetMeasure":
        return ModelSetMeasure(self, W)


class ModelSetMeasure(PMeasure):
    """Counting measure of a Fibonacci model set, evaluated on box unions."""

    def __init__(self, scheme: FibonacciZphi, W: IntervalWindow, shift=Fraction(0)):
        self.scheme = scheme
        self.window = W
        self.ctx = scheme.ctx
        self.shift = to_qphi(shift)
        self.label = f"model[{W}]"

    def count_in(self, intervals) -> int:
        s = self.shift
        return self.scheme.count(self.window, [(to_qphi(lo) - s, to_qphi(hi) - s) for lo, hi in intervals])

    def eval(self, A: GSet) -> Fraction:
        return Fraction(self.count_in([(lo, hi) for lo, hi, _ in A.slabs]))

    def translated(self, t, side="left"):
        t = t[0] if isinstance(t, tuple) else t
        return ModelSetMeasure(self.scheme, self.window, self.shift + to_qphi(t))


# --- operations ---------------------------------------------------------


def model_set_patch(scheme: CPScheme, W, region):
    """Points of ``Λ_W = π^G(L ∩ (G × W))`` inside ``region``."""
    if isinstance(region, GSet) and region.is_empty():
        raise EmptyRegion("region is empty")
    if not isinstance(region, GSet) and not region:
        raise EmptyRegion("region is empty")
    return scheme.patch(W, region)


def _enclose(x, tol):
    if isinstance(x, QPhi):
        return x.enclosure(tol)
    return Fraction(x), Fraction(x)


@dataclass
class DensityFormulaRecord:
    empirical: Fraction
    target_lo: Fraction
    target_hi: Fraction
    n: int
    runtime: float
    exact_target: str = ""
    count: int = 0

    def contains(self, slack=Fraction(0)) -> bool:
        return self.target_lo - slack <= self.empirical <= self.target_hi + slack

    def to_json(self) -> dict:
        return {
            "empirical": str(self.empirical),
            "empirical_float": float(self.empirical),
            "target_lo": str(self.target_lo),
            "target_hi": str(self.target_hi),
            "target_float": float((self.target_lo + self.target_hi) / 2),
            "exact_target": self.exact_target,
            "count": self.count,
            "n": self.n,
            "runtime": round(self.runtime, 6),
        }


def density_formula_check(scheme: CPScheme, W, seq, n: int, tol=Fraction(1, 10**9)) -> DensityFormulaRecord:
    """Empirical ``card(Λ_W ∩ A_n)/m(A_n)`` against the exact (or enclosed)
    targets ``m_H(int W)/covol`` and ``m_H(cl W)/covol``."""
    t0 = time.perf_counter()
    A = seq(n)
    count = scheme.count(W, A)
    empirical = Fraction(count) / measure(scheme.ctx, A)
    lo = _enclose(W.interior_measure() / scheme.covolume(), tol)[0]
    hi = _enclose(W.closure_measure() / scheme.covolume(), tol)[1]
    return DensityFormulaRecord(
        empirical, lo, hi, n, time.perf_counter() - t0, str(scheme.density_of(W)), count
    )


@dataclass
class UniformDensityRecord:
    max_deviation: Fraction
    deviation_hi: Fraction
    worst_shift: tuple
    samples: int
    flag: str = "sampled-lower-bound"

    def to_json(self) -> dict:
        return {
            "max_deviation": float(self.deviation_hi),
            "max_deviation_hi": str(self.deviation_hi),
            "worst_shift": [str(x) for x in self.worst_shift],
            "samples": self.samples,
            "flag": self.flag,
        }


def uniform_density_check(scheme: CPScheme, W, seq, n: int, shifts: Sequence[tuple]) -> UniformDensityRecord:
    """Max over the sampled ``(x, h)`` of
    ``|card(Λ_{W+h} ∩ (A_n + x))/m(A_n) - m_H(W)/covol|``.

    Only a finite sample is examined, so the result is a lower bound for the
    supremum over all shifts.
    """
    A = seq(n)
    mA = measure(scheme.ctx, A)
    target = scheme.density_of(W)
    worst = None
    worst_shift = None
    for x, h in shifts:
        Wh = W.shifted(h)
        if isinstance(scheme, IntCyclic):
            region = GSet._raw(scheme.ctx, {(p[0] + x,) for p in A.pointset})
        else:
            xs = to_qphi(x)
            region = [(QPhi.lift(lo) + xs, QPhi.lift(hi) + xs) for lo, hi, _ in A.slabs]
        dev = abs(Fraction(scheme.count(Wh, region)) / mA - target)
        if worst is None or dev > worst:
            worst, worst_shift = dev, (x, h)
    lo, hi = _enclose(worst, Fraction(1, 10**12))
    return UniformDensityRecord(lo, hi, worst_shift, len(shifts))


@dataclass
class AlmostPeriodRecord:
    U: object
    edge: object
    periods: object
    bound: object
    bound_hi: Fraction
    steps: int

    def to_json(self) -> dict:
        return {
            "U": str(self.U),
            "edge_window": str(self.edge),
            "periods_found": len(self.periods) if not isinstance(self.periods, GSet) else len(self.periods.pointset),
            "bound": str(self.bound),
            "bound_hi": str(self.bound_hi),
            "bound_float": float(self.bound_hi),
            "steps": self.steps,
        }


MAX_SHRINK_STEPS = 40


def edge_window(W, U):
    """``(W U) ∩ (W^c U)``: points of ``H`` within ``U`` of both ``W`` and
    its complement."""
    if isinstance(W, CyclicWindow):
        N = W.N
        near_w = {(w + u) % N for w in W.residues for u in U.residues}
        comp = set(range(N)) - W.residues
        near_c = {(c + u) % N for c in comp for u in U.residues}
        return CyclicWindow(N, frozenset(near_w & near_c))
    # U symmetric: W^c U = complement of {h : h + U ⊆ W}
    return W.dilate(U) - W.erode(U)


def almost_periods(scheme: CPScheme, W, eps, region) -> AlmostPeriodRecord:
    """Shrink a symmetric window ``U`` until ``m_H(edge)/covol <= eps`` and
    return the periods ``Λ_U ∩ region`` with the certified density bound for
    ``Λ_W △ (Λ_W + t)``."""
    eps = Fraction(eps)
    best = None
    if isinstance(scheme, IntCyclic):
        N = scheme.N
        r = N // 2
        for step in range(MAX_SHRINK_STEPS + 1):
            U = CyclicWindow.of(N, range(-r, r + 1))
            E = edge_window(W, U)
            bound = E.measure() / scheme.covolume()
            best = bound if best is None else min(best, bound)
            if bound <= eps:
                return AlmostPeriodRecord(U, E, scheme.patch(U, region), bound, bound, step)
            if r == 0:
                break
            r //= 2
        raise NoWindowFound("shrink schedule exhausted", best)
    half = W.measure() / 2
    for step in range(MAX_SHRINK_STEPS + 1):
        U = IntervalWindow.of((-half, half))
        E = edge_window(W, U)
        bound = E.closure_measure() / scheme.covolume()
        best = bound if best is None else min(best, bound)
        if bound <= eps:
            periods = scheme.patch(U, region)
            return AlmostPeriodRecord(U, E, periods, bound, bound.enclosure()[1], step)
        half = half / 2
    raise NoWindowFound("shrink schedule exhausted", best)


def period_inclusion_holds(scheme: CPScheme, W, E, t, region) -> bool:
    """``(Λ_W △ (Λ_W + t)) ∩ region ⊆ Λ_E ∩ region``, checked pointwise."""
    if isinstance(scheme, IntCyclic):
        base = scheme.patch(W, region).pointset
        lo = min(region.pointset)[0] - abs(t) - 1
        hi = max(region.pointset)[0] + abs(t) + 1
        wide = GSet._raw(scheme.ctx, {(k,) for k in range(lo, hi + 1)})
        moved = {(p[0] + t,) for p in scheme.patch(W, wide).pointset} & region.pointset
        diff = base ^ moved
        return diff <= scheme.patch(E, region).pointset
    ivs = scheme._intervals(region)
    tq = QPhi(*t)
    base = scheme.patch(W, ivs).pointset
    moved = scheme.patch(W, [(lo - tq, hi - tq) for lo, hi in ivs]).shifted(t).pointset
    return (base ^ moved) <= scheme.patch(E, ivs).pointset


def symmetric_difference_count(scheme: FibonacciZphi, W, t, region) -> int:
    ivs = scheme._intervals(region)
    tq = QPhi(*t)
    base = scheme.patch(W, ivs).pointset
    moved = scheme.patch(W, [(lo - tq, hi - tq) for lo, hi in ivs]).shifted(t).pointset
    return len(base ^ moved)


def min_gap(patch) -> Optional[object]:
    """Smallest distance between consecutive points of a patch (exact)."""
    if isinstance(patch, GSet):
        pts = [p[0] for p in patch.elements()]
        return min((b - a for a, b in zip(pts, pts[1:])), default=None)
    vals = patch.values()
    return min((b - a for a, b in zip(vals, vals[1:])), default=None)


def gap_lower_bound(scheme: CPScheme, W) -> object:
    """A positive constant below every gap of ``Λ_W``.

    For the Fibonacci scheme a nonzero difference ``d`` of two points has
    ``|d * d*| = |norm(d)| >= 1`` and ``|d*| < |W|`` for an interval window,
    so ``|d| > 1/|W|``. Integer model sets have gaps at least 1.
    """
    if isinstance(scheme, IntCyclic):
        return Fraction(1)
    ivs = W.intervals()
    span = ivs[-1][1] - ivs[0][0]
    return QPhi(1) / span
