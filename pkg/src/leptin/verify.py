"""Randomized exact verification suites, one per lemma group.

Each case draws its data from ``random.Random(f"{suite}:{seed}:{i}")``, so a
case is reproducible from ``(suite, seed, i)`` alone and the report does not
depend on how cases are spread over worker processes. The worker count
defaults to ``$LEPTIN_JOBS`` (1 when unset).
"""

from __future__ import annotations

import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .boundaries import comparison_inclusions, folner_boundary, strong_folner_boundary
from .cutproject import (
    FibonacciZphi,
    IntCyclic,
    almost_periods,
    density_formula_check,
    period_inclusion_holds,
)
from .density import gks_density, periodic_leptin, tb_witness
from .folner import comb_R1, cubes_Zd, ratio, thicken
from .group_core import GroupCtx, heisenberg, int_lattice, inverse, multiply, real_boxes
from .lattices import IntSublattice, covers, fd_equation_count, siegel_fundamental_domain, tiling_defects
from .measures import DiracComb, PeriodicComb
from .qphi import QPhi
from .set_algebra import GSet, greedy_packing, measure, minkowski, set_inverse

CaseResult = Tuple[bool, str, int]


@dataclass
class SuiteReport:
    suite: str
    lemma: str
    seed: int
    cases: int
    checks: int = 0
    failures: int = 0
    first_failure: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "lemma": self.lemma,
            "seed": self.seed,
            "cases": self.cases,
            "checks": self.checks,
            "failures": self.failures,
            "passed": self.passed,
            "first_failure": self.first_failure,
        }


# --- random data --------------------------------------------------------


def _rng(suite: str, seed: int, i: int) -> random.Random:
    return random.Random(f"{suite}:{seed}:{i}")


def _rand_elem(ctx: GroupCtx, rng: random.Random, span: int = 3):
    if ctx.kind == "H3":
        return (rng.randint(-span, span), rng.randint(-span, span), rng.randint(-2 * span, 2 * span))
    return tuple(rng.randint(-span, span) for _ in range(ctx.dim))


def rand_set(ctx: GroupCtx, rng: random.Random, size: int, span: int = 3) -> GSet:
    return GSet._raw(ctx, {_rand_elem(ctx, rng, span) for _ in range(max(size, 1))})


def rand_sym_nbhd(ctx: GroupCtx, rng: random.Random, size: int = 2, span: int = 1) -> GSet:
    pts = {ctx.identity()}
    for _ in range(size):
        g = _rand_elem(ctx, rng, span)
        pts.add(g)
        pts.add(inverse(ctx, g))
    return GSet._raw(ctx, pts)


def _groups():
    return (int_lattice(2), heisenberg())


# --- suites -------------------------------------------------------------


def _case_boundaries(rng: random.Random) -> CaseResult:
    checks = 0
    for ctx in _groups():
        K = rand_sym_nbhd(ctx, rng, rng.randint(1, 3))
        A = rand_set(ctx, rng, rng.randint(1, 12))
        for name, ok in comparison_inclusions(ctx, K, A).items():
            checks += 1
            if not ok:
                return False, f"{name} fails in {ctx.name} for K={K.elements()} A={A.elements()}", checks
    return True, "", checks


def _case_packing(rng: random.Random) -> CaseResult:
    checks = 0
    for ctx in _groups():
        A = rand_set(ctx, rng, rng.randint(1, 15))
        B = rand_set(ctx, rng, rng.randint(0, 4), 1) | GSet._raw(ctx, [ctx.identity()])
        chosen = greedy_packing(ctx, A, B)
        tiles = [minkowski(ctx, B, GSet._raw(ctx, [a])) for a in chosen]
        union = set().union(*(t.pointset for t in tiles))
        BA = minkowski(ctx, B, A)
        BiB = minkowski(ctx, set_inverse(ctx, B), B)
        cover = minkowski(ctx, BiB, GSet._raw(ctx, chosen))
        n, mB = len(chosen), measure(ctx, B)
        conds = {
            "disjoint": sum(len(t) for t in tiles) == len(union),
            "packing inside BA": union <= BA.pointset,
            "A covered by B^-1 B a_i": A.pointset <= cover.pointset,
            "n m(B) <= m(BA)": n * mB <= measure(ctx, BA),
            "m(A) <= n m(B^-1 B)": measure(ctx, A) <= n * measure(ctx, BiB),
        }
        for name, ok in conds.items():
            checks += 1
            if not ok:
                return False, f"{name} fails in {ctx.name} for A={A.elements()} B={B.elements()}", checks
    return True, "", checks


def _case_sum_identity(rng: random.Random) -> CaseResult:
    checks = 0
    for ctx in _groups():
        A = rand_set(ctx, rng, rng.randint(1, 8))
        B = rand_set(ctx, rng, rng.randint(1, 8))
        supp = rand_set(ctx, rng, rng.randint(1, 30), 5)
        nu = DiracComb(ctx, {p: Fraction(rng.randint(1, 9), rng.randint(1, 4)) for p in supp.elements()})
        left = sum((nu.eval(GSet._raw(ctx, [multiply(ctx, a, b) for b in B.pointset])) for a in A.elements()), Fraction(0))
        right = sum((nu.eval(GSet._raw(ctx, [multiply(ctx, a, b) for a in A.pointset])) for b in B.elements()), Fraction(0))
        checks += 1
        if left != right:
            return False, f"sums differ in {ctx.name}: {left} != {right}", checks
    return True, "", checks


def _rand_basis(rng: random.Random, d: int) -> List[List[int]]:
    while True:
        rows = [[rng.randint(-3, 3) for _ in range(d)] for _ in range(d)]
        if d == 1:
            rows = [[rng.randint(1, 6)]]
        lat_det = rows[0][0] if d == 1 else rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
        if lat_det != 0 and abs(lat_det) <= 12:
            return rows


def _case_standard_estimates(rng: random.Random) -> CaseResult:
    ctx = int_lattice(2)
    checks = 0
    # upper estimate for a random finite comb
    supp = rand_set(ctx, rng, rng.randint(1, 25), 4)
    nu = DiracComb(ctx, {p: rng.randint(1, 3) for p in supp.elements()})
    Bu = rand_sym_nbhd(ctx, rng, rng.randint(1, 2))
    w = tb_witness(nu, Bu, GSet.box(ctx, (-5, -5), (6, 6)))
    A = rand_set(ctx, rng, rng.randint(1, 10), 5)
    checks += 1
    if not nu.eval(A) <= w.C_u / measure(ctx, Bu) * measure(ctx, minkowski(ctx, Bu, A)):
        return False, f"upper estimate fails: A={A.elements()} B_u={Bu.elements()} C_u={w.C_u}", checks
    # lower estimate for a random lattice comb
    lat = IntSublattice(_rand_basis(rng, 2))
    lnu = PeriodicComb(lat)
    r = rng.randint(1, 3)
    Bl = GSet.box(ctx, (-r, -r), (r + 1, r + 1))
    wl = tb_witness(lnu, Bl, GSet.box(ctx, (0, 0), (1, 1)))
    A = rand_set(ctx, rng, rng.randint(1, 10), 6)
    checks += 1
    if wl.C_l:
        rhs = wl.C_l / measure(ctx, minkowski(ctx, Bl, Bl)) * measure(ctx, A)
        if not lnu.eval(minkowski(ctx, Bl, A)) >= rhs:
            return False, f"lower estimate fails: basis={lat.basis} r={r} A={A.elements()}", checks
    return True, "", checks


def _case_thickening(rng: random.Random) -> CaseResult:
    checks = 0
    n = rng.randint(10, 60)
    eps = Fraction(1, rng.choice([5, 10, 20]))
    R = real_boxes(1)
    seq = thicken(R, comb_R1(eps), GSet.interval(R, -1, 1))
    K = GSet.interval(R, -eps, eps)
    got = ratio(R, seq, n, K, "strong")
    checks += 1
    if got > Fraction(3, n):
        return False, f"thickened comb ratio {got} > 3/{n} at eps={eps}", checks
    # discrete: strong boundary of L A is inside the Folner boundary of A for L^2
    for ctx in _groups():
        L = rand_sym_nbhd(ctx, rng, rng.randint(1, 2))
        A = rand_set(ctx, rng, rng.randint(1, 12))
        LA = minkowski(ctx, L, A)
        lhs = strong_folner_boundary(ctx, L, LA)
        rhs = folner_boundary(ctx, minkowski(ctx, L, L), A)
        checks += 1
        if not lhs.pointset <= rhs.pointset:
            return False, f"strong boundary of LA escapes in {ctx.name}: L={L.elements()} A={A.elements()}", checks
    return True, "", checks


def _random_cover(rng: random.Random, lat) -> GSet:
    ctx = lat.ctx
    pts = set()
    d = ctx.dim
    for f in lat.fundamental_domain().elements():
        gam = lat.from_coords([rng.randint(-1, 1) for _ in range(d)])
        pts.add(multiply(ctx, gam, f))
    for _ in range(rng.randint(0, 5)):
        pts.add(_rand_elem(ctx, rng, 4))
    return GSet._raw(ctx, pts)


def _case_lattice_fd(rng: random.Random) -> CaseResult:
    checks = 0
    for d in (1, 2):
        lat = IntSublattice(_rand_basis(rng, d))
        U = _random_cover(rng, lat)
        checks += 1
        if not covers(lat, U):
            return False, f"generated U does not cover for basis {lat.basis}", checks
        fd = siegel_fundamental_domain(lat, U)
        conds = {
            "F_U inside U": fd.cells.pointset <= U.pointset,
            "measure equals covolume": fd.measure() == lat.covolume(),
            "tiling": not tiling_defects(fd, 2),
            "one lattice solution": all(
                fd_equation_count(fd, g) == 1 for g in fd.cells.elements()[:3]
            ),
        }
        for name, ok in conds.items():
            checks += 1
            if not ok:
                return False, f"{name} fails for basis {lat.basis}, U={U.elements()}", checks
    return True, "", checks


def fib_bruteforce(lo: QPhi, hi: QPhi, wlo: QPhi, whi: QPhi) -> int:
    """Exact count by scanning every ``(m, n)`` in a box that provably
    contains the answer (``|n| <= (span + window span)`` and ``|m|`` bounded
    through ``x = m + n phi``)."""
    span = max(abs(float(lo)), abs(float(hi))) + max(abs(float(wlo)), abs(float(whi))) + 2
    nmax = int(span) + 1
    flo, fhi, fwlo, fwhi = float(lo), float(hi), float(wlo), float(whi)
    phi = float(QPhi(0, 1))
    tol = 1e-9
    count = 0
    for n in range(-nmax, nmax + 1):
        mmax = int(span + abs(n) * 1.7) + 2
        for m in range(-mmax, mmax + 1):
            x, xs = m + n * phi, m + n - n * phi
            if x < flo - tol or x > fhi + tol or xs < fwlo - tol or xs > fwhi + tol:
                continue
            near = min(abs(x - flo), abs(x - fhi), abs(xs - fwlo), abs(xs - fwhi)) < tol
            if near:
                if lo <= QPhi(m, n) < hi and wlo <= QPhi(m + n, -n) < whi:
                    count += 1
            elif flo < x < fhi and fwlo < xs < fwhi:
                count += 1
    return count


def _case_density_formula(rng: random.Random) -> CaseResult:
    checks = 0
    N = rng.randint(1, 9)
    scheme = IntCyclic(N)
    W = scheme.window(rng.sample(range(N), rng.randint(0, N)))
    n = N * rng.randint(1, 6)
    rec = density_formula_check(scheme, W, cubes_Zd(1), n)
    checks += 1
    if not (rec.empirical == rec.target_lo == rec.target_hi):
        return False, f"IntCyclic({N}) window {W}: {rec.empirical} vs {rec.target_lo}", checks
    fib = FibonacciZphi()
    a = Fraction(rng.randint(-20, 10), 10)
    b = a + Fraction(rng.randint(1, 20), 10)
    Wf = fib.window((a, b))
    T = rng.randint(5, 25)
    got = fib.count(Wf, [(0, T)])
    want = fib_bruteforce(QPhi(0), QPhi(T), QPhi(a), QPhi(b))
    checks += 1
    if got != want:
        return False, f"Fibonacci window [{a},{b}) on [0,{T}): {got} vs brute force {want}", checks
    return True, "", checks


def _case_almost_periods(rng: random.Random) -> CaseResult:
    checks = 0
    fib = FibonacciZphi()
    a = Fraction(rng.randint(-20, 0), 10)
    W = fib.window((a, a + Fraction(rng.randint(5, 20), 10)))
    eps = Fraction(1, rng.choice([4, 10, 20]))
    region = [(0, 300)]
    rec = almost_periods(fib, W, eps, region)
    checks += 1
    if not rec.bound <= eps:
        return False, f"bound {rec.bound} exceeds eps {eps}", checks
    periods = list(rec.periods)
    for t in rng.sample(periods, min(3, len(periods))):
        checks += 1
        if not period_inclusion_holds(fib, W, rec.edge, t, region):
            return False, f"inclusion fails for window {W}, t={t}", checks
    N = rng.randint(2, 9)
    cyc = IntCyclic(N)
    Wc = cyc.window(rng.sample(range(N), rng.randint(1, N)))
    reg = GSet.box(int_lattice(1), (0,), (4 * N,))
    rec = almost_periods(cyc, Wc, Fraction(0), reg)
    checks += 1
    for (t,) in rec.periods.elements()[:4]:
        if not period_inclusion_holds(cyc, Wc, rec.edge, t, reg):
            return False, f"IntCyclic({N}) inclusion fails at t={t}", checks
    return True, "", checks


def _case_gks(rng: random.Random) -> CaseResult:
    from .lattices import integers

    p = rng.randint(1, 8)
    res = rng.sample(range(p), rng.randint(1, p))
    nu = PeriodicComb(IntSublattice([[p]]), {(r,): rng.randint(1, 3) for r in res})
    Z = int_lattice(1)
    Ks = [GSet.box(Z, (0,), (k,)) for k in range(1, 3 * p + 2)]
    rec = gks_density(nu, integers(1), [Fraction(0)], Ks)
    c = nu.mass_per_period() / p
    lep, _ = periodic_leptin(nu)
    if rec.d_minus_lo != c or rec.d_plus_hi != c:
        return False, f"period {p} residues {res}: d = {rec.d_minus_lo}, {rec.d_plus_hi} vs {c}", 1
    if rec.d_minus_lo * rec.lattice_leptin != lep:
        return False, f"product identity fails for period {p}", 2
    return True, "", 2


@dataclass(frozen=True)
class Suite:
    name: str
    lemma: str
    case: Callable[[random.Random], CaseResult]


SUITES: Dict[str, Suite] = {
    s.name: s
    for s in (
        Suite("boundaries", "boundary comparison lemma (five inclusions)", _case_boundaries),
        Suite("packing", "packing lemma for maximal disjoint translates", _case_packing),
        Suite("sum-identity", "integral exchange identity for nu(aB) and nu(Ab)", _case_sum_identity),
        Suite("standard-estimates", "translation-boundedness estimates", _case_standard_estimates),
        Suite("thickening", "thickening proposition for strong Folner sequences", _case_thickening),
        Suite("lattice-fd", "fundamental domain inside a covering set", _case_lattice_fd),
        Suite("density-formula", "density formula for model sets", _case_density_formula),
        Suite("almost-periods", "almost-period lemma for regular model sets", _case_almost_periods),
        Suite("gks", "GKS density and Leptin density relation", _case_gks),
    )
}


def _run_one(args) -> Tuple[int, bool, str, int]:
    name, seed, i = args
    try:
        ok, detail, checks = SUITES[name].case(_rng(name, seed, i))
    except Exception as exc:  # report, don't crash the pool
        return i, False, f"{type(exc).__name__}: {exc}", 0
    return i, ok, detail, checks


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("LEPTIN_JOBS", "1")))
    except ValueError:
        return 1


def run_suite(name: str, cases: int, seed: int, jobs: Optional[int] = None) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    suite = SUITES[name]
    jobs = jobs or default_jobs()
    work = [(name, seed, i) for i in range(cases)]
    if jobs > 1 and cases > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, work, chunksize=max(1, math.ceil(cases / (4 * jobs)))))
    else:
        results = [_run_one(w) for w in work]
    results.sort()
    report = SuiteReport(name, suite.lemma, seed, cases)
    for i, ok, detail, checks in results:
        report.checks += checks
        if not ok:
            report.failures += 1
            if report.first_failure is None:
                report.first_failure = {"case": i, "detail": detail}
    return report
