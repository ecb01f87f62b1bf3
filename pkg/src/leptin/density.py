"""Density hierarchy: averaged densities along a sequence, Beurling
densities, Leptin probes, translation-boundedness witnesses and GKS
densities relative to a lattice.

Every reported number carries a certification flag:

``exact``
    the value is the true quantity (finite reduction proved in the code
    comments);
``sampled-upper-bound`` / ``sampled-lower-bound``
    an infimum (resp. supremum) taken over a finite sample, which can only
    overestimate (resp. underestimate) the true value;
``heuristic``
    mixed inf/sup over finite samples; no one-sided guarantee.

The Paterson constant ``I(G)`` is the documented constant 1 for every
built-in group (all are amenable).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .errors import EmptyFamily, InvalidPeriod, NoCertificate
from .group_core import GroupCtx, multiply
from .lattices import IntSublattice, Lattice
from .measures import DiracComb, HaarMeasure, PeriodicComb, PMeasure
from .set_algebra import GSet, is_symmetric_unit_nbhd, measure, minkowski, set_inverse, translate

EXACT = "exact"
SAMPLED_UPPER = "sampled-upper-bound"
SAMPLED_LOWER = "sampled-lower-bound"
SAMPLED = "sampled"
HEURISTIC = "heuristic"

AMENABILITY_CONSTANT = 1


def _s(x) -> Optional[str]:
    return None if x is None else str(x)


@dataclass(frozen=True)
class Periodic:
    """Declares that ``nu`` is invariant under right translation by ``lattice``."""

    lattice: Lattice


@dataclass
class TBWitness:
    B_u: Optional[GSet]
    C_u: Optional[Fraction]
    B_l: Optional[GSet]
    C_l: Optional[Fraction]
    flags: Dict[str, str] = field(default_factory=dict)

    def upper_bound(self, ctx: GroupCtx) -> Optional[Fraction]:
        """``C_u / m(B_u)``: an upper bound for every density of ``nu``."""
        if self.B_u is None or self.C_u is None:
            return None
        return self.C_u / measure(ctx, self.B_u)

    def lower_bound(self, ctx: GroupCtx) -> Optional[Fraction]:
        """``C_l / m(B_l^2) * I(G)``."""
        if self.B_l is None or not self.C_l:
            return None
        return self.C_l / measure(ctx, minkowski(ctx, self.B_l, self.B_l)) * AMENABILITY_CONSTANT

    def to_json(self) -> dict:
        return {
            "B_u": None if self.B_u is None else repr(self.B_u),
            "C_u": _s(self.C_u),
            "B_l": None if self.B_l is None else repr(self.B_l),
            "C_l": _s(self.C_l),
            "flags": dict(self.flags),
        }


# --- helpers ------------------------------------------------------------


def _period_of(nu: PMeasure) -> Optional[Lattice]:
    return getattr(nu, "period", None)


def period_density(nu: PMeasure) -> Optional[Fraction]:
    """``nu(F)/m(F)`` for a right-periodic comb or invariant Haar measure."""
    if isinstance(nu, PeriodicComb):
        return nu.mass_per_period() / nu.lattice.covolume()
    if isinstance(nu, HaarMeasure) and nu.invariant:
        return Fraction(1)
    return None


def check_period(nu: PMeasure, lattice: Lattice, radius: int = 2) -> None:
    """Raise :class:`InvalidPeriod` unless ``nu(g gamma) = nu(g)`` for ``g`` in
    a patch around the canonical domain and ``gamma`` a lattice generator."""
    if isinstance(nu, HaarMeasure) and nu.invariant:
        return
    ctx = nu.ctx
    d = lattice.ctx.dim
    gens = [lattice.from_coords([int(i == j) for j in range(d)]) for i in range(d)]
    base = lattice.fundamental_domain().pointset
    probe = {multiply(ctx, f, g) for f in base for g in lattice.patch(radius)}
    for g in sorted(probe):
        w = nu.weight_at(g)
        for gam in gens:
            if nu.weight_at(multiply(ctx, g, gam)) != w:
                raise InvalidPeriod(f"weight at {g} changes under right translation by {gam}")


def _eval_shift(nu: PMeasure, A: GSet, s) -> Fraction:
    """``nu(A s)``; model-set measures in ``R`` accept Q(phi) shifts."""
    ctx = nu.ctx
    if not ctx.discrete and hasattr(nu, "count_in"):
        from .qphi import to_qphi

        x = to_qphi(s[0] if isinstance(s, tuple) else s)
        return Fraction(nu.count_in([(to_qphi(lo) + x, to_qphi(hi) + x) for lo, hi, _ in A.slabs]))
    return nu.eval(translate(ctx, A, s, "right"))


def _shift_domain(nu: PMeasure, shift_set):
    """Shifts to scan and whether the scan is exhaustive."""
    if isinstance(shift_set, Periodic):
        check_period(nu, shift_set.lattice)
        # every g is f*gamma with f in the domain and nu(A f gamma) = nu(A f)
        return shift_set.lattice.fundamental_domain().elements(), True
    if isinstance(shift_set, GSet):
        if not shift_set.ctx.discrete:
            raise ValueError("a box union is not a finite shift set; pass a list of elements")
        return shift_set.elements(), False
    return list(shift_set), False


# --- operations ---------------------------------------------------------


def a_density(nu: PMeasure, seq, n: int) -> Fraction:
    """``nu(A_n) / m(A_n)``, exact."""
    A = seq(n)
    return nu.eval(A) / measure(seq.ctx, A)


@dataclass
class BeurlingRecord:
    B_minus_n: Fraction
    B_plus_n: Fraction
    n: int
    shifts: int
    flags: Dict[str, str]
    argmin: object = None
    argmax: object = None

    def to_json(self) -> dict:
        return {
            "B_minus_n": str(self.B_minus_n),
            "B_plus_n": str(self.B_plus_n),
            "B_minus_n_float": float(self.B_minus_n),
            "B_plus_n_float": float(self.B_plus_n),
            "n": self.n,
            "shifts": self.shifts,
            "flags": dict(self.flags),
        }


def beurling_density(nu: PMeasure, seq, n: int, shift_set) -> BeurlingRecord:
    """``inf_s`` and ``sup_s`` of ``nu(A_n s) / m(A_n)``.

    ``shift_set`` is a finite ``GSet``, a list of elements, or
    ``Periodic(lattice)``. In the periodic case one fundamental domain of
    shifts is exhaustive, so both values are exact.
    """
    ctx = seq.ctx
    A = seq(n)
    mA = measure(ctx, A)
    shifts, exhaustive = _shift_domain(nu, shift_set)
    if not shifts:
        raise EmptyFamily("no shifts to scan")
    lo = hi = None
    arglo = arghi = None
    for s in shifts:
        v = _eval_shift(nu, A, s) / mA
        if lo is None or v < lo:
            lo, arglo = v, s
        if hi is None or v > hi:
            hi, arghi = v, s
    flags = {"B_minus_n": EXACT if exhaustive else SAMPLED_UPPER, "B_plus_n": EXACT if exhaustive else SAMPLED_LOWER}
    return BeurlingRecord(lo, hi, n, len(shifts), flags, arglo, arghi)


@dataclass
class LeptinRecord:
    lep_minus_probe: Fraction
    lep_plus_probe: Fraction
    flags: Dict[str, str]
    raw_minus: Fraction
    raw_plus: Fraction
    certificate_K: Optional[GSet] = None

    def to_json(self) -> dict:
        return {
            "lep_minus_probe": str(self.lep_minus_probe),
            "lep_plus_probe": str(self.lep_plus_probe),
            "raw_minus": str(self.raw_minus),
            "raw_plus": str(self.raw_plus),
            "flags": dict(self.flags),
            "certificate_K_size": None if self.certificate_K is None else len(self.certificate_K),
        }


def periodic_leptin(nu: PMeasure):
    """Exact Leptin density of a right-periodic comb, with its witness ``K``.

    For ``K = F F^{-1}`` (``F`` the canonical domain) and any finite ``A``,
    let ``S`` be the lattice elements with ``F gamma`` meeting ``A``. Then
    ``A ⊆ ⊔_S F gamma ⊆ K A``, so ``nu(KA)/m(A) >= nu(F)/m(F)`` and
    ``nu(A)/m(KA) <= nu(F)/m(F)``. Together with ``Lep^- <= Lep^+`` both
    Leptin densities equal ``nu(F)/m(F)``.
    """
    if not isinstance(nu, PeriodicComb):
        return None, None
    ctx = nu.ctx
    F = nu.lattice.fundamental_domain()
    K = minkowski(ctx, F, set_inverse(ctx, F))
    return nu.mass_per_period() / nu.lattice.covolume(), K


def leptin_probe(nu: PMeasure, K_family: Sequence[GSet], A_family: Sequence[GSet], periodic: bool = False) -> LeptinRecord:
    """``max_K min_A nu(KA)/m(A)`` and ``min_K max_A nu(A)/m(KA)`` over the
    given families. With ``periodic=True`` and a periodic comb, the probes are
    replaced by the exact value from :func:`periodic_leptin`."""
    if not K_family or not A_family:
        raise EmptyFamily("K and A families must be nonempty")
    ctx = nu.ctx
    lo_best = hi_best = None
    for K in K_family:
        inner_lo = inner_hi = None
        for A in A_family:
            KA = minkowski(ctx, K, A)
            a = nu.eval(KA) / measure(ctx, A)
            b = nu.eval(A) / measure(ctx, KA)
            inner_lo = a if inner_lo is None else min(inner_lo, a)
            inner_hi = b if inner_hi is None else max(inner_hi, b)
        lo_best = inner_lo if lo_best is None else max(lo_best, inner_lo)
        hi_best = inner_hi if hi_best is None else min(hi_best, inner_hi)
    if periodic:
        value, K = periodic_leptin(nu)
        if value is not None:
            return LeptinRecord(value, value, {"lep_minus": EXACT, "lep_plus": EXACT}, lo_best, hi_best, K)
    if lo_best == 0 and hi_best == 0 and isinstance(nu, DiracComb) and not nu.weights:
        return LeptinRecord(lo_best, hi_best, {"lep_minus": EXACT, "lep_plus": EXACT}, lo_best, hi_best)
    return LeptinRecord(lo_best, hi_best, {"lep_minus": HEURISTIC, "lep_plus": HEURISTIC}, lo_best, hi_best)


def _event_shifts(nu, B: GSet, region: GSet) -> list:
    """Shifts ``x`` in ``region`` at which ``x -> nu(B + x)`` can change.

    The count of points of ``Λ`` in a union of half-open intervals
    ``[lo + x, hi + x)`` is constant on each ``(e_i, e_{i+1}]`` between
    consecutive events ``p - lo``, ``p - hi``; evaluating at the events and
    the region's right end therefore gives the exact extremes over the region.
    """
    from .cutproject import QPhi

    pts = []
    for rlo, rhi, _ in region.slabs:
        span_lo = QPhi.lift(rlo) + min(QPhi.lift(lo) for lo, _, _ in B.slabs)
        span_hi = QPhi.lift(rhi) + max(QPhi.lift(hi) for _, hi, _ in B.slabs)
        pts.extend(nu.scheme.patch(nu.window, [(span_lo - nu.shift, span_hi - nu.shift)]).values())
    events = set()
    for p in pts:
        p = p + nu.shift
        for lo, hi, _ in B.slabs:
            events.add(p - lo)
            events.add(p - hi)
    out = []
    for rlo, rhi, _ in region.slabs:
        for e in events:
            if QPhi.lift(rlo) <= e < rhi:
                out.append(e)
        out.append(QPhi.lift(rlo))
    return sorted(set(out))


def tb_witness(nu: PMeasure, B: GSet, patch: GSet) -> TBWitness:
    """Upper and lower translation-boundedness constants for ``nu`` on ``B``.

    ``C_u = max_x nu(B^2 x)`` and ``C_l = min_x nu(B x)``; ``x`` ranges over
    one fundamental domain for periodic combs (exact), over ``B^{-2}``
    times the support for finite combs (exact for ``C_u``), and over
    ``patch`` otherwise (sampled).
    """
    ctx = nu.ctx
    if not is_symmetric_unit_nbhd(ctx, B):
        from .errors import NotSymmetric

        raise NotSymmetric("B must be a symmetric unit neighbourhood")
    B2 = minkowski(ctx, B, B)
    if isinstance(nu, HaarMeasure) and nu.invariant:
        return TBWitness(B, measure(ctx, B2), B, measure(ctx, B), {"C_u": EXACT, "C_l": EXACT})
    if isinstance(nu, DiracComb) and not nu.weights:
        return TBWitness(B, Fraction(0), None, None, {"C_u": EXACT, "C_l": "none"})

    def scan(xs):
        cu = cl = None
        for x in xs:
            u = _eval_shift(nu, B2, x)
            l = _eval_shift(nu, B, x)
            cu = u if cu is None else max(cu, u)
            cl = l if cl is None else min(cl, l)
        return cu, cl

    if isinstance(nu, PeriodicComb):
        cu, cl = scan(nu.lattice.fundamental_domain().elements())
        flags = {"C_u": EXACT, "C_l": EXACT}
    elif isinstance(nu, DiracComb) and ctx.discrete:
        # nu(B^2 x) > 0 only for x in B^{-2} supp
        cand = minkowski(ctx, set_inverse(ctx, B2), nu.support)
        cu, _ = scan(cand.elements())
        _, cl = scan(patch.elements())
        if cl and not cand.pointset >= patch.pointset:
            cl = Fraction(0)
        flags = {"C_u": EXACT, "C_l": SAMPLED}
    elif ctx.discrete:
        cu, cl = scan(patch.elements())
        flags = {"C_u": SAMPLED, "C_l": SAMPLED}
    else:
        if not hasattr(nu, "scheme"):
            raise NotImplementedError("tb_witness in R needs a model-set measure")
        cu_xs = _event_shifts(nu, B2, patch)
        cl_xs = _event_shifts(nu, B, patch)
        cu, _ = scan([(x,) for x in cu_xs])
        _, cl = scan([(x,) for x in cl_xs])
        flags = {"C_u": SAMPLED, "C_l": SAMPLED}
    if not cl:
        return TBWitness(B, cu, None, None, {**flags, "C_l": "none"})
    return TBWitness(B, cu, B, cl, flags)


# --- GKS densities ------------------------------------------------------


@dataclass
class GKSCertificate:
    eps: Fraction
    K: GSet
    side: str

    def to_json(self) -> dict:
        return {"eps": str(self.eps), "side": self.side, "K": repr(self.K)}


@dataclass
class GKSRecord:
    d_minus_lo: Fraction
    d_plus_hi: Fraction
    certificates: List[GKSCertificate]
    flags: Dict[str, str]
    leptin_lower: Optional[Fraction] = None
    lattice_leptin: Optional[Fraction] = None

    def product_identity(self) -> Optional[bool]:
        """``Lep_Gamma * d^- == Lep^-`` when both sides are exact."""
        if self.leptin_lower is None or self.flags.get("d_minus") != EXACT:
            return None
        return self.d_minus_lo * self.lattice_leptin == self.leptin_lower

    def to_json(self) -> dict:
        return {
            "d_minus_lo": str(self.d_minus_lo),
            "d_plus_hi": str(self.d_plus_hi),
            "flags": dict(self.flags),
            "leptin_lower": _s(self.leptin_lower),
            "lattice_leptin": _s(self.lattice_leptin),
            "product_identity": self.product_identity(),
            "certificates": [c.to_json() for c in self.certificates],
        }


def _interval_params(K: GSet):
    """``(start, length)`` when ``K`` is a contiguous integer interval."""
    if K.ctx.name != "Z1" or K.is_empty():
        return None
    xs = sorted(p[0] for p in K.pointset)
    if xs[-1] - xs[0] + 1 != len(xs):
        return None
    return xs[0], len(xs)


def _z_windows(nu: PeriodicComb, p: int, max_len: int) -> list:
    """``w[s][M] = nu([s, s+M))`` for ``s < p`` and ``M <= max_len``."""
    rows = []
    for s in range(p):
        acc = [Fraction(0)]
        for j in range(max_len):
            acc.append(acc[-1] + nu.weight_at((s + j,)))
        rows.append(acc)
    return rows


def _z_certifies(win, p: int, c: Fraction, k: int, eps: Fraction, side: str) -> bool:
    """Interval/period reduction for ``G = Gamma = Z`` and a ``p``-periodic
    ``nu`` of density ``c``, with ``K`` an interval of length ``k``.

    Finite sets ``A`` split into clusters whose ``K``-dilates are disjoint
    intervals, so it suffices to test intervals ``H``. With
    ``m(s, M) = nu([s, s+M)) - c M`` periodic in ``s`` and ``M`` (period
    ``p``):

    lower: ``nu(KH) >= (1-eps) c |H|`` for all ``H`` iff
    ``m(s, M) + eps c M >= -(1-eps) c (k-1)`` for ``M >= k``; the left side
    grows along ``M -> M + p``, so ``M`` in ``[k, k+p)`` suffices.

    upper: ``nu(H) <= (1+eps) c |KH|`` iff
    ``m(s, L) - eps c L <= (1+eps) c (k-1)`` for ``L >= 1``; the left side
    shrinks along ``L -> L + p``, so ``L`` in ``[1, p]`` suffices.
    """
    if side == "lower":
        for s in range(p):
            for M in range(k, k + p):
                if win[s][M] - c * M + eps * c * M < -(1 - eps) * c * (k - 1):
                    return False
        return True
    for s in range(p):
        for L in range(1, p + 1):
            if win[s][L] - c * L - eps * c * L > (1 + eps) * c * (k - 1):
                return False
    return True


def gks_density(
    nu: PMeasure,
    lat: Lattice,
    eps_schedule: Sequence,
    K_search: Sequence[GSet],
    patch: Optional[GSet] = None,
) -> GKSRecord:
    """Lower/upper densities of ``nu`` relative to the lattice counting
    measure ``delta_Gamma``.

    For each ``eps`` in the schedule, look for ``K`` in ``K_search`` with
    ``(1-eps) alpha delta_Gamma(A) <= nu(KA)`` for all ``A`` (lower) and
    ``nu(A) <= (1+eps) alpha delta_Gamma(KA)`` (upper). Exact reductions:

    * ``nu = delta_Gamma``: ``alpha = 1`` with ``K = {e}``;
    * ``G = Gamma = Z`` and ``nu`` periodic: ``alpha`` = period density, checked
      by :func:`_z_certifies`.

    Otherwise the inequalities are tested on the singletons of ``patch`` and
    on ``patch`` itself, and the values are flagged ``sampled``.
    """
    eps_list = sorted({Fraction(e) for e in eps_schedule}, reverse=True)
    if not eps_list or not K_search:
        raise EmptyFamily("eps schedule and K search list must be nonempty")
    ctx = nu.ctx
    lat_lep = 1 / lat.covolume()
    lep_value, _ = periodic_leptin(nu)

    if isinstance(nu, PeriodicComb) and nu.lattice.label == lat.label and nu.residues == {ctx.identity(): 1}:
        e = GSet._raw(ctx, [ctx.identity()])
        certs = [GKSCertificate(x, e, side) for x in eps_list for side in ("lower", "upper")]
        return GKSRecord(Fraction(1), Fraction(1), certs, {"d_minus": EXACT, "d_plus": EXACT}, lep_value, lat_lep)

    if (
        isinstance(nu, PeriodicComb)
        and ctx.name == "Z1"
        and lat.covolume() == 1
        and isinstance(nu.lattice, IntSublattice)
    ):
        p = int(nu.lattice.covolume())
        c = nu.mass_per_period() / p
        intervals = [(K, _interval_params(K)) for K in K_search]
        intervals = sorted(((K, ip) for K, ip in intervals if ip is not None), key=lambda t: t[1][1])
        if not intervals:
            raise NoCertificate("K search list holds no integer intervals", None)
        longest = intervals[-1][1][1]
        win = _z_windows(nu, p, longest + 2 * p)
        certs = []
        best_eps = None
        for eps in eps_list:
            found = {}
            for side in ("lower", "upper"):
                for K, (_, k) in intervals:
                    if _z_certifies(win, p, c, k, eps, side):
                        found[side] = K
                        break
            if len(found) < 2:
                raise NoCertificate(f"no K in the search list certifies eps={eps}", best_eps)
            best_eps = eps
            certs.extend(GKSCertificate(eps, K, side) for side, K in found.items())
        return GKSRecord(c, c, certs, {"d_minus": EXACT, "d_plus": EXACT}, lep_value, lat_lep)

    if patch is None or patch.is_empty():
        raise NoCertificate("no exact reduction applies and no patch was given", None)
    family = [GSet._raw(ctx, [x]) for x in patch.elements()] + [patch]
    family = [A for A in family if lat.points_in(A).pointset]
    if not family:
        raise NoCertificate("patch contains no lattice points", None)
    best_lo = best_hi = None
    certs = []
    for eps in eps_list:
        lo_eps = hi_eps = None
        lo_K = hi_K = None
        for K in K_search:
            alpha_lo = min(nu.eval(minkowski(ctx, K, A)) / ((1 - eps) * len(lat.points_in(A).pointset)) for A in family)
            denom = [len(lat.points_in(minkowski(ctx, K, A)).pointset) for A in family]
            alpha_hi = max(nu.eval(A) / ((1 + eps) * dn) for A, dn in zip(family, denom))
            if lo_eps is None or alpha_lo > lo_eps:
                lo_eps, lo_K = alpha_lo, K
            if hi_eps is None or alpha_hi < hi_eps:
                hi_eps, hi_K = alpha_hi, K
        certs.append(GKSCertificate(eps, lo_K, "lower"))
        certs.append(GKSCertificate(eps, hi_K, "upper"))
        best_lo = lo_eps if best_lo is None else min(best_lo, lo_eps)
        best_hi = hi_eps if best_hi is None else max(best_hi, hi_eps)
    return GKSRecord(best_lo, best_hi, certs, {"d_minus": SAMPLED, "d_plus": SAMPLED}, lep_value, lat_lep)


# --- reports ------------------------------------------------------------


@dataclass
class DensityReport:
    """Densities of ``nu`` along a sequence at index ``n``.

    ``D_n``, ``B_minus_n``, ``B_plus_n`` are the finite-index quantities.
    ``D_minus .. B_plus`` are the limits; they are exact only for periodic
    measures along a sequence declared Folner, where all four equal the
    period density. Otherwise they repeat the finite-index values with
    sampled flags.
    """

    n: int
    seq: str
    D_n: Fraction
    B_minus_n: Fraction
    B_plus_n: Fraction
    D_minus: Fraction
    D_plus: Fraction
    B_minus: Fraction
    B_plus: Fraction
    flags: Dict[str, str]

    def chain_holds(self) -> bool:
        finite = self.B_minus_n <= self.D_n <= self.B_plus_n
        return finite and self.B_minus <= self.D_minus <= self.D_plus <= self.B_plus

    def all_exact(self) -> bool:
        return all(self.flags.get(k) == EXACT for k in ("D_minus", "D_plus", "B_minus", "B_plus"))

    def to_json(self) -> dict:
        out = {"n": self.n, "seq": self.seq}
        for k in ("D_n", "B_minus_n", "B_plus_n", "D_minus", "D_plus", "B_minus", "B_plus"):
            v = getattr(self, k)
            out[k] = str(v)
            out[k + "_float"] = float(v)
        out["flags"] = dict(self.flags)
        out["chain_holds"] = self.chain_holds()
        return out


def density_report(nu: PMeasure, seq, n: int, shift_set) -> DensityReport:
    D_n = a_density(nu, seq, n)
    b = beurling_density(nu, seq, n, shift_set)
    flags = {"D_n": EXACT, "B_minus_n": b.flags["B_minus_n"], "B_plus_n": b.flags["B_plus_n"]}
    limit = period_density(nu)
    if limit is not None and seq.declared in ("folner", "strong", "monotile"):
        vals = (limit,) * 4
        flags.update({k: EXACT for k in ("D_minus", "D_plus", "B_minus", "B_plus")})
    else:
        vals = (D_n, D_n, b.B_minus_n, b.B_plus_n)
        flags.update({"D_minus": SAMPLED, "D_plus": SAMPLED, "B_minus": SAMPLED_UPPER, "B_plus": SAMPLED_LOWER})
    # order is D_minus, D_plus, B_minus, B_plus
    return DensityReport(n, seq.tag, D_n, b.B_minus_n, b.B_plus_n, vals[0], vals[1], vals[2], vals[3], flags)
