"""Folner sequence generators and boundary-ratio diagnostics.

Sequences are indexed by ``n >= 1``. Built-in families:

* ``cubes_Zd`` -- ``{0..n-1}^d`` in ``Z^d``
* ``cubes_Rd`` -- ``[0,n)^d`` in ``R^d``
* ``heisenberg_boxes`` -- ``[0,n)^2 x [0,n^2)`` in H3(Z), a monotile for ``Gamma_n``
* ``comb_R1`` -- ``union_{k<n} [k, k+1-1/n)`` in ``R``: Folner, yet its strong
  boundary ratio for ``K=[-eps,eps)`` tends to ``2 eps`` instead of 0
* ``thickened`` -- ``n -> L A_n`` for a base sequence
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .boundaries import KINDS, boundary, strong_folner_boundary
from .errors import EmptySet, MissingWitness, NotSymmetric
from .group_core import GroupCtx, heisenberg, int_lattice, real_boxes
from .set_algebra import GSet, is_symmetric_unit_nbhd, measure, minkowski


@dataclass(frozen=True)
class FolnerSeq:
    ctx: GroupCtx
    kind: str
    generator: Callable[[int], GSet] = field(compare=False, repr=False)
    params: tuple = ()
    declared: str = "strong"

    def __call__(self, n: int) -> GSet:
        if n < 1:
            raise ValueError("sequence index starts at 1")
        A = self.generator(n)
        if A.is_empty():
            raise EmptySet(f"{self.kind}({n}) is empty")
        return A

    @property
    def tag(self) -> str:
        if not self.params:
            return self.kind
        return f"{self.kind}({','.join(str(p) for p in self.params)})"


def cubes_Zd(d: int = 1) -> FolnerSeq:
    ctx = int_lattice(d)
    return FolnerSeq(ctx, "cubes_Zd", lambda n: GSet.box(ctx, (0,) * d, (n,) * d), (d,))


def cubes_Rd(d: int = 1) -> FolnerSeq:
    ctx = real_boxes(d)
    return FolnerSeq(ctx, "cubes_Rd", lambda n: GSet.box(ctx, (0,) * d, (n,) * d), (d,))


def heisenberg_boxes() -> FolnerSeq:
    ctx = heisenberg()
    return FolnerSeq(
        ctx, "heisenberg_boxes", lambda n: GSet.box(ctx, (0, 0, 0), (n, n, n * n)), declared="monotile"
    )


def comb_R1(eps=Fraction(1, 10)) -> FolnerSeq:
    ctx = real_boxes(1)
    eps = Fraction(eps)

    def gen(n):
        gap = Fraction(1, n)
        slabs = tuple((Fraction(k), k + 1 - gap, True) for k in range(n))
        return GSet.from_slabs(ctx, slabs)

    return FolnerSeq(ctx, "comb_R1", gen, (eps,), declared="folner")


def custom(ctx: GroupCtx, fn: Callable[[int], GSet], declared: str = "folner") -> FolnerSeq:
    return FolnerSeq(ctx, "custom", fn, declared=declared)


def thicken(ctx: GroupCtx, seq: FolnerSeq, L: GSet) -> FolnerSeq:
    """``n -> L A_n``; a strong Folner sequence whenever the base is Folner."""
    if not is_symmetric_unit_nbhd(ctx, L):
        raise NotSymmetric("L must contain the identity and satisfy L = L^{-1}")
    return FolnerSeq(
        ctx, "thickened", lambda n: minkowski(ctx, L, seq(n)), (seq.tag,), declared="strong"
    )


def ratio(ctx: GroupCtx, seq: FolnerSeq, n: int, K: GSet, kind: str = "strong") -> Fraction:
    """``m(boundary_K A_n) / m(A_n)`` for the requested boundary kind."""
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    A = seq(n)
    return measure(ctx, boundary(ctx, K, A, kind)) / measure(ctx, A)


def intersection_ratio(ctx: GroupCtx, A: GSet, K: GSet) -> Fraction:
    """``m(∩_{k in K} kA) / m(A)`` for a finite ``K`` in a discrete group.

    This is the quantity whose convergence to 1 characterizes strong Folner
    sequences among Folner sequences; only finite ``K`` is supported.
    """
    if not ctx.discrete:
        raise NotImplementedError("finite intersections need a discrete group")
    from .group_core import multiply

    pts = None
    for k in K.pointset:
        moved = {multiply(ctx, k, a) for a in A.pointset}
        pts = moved if pts is None else pts & moved
    return Fraction(len(pts)) / measure(ctx, A)


def lattice_aligned_check(ctx: GroupCtx, seq: FolnerSeq, K: GSet, L: GSet, n: int, witness) -> Fraction:
    """Certified upper bound for ``sup_s nu(L ∂_K A_n s) / m(A_n)``.

    Uses ``nu(X) <= C_u / m(B_u) * m(B_u X)``, valid for every right translate
    of ``X`` since ``m`` is bi-invariant.
    """
    if witness is None or getattr(witness, "B_u", None) is None or witness.C_u is None:
        raise MissingWitness("an upper translation-boundedness witness (B_u, C_u) is required")
    A = seq(n)
    edge = strong_folner_boundary(ctx, K, A)
    if edge.is_empty():
        return Fraction(0)
    spread = minkowski(ctx, witness.B_u, minkowski(ctx, L, edge))
    return witness.C_u / measure(ctx, witness.B_u) * measure(ctx, spread) / measure(ctx, A)


def is_monotile(seq: FolnerSeq, n: int, lattice, radius: int = 1) -> bool:
    """``A_n`` tiles the group by ``lattice`` (checked on a lattice patch)."""
    from .lattices import FundamentalDomain, tiling_defects

    A = seq(n)
    if measure(seq.ctx, A) != lattice.covolume():
        return False
    return not tiling_defects(FundamentalDomain(A, lattice), radius)
