"""Compact-set surrogates and their algebra.

A :class:`GSet` is either a finite point set (discrete groups) or a canonical
union of half-open rational boxes (``R^d``). Products are Minkowski products
``KA = {k*a}`` taken in the group law of the ambient context.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Sequence

from . import boxes as bx
from .errors import EmptySet
from .group_core import GElem, GroupCtx, element, inverse, multiply


class GSet:
    """Finite point set or canonical box union, tied to a group context."""

    __slots__ = ("ctx", "_pts", "_slabs", "_sorted")

    def __init__(self, ctx: GroupCtx, pts=None, slabs=None):
        self.ctx = ctx
        self._pts = pts
        self._slabs = slabs
        self._sorted = None

    # construction -----------------------------------------------------

    @classmethod
    def points(cls, ctx: GroupCtx, items: Iterable) -> "GSet":
        if not ctx.discrete:
            raise TypeError("point sets live in discrete groups; use GSet.boxes for R^d")
        return cls(ctx, pts=frozenset(element(ctx, p) for p in items))

    @classmethod
    def _raw(cls, ctx: GroupCtx, pts: Iterable[GElem]) -> "GSet":
        # trusted fast path: elements already validated tuples
        return cls(ctx, pts=pts if isinstance(pts, frozenset) else frozenset(pts))

    @classmethod
    def boxes(cls, ctx: GroupCtx, items: Iterable[Sequence]) -> "GSet":
        """Box union from boxes ``((lo1, hi1), ..., (lod, hid))``."""
        if ctx.discrete:
            raise TypeError("box unions live in R^d")
        norm = []
        for b in items:
            if len(b) != ctx.dim:
                raise ValueError(f"box {b!r} does not have {ctx.dim} sides")
            norm.append(tuple((Fraction(lo), Fraction(hi)) for lo, hi in b))
        return cls(ctx, slabs=bx.union_many(norm, ctx.dim))

    @classmethod
    def from_slabs(cls, ctx: GroupCtx, slabs) -> "GSet":
        return cls(ctx, slabs=slabs)

    @classmethod
    def empty(cls, ctx: GroupCtx) -> "GSet":
        return cls(ctx, pts=frozenset()) if ctx.discrete else cls(ctx, slabs=bx.EMPTY)

    @classmethod
    def box(cls, ctx: GroupCtx, lo: Sequence, hi: Sequence) -> "GSet":
        """Integer box ``lo <= x < hi`` (discrete) or half-open box (R^d)."""
        if ctx.discrete:
            from itertools import product

            return cls._raw(ctx, product(*(range(a, b) for a, b in zip(lo, hi))))
        return cls.boxes(ctx, [tuple(zip(lo, hi))])

    @classmethod
    def interval(cls, ctx: GroupCtx, lo, hi) -> "GSet":
        return cls.box(ctx, (lo,) * ctx.dim, (hi,) * ctx.dim)

    # inspection -------------------------------------------------------

    @property
    def is_points(self) -> bool:
        return self._pts is not None

    @property
    def pointset(self) -> frozenset:
        return self._pts

    @property
    def slabs(self):
        return self._slabs

    def elements(self) -> tuple:
        """Sorted, duplicate-free element list."""
        if self._sorted is None:
            self._sorted = tuple(sorted(self._pts))
        return self._sorted

    def box_list(self) -> list:
        return bx.to_boxes(self._slabs, self.ctx.dim)

    def is_empty(self) -> bool:
        return not self._pts if self.is_points else bx.is_empty(self._slabs)

    def __len__(self):
        if not self.is_points:
            raise TypeError("box unions have no cardinality")
        return len(self._pts)

    def __iter__(self):
        return iter(self.elements())

    def __contains__(self, g):
        if self.is_points:
            return tuple(g) in self._pts
        return bx.contains_point(self._slabs, tuple(Fraction(c) for c in g))

    def __eq__(self, other):
        if not isinstance(other, GSet):
            return NotImplemented
        return self.ctx == other.ctx and self._pts == other._pts and self._slabs == other._slabs

    def __hash__(self):
        return hash((self.ctx, self._pts, self._slabs))

    def __le__(self, other: "GSet") -> bool:
        """Set inclusion (exact for point sets and canonical box unions)."""
        if self.is_points:
            return self._pts <= other._pts
        return bx.is_empty(bx.difference(self._slabs, other._slabs, self.ctx.dim))

    def __or__(self, other):
        return union(self, other)

    def __and__(self, other):
        return intersection(self, other)

    def __sub__(self, other):
        return difference(self, other)

    def __xor__(self, other):
        return symmetric_difference(self, other)

    def __repr__(self):
        if self.is_points:
            items = self.elements()
            if len(items) > 8:
                return f"GSet({self.ctx.name}, {len(items)} points)"
            return f"GSet({self.ctx.name}, {list(items)})"
        return f"GSet({self.ctx.name}, {self.box_list()})"


def _same(a: GSet, b: GSet) -> GroupCtx:
    if a.ctx != b.ctx:
        raise ValueError("sets belong to different groups")
    return a.ctx


def union(a: GSet, b: GSet) -> GSet:
    ctx = _same(a, b)
    if ctx.discrete:
        return GSet._raw(ctx, a.pointset | b.pointset)
    return GSet.from_slabs(ctx, bx.union(a.slabs, b.slabs, ctx.dim))


def intersection(a: GSet, b: GSet) -> GSet:
    ctx = _same(a, b)
    if ctx.discrete:
        return GSet._raw(ctx, a.pointset & b.pointset)
    return GSet.from_slabs(ctx, bx.intersection(a.slabs, b.slabs, ctx.dim))


def difference(a: GSet, b: GSet) -> GSet:
    ctx = _same(a, b)
    if ctx.discrete:
        return GSet._raw(ctx, a.pointset - b.pointset)
    return GSet.from_slabs(ctx, bx.difference(a.slabs, b.slabs, ctx.dim))


def symmetric_difference(a: GSet, b: GSet) -> GSet:
    ctx = _same(a, b)
    if ctx.discrete:
        return GSet._raw(ctx, a.pointset ^ b.pointset)
    return GSet.from_slabs(ctx, bx.symmetric_difference(a.slabs, b.slabs, ctx.dim))


def _require(*sets: GSet):
    for s in sets:
        if s.is_empty():
            raise EmptySet("operation needs nonempty sets")


def minkowski(ctx: GroupCtx, K: GSet, A: GSet) -> GSet:
    """The product set ``KA = {k*a : k in K, a in A}``."""
    _require(K, A)
    if ctx.discrete:
        if ctx.abelian:
            return GSet._raw(
                ctx, {tuple(u + v for u, v in zip(k, a)) for k in K.pointset for a in A.pointset}
            )
        return GSet._raw(ctx, {multiply(ctx, k, a) for k in K.pointset for a in A.pointset})
    return GSet.from_slabs(ctx, bx.minkowski_sum(K.slabs, A.slabs, ctx.dim))


def product(ctx: GroupCtx, *sets: GSet) -> GSet:
    """Iterated product ``S1 S2 ... Sk``."""
    out = sets[0]
    for s in sets[1:]:
        out = minkowski(ctx, out, s)
    return out


def set_inverse(ctx: GroupCtx, A: GSet) -> GSet:
    if ctx.discrete:
        return GSet._raw(ctx, {inverse(ctx, a) for a in A.pointset})
    return GSet.from_slabs(ctx, bx.reflect(A.slabs, ctx.dim))


def translate(ctx: GroupCtx, A: GSet, g: GElem, side: str = "right") -> GSet:
    """``A*g`` (``side='right'``) or ``g*A`` (``side='left'``)."""
    if ctx.discrete:
        if side == "right":
            return GSet._raw(ctx, {multiply(ctx, a, g) for a in A.pointset})
        return GSet._raw(ctx, {multiply(ctx, g, a) for a in A.pointset})
    return GSet.from_slabs(ctx, bx.translate(A.slabs, tuple(Fraction(c) for c in g), ctx.dim))


def is_symmetric_unit_nbhd(ctx: GroupCtx, K: GSet) -> bool:
    if ctx.discrete:
        return ctx.identity() in K.pointset and set_inverse(ctx, K) == K
    # half-open boxes: compare up to measure zero, identity must be interior-ish
    refl = set_inverse(ctx, K)
    sym = bx.measure(bx.symmetric_difference(refl.slabs, K.slabs, ctx.dim), ctx.dim) == 0
    return sym and ctx.identity() in K


def measure(ctx: GroupCtx, A: GSet) -> Fraction:
    """Haar measure: cardinality (discrete) or exact volume (R^d)."""
    if ctx.discrete:
        return Fraction(len(A.pointset))
    return Fraction(bx.measure(A.slabs, ctx.dim))


def erode(ctx: GroupCtx, A: GSet, K: GSet) -> GSet:
    """``{g : Kg ⊆ A}``."""
    if K.is_empty():
        raise EmptySet("erosion by an empty set")
    if A.is_empty():
        return GSet.empty(ctx)
    if not ctx.discrete:
        return GSet.from_slabs(ctx, bx.erode(A.slabs, K.slabs, ctx.dim))
    pts = A.pointset
    # any solution g lies in k^{-1}A for every k, in particular for one fixed k
    k0_inv = inverse(ctx, next(iter(K.pointset)))
    out = set()
    for a in pts:
        g = multiply(ctx, k0_inv, a)
        if all(multiply(ctx, k, g) in pts for k in K.pointset):
            out.add(g)
    return GSet._raw(ctx, out)


def greedy_packing(ctx: GroupCtx, A: GSet, B: GSet) -> List[GElem]:
    """Maximal ``a_1 < ... < a_n`` in ``A`` (lexicographic scan) with the
    translates ``B a_i`` pairwise disjoint."""
    _require(A, B)
    if not ctx.discrete:
        raise NotImplementedError("greedy packing is implemented for discrete groups only")
    used = set()
    chosen = []
    bpts = list(B.pointset)
    for a in A.elements():
        tile = [multiply(ctx, b, a) for b in bpts]
        if not any(t in used for t in tile):
            used.update(tile)
            chosen.append(a)
    return chosen
