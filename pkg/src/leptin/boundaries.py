"""Folner, strong Folner and van Hove boundaries.

For box unions in R^d all three are returned correct up to measure zero:
the closure of the complement of a box union differs from the complement
by a null set, which no density can see.
"""

from __future__ import annotations

from .group_core import GroupCtx, multiply
from .set_algebra import (
    GSet,
    _require,
    difference,
    erode,
    minkowski,
    set_inverse,
    symmetric_difference,
    union,
)

FOLNER = "folner"
STRONG = "strong"
VANHOVE = "vanhove"
KINDS = (FOLNER, STRONG, VANHOVE)


def folner_boundary(ctx: GroupCtx, K: GSet, A: GSet) -> GSet:
    """``KA △ A``."""
    _require(K, A)
    return symmetric_difference(minkowski(ctx, K, A), A)


def _not_inside(ctx, K: GSet, A: GSet, candidates) -> set:
    pts = A.pointset
    kpts = tuple(K.pointset)
    return {g for g in candidates if any(multiply(ctx, k, g) not in pts for k in kpts)}


def strong_folner_boundary(ctx: GroupCtx, K: GSet, A: GSet) -> GSet:
    """``K^{-1}A ∩ K^{-1}A^c = {g : Kg meets both A and its complement}``."""
    _require(K, A)
    dil = minkowski(ctx, set_inverse(ctx, K), A)
    if ctx.discrete:
        return GSet._raw(ctx, _not_inside(ctx, K, A, dil.pointset))
    return difference(dil, erode(ctx, A, K))


def van_hove_boundary(ctx: GroupCtx, K: GSet, A: GSet) -> GSet:
    """``(KA ∩ cl(A^c)) ∪ (K^{-1} cl(A^c) ∩ A)``.

    In a discrete group the closures are trivial and the second part is
    ``{a in A : Ka ⊄ A}``.
    """
    _require(K, A)
    outer = difference(minkowski(ctx, K, A), A)
    if ctx.discrete:
        return GSet._raw(ctx, outer.pointset | _not_inside(ctx, K, A, A.pointset))
    return union(outer, difference(A, erode(ctx, A, K)))


def boundary(ctx: GroupCtx, K: GSet, A: GSet, kind: str) -> GSet:
    if kind == FOLNER:
        return folner_boundary(ctx, K, A)
    if kind == STRONG:
        return strong_folner_boundary(ctx, K, A)
    if kind == VANHOVE:
        return van_hove_boundary(ctx, K, A)
    raise ValueError(f"unknown boundary kind {kind!r}")


def comparison_inclusions(ctx: GroupCtx, K: GSet, A: GSet) -> dict:
    """The five inclusions relating the boundaries for a symmetric unit
    neighbourhood ``K``:

    1. ``∂_K A ⊆ ∂^K A``
    2. ``∂^K A ⊆ ∂_{K²} A``
    3. ``δ^K A ⊆ ∂_K A``
    4. ``∂_K A ⊆ K δ^K A``
    5. ``∂_K(KA) ⊆ δ^{K²} A``

    Returns ``{name: bool}``. For box unions inclusion is tested as
    ``m(X minus Y) == 0``.
    """
    K2 = minkowski(ctx, K, K)
    sf = strong_folner_boundary(ctx, K, A)
    vh = van_hove_boundary(ctx, K, A)
    fo = folner_boundary(ctx, K, A)
    pairs = {
        "strong_in_vanhove": (sf, vh),
        "vanhove_in_strong_K2": (vh, strong_folner_boundary(ctx, K2, A)),
        "folner_in_strong": (fo, sf),
        "strong_in_K_folner": (sf, minkowski(ctx, K, fo) if not fo.is_empty() else fo),
        "strong_of_KA_in_folner_K2": (
            strong_folner_boundary(ctx, K, minkowski(ctx, K, A)),
            folner_boundary(ctx, K2, A),
        ),
    }
    return {name: _included(ctx, x, y) for name, (x, y) in pairs.items()}


def _included(ctx, x: GSet, y: GSet) -> bool:
    if ctx.discrete:
        return x.pointset <= y.pointset
    from .set_algebra import measure

    return measure(ctx, difference(x, y)) == 0
