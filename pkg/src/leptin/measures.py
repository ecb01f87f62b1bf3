"""Locally finite positive measures evaluated exactly on GSets."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Optional

from .group_core import GElem, GroupCtx, element, inverse, multiply
from .set_algebra import GSet, intersection, measure


class PMeasure:
    """Base class. Subclasses implement :meth:`eval` and, when discrete,
    :meth:`weight_at`.

    ``period`` is a lattice under whose right translations the measure is
    invariant (``nu(A*gamma) = nu(A)``), or ``None``.
    """

    ctx: GroupCtx
    period = None
    label = "measure"

    def eval(self, A: GSet) -> Fraction:
        raise NotImplementedError

    def weight_at(self, g: GElem) -> Fraction:
        raise NotImplementedError

    def translated(self, t: GElem, side: str = "left") -> "PMeasure":
        return Translated(self, t, side)

    def describe(self) -> dict:
        return {"measure": self.label}


class DiracComb(PMeasure):
    """Finite weighted comb ``sum_p w_p delta_p``."""

    def __init__(self, ctx: GroupCtx, weights: Dict | Iterable, label: str = "dirac"):
        self.ctx = ctx
        if not isinstance(weights, dict):
            weights = {p: 1 for p in weights}
        norm = {}
        for p, w in weights.items():
            w = Fraction(w)
            if w <= 0:
                raise ValueError("comb weights must be strictly positive")
            norm[element(ctx, p)] = w
        self.weights = norm
        self.label = label

    @property
    def support(self) -> GSet:
        return GSet._raw(self.ctx, self.weights)

    def weight_at(self, g):
        return self.weights.get(tuple(g), Fraction(0))

    def eval(self, A: GSet) -> Fraction:
        pts = A.pointset
        w = self.weights
        if len(pts) < len(w):
            return sum((w[p] for p in pts if p in w), Fraction(0))
        return sum((v for p, v in w.items() if p in pts), Fraction(0))

    def translated(self, t, side="left"):
        t = element(self.ctx, t)
        if side == "left":
            moved = {multiply(self.ctx, t, p): w for p, w in self.weights.items()}
        else:
            moved = {multiply(self.ctx, p, t): w for p, w in self.weights.items()}
        return DiracComb(self.ctx, moved, self.label)


class PeriodicComb(PMeasure):
    """Comb on ``R*Gamma`` for a finite residue set ``R`` inside the lattice's
    canonical fundamental domain; right-``Gamma``-invariant by construction."""

    def __init__(self, lattice, residues: Dict | Iterable | None = None, label: str = ""):
        self.lattice = lattice
        self.ctx = lattice.ctx
        if residues is None:
            residues = [self.ctx.identity()]
        if not isinstance(residues, dict):
            residues = {r: 1 for r in residues}
        norm: Dict[GElem, Fraction] = {}
        for r, w in residues.items():
            w = Fraction(w)
            if w <= 0:
                raise ValueError("comb weights must be strictly positive")
            f, _ = lattice.reduce_right(element(self.ctx, r))
            norm[f] = norm.get(f, Fraction(0)) + w
        self.residues = norm
        self.period = lattice
        self.label = label or f"periodic[{lattice.label}]"

    def weight_at(self, g):
        f, _ = self.lattice.reduce_right(tuple(g))
        return self.residues.get(f, Fraction(0))

    def eval(self, A: GSet) -> Fraction:
        res = self.residues
        red = self.lattice.reduce_right
        total = Fraction(0)
        for p in A.pointset:
            w = res.get(red(p)[0])
            if w is not None:
                total += w
        return total

    def mass_per_period(self) -> Fraction:
        return sum(self.residues.values(), Fraction(0))

    def translated(self, t, side="left"):
        t = element(self.ctx, t)
        if side == "left" or self.ctx.abelian:
            # t*(R*Gamma) = (t*R)*Gamma, and in abelian groups R*Gamma*t = (R*t)*Gamma
            moved = {multiply(self.ctx, t, r): w for r, w in self.residues.items()}
            return PeriodicComb(self.lattice, moved, self.label)
        return Translated(self, t, side)


class HaarMeasure(PMeasure):
    """Haar measure, optionally restricted to a support set."""

    def __init__(self, ctx: GroupCtx, support: Optional[GSet] = None):
        self.ctx = ctx
        self.support = support
        self.label = "haar" if support is None else "haar_on"

    def weight_at(self, g):
        if not self.ctx.discrete:
            raise TypeError("Lebesgue measure has no point masses")
        if self.support is None or tuple(g) in self.support.pointset:
            return Fraction(1)
        return Fraction(0)

    def eval(self, A: GSet) -> Fraction:
        if self.support is None:
            return measure(self.ctx, A)
        return measure(self.ctx, intersection(A, self.support))

    @property
    def invariant(self) -> bool:
        return self.support is None

    def translated(self, t, side="left"):
        if self.support is None:
            return self
        from .set_algebra import translate

        return HaarMeasure(self.ctx, translate(self.ctx, self.support, element(self.ctx, t), side))


class Translated(PMeasure):
    """``(delta_t * nu)(A) = nu(t^{-1} A)`` or ``(nu * delta_t)(A) = nu(A t^{-1})``."""

    def __init__(self, base: PMeasure, t: GElem, side: str):
        self.base = base
        self.ctx = base.ctx
        self.t = element(self.ctx, t)
        self.side = side
        self.label = f"{base.label}*shift"

    def _pull(self, g):
        tinv = inverse(self.ctx, self.t)
        return multiply(self.ctx, tinv, g) if self.side == "left" else multiply(self.ctx, g, tinv)

    def weight_at(self, g):
        return self.base.weight_at(self._pull(g))

    def eval(self, A: GSet) -> Fraction:
        from .set_algebra import translate

        tinv = inverse(self.ctx, self.t)
        return self.base.eval(translate(self.ctx, A, tinv, "left" if self.side == "left" else "right"))


def zero_measure(ctx: GroupCtx) -> DiracComb:
    return DiracComb(ctx, {}, label="zero")


def evaluate(ctx: GroupCtx, nu: PMeasure, A: GSet) -> Fraction:
    """``nu(A)`` as an exact rational."""
    return nu.eval(A)
