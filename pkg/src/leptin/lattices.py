"""Uniform lattices, canonical fundamental domains, covolume, lattice point
densities and the fundamental domain extracted from a covering set."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple

from .errors import NotCovering, SingularBasis
from .group_core import GElem, GroupCtx, heisenberg, int_lattice, inverse, multiply
from .set_algebra import GSet, measure


def _det(rows: Sequence[Sequence]) -> Fraction:
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


def _inverse(rows: Sequence[Sequence]) -> List[List[Fraction]]:
    n = len(rows)
    m = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        piv = next(r for r in range(c, n) if m[r][c] != 0)
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        m[c] = [x / p for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return [row[n:] for row in m]


class Lattice:
    """Base class for the built-in uniform lattices."""

    ctx: GroupCtx
    label: str

    def covolume(self) -> Fraction:
        raise NotImplementedError

    def contains(self, g: GElem) -> bool:
        raise NotImplementedError

    def reduce_left(self, g: GElem) -> Tuple[GElem, GElem]:
        """Write ``g = gamma * f`` with ``f`` in the canonical domain."""
        raise NotImplementedError

    def reduce_right(self, g: GElem) -> Tuple[GElem, GElem]:
        """Write ``g = f * gamma`` with ``f`` in the canonical domain."""
        raise NotImplementedError

    def fundamental_domain(self) -> GSet:
        raise NotImplementedError

    def coords(self, gamma: GElem) -> tuple:
        """Integer coordinates of a lattice element."""
        raise NotImplementedError

    def from_coords(self, c: Sequence[int]) -> GElem:
        raise NotImplementedError

    def patch(self, radius: int) -> List[GElem]:
        rng = range(-radius, radius + 1)
        return [self.from_coords(c) for c in itertools.product(rng, repeat=self.ctx.dim)]

    def points_in(self, A: GSet) -> GSet:
        return GSet._raw(self.ctx, (p for p in A.pointset if self.contains(p)))

    def describe(self) -> dict:
        return {"lattice": self.label, "covolume": str(self.covolume())}


class IntSublattice(Lattice):
    """Full-rank sublattice of ``Z^d`` spanned by the rows of ``basis``."""

    def __init__(self, basis: Sequence[Sequence[int]]):
        rows = [tuple(int(x) for x in r) for r in basis]
        d = len(rows)
        if d == 0 or any(len(r) != d for r in rows):
            raise ValueError("basis must be a square integer matrix")
        det = _det(rows)
        if det == 0:
            raise SingularBasis(f"basis {rows} is singular")
        self.basis = rows
        self.ctx = int_lattice(d)
        self._det = abs(det)
        self._inv = _inverse(rows)
        self._fd = None
        self.label = "Z^%d<%s>" % (d, ";".join(" ".join(map(str, r)) for r in rows))

    @classmethod
    def diagonal(cls, *diag: int) -> "IntSublattice":
        d = len(diag)
        return cls([[diag[i] if i == j else 0 for j in range(d)] for i in range(d)])

    def covolume(self) -> Fraction:
        return Fraction(self._det)

    def _lattice_coords(self, g) -> List[Fraction]:
        d = self.ctx.dim
        return [sum(Fraction(g[i]) * self._inv[i][j] for i in range(d)) for j in range(d)]

    def contains(self, g) -> bool:
        return all(c.denominator == 1 for c in self._lattice_coords(g))

    def coords(self, gamma):
        return tuple(int(c) for c in self._lattice_coords(gamma))

    def from_coords(self, c):
        d = self.ctx.dim
        return tuple(sum(c[i] * self.basis[i][j] for i in range(d)) for j in range(d))

    def reduce_left(self, g):
        c = self._lattice_coords(g)
        gamma = self.from_coords([math.floor(x) for x in c])
        f = tuple(a - b for a, b in zip(g, gamma))
        return gamma, f

    def reduce_right(self, g):
        gamma, f = self.reduce_left(g)
        return f, gamma

    def fundamental_domain(self) -> GSet:
        """Integer points of the half-open parallelepiped spanned by the basis."""
        if self._fd is None:
            d = self.ctx.dim
            lo = [sum(min(0, r[j]) for r in self.basis) for j in range(d)]
            hi = [sum(max(0, r[j]) for r in self.basis) for j in range(d)]
            pts = [
                p
                for p in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))
                if all(0 <= x < 1 for x in self._lattice_coords(p))
            ]
            self._fd = GSet._raw(self.ctx, pts)
        return self._fd


class HeisenbergGamma(Lattice):
    """``{(k, l, m) : k, l in nZ, m in n^2 Z}`` inside H3(Z), with canonical
    domain the box ``[0,n)^2 x [0,n^2)``."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self.ctx = heisenberg()
        self.label = f"Gamma_{n}"
        self._fd = None

    def covolume(self) -> Fraction:
        return Fraction(self.n ** 4)

    def contains(self, g) -> bool:
        n = self.n
        return g[0] % n == 0 and g[1] % n == 0 and g[2] % (n * n) == 0

    def coords(self, gamma):
        n = self.n
        return (gamma[0] // n, gamma[1] // n, gamma[2] // (n * n))

    def from_coords(self, c):
        n = self.n
        return (c[0] * n, c[1] * n, c[2] * n * n)

    def reduce_left(self, g):
        n, nn = self.n, self.n * self.n
        x, y, z = g
        a, b = x % n, y % n
        k, l = x - a, y - b
        c = (z - k * b) % nn
        return (k, l, z - k * b - c), (a, b, c)

    def reduce_right(self, g):
        n, nn = self.n, self.n * self.n
        x, y, z = g
        a, b = x % n, y % n
        k, l = x - a, y - b
        c = (z - a * l) % nn
        return (a, b, c), (k, l, z - a * l - c)

    def fundamental_domain(self) -> GSet:
        if self._fd is None:
            n = self.n
            self._fd = GSet.box(self.ctx, (0, 0, 0), (n, n, n * n))
        return self._fd


def integers(d: int = 1) -> IntSublattice:
    return IntSublattice.diagonal(*([1] * d))


def covolume(lat: Lattice) -> Fraction:
    return lat.covolume()


def lattice_density(lat: Lattice, seq, n: int) -> Fraction:
    """``card(Gamma ∩ A_n) / m(A_n)``."""
    A = seq(n)
    return Fraction(len(lat.points_in(A).pointset)) / measure(lat.ctx, A)


@dataclass
class FundamentalDomain:
    cells: GSet
    lattice: Lattice
    translates: List[GElem] = field(default_factory=list)

    def measure(self) -> Fraction:
        return measure(self.lattice.ctx, self.cells)


def covers(lat: Lattice, U: GSet) -> bool:
    """``Gamma U = G``; exact, since it holds iff every element of the
    canonical domain is hit by the reduction of some ``u``."""
    hit = {lat.reduce_left(u)[1] for u in U.pointset}
    return hit >= lat.fundamental_domain().pointset


def siegel_fundamental_domain(lat: Lattice, U: GSet) -> FundamentalDomain:
    """Carve a left fundamental domain ``F_U ⊆ U`` out of a covering set.

    With ``F`` the canonical domain and ``gamma_1 < ... < gamma_n`` the
    (lexicographically ordered) lattice elements with ``U ∩ gamma F ≠ ∅``:
    ``F_k = F ∩ gamma_k^{-1} U`` and ``F'_k = gamma_k F_k`` minus
    ``Gamma F_j`` for ``j < k``; the output is the disjoint union of the
    ``F'_k``.
    """
    ctx = lat.ctx
    if not covers(lat, U):
        raise NotCovering("Gamma U does not cover the group")
    F = lat.fundamental_domain().pointset
    gammas = sorted({lat.reduce_left(u)[0] for u in U.pointset})
    upts = U.pointset
    taken = set()  # canonical representatives f of the classes Gamma F_j already used
    cells = set()
    for g in gammas:
        pieces = [f for f in F if multiply(ctx, g, f) in upts]
        for f in pieces:
            if f not in taken:
                cells.add(multiply(ctx, g, f))
        taken.update(pieces)
    return FundamentalDomain(GSet._raw(ctx, cells), lat, gammas)


def tiling_defects(fd: FundamentalDomain, radius: int = 2) -> List[str]:
    """Check the translates ``gamma F_U`` over a lattice patch.

    Returns a list of defects; empty means the translates are pairwise
    disjoint on the patch and every point of the patch region lies in
    exactly one translate.
    """
    lat = fd.lattice
    ctx = lat.ctx
    cells = fd.cells.pointset
    problems = []
    seen = set()
    total = 0
    for g in lat.patch(radius):
        tile = {multiply(ctx, g, u) for u in cells}
        total += len(tile)
        seen |= tile
    if total != len(seen):
        problems.append(f"overlapping translates: {total - len(seen)} repeated points")
    canon = lat.fundamental_domain().pointset
    inv_cells = [inverse(ctx, u) for u in cells]
    for g0 in lat.patch(max(radius - 1, 0)):
        for f in canon:
            z = multiply(ctx, g0, f)
            hits = sum(1 for ui in inv_cells if lat.contains(multiply(ctx, z, ui)))
            if hits != 1:
                problems.append(f"point {z} covered {hits} times")
    return problems


def fd_equation_count(fd: FundamentalDomain, gamma: GElem) -> int:
    """``card(Gamma ∩ F^{-1} gamma)`` for the domain ``F``."""
    ctx = fd.lattice.ctx
    return sum(1 for f in fd.cells.pointset if fd.lattice.contains(multiply(ctx, inverse(ctx, f), gamma)))


def canonical_domain(lat: Lattice) -> FundamentalDomain:
    return FundamentalDomain(lat.fundamental_domain(), lat, [lat.ctx.identity()])
