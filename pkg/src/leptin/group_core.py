"""Ambient groups: integer lattices Z^d, the discrete Heisenberg group H3(Z)
and R^d with exact rational coordinates.

Elements are plain tuples. Integer kinds use ``int`` coordinates, the real
kind uses ``fractions.Fraction``; nothing in this module touches floats.

Haar measure is fixed per kind: counting measure for the discrete kinds and
Lebesgue volume for ``R^d``. All three groups are unimodular and amenable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from .errors import InvalidElement

Coord = Union[int, Fraction]
GElem = Tuple[Coord, ...]

INT_LATTICE = "Z"
HEISENBERG = "H3"
REAL_BOXES = "R"

_KINDS = (INT_LATTICE, HEISENBERG, REAL_BOXES)


@dataclass(frozen=True)
class GroupCtx:
    """Descriptor of one of the supported ambient groups."""

    kind: str
    dim: int

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.dim < 1:
            raise ValueError("dimension must be at least 1")
        if self.kind == HEISENBERG and self.dim != 3:
            raise ValueError("the Heisenberg group has dimension 3")

    @property
    def discrete(self) -> bool:
        return self.kind != REAL_BOXES

    @property
    def abelian(self) -> bool:
        return self.kind != HEISENBERG

    @property
    def haar_norm(self) -> str:
        return "counting" if self.discrete else "lebesgue"

    @property
    def name(self) -> str:
        if self.kind == HEISENBERG:
            return "H3Z"
        return f"{self.kind}{self.dim}"

    def identity(self) -> GElem:
        zero = 0 if self.discrete else Fraction(0)
        return (zero,) * self.dim

    def describe(self) -> dict:
        return {"group": self.name, "haar": self.haar_norm}


def int_lattice(d: int = 1) -> GroupCtx:
    return GroupCtx(INT_LATTICE, d)


def heisenberg() -> GroupCtx:
    return GroupCtx(HEISENBERG, 3)


def real_boxes(d: int = 1) -> GroupCtx:
    return GroupCtx(REAL_BOXES, d)


def parse_group(name: str) -> GroupCtx:
    """Parse names such as ``Z2``, ``R1``, ``H3`` or ``H3Z``."""
    key = name.strip().upper()
    if key in ("H3", "H3Z", "HEISENBERG"):
        return heisenberg()
    if key[:1] in ("Z", "R") and key[1:].isdigit():
        return GroupCtx(INT_LATTICE if key[0] == "Z" else REAL_BOXES, int(key[1:]))
    raise ValueError(f"unknown group {name!r}")


def element(ctx: GroupCtx, coords) -> GElem:
    """Coerce ``coords`` (scalar or sequence) into an element of ``ctx``."""
    if isinstance(coords, (int, Fraction)):
        coords = (coords,)
    coords = tuple(coords)
    check(ctx, coords)
    if ctx.discrete:
        return tuple(int(c) for c in coords)
    return tuple(Fraction(c) for c in coords)


def check(ctx: GroupCtx, g) -> None:
    if len(g) != ctx.dim:
        raise InvalidElement(f"expected {ctx.dim} coordinates for {ctx.name}, got {len(g)}")
    if ctx.discrete:
        for c in g:
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise InvalidElement(f"non-integer coordinate {c} in {ctx.name}")
            elif not isinstance(c, int):
                raise InvalidElement(f"bad coordinate {c!r} in {ctx.name}")


def multiply(ctx: GroupCtx, g: GElem, h: GElem) -> GElem:
    """Group product ``g*h``.

    Componentwise addition except in H3(Z) where
    ``(a,b,c)*(x,y,z) = (a+x, b+y, c+z+a*y)``.
    """
    if len(g) != ctx.dim or len(h) != ctx.dim:
        raise InvalidElement("arity mismatch")
    if ctx.kind == HEISENBERG:
        a, b, c = g
        x, y, z = h
        return (a + x, b + y, c + z + a * y)
    return tuple(u + v for u, v in zip(g, h))


def inverse(ctx: GroupCtx, g: GElem) -> GElem:
    if len(g) != ctx.dim:
        raise InvalidElement("arity mismatch")
    if ctx.kind == HEISENBERG:
        a, b, c = g
        return (-a, -b, a * b - c)
    return tuple(-u for u in g)


def power(ctx: GroupCtx, g: GElem, k: int) -> GElem:
    out = ctx.identity()
    base = g if k >= 0 else inverse(ctx, g)
    for _ in range(abs(k)):
        out = multiply(ctx, out, base)
    return out
