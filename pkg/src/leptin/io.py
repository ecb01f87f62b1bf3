"""Text formats for point sets, box unions and Fibonacci patches.

Point sets::

    # group=Z d=2
    0 1
    3/2 4        (rationals as p/q, only in R^d)

Box unions use the same header plus ``format=boxes`` and one box per line,
``lo1 hi1 lo2 hi2 ...``. Fibonacci patches carry ``scheme=fib format=zphi``
and one ``m n`` pair per line, standing for the point ``m + n*phi``.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Union

from .cutproject import ModelPatch
from .group_core import GroupCtx, heisenberg, int_lattice, real_boxes
from .set_algebra import GSet

PathLike = Union[str, Path]


def _fmt(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _header(ctx: GroupCtx, **extra) -> str:
    tail = "".join(f" {k}={v}" for k, v in extra.items())
    return f"# group={ctx.kind} d={ctx.dim}{tail}\n"


def dumps(obj, ctx: GroupCtx = None) -> str:
    if isinstance(obj, ModelPatch):
        out = [_header(real_boxes(1), scheme="fib", format="zphi")]
        out.extend(f"{m} {n}\n" for m, n in obj.pairs)
        return "".join(out)
    ctx = obj.ctx
    if ctx.discrete:
        out = [_header(ctx)]
        out.extend(" ".join(_fmt(c) for c in p) + "\n" for p in obj.elements())
        return "".join(out)
    out = [_header(ctx, format="boxes")]
    for box in obj.box_list():
        out.append(" ".join(f"{_fmt(lo)} {_fmt(hi)}" for lo, hi in box) + "\n")
    return "".join(out)


def _parse_header(line: str) -> dict:
    fields = {}
    for tok in line.lstrip("#").split():
        if "=" in tok:
            k, v = tok.split("=", 1)
            fields[k] = v
    if "group" not in fields or "d" not in fields:
        raise ValueError("missing '# group=<kind> d=<dim>' header")
    return fields


def _ctx(kind: str, d: int) -> GroupCtx:
    if kind == "H3":
        return heisenberg()
    if kind == "Z":
        return int_lattice(d)
    if kind == "R":
        return real_boxes(d)
    raise ValueError(f"unknown group kind {kind!r}")


def loads(text: str):
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("#"):
        raise ValueError("missing header line")
    head = _parse_header(lines[0])
    body = [ln.split() for ln in lines[1:] if not ln.startswith("#")]
    if head.get("format") == "zphi":
        return ModelPatch.of((int(a), int(b)) for a, b in body)
    ctx = _ctx(head["group"], int(head["d"]))
    if head.get("format") == "boxes":
        boxes = []
        for row in body:
            vals = [Fraction(v) for v in row]
            if len(vals) != 2 * ctx.dim:
                raise ValueError(f"box line needs {2 * ctx.dim} numbers: {' '.join(row)}")
            boxes.append(tuple(zip(vals[0::2], vals[1::2])))
        return GSet.boxes(ctx, boxes)
    return GSet.points(ctx, [tuple(Fraction(v) for v in row) for row in body])


def write(path: PathLike, obj) -> None:
    Path(path).write_text(dumps(obj))


def read(path: PathLike):
    return loads(Path(path).read_text())
