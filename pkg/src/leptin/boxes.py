"""Canonical unions of half-open axis-aligned boxes.

A union in dimension ``d`` is stored as a slab tuple
``((lo, hi, sub), ...)``: slabs along the first axis, sorted, pairwise
disjoint, each carrying the canonical ``d-1`` dimensional cross-section
``sub``. At dimension 0 the cross-section is simply ``True``. Touching slabs
with equal cross-sections are merged, which makes the representation unique
for a given point set, so equality of sets is equality of tuples.

Coordinates may be any exactly ordered, hashable number type supporting
``+``/``-`` (``Fraction``, ``int`` or the ``QPhi`` numbers of the Fibonacci
scheme).
"""

from __future__ import annotations

import operator
from typing import Iterable, Sequence

EMPTY = ()


def empty(d: int):
    return EMPTY if d >= 1 else False


def is_empty(s) -> bool:
    return s is False or s == EMPTY


def from_box(box: Sequence) -> tuple:
    """Box given as ``((lo1, hi1), (lo2, hi2), ...)``."""
    for lo, hi in box:
        if not lo < hi:
            return EMPTY
    s = True
    for lo, hi in reversed(box):
        s = ((lo, hi, s),)
    return s


def _combine(x, y, d: int, op):
    if d == 0:
        return op(bool(x), bool(y))
    if not x and not y:
        return EMPTY
    pts = sorted({p for lo, hi, _ in x for p in (lo, hi)} | {p for lo, hi, _ in y for p in (lo, hi)})
    out = []
    i = j = 0
    blank = empty(d - 1)
    for p, q in zip(pts, pts[1:]):
        while i < len(x) and x[i][1] <= p:
            i += 1
        while j < len(y) and y[j][1] <= p:
            j += 1
        sx = x[i][2] if i < len(x) and x[i][0] <= p else blank
        sy = y[j][2] if j < len(y) and y[j][0] <= p else blank
        if is_empty(sx) and is_empty(sy):
            continue
        sub = _combine(sx, sy, d - 1, op)
        if is_empty(sub):
            continue
        if out and out[-1][1] == p and out[-1][2] == sub:
            out[-1] = (out[-1][0], q, sub)
        else:
            out.append((p, q, sub))
    return tuple(out)


def union(x, y, d: int):
    return _combine(x, y, d, operator.or_)


def intersection(x, y, d: int):
    return _combine(x, y, d, operator.and_)


def difference(x, y, d: int):
    return _combine(x, y, d, lambda a, b: a and not b)


def symmetric_difference(x, y, d: int):
    return _combine(x, y, d, operator.xor)


def union_many(boxes: Iterable[Sequence], d: int):
    boxes = [b for b in boxes if all(lo < hi for lo, hi in b)]
    if d == 1:
        ivs = sorted((b[0][0], b[0][1]) for b in boxes)
        out = []
        for lo, hi in ivs:
            if out and lo <= out[-1][1]:
                if hi > out[-1][1]:
                    out[-1] = (out[-1][0], hi, True)
            else:
                out.append((lo, hi, True))
        return tuple(out)
    parts = [from_box(b) for b in boxes]
    if not parts:
        return EMPTY
    while len(parts) > 1:
        nxt = [union(parts[k], parts[k + 1], d) for k in range(0, len(parts) - 1, 2)]
        if len(parts) % 2:
            nxt.append(parts[-1])
        parts = nxt
    return parts[0]


def to_boxes(s, d: int) -> list:
    if d == 0:
        return [()] if s else []
    out = []
    for lo, hi, sub in s:
        for rest in to_boxes(sub, d - 1):
            out.append(((lo, hi),) + rest)
    return out


def measure(s, d: int):
    if d == 0:
        return 1 if s else 0
    total = 0
    for lo, hi, sub in s:
        width = hi - lo
        total = total + (width * measure(sub, d - 1) if d > 1 else width)
    return total


def bbox(s, d: int):
    """Smallest box containing the union, or ``None`` if empty."""
    if is_empty(s):
        return None
    if d == 1:
        return ((s[0][0], s[-1][1]),)
    subs = [bbox(sub, d - 1) for _, _, sub in s]
    rest = tuple(
        (min(b[k][0] for b in subs), max(b[k][1] for b in subs)) for k in range(d - 1)
    )
    return ((s[0][0], s[-1][1]),) + rest


def translate(s, t: Sequence, d: int):
    if d == 0:
        return s
    off = t[0]
    return tuple((lo + off, hi + off, translate(sub, t[1:], d - 1)) for lo, hi, sub in s)


def reflect(s, d: int):
    """``-S`` up to the measure-zero swap of closed and open faces."""
    return union_many(
        (tuple((-hi, -lo) for lo, hi in b) for b in to_boxes(s, d)), d
    )


def minkowski_sum(x, y, d: int):
    bx = to_boxes(x, d)
    by = to_boxes(y, d)
    return union_many(
        (tuple((p[0] + q[0], p[1] + q[1]) for p, q in zip(a, b)) for a in bx for b in by), d
    )


def erode(a, k, d: int):
    """``{g : g + K ⊆ A}`` up to measure zero.

    For each box ``k`` of ``K`` the bad shifts are ``(bbox(A) minus A) - k``;
    shifts keeping ``g + k`` inside ``bbox(A)`` form a box, so no unbounded
    complement is needed.
    """
    bb = bbox(a, d)
    if bb is None:
        return EMPTY
    holes = difference(from_box(bb), a, d)
    result = None
    for kb in to_boxes(k, d):
        cand = from_box(tuple((lo - klo, hi - khi) for (lo, hi), (klo, khi) in zip(bb, kb)))
        if not is_empty(holes) and not is_empty(cand):
            bad = minkowski_sum(holes, from_box(tuple((-khi, -klo) for klo, khi in kb)), d)
            cand = difference(cand, bad, d)
        result = cand if result is None else intersection(result, cand, d)
        if is_empty(result):
            return EMPTY
    return EMPTY if result is None else result


def contains_point(s, p: Sequence) -> bool:
    if s is True:
        return True
    x = p[0]
    for lo, hi, sub in s:
        if lo <= x < hi:
            return contains_point(sub, p[1:])
        if x < lo:
            return False
    return False
