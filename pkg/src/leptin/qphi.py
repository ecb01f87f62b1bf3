"""Exact arithmetic in Q(phi), phi = (1 + sqrt 5) / 2.

``QPhi(a, b)`` is ``a + b*phi`` with rational ``a, b``. Order is decided
exactly: ``a + b*phi = ((2a + b) + b*sqrt5) / 2``, and the sign of
``u + v*sqrt5`` follows from the signs of ``u, v`` and a comparison of
``u^2`` with ``5 v^2``. Floats appear only as display values.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import total_ordering
from typing import Tuple, Union

PHI_FLOAT = (1 + math.sqrt(5)) / 2

Number = Union[int, Fraction, "QPhi"]


def sign_u_v_sqrt5(u, v) -> int:
    """Sign of ``u + v*sqrt(5)`` for rationals (or ints) ``u, v``."""
    if u >= 0 and v >= 0:
        return 0 if (u == 0 and v == 0) else 1
    if u <= 0 and v <= 0:
        return -1
    d = u * u - 5 * v * v
    if u > 0:
        return 1 if d > 0 else -1
    return 1 if d < 0 else -1


@total_ordering
class QPhi:
    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @classmethod
    def lift(cls, x: Number) -> "QPhi":
        return x if isinstance(x, QPhi) else cls(x, 0)

    # arithmetic --------------------------------------------------------

    def __add__(self, o):
        if isinstance(o, QPhi):
            return QPhi(self.a + o.a, self.b + o.b)
        if isinstance(o, (int, Fraction)):
            return QPhi(self.a + o, self.b)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return QPhi(-self.a, -self.b)

    def __sub__(self, o):
        if isinstance(o, QPhi):
            return QPhi(self.a - o.a, self.b - o.b)
        if isinstance(o, (int, Fraction)):
            return QPhi(self.a - o, self.b)
        return NotImplemented

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return QPhi(self.a * o, self.b * o)
        if isinstance(o, QPhi):
            a, b, c, d = self.a, self.b, o.a, o.b
            return QPhi(a * c + b * d, a * d + b * c + b * d)
        return NotImplemented

    __rmul__ = __mul__

    def conjugate(self) -> "QPhi":
        """Galois conjugate: phi -> 1 - phi."""
        return QPhi(self.a + self.b, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a + self.a * self.b - self.b * self.b

    def inverse(self) -> "QPhi":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(phi)")
        c = self.conjugate()
        return QPhi(c.a / n, c.b / n)

    def __truediv__(self, o):
        if isinstance(o, (int, Fraction)):
            return QPhi(self.a / o, self.b / o)
        if isinstance(o, QPhi):
            return self * o.inverse()
        return NotImplemented

    def __rtruediv__(self, o):
        return QPhi.lift(o) * self.inverse()

    # order -------------------------------------------------------------

    def sign(self) -> int:
        return sign_u_v_sqrt5(2 * self.a + self.b, self.b)

    def _cmp(self, o) -> int:
        if isinstance(o, (int, Fraction)):
            o = QPhi(o)
        elif not isinstance(o, QPhi):
            return NotImplemented
        return (self - o).sign()

    def __eq__(self, o):
        if isinstance(o, QPhi):
            return self.a == o.a and self.b == o.b
        if isinstance(o, (int, Fraction)):
            return self.b == 0 and self.a == o
        return NotImplemented

    def __lt__(self, o):
        c = self._cmp(o)
        return c if c is NotImplemented else c < 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return bool(self.a or self.b)

    # conversions -------------------------------------------------------

    def __float__(self):
        return float(self.a) + float(self.b) * PHI_FLOAT

    def floor(self) -> int:
        guess = math.floor(float(self))
        while QPhi(guess) > self:
            guess -= 1
        while QPhi(guess + 1) <= self:
            guess += 1
        return guess

    def ceil(self) -> int:
        return -((-self).floor())

    def enclosure(self, tol=Fraction(1, 10**9)) -> Tuple[Fraction, Fraction]:
        """Rational ``lo <= self <= hi`` with ``hi - lo <= tol``."""
        if self.b == 0:
            return self.a, self.a
        half_b = self.b / 2
        base = self.a + half_b
        scale = 1
        while True:
            r = math.isqrt(5 * scale * scale)
            lo5, hi5 = Fraction(r, scale), Fraction(r + 1, scale)
            if r * r == 5 * scale * scale:
                hi5 = lo5
            p, q = base + half_b * lo5, base + half_b * hi5
            lo, hi = min(p, q), max(p, q)
            if hi - lo <= tol:
                return lo, hi
            scale *= 10

    def __repr__(self):
        return f"QPhi({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*phi"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}*phi"


PHI = QPhi(0, 1)
SQRT5 = QPhi(-1, 2)


def parse_number(text: str):
    """Parse ``'3/4'``, ``'0.618'``, ``'-1'``, ``'phi'``, ``'a+b*phi'``.

    Decimal literals convert exactly to rationals. Returns ``Fraction``
    when the phi part vanishes, else ``QPhi``.
    """
    s = text.strip().replace(" ", "").lower()
    if not s:
        raise ValueError("empty number")
    terms = re.findall(r"[+-]?[^+-]+", s.replace("e-", "E_").replace("e+", "E^"))
    a = Fraction(0)
    b = Fraction(0)
    for t in terms:
        t = t.replace("E_", "e-").replace("E^", "e+")
        if t.endswith("phi"):
            coef = t[: -len("phi")].rstrip("*")
            if coef in ("", "+"):
                b += 1
            elif coef == "-":
                b -= 1
            else:
                b += Fraction(coef)
        else:
            a += Fraction(t)
    return a if b == 0 else QPhi(a, b)


def to_qphi(x) -> QPhi:
    if isinstance(x, str):
        x = parse_number(x)
    return QPhi.lift(x if isinstance(x, QPhi) else Fraction(x))
