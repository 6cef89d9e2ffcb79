"""Exact arithmetic in the cyclotomic field Q(zeta_5).

Elements are stored in the basis ``1, z, z^2, z^3`` with
``z^4 = -1 - z - z^2 - z^3``.  Multiplication by a fixed element is a 4x4
rational matrix, which is how ranks over the field are reduced to ranks over
the rationals.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from typing import Sequence

DEGREE = 4


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Cyclo5:
    __slots__ = ("c",)

    def __init__(self, coords: Sequence = (0, 0, 0, 0)):
        if len(coords) != DEGREE:
            raise ValueError("Q(zeta_5) elements have four coordinates")
        self.c = tuple(_frac(v) for v in coords)

    @classmethod
    def rational(cls, q) -> "Cyclo5":
        return cls((q, 0, 0, 0))

    @classmethod
    def zeta_power(cls, k: int) -> "Cyclo5":
        k %= 5
        if k == 4:
            return cls((-1, -1, -1, -1))
        c = [0] * DEGREE
        c[k] = 1
        return cls(c)

    @staticmethod
    def lift(x) -> "Cyclo5":
        if isinstance(x, Cyclo5):
            return x
        return Cyclo5.rational(x)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        try:
            o = Cyclo5.lift(other)
        except (TypeError, ValueError):
            return NotImplemented
        return Cyclo5([a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclo5([-a for a in self.c])

    def __sub__(self, other):
        return self + (-Cyclo5.lift(other))

    def __rsub__(self, other):
        return Cyclo5.lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Cyclo5):
            try:
                q = _frac(other)
            except (TypeError, ValueError):
                return NotImplemented
            return Cyclo5([a * q for a in self.c])
        # multiply modulo z^5 - 1, then remove the multiple of 1 + z + ... + z^4
        five = [Fraction(0)] * 5
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    if b:
                        five[(i + j) % 5] += a * b
        return Cyclo5([five[i] - five[4] for i in range(DEGREE)])

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = Cyclo5.rational(1)
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        try:
            return self.c == Cyclo5.lift(other).c
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if not any(self.c[1:]):
            return hash(self.c[0])
        return hash(self.c)

    def __bool__(self):
        return any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    # -- representations ----------------------------------------------------

    def mult_matrix(self) -> list[list[Fraction]]:
        """``M`` with ``coords(self * y) = M @ coords(y)``."""
        cols = [(self * Cyclo5.zeta_power(j)).c for j in range(DEGREE)]
        return [[cols[j][i] for j in range(DEGREE)] for i in range(DEGREE)]

    def conjugate(self) -> "Cyclo5":
        """Complex conjugation ``z -> z^4``."""
        out = Cyclo5()
        for k, a in enumerate(self.c):
            if a:
                out = out + Cyclo5.zeta_power(-k) * a
        return out

    def abs2(self) -> "Real5":
        """``|x|^2`` as an exact element of the real subfield ``Q(sqrt 5)``."""
        r = self * self.conjugate()
        # r = u + v*(z + z^4) has coordinates (u - v, 0, -v, -v)
        v = -r.c[2]
        u = r.c[0] + v
        # z + z^4 = (sqrt5 - 1) / 2
        return Real5(u - v / 2, v / 2)

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / 5)
        return sum(float(a) * z ** k for k, a in enumerate(self.c))

    def __repr__(self):
        return f"Cyclo5({[str(a) for a in self.c]})"

    def __str__(self):
        if self.is_rational():
            return str(self.c[0])
        return "[" + ", ".join(str(a) for a in self.c) + "]"


class Real5:
    """``p + q*sqrt(5)`` with rational p, q; exact ordering."""

    __slots__ = ("p", "q")

    def __init__(self, p, q):
        self.p = _frac(p)
        self.q = _frac(q)

    def sign(self) -> int:
        p, q = self.p, self.q
        sp = (p > 0) - (p < 0)
        sq = (q > 0) - (q < 0)
        if sp == sq or sq == 0:
            return sp
        if sp == 0:
            return sq
        # opposite signs: compare p^2 with 5 q^2
        diff = p * p - 5 * q * q
        return sp if diff > 0 else (sq if diff < 0 else 0)

    def __sub__(self, other: "Real5") -> "Real5":
        return Real5(self.p - other.p, self.q - other.q)

    def __lt__(self, other: "Real5") -> bool:
        return (self - other).sign() < 0

    def __eq__(self, other) -> bool:
        return isinstance(other, Real5) and (self - other).sign() == 0

    def __float__(self):
        return float(self.p) + float(self.q) * 5 ** 0.5

    def __repr__(self):
        return f"Real5({self.p}, {self.q})"


def realify(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Replace every entry by its 4x4 multiplication block.

    The rank over Q of the result is four times the rank over Q(zeta_5).
    """
    out: list[list[Fraction]] = []
    for row in rows:
        blocks = [Cyclo5.lift(x).mult_matrix() for x in row]
        for i in range(DEGREE):
            out.append([v for blk in blocks for v in blk[i]])
    return out


def coordinate_rows(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Split each row of field elements into four rational rows (one per basis
    coordinate); rational vectors in their joint kernel are exactly the
    rational vectors in the kernel over the field."""
    out = []
    for row in rows:
        lifted = [Cyclo5.lift(x).c for x in row]
        for i in range(DEGREE):
            out.append([c[i] for c in lifted])
    return out
