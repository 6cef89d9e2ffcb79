"""Macaulay expansions and the bound operators built on them.

For an integer ``C >= 0`` and a base ``d >= 1`` the Macaulay ``d``-expansion
writes ``C = sum_{i=1}^{d} binom(i + eps_i, i)`` with
``eps_d >= eps_{d-1} >= ... >= eps_1 >= -1``.  The growth operator ``C^<d>``
bounds the next value of a Hilbert function, the shadow ``C_{*d}`` bounds the
previous one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Optional, Sequence


def binom(a: int, b: int) -> int:
    """Binomial coefficient that vanishes for ``a < b`` or negative arguments."""
    if b < 0 or a < 0 or a < b:
        return 0
    return comb(a, b)


class HVector(tuple):
    """Hilbert-function values ``h_0, h_1, ...`` (trailing zeros allowed)."""

    def __new__(cls, values=()):
        values = tuple(int(v) for v in values)
        if any(v < 0 for v in values):
            raise ValueError(f"negative entry in {values}")
        return super().__new__(cls, values)

    @property
    def socle_degree(self) -> Optional[int]:
        """Largest index with a nonzero value; None for the zero vector."""
        for k in range(len(self) - 1, -1, -1):
            if self[k]:
                return k
        return None

    def trimmed(self) -> "HVector":
        e = self.socle_degree
        return HVector(()) if e is None else HVector(self[:e + 1])

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self) + ")"

    def __repr__(self) -> str:
        return f"HVector({str(self)})"


@dataclass(frozen=True)
class Expansion:
    base: int
    coefficients: tuple[int, ...]  # (eps_d, ..., eps_1)

    def eps(self, i: int) -> int:
        return self.coefficients[self.base - i]

    def terms(self) -> list[tuple[int, int]]:
        """The binomial pairs ``(i + eps_i, i)`` for ``i = d, ..., 1``."""
        return [(i + self.eps(i), i) for i in range(self.base, 0, -1)]

    def value(self) -> int:
        return sum(binom(top, i) for top, i in self.terms())

    def __str__(self) -> str:
        return "eps = [" + ", ".join(str(e) for e in self.coefficients) + "]"


def macaulay_expansion(C: int, d: int) -> Expansion:
    if C < 0 or d < 1:
        raise ValueError(f"need C >= 0 and d >= 1, got C={C}, d={d}")
    coeffs = []
    rest = C
    for i in range(d, 0, -1):
        # largest eps with binom(i + eps, i) <= rest; eps = -1 gives 0
        eps = -1
        if rest > 0:
            lo, hi = 0, 1
            while binom(i + hi, i) <= rest:
                hi *= 2
            while hi - lo > 1:
                mid = (lo + hi) // 2
                if binom(i + mid, i) <= rest:
                    lo = mid
                else:
                    hi = mid
            eps = lo
            rest -= binom(i + eps, i)
        coeffs.append(eps)
    assert rest == 0
    return Expansion(d, tuple(coeffs))


def upper_growth(C: int, d: int) -> int:
    """``C^<d>``: the largest value a Hilbert function can take in degree
    ``d + 1`` when it equals ``C`` in degree ``d``."""
    exp = macaulay_expansion(C, d)
    return sum(binom(i + exp.eps(i) + 1, i + 1) for i in range(1, d + 1))


@dataclass(frozen=True)
class Shadow:
    value: int
    strict: bool

    def bound(self) -> int:
        """Smallest admissible previous value: ``value`` or ``value + 1``."""
        return self.value + (1 if self.strict else 0)


def lower_shadow(C: int, d: int) -> Shadow:
    """``C_{*d}``; ``strict`` is set when ``eps_1 >= 0`` so the bound
    ``h(d-1) >= C_{*d}`` can be sharpened to a strict inequality."""
    if d < 2:
        raise ValueError(f"lower shadow needs d >= 2, got {d}")
    exp = macaulay_expansion(C, d)
    value = sum(binom(i + exp.eps(i) - 1, i - 1) for i in range(2, d + 1))
    return Shadow(value, exp.eps(1) >= 0)


@dataclass(frozen=True)
class OSequenceCheck:
    ok: bool
    first_violation: Optional[int] = None

    def __bool__(self) -> bool:
        return self.ok


def is_o_sequence(h: Sequence[int]) -> OSequenceCheck:
    """Macaulay's criterion.  No constraint links ``h_0`` and ``h_1``."""
    if len(h) == 0:
        raise ValueError("empty sequence")
    if any(v < 0 for v in h):
        return OSequenceCheck(False, next(k for k, v in enumerate(h) if v < 0))
    if h[0] != 1:
        return OSequenceCheck(False, 0)
    for k in range(1, len(h) - 1):
        if h[k + 1] > upper_growth(h[k], k):
            return OSequenceCheck(False, k + 1)
    return OSequenceCheck(True)


def lower_bound_profile(h: int, d: int, k: int) -> int:
    """Lower bound for ``h_I(k)`` given ``h_I(d) = h``, for ``h <= 2d + 1``."""
    if d < 2:
        raise ValueError("d must be at least 2")
    if not 0 <= k <= d:
        raise ValueError(f"k={k} outside [0, {d}]")
    if h < 0 or h > 2 * d + 1:
        raise ValueError(f"h={h} outside the covered range [0, {2 * d + 1}]")
    if h <= d:
        return min(h, k + 1)
    if h <= 2 * d:
        return min(k + (h - d), 2 * k + 1)
    return 2 * k + 1


def shadow_chain(h: int, d: int, k: int) -> int:
    """Iterate the (strict-aware) shadow from degree ``d`` down to ``k``."""
    value = h
    for base in range(d, k, -1):
        if base == 1:
            # empty shadow sum, strict as soon as anything survives in degree 1
            value = 1 if value > 0 else 0
        else:
            value = lower_shadow(value, base).bound()
    return value


def _binom_poly(shift: int, e: int) -> list[Fraction]:
    """Coefficients (low to high) of ``binom(t + shift, e)`` as a polynomial in t."""
    coeffs = [Fraction(1)]
    for j in range(1, e + 1):
        # multiply by (t + shift - e + j)
        c = shift - e + j
        new = [Fraction(0)] * (len(coeffs) + 1)
        for p, a in enumerate(coeffs):
            new[p] += a * c
            new[p + 1] += a
        coeffs = new
    fe = factorial(e)
    return [a / fe for a in coeffs]


@dataclass(frozen=True)
class GotzmannData:
    expansion: Expansion
    dimension: int

    def __call__(self, t: int) -> int:
        """Persistent Hilbert function value in degree ``t >= base``."""
        d = self.expansion.base
        return sum(binom(t - d + i + self.expansion.eps(i), t - d + i)
                   for i in range(1, d + 1))

    def polynomial(self) -> list[Fraction]:
        """Hilbert polynomial coefficients, constant term first."""
        d = self.expansion.base
        total: list[Fraction] = [Fraction(0)]
        for i in range(1, d + 1):
            e = self.expansion.eps(i)
            if e < 0:
                continue
            # binom(t - d + i + e, e)
            part = _binom_poly(i - d + e, e)
            if len(part) > len(total):
                total += [Fraction(0)] * (len(part) - len(total))
            for p, a in enumerate(part):
                total[p] += a
        while len(total) > 1 and total[-1] == 0:
            total.pop()
        return total

    def polynomial_str(self, var: str = "t") -> str:
        coeffs = self.polynomial()
        parts = []
        for p in range(len(coeffs) - 1, -1, -1):
            a = coeffs[p]
            if a == 0:
                continue
            mag = abs(a)
            if p == 0:
                body = str(mag)
            else:
                mono = var if p == 1 else f"{var}^{p}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            sign = "-" if a < 0 else "+"
            parts.append((sign, body))
        if not parts:
            return "0"
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def gotzmann_polynomial(C: int, d: int) -> GotzmannData:
    """Persistence data for an ideal generated in degree ``<= d`` whose Hilbert
    function satisfies ``h(d) = C`` and ``h(d+1) = C^<d>``.

    Checking that hypothesis is the caller's job.  The dimension of the zero
    locus is ``eps_d`` (``-1`` for the empty scheme).
    """
    exp = macaulay_expansion(C, d)
    return GotzmannData(exp, exp.eps(d))
