"""Artinian Gorenstein quotients: apolar ideals, socles, h-vector tests and
complete intersections."""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

import flint

from . import _linalg as la
from .ideals import GradedIdeal, hilbert_function
from .macaulay import HVector, is_o_sequence
from .polyarith import (
    GradedPiece,
    Poly,
    _shift_table,
    determinant,
    graded_dim,
    monomial_index,
    monomials,
)


@dataclass(frozen=True)
class DualFunctional:
    """A linear functional on ``S_e``; ``coefficients[j]`` is its value on the
    j-th degree-``e`` monomial."""

    n_vars: int
    degree: int
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coefficients) != graded_dim(self.n_vars, self.degree):
            raise ValueError("coefficient vector has the wrong length")

    @classmethod
    def from_terms(cls, n_vars: int, degree: int, terms: Mapping[tuple[int, ...], object]) -> "DualFunctional":
        idx = monomial_index(n_vars, degree)
        vec = [Fraction(0)] * len(idx)
        for m, c in terms.items():
            m = tuple(m)
            if m not in idx:
                raise ValueError(f"monomial {m} is not of degree {degree} in {n_vars} variables")
            vec[idx[m]] += Fraction(c)
        return cls(n_vars, degree, tuple(vec))

    @classmethod
    def dual_monomial(cls, n_vars: int, mono: Sequence[int]) -> "DualFunctional":
        return cls.from_terms(n_vars, sum(mono), {tuple(mono): 1})

    @classmethod
    def random(cls, n_vars: int, degree: int, seed: int) -> "DualFunctional":
        rng = random.Random(seed)
        size = graded_dim(n_vars, degree)
        vec = tuple(Fraction(rng.randint(-20, 20), rng.randint(1, 5)) for _ in range(size))
        if not any(vec):
            vec = (Fraction(1),) + vec[1:]
        return cls(n_vars, degree, vec)

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def __call__(self, g: Poly) -> Fraction:
        idx = monomial_index(self.n_vars, self.degree)
        total = Fraction(0)
        for m, c in g.terms.items():
            if sum(m) != self.degree:
                raise ValueError(f"{g} is not of degree {self.degree}")
            total += c * self.coefficients[idx[m]]
        return total

    def terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return [(m, c) for m, c in zip(monomials(self.n_vars, self.degree), self.coefficients) if c]


def catalecticant(lam: DualFunctional, k: int) -> flint.fmpq_mat:
    """Matrix ``lambda(m_a * m_b)``; rows degree-``k`` monomials, columns degree ``e-k``."""
    n, e = lam.n_vars, lam.degree
    rows = monomials(n, k)
    cols = monomials(n, e - k)
    idx = monomial_index(n, e)
    coeffs = [la.to_fmpq(c) for c in lam.coefficients]
    ent = [coeffs[idx[tuple(a + b for a, b in zip(ma, mb))]] for ma in rows for mb in cols]
    return flint.fmpq_mat(len(rows), len(cols), ent)


def apolar_ideal(lam: DualFunctional) -> tuple[GradedIdeal, HVector]:
    """Ideal of forms ``g`` with ``lambda(g * S_{e-k}) = 0``, degree by degree."""
    if lam.is_zero():
        raise ValueError("the functional is identically zero")
    n, e = lam.n_vars, lam.degree
    pieces = {}
    for k in range(e + 1):
        kernel = la.left_kernel(catalecticant(lam, k))
        pieces[k] = GradedPiece.span(n, k, kernel)
    I = GradedIdeal(n, pieces=pieces, closed=True, top=e)
    return I, hilbert_function(I, e + 1)


@dataclass(frozen=True)
class SocleReport:
    socle_degree: int
    socle_dims: tuple[int, ...]
    top_vanishes: bool

    @property
    def is_gorenstein(self) -> bool:
        N = self.socle_degree
        return self.top_vanishes and all(v == 0 for v in self.socle_dims[:N]) \
            and self.socle_dims[N] == 1

    def __bool__(self) -> bool:
        return self.is_gorenstein


def socle_dimension(I: GradedIdeal, k: int) -> int:
    """``dim {g in (S/I)_k : x_i g in I_{k+1} for all i}``."""
    n = I.n_vars
    low = I.piece(k)
    high = I.piece(k + 1)
    std = low.standard_columns()
    if not std:
        return 0
    dst = graded_dim(n, k + 1)
    table = _shift_table(n, k)
    # row for standard monomial m: concatenation over i of the class of x_i * m
    blocks = []
    for i in range(n):
        ent = [flint.fmpq(0)] * (len(std) * dst)
        for r, j in enumerate(std):
            ent[r * dst + table[i][j]] = flint.fmpq(1)
        blocks.append(high.normal_form(flint.fmpq_mat(len(std), dst, ent)))
    width = n * dst
    combined = [flint.fmpq(0)] * (len(std) * width)
    for i, blk in enumerate(blocks):
        be = blk.entries()
        for r in range(len(std)):
            combined[r * width + i * dst:r * width + (i + 1) * dst] = be[r * dst:(r + 1) * dst]
    return len(std) - la.rank(flint.fmpq_mat(len(std), width, combined))


def socle_check(I: GradedIdeal, N: int) -> SocleReport:
    if N < 0:
        raise ValueError("socle degree must be nonnegative")
    dims = tuple(socle_dimension(I, k) for k in range(N + 1))
    return SocleReport(N, dims, I.hilbert(N + 1) == 0)


def _nonzero_h(h: Sequence[int]) -> HVector:
    h = HVector(h).trimmed()
    if not h:
        raise ValueError("h-vector is identically zero")
    return h


def is_symmetric(h: Sequence[int]) -> bool:
    h = _nonzero_h(h)
    return tuple(h) == tuple(reversed(h))


def is_unimodal(h: Sequence[int]) -> bool:
    """Never strictly increasing after a strict decrease."""
    dropped = False
    for a, b in zip(h, h[1:]):
        if b < a:
            dropped = True
        elif b > a and dropped:
            return False
    return True


class Stanley(enum.Enum):
    ADMISSIBLE = "admissible"
    REJECTED = "rejected"
    INAPPLICABLE = "inapplicable"

    def rejects(self) -> bool:
        return self is Stanley.REJECTED


def stanley_difference(h: Sequence[int]) -> tuple[int, ...]:
    h = _nonzero_h(h)
    t = (len(h) - 1) // 2
    return (h[0],) + tuple(h[k] - h[k - 1] for k in range(1, t + 1))


def stanley_admissible(h: Sequence[int]) -> Stanley:
    """Stanley's characterization of Gorenstein h-vectors with ``h_1 <= 3``:
    symmetric, and the first half of the difference sequence is an
    O-sequence.  Vectors with ``h_1 > 3`` are outside its scope."""
    h = _nonzero_h(h)
    if len(h) > 1 and h[1] > 3:
        return Stanley.INAPPLICABLE
    if not is_symmetric(h):
        return Stanley.REJECTED
    return Stanley.ADMISSIBLE if is_o_sequence(stanley_difference(h)) else Stanley.REJECTED


# -- complete intersections ----------------------------------------------------

@dataclass(frozen=True)
class CIDegrees:
    multidegree: tuple[int, ...]

    def __post_init__(self):
        if not self.multidegree:
            raise ValueError("empty multidegree")
        if any(d < 1 for d in self.multidegree):
            raise ValueError(f"degrees must be positive: {self.multidegree}")

    @property
    def n_vars(self) -> int:
        return len(self.multidegree)

    def monomial_generators(self) -> list[Poly]:
        n = self.n_vars
        return [Poly(n, {tuple(d if j == i else 0 for j in range(n)): 1})
                for i, d in enumerate(self.multidegree)]


def _as_ci(cid) -> CIDegrees:
    return cid if isinstance(cid, CIDegrees) else CIDegrees(tuple(int(d) for d in cid))


def ci_socle_degree(cid) -> int:
    return sum(d - 1 for d in _as_ci(cid).multidegree)


def ci_hilbert_series(cid) -> HVector:
    """Coefficients of ``prod (1 - t^{d_i}) / (1 - t)^n``."""
    cid = _as_ci(cid)
    top = ci_socle_degree(cid)
    num = [1]
    for d in cid.multidegree:
        nxt = [0] * (len(num) + d)
        for p, a in enumerate(num):
            nxt[p] += a
            nxt[p + d] -= a
        num = nxt
    coeffs = num[:top + 1] + [0] * max(0, top + 1 - len(num))
    for _ in range(cid.n_vars):
        run = 0
        for p in range(len(coeffs)):
            run += coeffs[p]
            coeffs[p] = run
    return HVector(coeffs)


@dataclass(frozen=True)
class TateReport:
    determinant: Poly
    socle_degree: int
    top_dim: int
    det_outside: bool

    @property
    def holds(self) -> bool:
        return (self.determinant.homogeneous_degree == self.socle_degree
                and self.top_dim == 1 and self.det_outside)

    def __bool__(self) -> bool:
        return self.holds


def jacobian_determinant(gens: Sequence[Poly]) -> Poly:
    n = gens[0].n_vars
    return determinant([[g.diff(j) for j in range(n)] for g in gens])


def tate_socle_check(gens: Sequence[Poly]) -> TateReport:
    """The Jacobian determinant of a regular sequence spans the socle."""
    gens = list(gens)
    if not gens:
        raise ValueError("no generators")
    n = gens[0].n_vars
    if len(gens) != n:
        raise ValueError(f"need {n} generators, got {len(gens)}")
    degs = [g.homogeneous_degree for g in gens]
    if any(d is None or d < 1 for d in degs):
        raise ValueError("generators must be nonzero homogeneous forms of positive degree")
    N = sum(d - 1 for d in degs)
    I = GradedIdeal(n, gens)
    if I.hilbert(N + 1) != 0:
        raise ValueError(f"quotient is not artinian: h({N + 1}) = {I.hilbert(N + 1)}")
    det = jacobian_determinant(gens)
    if not det:
        raise ValueError("Jacobian determinant vanishes identically")
    return TateReport(det, N, I.hilbert(N), not I.piece(N).contains(det))
