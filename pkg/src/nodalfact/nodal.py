"""Nodal hypersurfaces in P^4: Jacobian ideals, node checks, point Hilbert
functions, the defect, and the Gorenstein section built from a node set."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import flint

from . import _linalg as la
from .gorenstein import DualFunctional, SocleReport, apolar_ideal, is_symmetric, socle_check
from .ideals import GradedIdeal, hyperplane_section, hilbert_function
from .macaulay import HVector
from .numfield import Cyclo5, coordinate_rows, realify
from .polyarith import GradedPiece, Poly, exact_rank, graded_dim, linear_form, monomials

N_VARS = 5
Point = tuple  # coordinates: Fractions or Cyclo5 elements


def _is_rational(x) -> bool:
    return not isinstance(x, Cyclo5) or x.is_rational()


def _to_rational(x) -> Fraction:
    return x.c[0] if isinstance(x, Cyclo5) else Fraction(x)


def normalize_point(P: Sequence) -> Point:
    """Rational points as Fractions, anything else as Cyclo5 elements."""
    if all(_is_rational(x) for x in P):
        return tuple(_to_rational(x) for x in P)
    return tuple(Cyclo5.lift(x) for x in P)


def _is_zero_point(P: Sequence) -> bool:
    return all(x == 0 for x in P)


def _same_projective_point(P: Sequence, Q: Sequence) -> bool:
    # P ~ Q iff all 2x2 minors vanish
    n = len(P)
    return all(P[i] * Q[j] - P[j] * Q[i] == 0 for i in range(n) for j in range(i + 1, n))


@dataclass
class NodeConfig:
    F: Poly
    points: list[Point]
    d: int
    note: str = ""

    def __post_init__(self):
        if self.F.n_vars != N_VARS:
            raise ValueError(f"F must be a form in {N_VARS} variables")
        if self.F.homogeneous_degree != self.d:
            raise ValueError(f"F is not homogeneous of degree {self.d}")
        self.points = [normalize_point(P) for P in self.points]
        for P in self.points:
            if len(P) != N_VARS:
                raise ValueError(f"point {P} does not have {N_VARS} coordinates")
            if _is_zero_point(P):
                raise ValueError("the origin is not a projective point")
        for i, P in enumerate(self.points):
            for Q in self.points[:i]:
                if _same_projective_point(P, Q):
                    raise ValueError(f"points {format_point(Q)} and {format_point(P)} coincide")


def format_point(P: Sequence) -> str:
    return "(" + ", ".join(str(x) for x in P) + ")"


def jacobian_ideal(F: Poly) -> GradedIdeal:
    if not F:
        raise ValueError("F is zero")
    if not F.is_homogeneous() or F.degree() < 2:
        raise ValueError("F must be homogeneous of degree at least 2")
    return GradedIdeal(F.n_vars, [F.diff(i) for i in range(F.n_vars)])


# -- node verification ---------------------------------------------------------

def chart_index(P: Sequence) -> int:
    """Coordinate of largest absolute value, lowest index on ties."""
    if _is_zero_point(P):
        raise ValueError("the origin is not a projective point")
    if all(_is_rational(x) for x in P):
        mags = [abs(_to_rational(x)) for x in P]
    else:
        mags = [Cyclo5.lift(x).abs2() for x in P]
    best = 0
    for i in range(1, len(P)):
        if mags[best] < mags[i]:
            best = i
    return best


def chart_hessian(F: Poly, P: Sequence) -> tuple[int, list[list]]:
    """Hessian of ``F`` with ``x_j = 1`` (j the chart index) at ``P / P_j``."""
    P = normalize_point(P)
    j = chart_index(P)
    inv = _inverse(P[j])
    affine = [x * inv for x in P]
    rest = [i for i in range(F.n_vars) if i != j]
    # setting x_j = 1 commutes with differentiating in the other variables
    H = []
    for a in rest:
        Fa = F.diff(a)
        H.append([Fa.diff(b).evaluate(affine) for b in rest])
    return j, H


def _inverse(x):
    if isinstance(x, Cyclo5):
        if x.is_rational():
            return 1 / x.c[0]
        # solve x * y = 1 through the multiplication matrix
        M = la.matrix(x.mult_matrix(), 4)
        rhs = flint.fmpq_mat(4, 1, [1, 0, 0, 0])
        sol = M.solve(rhs)
        return Cyclo5([la.to_fraction(sol[i, 0]) for i in range(4)])
    return 1 / Fraction(x)


def gradient_vanishes(F: Poly, P: Sequence) -> bool:
    return all(F.diff(i).evaluate(list(P)) == 0 for i in range(F.n_vars))


def _rank_over_field(rows: Sequence[Sequence]) -> int:
    if all(_is_rational(x) for row in rows for x in row):
        return exact_rank([[_to_rational(x) for x in row] for row in rows])
    return exact_rank(realify(rows)) // 4


def verify_node(F: Poly, P: Sequence) -> bool:
    """All partials vanish at ``P`` and the affine Hessian there is invertible."""
    P = normalize_point(P)
    if _is_zero_point(P):
        raise ValueError("the origin is not a projective point")
    if not gradient_vanishes(F, P):
        return False
    _, H = chart_hessian(F, P)
    return _rank_over_field(H) == F.n_vars - 1


# -- point sets ----------------------------------------------------------------

def evaluation_rows(points: Sequence[Sequence], k: int) -> list[list]:
    if not points:
        return []
    n = len(points[0])
    mons = monomials(n, k)
    rows = []
    for P in points:
        powers = [[1] for _ in P]
        for i, x in enumerate(P):
            for _ in range(k):
                powers[i].append(powers[i][-1] * x)
        row = []
        for m in mons:
            val = 1
            for i, e in enumerate(m):
                if e:
                    val = powers[i][e] * val
            row.append(val)
        rows.append(row)
    return rows


def points_hilbert(points: Sequence[Sequence], k: int) -> int:
    """``h_J(k)`` for the reduced point set: rank of the evaluation matrix."""
    if k < 0:
        return 0
    points = [normalize_point(P) for P in points]
    if not points:
        return 0
    rows = evaluation_rows(points, k)
    ncols = len(rows[0])
    if all(isinstance(x, Fraction) for P in points for x in P):
        return la.rank(la.matrix(rows, ncols))
    real = realify(rows)
    return la.rank(la.matrix(real, 4 * ncols)) // 4


def points_ideal_piece(points: Sequence[Sequence], k: int, n_vars: int = N_VARS) -> GradedPiece:
    """Rational forms of degree ``k`` vanishing on every point.

    Points with irrational coordinates must form a Galois-stable set, so that
    the ideal is defined over Q; otherwise a ValueError is raised.
    """
    points = [normalize_point(P) for P in points]
    ncols = graded_dim(n_vars, k)
    if not points:
        return GradedPiece.zero(n_vars, k)
    rows = evaluation_rows(points, k)
    if all(isinstance(x, Fraction) for P in points for x in P):
        kernel = la.nullspace(la.matrix(rows, ncols))
        return GradedPiece.span(n_vars, k, kernel)
    kernel = la.nullspace(la.matrix(coordinate_rows(rows), ncols))
    expected = ncols - points_hilbert(points, k)
    if kernel.nrows() != expected:
        raise ValueError(f"point set is not Galois stable: {kernel.nrows()} rational forms of "
                         f"degree {k} vanish on it, {expected} expected")
    return GradedPiece.span(n_vars, k, kernel)


def points_ideal(points: Sequence[Sequence], k_max: int, n_vars: int = N_VARS) -> GradedIdeal:
    """The ideal of the points, stored degree by degree up to ``k_max``."""
    pieces = {k: points_ideal_piece(points, k, n_vars) for k in range(k_max + 1)}
    return GradedIdeal(n_vars, pieces=pieces, closed=True)


# -- defect --------------------------------------------------------------------

COMPLETENESS_CAVEAT = ("the point list is taken to be all of Sing(X); completeness is "
                       "not verified")


@dataclass(frozen=True)
class DefectReport:
    d: int
    n_points: int
    degree: int          # 2d - 5
    h_J: int
    defect: int

    @property
    def verdict(self) -> str:
        if self.defect == 0:
            return "defect 0: factorial on this certificate"
        return f"defect {self.defect}: not factorial"

    @property
    def caveat(self) -> str:
        return COMPLETENESS_CAVEAT

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "points": self.n_points,
            "degree": self.degree,
            "h_J": self.h_J,
            "defect": self.defect,
            "verdict": self.verdict,
            "caveat": self.caveat,
        }


class NodeError(ValueError):
    def __init__(self, point):
        super().__init__(f"point {format_point(point)} is not a node of F")
        self.point = point


def defect(cfg: NodeConfig) -> DefectReport:
    """``#Sing(X) - h_J(2d-5)`` for the given node set."""
    k = 2 * cfg.d - 5
    if k < 0:
        raise ValueError(f"degree {cfg.d} is too small: 2d-5 = {k} < 0")
    for P in cfg.points:
        if not verify_node(cfg.F, P):
            raise NodeError(P)
    h = points_hilbert(cfg.points, k)
    return DefectReport(cfg.d, len(cfg.points), k, h, len(cfg.points) - h)


# -- Gorenstein section ----------------------------------------------------------

@dataclass
class GorensteinSection:
    ideal: GradedIdeal
    h: HVector
    h_section: HVector
    functional: DualFunctional
    contains_section: bool
    symmetric: bool
    socle: SocleReport
    identity: dict[int, bool] = field(default_factory=dict)

    @property
    def socle_degree_ok(self) -> bool:
        return self.h.trimmed().socle_degree == self.socle.socle_degree

    @property
    def ok(self) -> bool:
        return self.contains_section and self.symmetric and self.socle_degree_ok \
            and self.socle.is_gorenstein


def random_linear_form(n_vars: int, seed: int, avoid: Sequence[Sequence] = ()) -> Poly:
    """Seeded linear form with small integer coefficients not vanishing at ``avoid``."""
    rng = random.Random(seed)
    for _ in range(1000):
        coeffs = [rng.randint(-9, 9) for _ in range(n_vars)]
        if not any(coeffs):
            continue
        ell = linear_form(coeffs)
        if all(ell.evaluate(list(P)) != 0 for P in avoid):
            return ell
    raise RuntimeError("could not find a linear form avoiding the points")


def gorenstein_section(points: Sequence[Sequence], d: int, ell: Poly, seed: int = 0) -> GorensteinSection:
    """Artinian Gorenstein ideal of socle degree ``2d-4`` containing the
    hyperplane section of the ideal of ``points``."""
    points = [normalize_point(P) for P in points]
    if not points:
        raise ValueError("no points: there is no positive-defect scenario")
    N = 2 * d - 4
    if N < 0:
        raise ValueError(f"d = {d} is too small")
    for P in points:
        if ell.evaluate(list(P)) == 0:
            raise ValueError(f"the hyperplane passes through {format_point(P)}")
    J = points_ideal(points, N, n_vars=len(points[0]))
    section = hyperplane_section(J, ell, k_max=N)
    Jbar = section.ideal
    h_bar = hilbert_function(Jbar, N)
    top = Jbar.piece(N)
    ann = la.nullspace(top.matrix)
    if ann.nrows() == 0:
        raise ValueError(f"the section ideal fills degree {N}; no functional exists "
                         "(defect-zero certificate)")
    rng = random.Random(seed)
    rows = la.rows_as_fractions(ann)
    while True:
        weights = [Fraction(rng.randint(-9, 9)) for _ in rows]
        vec = [sum((w * r[j] for w, r in zip(weights, rows)), Fraction(0))
               for j in range(len(rows[0]))]
        if any(vec):
            break
    lam = DualFunctional(Jbar.n_vars, N, tuple(vec))
    I, h = apolar_ideal(lam)
    contains = all(I.piece(k).contains_piece(Jbar.piece(k)) for k in range(N + 1))
    return GorensteinSection(I, h, h_bar, lam, contains, is_symmetric(h),
                             socle_check(I, N), dict(section.identity))
