"""Homogeneous ideals handled one graded piece at a time."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence

import flint

from . import _linalg as la
from .macaulay import HVector, upper_growth
from .polyarith import (
    GradedPiece,
    Poly,
    graded_dim,
    monomial_index,
    monomials,
    times_monomials,
    times_variables,
)


class IndeterminateError(RuntimeError):
    """Raised when a probe window is exhausted before a certificate is found."""


MONOMIAL_GENERATOR_LIMIT = 14


class GradedIdeal:
    """Ideal given by homogeneous generators and/or explicitly stored pieces.

    ``closed=True`` declares every stored piece to be the complete graded
    component; ``top`` declares ``I_k = S_k`` for all ``k > top``.  Other
    pieces are computed as ``S_1 * I_{k-1}`` plus degree-``k`` generators
    plus any stored degree-``k`` subspace.
    """

    def __init__(self, n_vars: int, generators: Iterable[Poly] = (),
                 pieces: Optional[Mapping[int, GradedPiece]] = None,
                 closed: bool = False, top: Optional[int] = None):
        self.n_vars = n_vars
        gens = []
        for g in generators:
            if not g:
                continue
            if g.n_vars != n_vars:
                raise ValueError(f"generator {g} is not in {n_vars} variables")
            if not g.is_homogeneous():
                raise ValueError(f"generator {g} is not homogeneous")
            gens.append(g)
        self.generators = gens
        self.stored = dict(pieces or {})
        self.closed = closed
        self.top = top
        self._cache: dict[int, GradedPiece] = {}

    def piece(self, k: int) -> GradedPiece:
        if k < 0:
            raise ValueError("negative degree")
        got = self._cache.get(k)
        if got is None:
            got = self._compute_piece(k)
            self._cache[k] = got
        return got

    def _compute_piece(self, k: int) -> GradedPiece:
        if self.top is not None and k > self.top:
            return GradedPiece.full(self.n_vars, k)
        if self.closed and k in self.stored:
            return self.stored[k]
        ncols = graded_dim(self.n_vars, k)
        parts = []
        if k > 0:
            prev = self.piece(k - 1)
            if prev.dim:
                parts.append(times_variables(prev))
        rows = []
        for g in self.generators:
            if g.homogeneous_degree == k:
                rows.append(g.to_vector(k))
        if rows:
            parts.append(la.matrix(rows, ncols))
        if k in self.stored and self.stored[k].dim:
            parts.append(self.stored[k].matrix)
        return GradedPiece.span(self.n_vars, k, la.vstack(parts, ncols))

    def hilbert(self, k: int) -> int:
        if k < 0:
            return 0
        counts = self._monomial_counts()
        if counts is not None:
            return sum(c * graded_dim(self.n_vars, k - deg) for deg, c in counts.items())
        return graded_dim(self.n_vars, k) - self.piece(k).dim

    def _monomial_counts(self) -> Optional[dict[int, int]]:
        """For an ideal generated by few monomials: the signed lcm degrees of
        inclusion-exclusion, so ``h(k) = sum c * dim S_{k-deg}``."""
        if type(self) is not GradedIdeal or self.stored or not self.generators:
            return None
        if any(len(g.terms) != 1 for g in self.generators):
            return None
        if not hasattr(self, "_lcm_counts"):
            exps = sorted({next(iter(g.terms)) for g in self.generators})
            # drop non-minimal generators
            gens = [e for e in exps
                    if not any(f != e and all(a <= b for a, b in zip(f, e)) for f in exps)]
            self._lcm_counts = None
            if len(gens) <= MONOMIAL_GENERATOR_LIMIT:
                counts: dict[int, int] = {}

                def walk(i, lcm, sign):
                    if i == len(gens):
                        deg = sum(lcm)
                        counts[deg] = counts.get(deg, 0) + sign
                        return
                    walk(i + 1, lcm, sign)
                    walk(i + 1, tuple(max(a, b) for a, b in zip(lcm, gens[i])), -sign)

                walk(0, (0,) * self.n_vars, 1)
                self._lcm_counts = {d: c for d, c in counts.items() if c}
        return self._lcm_counts

    def max_generator_degree(self) -> int:
        degs = [g.homogeneous_degree for g in self.generators] + list(self.stored)
        return max(degs, default=0)

    def __repr__(self) -> str:
        return (f"GradedIdeal(n_vars={self.n_vars}, generators={len(self.generators)}, "
                f"stored={sorted(self.stored)})")


def hilbert_function(I: GradedIdeal, k_max: int) -> HVector:
    return HVector(I.hilbert(k) for k in range(k_max + 1))


# -- hyperplane sections --------------------------------------------------------

@lru_cache(maxsize=64)
def _projection(n_vars: int, coeffs: tuple[Fraction, ...], k: int) -> flint.fmpq_mat:
    """Matrix of ``S_k -> (S/(l))_k``; rows indexed by degree-k monomials of S."""
    j = _eliminated_variable(coeffs)
    m = n_vars - 1
    # x_j = -(1/c_j) * sum_{i != j} c_i y_i, the other variables keep their order
    lin = {}
    for i, c in enumerate(coeffs):
        if i == j or c == 0:
            continue
        e = [0] * m
        e[i if i < j else i - 1] = 1
        lin[tuple(e)] = -Fraction(c) / Fraction(coeffs[j])
    lin_poly = Poly(m, lin)
    powers = [Poly.const(m, 1)]
    for _ in range(k):
        powers.append(powers[-1] * lin_poly)
    idx = monomial_index(m, k)
    src = monomials(n_vars, k)
    out = [flint.fmpq(0)] * (len(src) * len(idx))
    for r, mono in enumerate(src):
        rest = mono[:j] + mono[j + 1:]
        for t, c in powers[mono[j]].terms.items():
            col = idx[tuple(a + b for a, b in zip(rest, t))]
            out[r * len(idx) + col] += la.to_fmpq(c)
    return flint.fmpq_mat(len(src), len(idx), out)


def _eliminated_variable(coeffs: Sequence) -> int:
    """Highest-index variable with a nonzero coefficient in the linear form."""
    for i in range(len(coeffs) - 1, -1, -1):
        if coeffs[i] != 0:
            return i
    raise ValueError("linear form is zero")


def _linear_coeffs(ell: Poly) -> tuple[Fraction, ...]:
    if not ell or ell.homogeneous_degree != 1:
        raise ValueError(f"{ell} is not a nonzero linear form")
    coeffs = [Fraction(0)] * ell.n_vars
    for m, c in ell.terms.items():
        coeffs[m.index(1)] = c
    return tuple(coeffs)


def restrict_poly(g: Poly, ell: Poly) -> Poly:
    """Image of ``g`` in ``S/(ell)`` written in the remaining variables."""
    coeffs = _linear_coeffs(ell)
    j = _eliminated_variable(coeffs)
    m = g.n_vars - 1
    images = []
    for i in range(g.n_vars):
        if i == j:
            lin = Poly(m)
            for a, c in enumerate(coeffs):
                if a != j and c != 0:
                    lin = lin + Poly.var(m, a if a < j else a - 1) * (-c / coeffs[j])
            images.append(lin)
        else:
            images.append(Poly.var(m, i if i < j else i - 1))
    return g.substitute(images)


class SectionIdeal(GradedIdeal):
    """Degree-wise image of a parent ideal in ``S/(ell)``."""

    def __init__(self, parent: GradedIdeal, ell: Poly):
        super().__init__(parent.n_vars - 1)
        self.parent = parent
        self.ell = ell
        self._coeffs = _linear_coeffs(ell)

    def _compute_piece(self, k: int) -> GradedPiece:
        src = self.parent.piece(k)
        if src.dim == 0:
            return GradedPiece.zero(self.n_vars, k)
        proj = _projection(self.parent.n_vars, self._coeffs, k)
        return GradedPiece.span(self.n_vars, k, src.matrix * proj)

    def max_generator_degree(self) -> int:
        return self.parent.max_generator_degree()


@dataclass
class Section:
    ideal: GradedIdeal
    identity: dict[int, bool] = field(default_factory=dict)

    def identity_holds(self) -> bool:
        return all(self.identity.values())

    def first_failure(self) -> Optional[int]:
        return next((t for t, ok in sorted(self.identity.items()) if not ok), None)


def hyperplane_section(I: GradedIdeal, ell: Poly, k_max: int = 6) -> Section:
    """Image of ``I`` modulo a linear form, eliminating its last variable.

    ``identity[t]`` records whether ``h_{(I,l)}(t) = h_I(t) - h_I(t-1)``,
    which holds whenever multiplication by ``l`` is injective on
    ``(S/I)_{t-1}``.
    """
    if ell.n_vars != I.n_vars:
        raise ValueError("linear form lives in a different ring")
    _linear_coeffs(ell)
    if type(I) is GradedIdeal and not I.stored:
        image = GradedIdeal(I.n_vars - 1, [restrict_poly(g, ell) for g in I.generators])
    else:
        image = SectionIdeal(I, ell)
    identity = {}
    for t in range(1, k_max + 1):
        identity[t] = image.hilbert(t) == I.hilbert(t) - I.hilbert(t - 1)
    return Section(image, identity)


# -- base loci -------------------------------------------------------------------

def probe_window(I: GradedIdeal, t: int) -> int:
    """Degrees past ``t`` that settle emptiness of every linear cut of
    ``(I_{<=t})``: a base-point-free ideal generated in degrees ``<= t`` in
    ``n`` variables contains ``n`` general degree-``t`` forms, a regular
    sequence, so its quotient vanishes from degree ``n(t-1)+1`` on."""
    return (I.n_vars - 1) * (t - 1) + 1


BASE_LOCUS_SEED = 7919


def _general_forms(n_vars: int, seed: int) -> list[Poly]:
    """Seeded linear forms in ``n_vars, n_vars - 1, ..., 2`` variables."""
    rng = random.Random(seed)
    forms = []
    for m in range(n_vars, 1, -1):
        coeffs = [0] * m
        while not any(coeffs):
            coeffs = [rng.randint(-97, 97) for _ in range(m)]
        forms.append(Poly(m, {tuple(int(i == j) for i in range(m)): c
                              for j, c in enumerate(coeffs) if c}))
    return forms


def _is_empty(K: GradedIdeal, t: int, window: int) -> Optional[bool]:
    """Whether ``V(K)`` is empty, for ``K`` generated in degrees ``<= t``.
    Stops early when ``h_K`` vanishes or grows maximally (then the Hilbert
    polynomial is nonzero).  ``None`` if the window ends first."""
    bound = K.n_vars * (t - 1) + 1
    for s in range(t, min(bound, t + window) + 1):
        h = K.hilbert(s)
        if h == 0:
            return True
        if s == bound or K.hilbert(s + 1) == upper_growth(h, s):
            return False
    return None


def base_locus_dim(I: GradedIdeal, t: int, window: Optional[int] = None,
                   seed: int = BASE_LOCUS_SEED) -> int:
    """Dimension of the zero scheme of the degree-``<= t`` part of ``I``.

    Works with ``J = (I_t)``, which agrees with the ideal generated by
    ``I_{<=t}`` in all degrees ``>= t``.  The answer is the largest ``c`` for
    which ``J`` cut by ``c`` seeded general linear forms still has a zero: a
    variety of dimension ``>= c`` meets every codimension-``c`` linear space,
    and one of smaller dimension misses a general one.  ``-1`` means the base
    locus is empty.
    """
    if t < 1:
        raise ValueError("t must be positive")
    if window is None:
        window = probe_window(I, t)
    n = I.n_vars
    if type(I) is GradedIdeal and not I.stored:
        # same ideal as (I_t) in every degree >= t, usually far fewer forms
        basis = [g for g in I.generators if g.homogeneous_degree <= t]
    else:
        basis = I.piece(t).basis
    if not basis:
        return n - 1
    # cuts[c] = restrictions of the basis to a general codimension-c space
    cuts = [basis]
    for ell in _general_forms(n, seed)[:n - 1]:
        cuts.append([restrict_poly(g, ell) for g in cuts[-1]])
    # one variable left: the point survives only if every form restricts to zero
    if not any(cuts[n - 1]):
        return n - 1
    for c in range(n - 2, -1, -1):
        K = GradedIdeal(n - c, [g for g in cuts[c] if g])
        empty = _is_empty(K, t, window)
        if empty is None:
            raise IndeterminateError(
                f"no certificate for t={t} within degrees {t}..{t + window}")
        if not empty:
            return c
    return -1


@dataclass(frozen=True)
class DkProfile:
    d_values: tuple[int, ...]      # (d_{n-1}, ..., d_0, d_{-1})
    socle_degree: int
    n: int                         # ambient projective dimension
    base_dims: tuple[int, ...]     # dim Bs|I_t| for t = 1, 2, ...

    @property
    def total(self) -> int:
        return sum(self.d_values)

    @property
    def lemma_bound(self) -> int:
        return self.socle_degree + self.n + 1

    @property
    def lemma_check(self) -> bool:
        return self.total >= self.lemma_bound

    def d(self, k: int) -> int:
        return self.d_values[self.n - 1 - k]


def dk_profile(I: GradedIdeal, N: int) -> DkProfile:
    """``d_k = min{t : dim Bs|I_t| <= k}`` for ``k = n-1, ..., -1``."""
    n = I.n_vars - 1
    dims = []
    for t in range(1, N + 2):
        dims.append(base_locus_dim(I, t))
        if dims[-1] == -1:
            break
    else:
        raise ValueError(f"base locus still nonempty in degree {N + 1}; S/I is not artinian "
                         f"of socle degree {N}")
    d_values = []
    for k in range(n - 1, -2, -1):
        d_values.append(next(t for t, dim in enumerate(dims, start=1) if dim <= k))
    return DkProfile(tuple(d_values), N, n, tuple(dims))
