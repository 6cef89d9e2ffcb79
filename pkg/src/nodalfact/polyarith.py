"""Multivariate polynomials over the rationals and graded linear algebra.

Monomials are exponent tuples.  Inside each degree they are ordered
lexicographically with ``x0 > x1 > ...``, which together with ordering by
degree gives the graded lexicographic order used everywhere in the package.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Optional, Sequence

import flint

from . import _linalg as la

Monomial = tuple[int, ...]


def graded_dim(n_vars: int, k: int) -> int:
    """Number of monomials of degree ``k`` in ``n_vars`` variables."""
    if n_vars < 1:
        raise ValueError("need at least one variable")
    if k < 0:
        return 0
    return comb(k + n_vars - 1, n_vars - 1)


@lru_cache(maxsize=None)
def monomials(n_vars: int, k: int) -> tuple[Monomial, ...]:
    if k < 0:
        return ()
    if n_vars == 1:
        return ((k,),)
    out = []
    for a in range(k, -1, -1):
        for rest in monomials(n_vars - 1, k - a):
            out.append((a,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(n_vars: int, k: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomials(n_vars, k))}


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, flint.fmpq):
        return la.to_fraction(c)
    return Fraction(c)


class Poly:
    """Sparse polynomial ``{exponent tuple: nonzero Fraction}``."""

    __slots__ = ("n_vars", "terms")

    def __init__(self, n_vars: int, terms: Optional[Mapping[Monomial, object]] = None):
        self.n_vars = n_vars
        clean: dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            if len(m) != n_vars:
                raise ValueError(f"monomial {m} does not have {n_vars} exponents")
            c = _as_fraction(c)
            if c != 0:
                clean[tuple(m)] = c
        self.terms = clean

    @classmethod
    def var(cls, n_vars: int, i: int) -> "Poly":
        e = [0] * n_vars
        e[i] = 1
        return cls(n_vars, {tuple(e): 1})

    @classmethod
    def const(cls, n_vars: int, c) -> "Poly":
        return cls(n_vars, {(0,) * n_vars: c})

    @classmethod
    def from_vector(cls, n_vars: int, k: int, vec: Sequence) -> "Poly":
        mons = monomials(n_vars, k)
        return cls(n_vars, {m: c for m, c in zip(mons, vec) if c != 0})

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.n_vars != self.n_vars:
                raise ValueError("polynomials live in different rings")
            return other
        return Poly.const(self.n_vars, other)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(self.n_vars, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.n_vars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = _as_fraction(other)
            return Poly(self.n_vars, {m: a * c for m, a in self.terms.items()})
        other = self._coerce(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(self.n_vars, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        result = Poly.const(self.n_vars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            try:
                other = self._coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.n_vars == other.n_vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.n_vars, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- structure ----------------------------------------------------------

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    @property
    def homogeneous_degree(self) -> Optional[int]:
        degs = {sum(m) for m in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def diff(self, i: int) -> "Poly":
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                e = list(m)
                e[i] -= 1
                out[tuple(e)] = c * m[i]
        return Poly(self.n_vars, out)

    def evaluate(self, point: Sequence):
        """Value at ``point``; coordinates may be any ring elements that
        multiply with Fractions (rationals, number-field elements)."""
        if len(point) != self.n_vars:
            raise ValueError("point has the wrong number of coordinates")
        powers: list[dict[int, object]] = [{0: 1} for _ in point]
        total = 0
        for m, c in self.terms.items():
            val = c
            for i, e in enumerate(m):
                if e == 0:
                    continue
                cache = powers[i]
                if e not in cache:
                    cache[e] = _power(point[i], e)
                val = cache[e] * val
            total = val + total
        return total

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Replace ``x_i`` by ``images[i]`` (all in a common target ring)."""
        if len(images) != self.n_vars:
            raise ValueError("need one image per variable")
        target = images[0].n_vars
        pow_cache: dict[tuple[int, int], Poly] = {}
        result = Poly(target)
        for m, c in self.terms.items():
            term = Poly.const(target, c)
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in pow_cache:
                        pow_cache[key] = images[i] ** e
                    term = term * pow_cache[key]
            result = result + term
        return result

    def to_vector(self, k: Optional[int] = None) -> list[Fraction]:
        if k is None:
            k = self.homogeneous_degree
            if k is None:
                raise ValueError("to_vector needs a homogeneous polynomial")
        idx = monomial_index(self.n_vars, k)
        vec = [Fraction(0)] * len(idx)
        for m, c in self.terms.items():
            if sum(m) != k:
                raise ValueError(f"term {m} is not of degree {k}")
            vec[idx[m]] = c
        return vec

    def __repr__(self) -> str:
        return f"Poly({self.n_vars}, {self})"

    def __str__(self) -> str:
        return format_poly(self)


def _power(x, e: int):
    result = x
    for _ in range(e - 1):
        result = result * x
    return result


def variables(n_vars: int) -> list[Poly]:
    return [Poly.var(n_vars, i) for i in range(n_vars)]


# -- text format --------------------------------------------------------------

def _sorted_monomials(poly: Poly) -> list[Monomial]:
    return sorted(poly.terms, key=lambda m: (-sum(m), tuple(-a for a in m)))


def format_poly(poly: Poly) -> str:
    if not poly.terms:
        return "0"
    pieces = []
    for m in _sorted_monomials(poly):
        c = poly.terms[m]
        factors = [f"x{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e]
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = f"{mag}*" + "*".join(factors)
        pieces.append(("-" if c < 0 else "+", body))
    sign, body = pieces[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


_TERM_SPLIT = re.compile(r"([+-])")
_FACTOR = re.compile(r"^(\d+(?:/\d+)?)?(?:x(\d+)(?:\^(\d+))?)?$")


def parse_poly(text: str, n_vars: int) -> Poly:
    """Parse ``3/2*x0^2*x1 - x2*x3^2`` style input; the ``*`` after a
    coefficient may be omitted (``3x0``)."""
    src = text.replace(" ", "").replace("\t", "")
    if not src:
        raise ValueError("empty polynomial")
    tokens = _TERM_SPLIT.split(src)
    terms: dict[Monomial, Fraction] = {}
    sign = 1
    expect_term = True
    for tok in tokens:
        if tok in ("+", "-"):
            if tok == "-":
                sign = -sign
            expect_term = True
            continue
        if tok == "":
            continue
        if not expect_term:
            raise ValueError(f"malformed polynomial {text!r}")
        coeff = Fraction(sign)
        exps = [0] * n_vars
        for factor in tok.split("*"):
            m = _FACTOR.match(factor)
            if not factor or not m:
                raise ValueError(f"cannot parse factor {factor!r} in {text!r}")
            if m.group(1) is not None:
                coeff *= Fraction(m.group(1))
            if m.group(2) is not None:
                i = int(m.group(2))
                if i >= n_vars:
                    raise ValueError(f"variable x{i} out of range for {n_vars} variables")
                exps[i] += int(m.group(3) or 1)
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + coeff
        sign = 1
        expect_term = False
    if expect_term:
        raise ValueError(f"dangling operator in {text!r}")
    return Poly(n_vars, terms)


# -- exact rank ---------------------------------------------------------------

def exact_rank(rows: Sequence[Sequence]) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination.

    Each row is first scaled to integers.  Pivot rule: leftmost column with a
    nonzero entry among the unprocessed rows, topmost such row.
    """
    if not rows:
        return 0
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("rows differ in length")
    mat = []
    for r in rows:
        fr = [_as_fraction(v) for v in r]
        den = 1
        for v in fr:
            den = den * v.denominator // _gcd(den, v.denominator)
        mat.append([int(v * den) for v in fr])
    nrows = len(mat)
    rank = 0
    prev = 1
    col = 0
    while rank < nrows and col < ncols:
        piv = next((i for i in range(rank, nrows) if mat[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        if piv != rank:
            mat[rank], mat[piv] = mat[piv], mat[rank]
        p = mat[rank][col]
        prow = mat[rank]
        for i in range(rank + 1, nrows):
            row = mat[i]
            a = row[col]
            for j in range(col + 1, ncols):
                # Bareiss step: exact division by the previous pivot
                row[j] = (p * row[j] - a * prow[j]) // prev
            row[col] = 0
        prev = p
        rank += 1
        col += 1
    return rank


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


# -- graded pieces -------------------------------------------------------------

class GradedPiece:
    """A subspace of ``S_k`` held as a reduced echelon basis."""

    def __init__(self, n_vars: int, degree: int, mat: flint.fmpq_mat, pivots: list[int]):
        self.n_vars = n_vars
        self.degree = degree
        self.matrix = mat
        self.pivots = pivots

    @classmethod
    def span(cls, n_vars: int, degree: int, vectors) -> "GradedPiece":
        """Span of the given vectors (a flint matrix or a list of rows)."""
        ncols = graded_dim(n_vars, degree)
        if isinstance(vectors, flint.fmpq_mat):
            mat = vectors
        else:
            mat = la.matrix(list(vectors), ncols)
        red, piv = la.rref(mat)
        return cls(n_vars, degree, red, piv)

    @classmethod
    def zero(cls, n_vars: int, degree: int) -> "GradedPiece":
        return cls(n_vars, degree, la.zeros(0, graded_dim(n_vars, degree)), [])

    @classmethod
    def full(cls, n_vars: int, degree: int) -> "GradedPiece":
        n = graded_dim(n_vars, degree)
        ident = flint.fmpq_mat(n, n)
        for i in range(n):
            ident[i, i] = 1
        return cls(n_vars, degree, ident, list(range(n)))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def ambient_dim(self) -> int:
        return graded_dim(self.n_vars, self.degree)

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.dim

    @property
    def basis(self) -> list[Poly]:
        return [Poly.from_vector(self.n_vars, self.degree, row)
                for row in la.rows_as_fractions(self.matrix)]

    def standard_columns(self) -> list[int]:
        """Non-pivot monomial positions; their classes span ``S_k / piece``."""
        piv = set(self.pivots)
        return [j for j in range(self.ambient_dim) if j not in piv]

    def normal_form(self, vecs: flint.fmpq_mat) -> flint.fmpq_mat:
        """Canonical remainders of the rows of ``vecs`` modulo the piece."""
        if self.dim == 0 or vecs.nrows() == 0:
            return vecs
        n = self.ambient_dim
        ent = vecs.entries()
        coeff = flint.fmpq_mat(vecs.nrows(), self.dim,
                               [ent[i * n + p] for i in range(vecs.nrows()) for p in self.pivots])
        return vecs - coeff * self.matrix

    def contains(self, poly: Poly) -> bool:
        if not poly:
            return True
        vec = la.matrix([poly.to_vector(self.degree)], self.ambient_dim)
        return all(v == 0 for v in self.normal_form(vec).entries())

    def contains_piece(self, other: "GradedPiece") -> bool:
        if other.dim == 0:
            return True
        return all(v == 0 for v in self.normal_form(other.matrix).entries())

    def __add__(self, other: "GradedPiece") -> "GradedPiece":
        if (self.n_vars, self.degree) != (other.n_vars, other.degree):
            raise ValueError("pieces live in different graded components")
        if other.dim == 0:
            return self
        if self.dim == 0:
            return other
        return GradedPiece.span(self.n_vars, self.degree,
                                la.vstack([self.matrix, other.matrix], self.ambient_dim))

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedPiece):
            return NotImplemented
        return (self.n_vars, self.degree, self.pivots) == (other.n_vars, other.degree, other.pivots) \
            and self.matrix == other.matrix

    def __repr__(self) -> str:
        return f"GradedPiece(n_vars={self.n_vars}, degree={self.degree}, dim={self.dim})"


@lru_cache(maxsize=None)
def _shift_table(n_vars: int, k: int) -> tuple[tuple[int, ...], ...]:
    """``table[i][j]`` = index in degree k+1 of ``x_i`` times monomial j of degree k."""
    idx = monomial_index(n_vars, k + 1)
    table = []
    for i in range(n_vars):
        row = []
        for m in monomials(n_vars, k):
            e = list(m)
            e[i] += 1
            row.append(idx[tuple(e)])
        table.append(tuple(row))
    return tuple(table)


def times_variables(piece: GradedPiece) -> flint.fmpq_mat:
    """Rows ``x_i * b`` for every basis row ``b`` and every variable."""
    n, k = piece.n_vars, piece.degree
    src = piece.ambient_dim
    dst = graded_dim(n, k + 1)
    table = _shift_table(n, k)
    rows = piece.dim
    ent = piece.matrix.entries()
    out = [flint.fmpq(0)] * (n * rows * dst)
    r = 0
    for i in range(n):
        tab = table[i]
        for b in range(rows):
            base = r * dst
            for j in range(src):
                v = ent[b * src + j]
                if v != 0:
                    out[base + tab[j]] = v
            r += 1
    return flint.fmpq_mat(n * rows, dst, out)


def times_monomials(poly: Poly, k: int) -> list[list[Fraction]]:
    """Coefficient rows of ``m * poly`` for all monomials m of degree ``k - deg``."""
    d = poly.homogeneous_degree
    if d is None:
        raise ValueError("generator must be homogeneous and nonzero")
    if d > k:
        return []
    n = poly.n_vars
    idx = monomial_index(n, k)
    size = len(idx)
    rows = []
    for m in monomials(n, k - d):
        row = [Fraction(0)] * size
        for t, c in poly.terms.items():
            row[idx[tuple(a + b for a, b in zip(m, t))]] = c
        rows.append(row)
    return rows


def multiply_span(gens: Iterable[Poly], k: int, n_vars: Optional[int] = None) -> GradedPiece:
    """Degree-``k`` piece of the ideal generated by homogeneous ``gens``."""
    gens = [g for g in gens if g]
    if n_vars is None:
        if not gens:
            raise ValueError("n_vars is required when there are no generators")
        n_vars = gens[0].n_vars
    rows = []
    for g in gens:
        if not g.is_homogeneous():
            raise ValueError(f"generator {g} is not homogeneous")
        rows.extend(times_monomials(g, k))
    return GradedPiece.span(n_vars, k, rows)


def euler_check(f: Poly) -> bool:
    """Whether ``sum_j x_j * df/dx_j == deg(f) * f`` holds exactly."""
    n = f.n_vars
    lhs = Poly(n)
    for j, xj in enumerate(variables(n)):
        lhs = lhs + xj * f.diff(j)
    return lhs == f * max(f.degree(), 0)


def determinant(mat: Sequence[Sequence[Poly]]) -> Poly:
    """Leibniz expansion; fine for the 4x4 and 5x5 Jacobians used here."""
    n = len(mat)
    nv = mat[0][0].n_vars
    total = Poly(nv)
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = Poly.const(nv, -1 if inv % 2 else 1)
        for i, j in enumerate(perm):
            entry = mat[i][j]
            if not entry:
                term = Poly(nv)
                break
            term = term * entry
        if term:
            total = total + term
    return total


def linear_form(coeffs: Sequence) -> Poly:
    n = len(coeffs)
    return Poly(n, {tuple(1 if j == i else 0 for j in range(n)): c for i, c in enumerate(coeffs)})
