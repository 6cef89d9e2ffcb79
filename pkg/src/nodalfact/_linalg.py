"""Thin exact linear-algebra layer over python-flint rational matrices."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import flint


def to_fmpq(x) -> flint.fmpq:
    if isinstance(x, flint.fmpq):
        return x
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    return flint.fmpq(x)


def to_fraction(x: flint.fmpq) -> Fraction:
    return Fraction(int(x.p), int(x.q))


def matrix(rows: Sequence[Sequence], ncols: int) -> flint.fmpq_mat:
    if not rows:
        return flint.fmpq_mat(0, ncols)
    flat = [to_fmpq(v) for row in rows for v in row]
    return flint.fmpq_mat(len(rows), ncols, flat)


def zeros(nrows: int, ncols: int) -> flint.fmpq_mat:
    return flint.fmpq_mat(nrows, ncols)


def vstack(mats: Iterable[flint.fmpq_mat], ncols: int) -> flint.fmpq_mat:
    mats = [m for m in mats if m.nrows() > 0]
    if not mats:
        return flint.fmpq_mat(0, ncols)
    if len(mats) == 1:
        return mats[0]
    entries = []
    for m in mats:
        entries.extend(m.entries())
    return flint.fmpq_mat(sum(m.nrows() for m in mats), ncols, entries)


def select_rows(m: flint.fmpq_mat, idx: Sequence[int]) -> flint.fmpq_mat:
    n = m.ncols()
    if not idx:
        return flint.fmpq_mat(0, n)
    ent = m.entries()
    out = []
    for i in idx:
        out.extend(ent[i * n:(i + 1) * n])
    return flint.fmpq_mat(len(idx), n, out)


def rref(m: flint.fmpq_mat) -> tuple[flint.fmpq_mat, list[int]]:
    """Reduced row echelon form with zero rows dropped, plus pivot columns."""
    nrows, ncols = m.nrows(), m.ncols()
    if nrows == 0 or ncols == 0:
        return flint.fmpq_mat(0, ncols), []
    r, rank = m.rref()
    ent = r.entries()
    pivots = []
    for i in range(rank):
        row = ent[i * ncols:(i + 1) * ncols]
        pivots.append(next(j for j, v in enumerate(row) if v != 0))
    return flint.fmpq_mat(rank, ncols, ent[:rank * ncols]), pivots


def rank(m: flint.fmpq_mat) -> int:
    if m.nrows() == 0 or m.ncols() == 0:
        return 0
    return m.rank()


def nullspace(m: flint.fmpq_mat) -> flint.fmpq_mat:
    """Rows spanning ``{x : m x = 0}``, in reduced echelon form."""
    ncols = m.ncols()
    r, pivots = rref(m)
    free = [j for j in range(ncols) if j not in set(pivots)]
    if not free:
        return flint.fmpq_mat(0, ncols)
    ent = r.entries()
    out = [flint.fmpq(0)] * (len(free) * ncols)
    for a, f in enumerate(free):
        out[a * ncols + f] = flint.fmpq(1)
        for i, p in enumerate(pivots):
            out[a * ncols + p] = -ent[i * ncols + f]
    basis = flint.fmpq_mat(len(free), ncols, out)
    return rref(basis)[0]


def left_kernel(m: flint.fmpq_mat) -> flint.fmpq_mat:
    """Rows ``y`` with ``y m = 0``."""
    return nullspace(m.transpose())


def rows_as_fractions(m: flint.fmpq_mat) -> list[list[Fraction]]:
    n = m.ncols()
    ent = [to_fraction(v) for v in m.entries()]
    return [ent[i * n:(i + 1) * n] for i in range(m.nrows())]
