"""Independent reference computations used by the tests.

Nothing here imports the package's algorithms; each oracle recomputes its
answer by a different (slower, more direct) route.
"""

from fractions import Fraction
from math import comb, prod


def compositions(n, d):
    """Exponent vectors of degree ``d`` in ``n`` variables, lex descending."""
    if n == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in compositions(n - 1, d - a):
            yield (a,) + rest


def naive_rank(rows):
    """Plain Gaussian elimination over Fractions with partial row swaps."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    rank, ncols = 0, len(m[0])
    for c in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def box_series(degrees):
    """Hilbert function of the monomial CI: count exponent vectors in the box
    ``0 <= a_i < d_i`` by total degree."""
    top = sum(d - 1 for d in degrees)
    counts = [0] * (top + 1)

    def walk(i, total):
        if i == len(degrees):
            counts[total] += 1
            return
        for a in range(degrees[i]):
            walk(i + 1, total + a)

    walk(0, 0)
    return counts


def ci_box_size(degrees):
    return prod(degrees)


def lex_segment_oracle(d, c_max):
    """For the lex-last ``C`` monomials of degree ``d`` (enough variables),
    return lists ``up[C]`` (degree-(d+1) monomials all of whose degree-d
    divisors lie in the segment) and ``down[C]`` (size of the lower shadow)."""
    n = 1
    while comb(n - 1 + d, d) < c_max:
        n += 1
    segment = list(compositions(n, d))[::-1]
    chosen, upper, shadow = set(), set(), set()
    up, down = [0], [0]
    for C in range(1, c_max + 1):
        m = segment[C - 1]
        chosen.add(m)
        for i in range(n):
            u = m[:i] + (m[i] + 1,) + m[i + 1:]
            if all(u[j] == 0 or u[:j] + (u[j] - 1,) + u[j + 1:] in chosen for j in range(n)):
                upper.add(u)
            if m[i]:
                shadow.add(m[:i] + (m[i] - 1,) + m[i + 1:])
        up.append(len(upper))
        down.append(len(shadow))
    return up, down


def monomial_hilbert(gens, n, k):
    """``dim (S/I)_k`` for a monomial ideal given by exponent vectors."""
    return sum(1 for m in compositions(n, k)
               if not any(all(a <= b for a, b in zip(g, m)) for g in gens))


def monomial_base_locus_dim(gens, n, t):
    """Projective dimension of the zero set of the monomials of degree <= t:
    a union of coordinate subspaces, so the answer is ``n - 1 - tau`` where
    ``tau`` is the smallest set of variables meeting every support."""
    supports = [frozenset(i for i, a in enumerate(g) if a) for g in gens if sum(g) <= t]
    for size in range(n + 1):
        for T in _subsets(n, size):
            if all(s & T for s in supports):
                return n - 1 - size
    return -1


def _subsets(n, size):
    from itertools import combinations
    for c in combinations(range(n), size):
        yield frozenset(c)


def poly_product_series(degrees, n_vars):
    """Coefficients of prod (1 - t^d) / (1 - t)^n by dense power series."""
    top = sum(d - 1 for d in degrees) + 1
    length = top + sum(degrees) + 1
    num = [1] + [0] * (length - 1)
    for d in degrees:
        num = [num[i] - (num[i - d] if i >= d else 0) for i in range(length)]
    inv = [comb(i + n_vars - 1, n_vars - 1) for i in range(length)]
    out = [sum(num[j] * inv[i - j] for j in range(i + 1)) for i in range(length)]
    while out and out[-1] == 0:
        out.pop()
    return out


def complex_rank(rows, tol=1e-8):
    """Numerical rank of a small complex matrix by elimination with full pivoting."""
    m = [list(row) for row in rows]
    rank = 0
    while m and m[0]:
        best = max(((abs(v), i, j) for i, row in enumerate(m) for j, v in enumerate(row)),
                   default=(0, 0, 0))
        if best[0] < tol:
            break
        _, i, j = best
        piv = m.pop(i)
        m = [[a - row[j] / piv[j] * b for a, b in zip(row, piv)] for row in m]
        m = [row[:j] + row[j + 1:] for row in m]
        rank += 1
    return rank
