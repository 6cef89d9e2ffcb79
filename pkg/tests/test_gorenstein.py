import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nodalfact.gorenstein import (
    CIDegrees,
    DualFunctional,
    Stanley,
    apolar_ideal,
    catalecticant,
    ci_hilbert_series,
    ci_socle_degree,
    is_symmetric,
    is_unimodal,
    jacobian_determinant,
    socle_check,
    stanley_admissible,
    stanley_difference,
    tate_socle_check,
)
from nodalfact.ideals import GradedIdeal, hilbert_function
from nodalfact.polyarith import GradedPiece, Poly, graded_dim, monomials, variables

from oracles import box_series, naive_rank, poly_product_series

x0, x1, x2, x3 = variables(4)


# -- apolar ideals -----------------------------------------------------------------

def test_apolar_power_of_variable():
    for e in range(0, 6):
        I, h = apolar_ideal(DualFunctional.dual_monomial(4, (e, 0, 0, 0)))
        assert h == (1,) * (e + 1) + (0,)
        assert socle_check(I, e).is_gorenstein


def test_apolar_squarefree_product():
    I, h = apolar_ideal(DualFunctional.dual_monomial(4, (1, 1, 1, 1)))
    assert h == (1, 4, 6, 4, 1, 0)
    assert I.piece(2).dim == 4
    for v in (x0, x1, x2, x3):
        assert I.piece(2).contains(v ** 2)
    rep = socle_check(I, 4)
    assert rep.socle_dims == (0, 0, 0, 0, 1)


def test_apolar_generic_degree_eight():
    I, h = apolar_ideal(DualFunctional.random(4, 8, seed=1))
    assert h == tuple(min(graded_dim(4, k), graded_dim(4, 8 - k)) for k in range(9)) + (0,)
    assert h[:9] == (1, 4, 10, 20, 35, 20, 10, 4, 1)


def test_catalecticant_rank_matches_naive():
    lam = DualFunctional.random(4, 6, seed=3)
    for k in range(7):
        M = catalecticant(lam, k)
        rows = [[Fraction(int(M[i, j].p), int(M[i, j].q)) for j in range(M.ncols())]
                for i in range(M.nrows())]
        _, h = apolar_ideal(lam)
        assert naive_rank(rows) == h[k]


def test_apolar_rejects_zero():
    with pytest.raises(ValueError):
        apolar_ideal(DualFunctional(4, 3, tuple([Fraction(0)] * graded_dim(4, 3))))


def test_functional_evaluation():
    lam = DualFunctional.from_terms(4, 2, {(1, 1, 0, 0): 3, (0, 0, 2, 0): -1})
    assert lam(x0 * x1) == 3
    assert lam(x0 * x1 + 2 * x2 ** 2) == 1
    assert lam(x3 ** 2) == 0


# -- socle -----------------------------------------------------------------------

def test_socle_of_maximal_ideal():
    rep = socle_check(GradedIdeal(4, [x0, x1, x2, x3]), 0)
    assert rep.socle_dims == (1,) and rep.is_gorenstein


def test_socle_not_gorenstein():
    y0, y1 = variables(2)
    I = GradedIdeal(2, [y0 ** 2, y0 * y1, y1 ** 2])
    rep = socle_check(I, 1)
    assert rep.socle_dims == (0, 2)
    assert not rep.is_gorenstein


def test_socle_of_ci_with_wrong_degree():
    I = GradedIdeal(4, [x0 ** 2, x1 ** 2, x2 ** 2, x3 ** 2])
    assert socle_check(I, 4).is_gorenstein
    assert not socle_check(I, 3).is_gorenstein


# -- h-vector tests ------------------------------------------------------------------

@pytest.mark.parametrize("h,sym", [((1, 3, 5, 7, 8, 7, 5, 3, 1), True), ((1, 2, 3), False),
                                   ((1,), True), ((1, 2, 1, 0, 0), True)])
def test_is_symmetric(h, sym):
    assert is_symmetric(h) is sym


def test_is_symmetric_rejects_zero():
    with pytest.raises(ValueError):
        is_symmetric((0, 0))


@pytest.mark.parametrize("h,uni", [
    ((1, 3, 6, 7, 6, 7, 6, 3, 1), False),
    ((1, 3, 7, 6, 6, 6, 7, 3, 1), False),
    ((1, 3, 6, 8, 8, 8, 8, 8, 6, 3, 1), True),
    ((1,), True),
])
def test_is_unimodal(h, uni):
    assert is_unimodal(h) is uni


@pytest.mark.parametrize("h,verdict", [
    ((1, 3, 6, 6, 7, 6, 6, 3, 1), Stanley.REJECTED),
    ((1, 3, 6, 6, 8, 6, 6, 3, 1), Stanley.REJECTED),
    ((1, 3, 6, 6, 6, 6, 6, 3, 1), Stanley.ADMISSIBLE),
    ((1, 4, 6, 6, 6, 6, 6, 4, 1), Stanley.INAPPLICABLE),
    ((1, 3, 5, 3), Stanley.REJECTED),
])
def test_stanley(h, verdict):
    assert stanley_admissible(h) is verdict


def test_stanley_difference():
    assert stanley_difference((1, 3, 6, 6, 6, 6, 6, 3, 1)) == (1, 2, 3, 0, 0)


# -- complete intersections ----------------------------------------------------------

@pytest.mark.parametrize("degs,h", [
    ((1, 2, 4, 5), (1, 3, 5, 7, 8, 7, 5, 3, 1)),
    ((1, 1, 5, 5), (1, 2, 3, 4, 5, 4, 3, 2, 1)),
    ((2, 2), (1, 2, 1)),
])
def test_ci_series_examples(degs, h):
    assert ci_hilbert_series(degs) == h
    assert ci_hilbert_series(CIDegrees(degs)) == h


@pytest.mark.parametrize("degs,N", [((1, 2, 4, 5), 8), ((1, 1, 1, 1), 0), ((3, 3, 3, 3), 8)])
def test_ci_socle_degree(degs, N):
    assert ci_socle_degree(degs) == N


def test_ci_rejects_bad_degrees():
    with pytest.raises(ValueError):
        CIDegrees((2, 0))


@pytest.mark.parametrize("gens,det", [
    ([x0, x1, x2, x3], Poly.const(4, 1)),
    ([x0 ** 2, x1 ** 2, x2 ** 2, x3 ** 2], 16 * x0 * x1 * x2 * x3),
    ([x0, x1 ** 2, x2 ** 4, x3 ** 5], 40 * x1 * x2 ** 3 * x3 ** 4),
])
def test_tate_examples(gens, det):
    rep = tate_socle_check(gens)
    assert rep.holds
    assert rep.determinant == det
    assert rep.socle_degree == sum(g.homogeneous_degree - 1 for g in gens)


def test_tate_generic_quadrics():
    rng = random.Random(5)
    gens = [Poly(4, {m: rng.randint(-3, 3) for m in monomials(4, 2)}) for _ in range(4)]
    assert tate_socle_check(gens).holds


def test_tate_rejects_non_artinian():
    with pytest.raises(ValueError):
        tate_socle_check([x0, x1, x2, x0 + x1])


def test_jacobian_determinant_of_linear_forms():
    assert jacobian_determinant([x1, x0, x2, x3]) == Poly.const(4, -1)


# -- properties ------------------------------------------------------------------

@settings(max_examples=12, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 6))
def test_apolar_is_gorenstein(seed, e):
    I, h = apolar_ideal(DualFunctional.random(4, e, seed))
    assert is_symmetric(h)
    rep = socle_check(I, e)
    assert rep.is_gorenstein and rep.socle_dims[e] == 1


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(2, 6))
def test_apolar_sparse_functionals(seed, e):
    rng = random.Random(seed)
    mons = monomials(4, e)
    terms = {rng.choice(mons): rng.randint(1, 5) for _ in range(rng.randint(1, 3))}
    I, h = apolar_ideal(DualFunctional.from_terms(4, e, terms))
    assert is_symmetric(h)
    assert socle_check(I, e).is_gorenstein


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=1, max_size=5))
def test_ci_series_structure(degs):
    h = ci_hilbert_series(degs)
    assert list(h) == box_series(degs) == poly_product_series(degs, len(degs))
    assert is_symmetric(h)
    assert h.socle_degree == ci_socle_degree(degs)
    prod = 1
    for d in degs:
        prod *= d
    assert sum(h) == prod


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 9), min_size=1, max_size=10))
def test_stanley_implies_symmetric(h):
    h = [1] + h
    if stanley_admissible(h) is Stanley.ADMISSIBLE:
        assert is_symmetric(h)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_ci_equality_principle(seed):
    rng = random.Random(seed)
    degs = [rng.randint(1, 3) for _ in range(4)]
    cid = CIDegrees(tuple(degs))
    N = ci_socle_degree(cid)
    base = cid.monomial_generators()
    k = rng.randint(1, max(N, 1))
    extra = Poly(4, {m: rng.randint(-2, 2) for m in rng.sample(monomials(4, k), 2)})
    if not extra:
        return
    I = GradedIdeal(4, base + [extra])
    CI = GradedIdeal(4, base)
    h = hilbert_function(I, N + 1)
    if h.socle_degree == N:
        # same socle degree as the contained complete intersection
        assert all(I.piece(j) == CI.piece(j) for j in range(N + 2))
