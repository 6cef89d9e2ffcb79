from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from nodalfact.macaulay import (
    HVector,
    binom,
    gotzmann_polynomial,
    is_o_sequence,
    lower_bound_profile,
    lower_shadow,
    macaulay_expansion,
    shadow_chain,
    upper_growth,
)

from oracles import lex_segment_oracle


def test_binom_conventions():
    assert binom(5, 2) == 10
    assert binom(2, 5) == 0
    assert binom(-1, 0) == 0
    assert binom(-3, 2) == 0
    assert binom(0, 0) == 1


@pytest.mark.parametrize("C,d,eps", [
    (7, 3, (1, 1, -1)),
    (6, 6, (0, 0, 0, 0, 0, 0)),
    (0, 4, (-1, -1, -1, -1)),
])
def test_expansion_examples(C, d, eps):
    exp = macaulay_expansion(C, d)
    assert exp.coefficients == eps
    assert exp.value() == C


def test_expansion_string():
    assert str(macaulay_expansion(7, 3)) == "eps = [1, 1, -1]"


def test_expansion_rejects_bad_input():
    with pytest.raises(ValueError):
        macaulay_expansion(-1, 3)
    with pytest.raises(ValueError):
        macaulay_expansion(3, 0)


@pytest.mark.parametrize("C,d,value", [(3, 5, 3), (8, 7, 9), (5, 2, 7)])
def test_upper_growth_examples(C, d, value):
    assert upper_growth(C, d) == value


@pytest.mark.parametrize("C,d,value,strict", [
    (7, 3, 5, False),
    (1, 5, 1, False),
    # eps_1 = 0 here, so the bound is strict; the lex-segment oracle confirms
    # that the smallest possible shadow of six degree-6 monomials is 6
    (6, 6, 5, True),
])
def test_lower_shadow_examples(C, d, value, strict):
    s = lower_shadow(C, d)
    assert (s.value, s.strict) == (value, strict)


def test_lower_shadow_needs_base_two():
    with pytest.raises(ValueError):
        lower_shadow(3, 1)


@pytest.mark.parametrize("h,ok,where", [
    ((1, 2, 3, 0, 1), False, 4),
    ((1, 2, 3, 0, 0), True, None),
    ((1, 2, 3, 0, 2), False, 4),
    ((1, 7, 2), True, None),   # no constraint between h_0 and h_1
    ((2, 1), False, 0),
    ((1, 2, 4), False, 2),
])
def test_o_sequence_examples(h, ok, where):
    res = is_o_sequence(h)
    assert res.ok is ok and res.first_violation == where
    assert bool(res) is ok


@pytest.mark.parametrize("h,d,k,value", [(5, 7, 3, 4), (9, 7, 3, 5), (15, 7, 2, 5)])
def test_lower_bound_profile_examples(h, d, k, value):
    assert lower_bound_profile(h, d, k) == value


def test_lower_bound_profile_rejects_large_h():
    with pytest.raises(ValueError):
        lower_bound_profile(16, 7, 2)


def test_gotzmann_examples():
    g = gotzmann_polynomial(8, 7)
    assert g.dimension == 1 and g.polynomial_str() == "t + 1"
    assert [g(t) for t in range(7, 12)] == [8, 9, 10, 11, 12]
    g = gotzmann_polynomial(0, 5)
    assert g.dimension == -1 and g.polynomial_str() == "0"


def test_gotzmann_six_six_is_constant():
    # 6 = binom(6,6)+...+binom(1,1): six points, so p(t) = 6
    g = gotzmann_polynomial(6, 6)
    assert g.dimension == 0
    assert g.polynomial_str() == "6"
    assert all(g(t) == 6 for t in range(6, 12))


def test_gotzmann_polynomial_matches_values():
    for C in range(0, 60):
        for d in range(1, 6):
            g = gotzmann_polynomial(C, d)
            coeffs = g.polynomial()
            for t in range(d, d + 6):
                assert sum(c * t ** p for p, c in enumerate(coeffs)) == g(t)
            assert g(d) == C and g(d + 1) == upper_growth(C, d)


def test_lex_segment_oracle_small():
    for d in range(1, 6):
        up, down = lex_segment_oracle(d, 60)
        for C in range(61):
            assert up[C] == upper_growth(C, d)
            if d >= 2:
                assert down[C] == lower_shadow(C, d).bound()


def test_remark_identities():
    for d in range(2, 30):
        for h in range(0, 2 * d + 2):
            expected = h if h <= d else (h + 1 if h <= 2 * d else h + 2)
            assert upper_growth(h, d) == expected


def test_hvector_basics():
    h = HVector((1, 3, 3, 1, 0, 0))
    assert h.socle_degree == 3
    assert h.trimmed() == (1, 3, 3, 1)
    assert str(h) == "(1,3,3,1,0,0)"
    assert HVector((0, 0)).socle_degree is None
    with pytest.raises(ValueError):
        HVector((1, -1))


# -- properties ------------------------------------------------------------------

@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 12))
def test_expansion_round_trip(C, d):
    exp = macaulay_expansion(C, d)
    eps = exp.coefficients
    assert len(eps) == d
    assert all(a >= b for a, b in zip(eps, eps[1:]))
    assert eps[-1] >= -1
    assert sum(comb(i + exp.eps(i), i) if i + exp.eps(i) >= i else 0
               for i in range(1, d + 1)) == C


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2000), st.integers(0, 2000), st.integers(2, 10))
def test_operators_monotone(a, b, d):
    a, b = min(a, b), max(a, b)
    assert upper_growth(a, d) <= upper_growth(b, d)
    assert lower_shadow(a, d).value <= lower_shadow(b, d).value


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_shadow_chain_dominates_profile(data):
    d = data.draw(st.integers(2, 12))
    h = data.draw(st.integers(0, 2 * d + 1))
    k = data.draw(st.integers(0, d))
    assert shadow_chain(h, d, k) >= lower_bound_profile(h, d, k)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 12), min_size=1, max_size=9))
def test_zero_propagation(tail):
    h = [1] + tail
    if is_o_sequence(h):
        zeros = [k for k, v in enumerate(h) if v == 0]
        if zeros:
            assert all(v == 0 for v in h[zeros[0]:])
