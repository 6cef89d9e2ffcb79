import pytest

from nodalfact.casework import (
    Verdict,
    classify,
    degree_argument,
    derive_facts,
    enumerate_exceptional,
    filter_pipeline,
    kloosterman_bounds,
    node_count_bound,
    report,
)
from nodalfact.gorenstein import ci_hilbert_series, is_symmetric
from nodalfact.ideals import GradedIdeal, dk_profile
from nodalfact.polyarith import variables

V1 = (1, 3, 6, 6, 7, 6, 6, 3, 1)
V2 = (1, 3, 6, 7, 6, 7, 6, 3, 1)
V3 = (1, 3, 7, 6, 6, 6, 7, 3, 1)
V4 = (1, 3, 6, 6, 8, 6, 6, 3, 1)
FLAT3 = (1, 3, 6, 6, 6, 6, 6, 3, 1)
FLAT4 = (1, 4, 6, 6, 6, 6, 6, 4, 1)
SEVEN = (1, 3, 6, 8, 8, 8, 8, 8, 6, 3, 1)


# -- bounds ----------------------------------------------------------------------

def test_bounds_six_and_seven():
    b = kloosterman_bounds(6)
    assert b.lower == FLAT3 and b.total == 38 and b.cap == 40
    b = kloosterman_bounds(7)
    assert b.lower == SEVEN and b.total == 60 and b.cap == 60


def test_bounds_eight_margin():
    b = kloosterman_bounds(8)
    assert b.total == 86 == b.cap + 2
    assert b.margin == 2 * 8 - 14


@pytest.mark.parametrize("d", range(6, 21))
def test_bounds_shape(d):
    b = kloosterman_bounds(d)
    low = b.lower
    assert len(low) == 2 * d - 3
    assert is_symmetric(low)
    assert low[0] == 1 and low[1] == 3
    for k in range(2, d - 3):
        assert low[k] == 2 * k + 2
    for k in range(d - 3, d):
        assert low[k] == 2 * d - 6
    assert b.total == 2 * (d * d - 2 * d - 5)


def test_bound_chain_values():
    for d in range(7, 15):
        b = kloosterman_bounds(d)
        assert [s.expected for s in b.chain] == [2 * d - 9, 2 * d - 7]
        assert all(s.matches for s in b.chain)
    # at d = 6 the first step is strict: 5 = binom(3,2) + binom(2,1) gives
    # shadow 2 with bound 3 = 2d - 9
    first = kloosterman_bounds(6).chain[0]
    assert (first.C, first.base, first.value, first.strict, first.bound) == (5, 2, 2, True, 3)


def test_bounds_reject_small_degree():
    with pytest.raises(ValueError):
        kloosterman_bounds(5)


# -- enumeration -----------------------------------------------------------------

def test_enumerate_six():
    assert enumerate_exceptional(6) == sorted([FLAT3, V1, V2, V3, FLAT4, V4])


def test_enumerate_seven():
    assert enumerate_exceptional(7) == [SEVEN]


@pytest.mark.parametrize("d", range(8, 13))
def test_enumerate_empty(d):
    assert enumerate_exceptional(d) == []


@pytest.mark.parametrize("d", [6, 7])
def test_enumeration_invariants(d):
    b = kloosterman_bounds(d)
    for h in enumerate_exceptional(d):
        assert is_symmetric(h)
        assert all(a >= lo for a, lo in zip(h, b.lower))
        assert b.total <= sum(h) <= b.cap


# -- fact calculus -----------------------------------------------------------------

def test_facts_seven():
    st = derive_facts(SEVEN, 7)
    assert st.dmax[5] == -1
    assert st.dim_facts()[2] == (2, 2)
    assert st.dk_intervals[2] == (1, 1)
    assert st.dk_intervals[1] == (3, 3)
    assert st.dk_intervals[0][1] <= 5 and st.dk_intervals[-1][1] <= 5


def test_facts_flat_three():
    st = derive_facts(FLAT3, 6)
    assert st.dmax[3] == -1
    assert st.propagation_steps == 2
    assert st.dk_intervals[2] == (1, 1)
    assert all(hi <= 3 for _, hi in st.dk_intervals.values())


def test_facts_flat_four():
    st = derive_facts(FLAT4, 6)
    assert st.dim_I(1) == 0 and st.dim_I(2) == 4
    assert st.dmax[2] <= 2
    assert st.dk_intervals[2][1] <= 2
    assert st.dk_intervals[-1][1] <= 3


def test_facts_monotone():
    for h, d in [(SEVEN, 7), (FLAT3, 6), (FLAT4, 6)]:
        st = derive_facts(h, d)
        ts = sorted(st.dmax)
        assert all(st.dmax[a] >= st.dmax[b] for a, b in zip(ts, ts[1:]))
        assert all(st.dmin[a] >= st.dmin[b] for a, b in zip(ts, ts[1:]))
        assert all(st.dmin[t] <= st.dmax[t] for t in ts)


def test_facts_reject_asymmetric():
    with pytest.raises(ValueError):
        derive_facts((1, 3, 6, 6, 6, 6, 5, 3, 1), 6)


def test_facts_reject_wrong_length():
    with pytest.raises(ValueError):
        derive_facts(FLAT3, 7)


# -- degree argument ---------------------------------------------------------------

def test_degree_argument_seven():
    # one propagation step, as in the pipeline; the fixpoint rejects by the sum alone
    out = degree_argument(derive_facts(SEVEN, 7, max_propagation=1))
    assert out.rejected and out.verdict is Verdict.REJECTED_DEGREE
    assert [k[0] for k in out.killed_by_ci] == [(1, 3, 5, 5)]
    tup, k, hv, cv = out.killed_by_ci[0]
    assert (k, hv, cv) == (3, 8, 9)
    assert degree_argument(derive_facts(SEVEN, 7)).rejected


def test_degree_argument_flat():
    out = degree_argument(derive_facts(FLAT3, 6))
    assert out.rejected and out.max_sum == 10 and out.threshold == 12
    out = degree_argument(derive_facts(FLAT4, 6))
    assert out.rejected and out.max_sum == 11


@pytest.mark.parametrize("d", range(6, 10))
def test_degree_argument_keeps_realizable_vector(d):
    degs = (1, 2, d - 2, d - 1)
    h = ci_hilbert_series(degs)
    out = degree_argument(derive_facts(h, d))
    assert out.verdict is Verdict.SURVIVES
    assert degs in out.survivors
    # the actual ideal has exactly that d_k profile
    x = variables(4)
    I = GradedIdeal(4, [x[i] ** a for i, a in enumerate(degs)])
    assert dk_profile(I, 2 * d - 4).d_values == degs


# -- pipeline ----------------------------------------------------------------------

def test_filter_six():
    fr = filter_pipeline(6)
    verdicts = {v.h: v.verdict for v in fr.vectors}
    assert verdicts == {
        V2: Verdict.REJECTED_UNIMODAL, V3: Verdict.REJECTED_UNIMODAL,
        V1: Verdict.REJECTED_STANLEY, V4: Verdict.REJECTED_STANLEY,
        FLAT3: Verdict.REJECTED_DEGREE, FLAT4: Verdict.REJECTED_DEGREE,
    }
    assert fr.survivors == []
    assert [v.h for v in fr.vectors] == enumerate_exceptional(6)


def test_classify_uses_fewest_propagation_steps():
    assert classify(FLAT3, 6).propagation_steps == 1
    assert classify(FLAT4, 6).propagation_steps == 2
    assert classify(SEVEN, 7).propagation_steps == 1


@pytest.mark.parametrize("d", range(6, 13))
def test_filter_has_no_survivors(d):
    assert filter_pipeline(d).survivors == []


def test_filter_eight_is_vacuous():
    fr = filter_pipeline(8)
    assert fr.vectors == [] and "holds outright" in fr.conclusion


def test_report_key_order():
    doc = report(6)
    assert list(doc) == ["d", "bounds", "bounds_sum", "cap", "margin", "bound_chain",
                         "exceptional", "vectors", "survivors", "conclusion", "citations",
                         "notes"]
    assert [v["verdict"] for v in doc["vectors"]].count("RejectedDegreeArgument") == 2
    assert list(doc["vectors"][0])[:5] == ["h", "sum", "verdict", "rule_trace", "citations"]


# -- node count --------------------------------------------------------------------

@pytest.mark.parametrize("h,n", [((1, 3, 5, 7, 8, 7, 5, 3, 1), 40),
                                 ((1, 2, 3, 4, 5, 4, 3, 2, 1), 25), ((1,), 1)])
def test_node_count_bound(h, n):
    assert node_count_bound(h) == n
