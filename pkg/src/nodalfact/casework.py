"""Bounds and case analysis for Gorenstein h-vectors of socle degree 2d-4.

The engine works on symbolic h-vectors.  A small set of sound rules turns an
h-vector into interval facts about ``dim Bs|I_t|`` (4 variables), and the
degree argument compares the resulting ``d_k`` profiles with complete
intersections.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .gorenstein import Stanley, ci_hilbert_series, is_symmetric, is_unimodal, stanley_admissible, stanley_difference
from .macaulay import HVector, lower_shadow
from .polyarith import graded_dim

N_VARS = 4  # the section ring S = R/(l) of a hypersurface in P^4
DIM_RANGE = (-1, N_VARS - 1)


# -- bounds --------------------------------------------------------------------

@dataclass(frozen=True)
class BoundStep:
    """One shadow evaluation ``C_{*base}`` used when deriving the bounds."""

    C: int
    base: int
    value: int
    strict: bool
    expected: int

    @property
    def bound(self) -> int:
        return self.value + (1 if self.strict else 0)

    @property
    def matches(self) -> bool:
        return self.value == self.expected


@dataclass(frozen=True)
class BoundsProfile:
    d: int
    lower: HVector
    cap: int
    chain: tuple[BoundStep, ...] = ()

    @property
    def total(self) -> int:
        return sum(self.lower)

    @property
    def margin(self) -> int:
        """How far the minimal sum exceeds the cap (``2d - 14``)."""
        return self.total - self.cap


def _check_d(d: int) -> None:
    if d < 6:
        raise ValueError(f"d must be at least 6, got {d}")


def kloosterman_bounds(d: int) -> BoundsProfile:
    """Pointwise minima of ``h_I`` on the branch ``h_I(d-4) > 2d-7``."""
    _check_d(d)
    N = 2 * d - 4
    half = [1, 3]
    for k in range(2, d - 1):
        half.append(2 * k + 2 if k <= d - 4 else 2 * d - 6)
    # half now covers k = 0 .. d-2 (the middle index)
    lower = half + half[:-1][::-1]
    assert len(lower) == N + 1
    chain = (
        BoundStep(2 * d - 7, d - 4, *_shadow(2 * d - 7, d - 4), expected=2 * d - 9),
        BoundStep(2 * d - 6, d, *_shadow(2 * d - 6, d), expected=2 * d - 7),
    )
    return BoundsProfile(d, HVector(lower), 2 * (d - 2) * (d - 1), chain)


def _shadow(C: int, base: int) -> tuple[int, bool]:
    s = lower_shadow(C, base)
    return s.value, s.strict


def enumerate_exceptional(d: int) -> list[HVector]:
    """Symmetric vectors of length ``2d-3`` above the bounds whose sum does
    not exceed the cap, in lexicographic order."""
    prof = kloosterman_bounds(d)
    budget = prof.cap - prof.total
    if budget < 0:
        return []
    mid = d - 2
    lower = prof.lower
    out = []

    def extend(k: int, left: int, extra: list[int]):
        if k > mid:
            half = [lower[j] + extra[j] for j in range(mid + 1)]
            out.append(HVector(half + half[:-1][::-1]))
            return
        cost = 1 if k == mid else 2
        for e in range(left // cost + 1):
            extend(k + 1, left - e * cost, extra + [e])

    extend(1, budget, [0])
    return sorted(out)


def node_count_bound(h: Sequence[int]) -> int:
    """Lower bound on the number of nodes carried by an admissible h-vector."""
    return sum(h)


# -- fact calculus -------------------------------------------------------------

class Verdict(enum.Enum):
    REJECTED_UNIMODAL = "RejectedUnimodal"
    REJECTED_STANLEY = "RejectedStanley"
    REJECTED_DEGREE = "RejectedDegreeArgument"
    SURVIVES = "Survives"


@dataclass
class CaseState:
    h: HVector
    d: int
    dmin: dict[int, int]
    dmax: dict[int, int]
    dk_intervals: dict[int, tuple[int, int]] = field(default_factory=dict)
    trace: list[str] = field(default_factory=list)
    propagation_steps: int = 0
    contradictions: list[str] = field(default_factory=list)

    @property
    def degrees(self) -> range:
        return range(1, len(self.dmin) + 1)

    def dim_facts(self) -> dict[int, tuple[int, int]]:
        return {t: (self.dmin[t], self.dmax[t]) for t in self.degrees}

    @property
    def consistent(self) -> bool:
        return not self.contradictions

    def dim_I(self, t: int) -> int:
        return graded_dim(N_VARS, t) - self.h_at(t)

    def h_at(self, t: int) -> int:
        return self.h[t] if 0 <= t < len(self.h) else 0


def _tighten(state: CaseState, t: int, lo: Optional[int] = None, hi: Optional[int] = None) -> bool:
    changed = False
    if hi is not None and hi < state.dmax[t]:
        state.dmax[t] = hi
        changed = True
    if lo is not None and lo > state.dmin[t]:
        state.dmin[t] = lo
        changed = True
    if state.dmin[t] > state.dmax[t]:
        msg = f"t={t}: interval [{state.dmin[t]}, {state.dmax[t]}] is empty"
        if msg not in state.contradictions:
            state.contradictions.append(msg)
    return changed


def _monotone(state: CaseState) -> None:
    """R5: base loci shrink as t grows."""
    ts = list(state.degrees)
    for a, b in zip(ts, ts[1:]):
        _tighten(state, b, hi=state.dmax[a])
    for a, b in reversed(list(zip(ts, ts[1:]))):
        _tighten(state, a, lo=state.dmin[b])


def derive_facts(h: Sequence[int], d: int, max_propagation: Optional[int] = None) -> CaseState:
    """Interval facts for ``dim Bs|I_t|`` derived from ``h`` by rules R1-R5.

    ``max_propagation`` limits how many times R2 is applied (``None`` runs it
    to a fixpoint).  R1 is the assumption that ``Bs|I_{d-1}|`` is empty.
    """
    h = HVector(h).trimmed()
    if not h or not is_symmetric(h):
        raise ValueError(f"h-vector {h} is not symmetric")
    N = 2 * d - 4
    if len(h) - 1 != N:
        raise ValueError(f"h-vector {h} has socle degree {len(h) - 1}, expected {N}")
    T = N + 1
    state = CaseState(h, d, {t: DIM_RANGE[0] for t in range(1, T + 1)},
                      {t: DIM_RANGE[1] for t in range(1, T + 1)})

    state.trace.append(f"R1: Bs|I_{d - 1}| = empty (assumed)")
    _tighten(state, d - 1, hi=-1)
    _monotone(state)

    for t in state.degrees:
        if state.dim_I(t) >= 1 and _tighten(state, t, hi=2):
            state.trace.append(f"R3: dim I_{t} = {state.dim_I(t)} >= 1, so dim Bs|I_{t}| <= 2")

    if state.dim_I(1) == 1:
        for t in state.degrees:
            prev = graded_dim(N_VARS, t - 1)
            dim_t = state.dim_I(t)
            if dim_t > prev:
                if _tighten(state, t, hi=1):
                    state.trace.append(f"R4: dim I_{t} = {dim_t} > dim S_{t - 1} = {prev}, "
                                       f"so dim Bs|I_{t}| <= 1")
            elif dim_t == prev:
                if _tighten(state, t, lo=2, hi=2):
                    state.trace.append(f"R4: dim I_{t} = dim S_{t - 1} = {prev}, "
                                       f"so Bs|I_{t}| is the plane f = 0")
            else:
                state.contradictions.append(
                    f"t={t}: dim I_{t} = {dim_t} < dim f*S_{t - 1} = {prev}")
    _monotone(state)

    while max_propagation is None or state.propagation_steps < max_propagation:
        k = _propagation_site(state)
        if k is None:
            break
        _tighten(state, k - 1, hi=-1)
        _monotone(state)
        state.propagation_steps += 1
        state.trace.append(f"R2: h_{k} = h_{k - 1} = h_{k - 2} = {h[k]} and "
                           f"Bs|I_{k}| = empty, so Bs|I_{k - 1}| = empty")

    state.dk_intervals = _dk_intervals(state)
    for msg in state.contradictions:
        state.trace.append(f"inconsistent: {msg}")
    return state


def _propagation_site(state: CaseState) -> Optional[int]:
    h = state.h
    for k in sorted(state.degrees, reverse=True):
        if k < 2 or state.dmax[k] != -1 or k - 1 < 1 or state.dmax[k - 1] == -1:
            continue
        if state.h_at(k) == state.h_at(k - 1) == state.h_at(k - 2):
            return k
    return None


def _dk_intervals(state: CaseState) -> dict[int, tuple[int, int]]:
    out = {}
    ts = list(state.degrees)
    for k in range(N_VARS - 2, -2, -1):
        lo = next((t for t in ts if state.dmin[t] <= k), None)
        hi = next((t for t in ts if state.dmax[t] <= k), None)
        if lo is None or hi is None:
            raise AssertionError("the axiom guarantees an empty base locus")
        out[k] = (lo, hi)
    return out


def format_intervals(state: CaseState) -> str:
    parts = []
    for k, (lo, hi) in state.dk_intervals.items():
        parts.append(f"d_{k} in [{lo},{hi}]")
    return ", ".join(parts)


# -- degree argument -------------------------------------------------------------

@dataclass
class DegreeOutcome:
    rejected: bool
    survivors: list[tuple[int, ...]]
    killed_by_ci: list[tuple[tuple[int, ...], int, int, int]]  # (tuple, degree, h, ci value)
    max_sum: int
    threshold: int
    trace: list[str]

    @property
    def verdict(self) -> Verdict:
        return Verdict.REJECTED_DEGREE if self.rejected else Verdict.SURVIVES


def degree_argument(state: CaseState, d: Optional[int] = None) -> DegreeOutcome:
    """Enumerate ``d_2 <= d_1 <= d_0 <= d_{-1}`` inside the derived intervals.

    A tuple is viable when ``sum d_k >= (2d-4) + 4``.  When the sum is exactly
    that value the contained complete intersection has the same socle degree,
    so it must equal the ideal and ``h`` must be its Hilbert function.
    """
    d = state.d if d is None else d
    N = 2 * d - 4
    threshold = N + N_VARS
    ranges = [range(lo, hi + 1) for lo, hi in state.dk_intervals.values()]
    max_sum = sum(hi for _, hi in state.dk_intervals.values())
    trace: list[str] = []
    survivors = []
    killed = []
    if not state.consistent:
        trace.append("facts are inconsistent; no d_k profile exists")
        return DegreeOutcome(True, [], [], max_sum, threshold, trace)
    for tup in itertools.product(*ranges):
        if any(a > b for a, b in zip(tup, tup[1:])):
            continue
        total = sum(tup)
        if total < threshold:
            continue
        if total == threshold:
            ci = ci_hilbert_series(tup)
            h = state.h
            if tuple(ci) != tuple(h):
                k = next(i for i in range(max(len(ci), len(h)))
                         if (ci[i] if i < len(ci) else 0) != (h[i] if i < len(h) else 0))
                killed.append((tup, k, h[k] if k < len(h) else 0, ci[k] if k < len(ci) else 0))
                continue
        survivors.append(tup)
    his = "+".join(str(hi) for _, hi in state.dk_intervals.values())
    if max_sum < threshold:
        trace.append(f"sum of d_k <= {his} = {max_sum} < {threshold}")
    for tup, k, hv, cv in killed:
        trace.append(f"tuple {_fmt_tuple(tup)} has sum {threshold}; complete intersection "
                     f"h({k}) = {cv} differs from h({k}) = {hv}")
    if survivors:
        trace.append("surviving tuples: " + ", ".join(_fmt_tuple(t) for t in survivors))
    else:
        trace.append("no d_k profile survives")
    return DegreeOutcome(not survivors, survivors, killed, max_sum, threshold, trace)


def _fmt_tuple(t: Sequence[int]) -> str:
    return "(" + ",".join(str(v) for v in t) + ")"


# -- pipeline --------------------------------------------------------------------

BRANCH_CITATIONS = (
    "cited: on the branch h_I(d-4) <= 2d-7, Sing(X) contains a complete intersection "
    "of multidegree (1,1,d-1,d-1) or (1,2,d-2,d-1) (not mechanized)",
    "cited: in that case X contains a plane or a quadric surface, hence is not factorial "
    "(not mechanized)",
)
AXIOM_NOTE = ("R1 encodes the emptiness of Bs|I_{d-1}| for the Gorenstein section of a "
              "nodal hypersurface; it is an assumption of this branch")
THRESHOLD_NOTE = ("the degree argument uses the threshold sum d_k >= N + n + 1 = 2d; "
                  "a comparison of the complete-intersection socle degree against 2d "
                  "is not used")


@dataclass
class VectorResult:
    h: HVector
    verdict: Verdict
    rule_trace: list[str]
    citations: list[str]
    propagation_steps: Optional[int] = None
    survivors: list[tuple[int, ...]] = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {
            "h": list(self.h),
            "sum": sum(self.h),
            "verdict": self.verdict.value,
            "rule_trace": list(self.rule_trace),
            "citations": list(self.citations),
        }
        if self.survivors:
            out["survivors"] = [list(t) for t in self.survivors]
        return out


@dataclass
class FilterReport:
    d: int
    bounds: BoundsProfile
    vectors: list[VectorResult]
    notes: list[str]

    @property
    def survivors(self) -> list[HVector]:
        return [v.h for v in self.vectors if v.verdict is Verdict.SURVIVES]

    @property
    def conclusion(self) -> str:
        cap = self.bounds.cap
        if not self.vectors:
            return (f"no exceptional h-vector: every admissible h has sum >= {self.bounds.total} "
                    f"> {cap}, so the node-count bound sum h > 2(d-2)(d-1) holds outright")
        if self.survivors:
            return (f"{len(self.survivors)} vector(s) survive; the node-count bound "
                    f"sum h > {cap} is not established on this branch")
        return (f"all {len(self.vectors)} exceptional vector(s) rejected; the node-count bound "
                f"sum h > 2(d-2)(d-1) = {cap} stands on this branch")

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "bounds": list(self.bounds.lower),
            "bounds_sum": self.bounds.total,
            "cap": self.bounds.cap,
            "vectors": [v.to_dict() for v in self.vectors],
            "survivors": [list(h) for h in self.survivors],
            "conclusion": self.conclusion,
            "citations": list(BRANCH_CITATIONS),
            "notes": list(self.notes),
        }


def _unimodal_witness(h: Sequence[int]) -> str:
    for i in range(1, len(h) - 1):
        if h[i] < h[i - 1]:
            j = next((j for j in range(i, len(h) - 1) if h[j + 1] > h[j]), None)
            if j is not None:
                return f"h drops at k={i} ({h[i - 1]} > {h[i]}) and rises at k={j + 1} ({h[j]} < {h[j + 1]})"
    return "h is unimodal"


def classify(h: Sequence[int], d: int) -> VectorResult:
    """Run one h-vector through unimodality, Stanley and the degree argument.

    R2 is applied one step at a time, and the degree argument is tried after
    each step, so the reported proof uses as few propagation steps as possible.
    """
    h = HVector(h)
    if not is_unimodal(h):
        return VectorResult(h, Verdict.REJECTED_UNIMODAL, [_unimodal_witness(h)],
                            ["unimodality of Gorenstein h-vectors in this range"])
    st = stanley_admissible(h)
    if st is Stanley.REJECTED:
        diff = stanley_difference(h)
        return VectorResult(h, Verdict.REJECTED_STANLEY,
                            [f"difference sequence {_fmt_tuple(diff)} is not an O-sequence"],
                            ["Stanley's characterization of Gorenstein h-vectors with h_1 <= 3"])
    pre = [] if st is Stanley.ADMISSIBLE else ["Stanley criterion inapplicable (h_1 > 3); passed on"]
    depth = 0
    while True:
        state = derive_facts(h, d, max_propagation=depth)
        outcome = degree_argument(state, d)
        exhausted = state.propagation_steps < depth
        if outcome.rejected or exhausted:
            break
        depth += 1
    trace = pre + state.trace + [format_intervals(state)] + outcome.trace
    cites = ["base-locus lemma: sum of d_k >= N + n + 1",
             "a contained complete intersection of equal socle degree equals the ideal"]
    return VectorResult(h, outcome.verdict, trace, cites, state.propagation_steps,
                        outcome.survivors)


def filter_pipeline(d: int) -> FilterReport:
    bounds = kloosterman_bounds(d)
    vectors = [classify(h, d) for h in enumerate_exceptional(d)]
    notes = [AXIOM_NOTE, THRESHOLD_NOTE] if vectors else []
    return FilterReport(d, bounds, vectors, notes)


def report(d: int) -> dict:
    """Bounds, enumeration and filtering for one degree, as an ordered document."""
    bounds = kloosterman_bounds(d)
    fr = filter_pipeline(d)
    doc = {
        "d": d,
        "bounds": list(bounds.lower),
        "bounds_sum": bounds.total,
        "cap": bounds.cap,
        "margin": bounds.margin,
        "bound_chain": [
            {"C": s.C, "base": s.base, "shadow": s.value, "strict": s.strict,
             "expected": s.expected}
            for s in bounds.chain
        ],
        "exceptional": [list(h) for h in enumerate_exceptional(d)],
    }
    filt = fr.to_dict()
    for key in ("vectors", "survivors", "conclusion", "citations", "notes"):
        doc[key] = filt[key]
    return doc
