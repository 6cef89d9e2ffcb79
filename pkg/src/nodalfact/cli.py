"""Command-line frontend.

Every subcommand wraps one library operation.  Output is plain text by
default and a JSON document with ``--json``.  Exit codes: 0 success (a
verdict was emitted), 1 input error, 2 indeterminate computation.
"""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import casework, gorenstein, ideals, macaulay, nodal, polyarith
from .documents import (
    DocumentError,
    dumps,
    load_functional,
    load_ideal,
    load_nodeconfig,
    parse_linear,
    rational,
)
from .ideals import IndeterminateError

DEFAULT_SEED = 20240601


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


@dataclass
class Output:
    data: dict
    text: str


@dataclass
class Command:
    name: str
    operation: str  # dotted name of the library operation
    handler: Callable[[argparse.Namespace], Output]
    configure: Callable[[argparse.ArgumentParser], None]
    help: str


COMMANDS: dict[str, Command] = {}


def command(name: str, operation: str, help: str,
            configure: Callable[[argparse.ArgumentParser], None]):
    def wrap(fn):
        COMMANDS[name] = Command(name, operation, fn, configure, help)
        return fn
    return wrap


def _vec(h: Sequence[int]) -> str:
    return "(" + ",".join(str(v) for v in h) + ")"


def _spaced(h: Sequence[int]) -> str:
    return " ".join(str(v) for v in h)


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def _pos(text: str) -> int:
    v = _nonneg(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _infer_vars(text: str) -> int:
    idx = [int(m) for m in re.findall(r"x(\d+)", text)]
    return max(idx, default=0) + 1


def _poly(text: str, n_vars: Optional[int]) -> polyarith.Poly:
    try:
        return polyarith.parse_poly(text, n_vars or _infer_vars(text))
    except ValueError as exc:
        raise InputError(str(exc))


# -- macaulay ------------------------------------------------------------------

def _cd(p):
    p.add_argument("C", type=_nonneg)
    p.add_argument("d", type=_pos)


@command("expand", "macaulay.macaulay_expansion", "Macaulay d-expansion of C",
         _cd)
def cmd_expand(a):
    exp = macaulay.macaulay_expansion(a.C, a.d)
    return Output({"C": a.C, "d": a.d, "eps": list(exp.coefficients),
                   "terms": [list(t) for t in exp.terms()]}, str(exp))


@command("grow", "macaulay.upper_growth", "growth bound C^<d>",
         _cd)
def cmd_grow(a):
    v = macaulay.upper_growth(a.C, a.d)
    return Output({"C": a.C, "d": a.d, "value": v}, str(v))


@command("shadow", "macaulay.lower_shadow", "lower shadow C_{*d}",
         _cd)
def cmd_shadow(a):
    if a.d < 2:
        raise InputError("shadow needs d >= 2")
    s = macaulay.lower_shadow(a.C, a.d)
    return Output({"C": a.C, "d": a.d, "value": s.value, "strict": s.strict},
                  f"{s.value} ({'strict' if s.strict else 'not strict'})")


def _hvec(p):
    p.add_argument("h", type=_nonneg, nargs="+")


@command("oseq", "macaulay.is_o_sequence", "Macaulay O-sequence test",
         _hvec)
def cmd_oseq(a):
    r = macaulay.is_o_sequence(a.h)
    text = "O-sequence" if r.ok else f"not an O-sequence (first violation at {r.first_violation})"
    return Output({"h": a.h, "ok": r.ok, "first_violation": r.first_violation}, text)


@command("profile", "macaulay.lower_bound_profile", "lower bound for h(k) given h(d)",
         lambda p: (p.add_argument("h", type=_nonneg), p.add_argument("d", type=_pos),
                    p.add_argument("k", type=_nonneg)))
def cmd_profile(a):
    try:
        v = macaulay.lower_bound_profile(a.h, a.d, a.k)
    except ValueError as exc:
        raise InputError(str(exc))
    return Output({"h": a.h, "d": a.d, "k": a.k, "value": v}, str(v))


@command("gotzmann", "macaulay.gotzmann_polynomial", "Gotzmann persistence data",
         _cd)
def cmd_gotzmann(a):
    g = macaulay.gotzmann_polynomial(a.C, a.d)
    poly = g.polynomial_str()
    return Output({"C": a.C, "d": a.d, "eps": list(g.expansion.coefficients),
                   "polynomial": poly, "dimension": g.dimension},
                  f"{g.expansion}\np(t) = {poly}\ndimension {g.dimension}")


# -- polyarith -------------------------------------------------------------------

@command("gdim", "polyarith.graded_dim", "number of degree-k monomials",
         lambda p: (p.add_argument("n_vars", type=_pos), p.add_argument("k", type=_nonneg)))
def cmd_gdim(a):
    v = polyarith.graded_dim(a.n_vars, a.k)
    return Output({"n_vars": a.n_vars, "k": a.k, "value": v}, str(v))


def _parse_rows(text: str) -> list[list[Fraction]]:
    rows = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            rows.append([rational(v.strip()) for v in chunk.split(",")])
        except DocumentError as exc:
            raise InputError(str(exc))
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise InputError("rows differ in length")
    return rows


@command("rank", "polyarith.exact_rank", "exact rank of a rational matrix 'a,b;c,d'",
         lambda p: p.add_argument("matrix"))
def cmd_rank(a):
    rows = _parse_rows(a.matrix)
    v = polyarith.exact_rank(rows)
    return Output({"rows": len(rows), "rank": v}, str(v))


@command("span", "polyarith.multiply_span", "degree-k piece of the ideal generated by a file's generators",
         lambda p: (p.add_argument("ideal"), p.add_argument("k", type=_nonneg)))
def cmd_span(a):
    I = load_ideal(a.ideal)
    piece = polyarith.multiply_span(I.generators, a.k, n_vars=I.n_vars)
    basis = [str(b) for b in piece.basis]
    return Output({"k": a.k, "dim": piece.dim, "basis": basis},
                  "\n".join([f"dim {piece.dim}"] + basis))


@command("euler", "polyarith.euler_check", "Euler identity sum x_j df/dx_j = deg(f) f",
         lambda p: (p.add_argument("poly"), p.add_argument("--vars", type=_pos)))
def cmd_euler(a):
    f = _poly(a.poly, a.vars)
    ok = polyarith.euler_check(f)
    return Output({"poly": str(f), "holds": ok}, "holds" if ok else "fails")


# -- ideals ------------------------------------------------------------------------

@command("hilbert", "ideals.hilbert_function", "Hilbert function of an ideal file up to kmax",
         lambda p: (p.add_argument("ideal"), p.add_argument("kmax", type=_nonneg)))
def cmd_hilbert(a):
    h = ideals.hilbert_function(load_ideal(a.ideal), a.kmax)
    return Output({"h": list(h)}, _spaced(h))


@command("section", "ideals.hyperplane_section", "hyperplane section and the exact-sequence identity",
         lambda p: (p.add_argument("ideal"), p.add_argument("linear"),
                    p.add_argument("--kmax", type=_pos, default=6)))
def cmd_section(a):
    I = load_ideal(a.ideal)
    ell = parse_linear(a.linear, I.n_vars)
    try:
        sec = ideals.hyperplane_section(I, ell, a.kmax)
    except ValueError as exc:
        raise InputError(str(exc))
    h = ideals.hilbert_function(sec.ideal, a.kmax)
    lines = [f"section h: {_spaced(h)}"]
    lines += [f"t={t}: identity {'holds' if ok else 'fails'}" for t, ok in sec.identity.items()]
    return Output({"h_section": list(h),
                   "identity": {str(t): ok for t, ok in sec.identity.items()}},
                  "\n".join(lines))


@command("bsdim", "ideals.base_locus_dim", "dimension of Bs|I_t| (-1 for empty)",
         lambda p: (p.add_argument("ideal"), p.add_argument("t", type=_nonneg)))
def cmd_bsdim(a):
    if a.t < 1:
        raise InputError("t must be positive")
    v = ideals.base_locus_dim(load_ideal(a.ideal), a.t)
    return Output({"t": a.t, "dim": v}, str(v))


@command("dk", "ideals.dk_profile", "d_k profile and the summed inequality",
         lambda p: (p.add_argument("ideal"), p.add_argument("N", type=_nonneg)))
def cmd_dk(a):
    try:
        prof = ideals.dk_profile(load_ideal(a.ideal), a.N)
    except ValueError as exc:
        raise InputError(str(exc))
    rel = ">=" if prof.lemma_check else "<"
    return Output({"d_values": list(prof.d_values), "sum": prof.total,
                   "bound": prof.lemma_bound, "lemma_check": prof.lemma_check},
                  f"d = {_vec(prof.d_values)}\nsum {prof.total} {rel} {prof.lemma_bound}")


# -- gorenstein -------------------------------------------------------------------

@command("apolar", "gorenstein.apolar_ideal", "apolar ideal of a functional file",
         lambda p: p.add_argument("functional"))
def cmd_apolar(a):
    lam = load_functional(a.functional)
    try:
        I, h = gorenstein.apolar_ideal(lam)
    except ValueError as exc:
        raise InputError(str(exc))
    h = h.trimmed()
    return Output({"degree": lam.degree, "h": list(h)}, _spaced(h))


@command("socle", "gorenstein.socle_check", "socle dimensions of S/I up to degree N",
         lambda p: (p.add_argument("ideal"), p.add_argument("N", type=_nonneg)))
def cmd_socle(a):
    r = gorenstein.socle_check(load_ideal(a.ideal), a.N)
    verdict = f"Gorenstein of socle degree {a.N}" if r.is_gorenstein else "not Gorenstein"
    return Output({"N": a.N, "socle_dims": list(r.socle_dims), "is_gorenstein": r.is_gorenstein},
                  f"socle dims {_vec(r.socle_dims)}\n{verdict}")


@command("symmetric", "gorenstein.is_symmetric", "symmetry test for an h-vector",
         _hvec)
def cmd_symmetric(a):
    try:
        ok = gorenstein.is_symmetric(a.h)
    except ValueError as exc:
        raise InputError(str(exc))
    return Output({"h": a.h, "symmetric": ok}, "symmetric" if ok else "not symmetric")


@command("unimodal", "gorenstein.is_unimodal", "unimodality test for an h-vector",
         _hvec)
def cmd_unimodal(a):
    ok = gorenstein.is_unimodal(a.h)
    return Output({"h": a.h, "unimodal": ok}, "unimodal" if ok else "not unimodal")


@command("stanley", "gorenstein.stanley_admissible", "Stanley's criterion (h_1 <= 3)",
         _hvec)
def cmd_stanley(a):
    try:
        r = gorenstein.stanley_admissible(a.h)
    except ValueError as exc:
        raise InputError(str(exc))
    return Output({"h": a.h, "result": r.value}, r.value)


def _degrees(p):
    p.add_argument("degrees", type=_pos, nargs="+")


@command("ci-series", "gorenstein.ci_hilbert_series", "Hilbert function of a complete intersection",
         _degrees)
def cmd_ci_series(a):
    h = gorenstein.ci_hilbert_series(a.degrees)
    return Output({"multidegree": a.degrees, "h": list(h)}, _spaced(h))


@command("ci-socle", "gorenstein.ci_socle_degree", "socle degree of a complete intersection",
         _degrees)
def cmd_ci_socle(a):
    v = gorenstein.ci_socle_degree(a.degrees)
    return Output({"multidegree": a.degrees, "socle_degree": v}, str(v))


@command("tate", "gorenstein.tate_socle_check", "Jacobian determinant spans the socle",
         lambda p: p.add_argument("ideal"))
def cmd_tate(a):
    I = load_ideal(a.ideal)
    try:
        r = gorenstein.tate_socle_check(I.generators)
    except ValueError as exc:
        raise InputError(str(exc))
    return Output({"determinant": str(r.determinant), "N": r.socle_degree,
                   "top_dim": r.top_dim, "holds": r.holds},
                  f"det = {r.determinant}\nN = {r.socle_degree}\n{'holds' if r.holds else 'fails'}")


# -- casework -----------------------------------------------------------------------

def _d(p):
    p.add_argument("d", type=_pos)


def _check_d(d: int) -> None:
    if d < 6:
        raise InputError(f"d must be at least 6, got {d}")


@command("bounds", "casework.kloosterman_bounds", "pointwise lower bounds for h_I",
         _d)
def cmd_bounds(a):
    _check_d(a.d)
    b = casework.kloosterman_bounds(a.d)
    chain = [{"C": s.C, "base": s.base, "shadow": s.value, "strict": s.strict,
              "expected": s.expected} for s in b.chain]
    lines = [_spaced(b.lower), f"sum {b.total}, cap {b.cap}, margin {b.margin}"]
    for s in b.chain:
        lines.append(f"({s.C})_*{s.base} = {s.value}{' (strict)' if s.strict else ''}")
    return Output({"d": a.d, "lower": list(b.lower), "sum": b.total, "cap": b.cap,
                   "chain": chain}, "\n".join(lines))


@command("enumerate", "casework.enumerate_exceptional", "exceptional h-vectors with sum <= cap",
         _d)
def cmd_enumerate(a):
    _check_d(a.d)
    hs = casework.enumerate_exceptional(a.d)
    return Output({"d": a.d, "vectors": [list(h) for h in hs]}, "\n".join(_vec(h) for h in hs))


def _case_args(p):
    p.add_argument("d", type=_pos)
    p.add_argument("h", type=_nonneg, nargs="+")
    p.add_argument("--steps", type=_nonneg, default=None,
                   help="number of propagation steps (default: run to a fixpoint)")


def _state(a) -> casework.CaseState:
    try:
        return casework.derive_facts(a.h, a.d, a.steps)
    except ValueError as exc:
        raise InputError(str(exc))


@command("facts", "casework.derive_facts", "interval facts for dim Bs|I_t|",
         _case_args)
def cmd_facts(a):
    s = _state(a)
    facts = s.dim_facts()
    lines = list(s.trace)
    lines += [f"t={t}: dim Bs in [{lo},{hi}]" for t, (lo, hi) in facts.items()]
    lines.append(casework.format_intervals(s))
    return Output({"h": a.h, "d": a.d,
                   "dim_facts": {str(t): list(v) for t, v in facts.items()},
                   "dk_intervals": {str(k): list(v) for k, v in s.dk_intervals.items()},
                   "trace": s.trace}, "\n".join(lines))


@command("degarg", "casework.degree_argument", "degree argument over the derived d_k intervals",
         _case_args)
def cmd_degarg(a):
    s = _state(a)
    out = casework.degree_argument(s, a.d)
    return Output({"h": a.h, "d": a.d, "verdict": out.verdict.value,
                   "survivors": [list(t) for t in out.survivors], "trace": out.trace},
                  "\n".join([out.verdict.value] + out.trace))


@command("filter", "casework.filter_pipeline", "run the exceptional vectors through all filters",
         _d)
def cmd_filter(a):
    _check_d(a.d)
    rep = casework.filter_pipeline(a.d)
    doc = rep.to_dict()
    lines = []
    for v in rep.vectors:
        lines.append(f"{_vec(v.h)} {v.verdict.value}")
        lines += [f"  {line}" for line in v.rule_trace]
    lines.append("survivors: " + (", ".join(_vec(h) for h in rep.survivors) or "none"))
    lines.append(rep.conclusion)
    return Output(doc, "\n".join(lines))


@command("nodes", "casework.node_count_bound", "node-count lower bound of an h-vector",
         _hvec)
def cmd_nodes(a):
    v = casework.node_count_bound(a.h)
    return Output({"h": a.h, "value": v}, str(v))


@command("report", "casework.report", "bounds, enumeration, filtering and cited steps",
         _d)
def cmd_report(a):
    _check_d(a.d)
    doc = casework.report(a.d)
    lines = [f"d = {a.d}", f"bounds {_vec(doc['bounds'])} sum {doc['bounds_sum']} cap {doc['cap']}"]
    for s in doc["bound_chain"]:
        lines.append(f"({s['C']})_*{s['base']} = {s['shadow']}{' (strict)' if s['strict'] else ''}")
    lines.append(f"exceptional vectors: {len(doc['exceptional'])}")
    for v in doc["vectors"]:
        lines.append(f"{_vec(v['h'])} sum {v['sum']} {v['verdict']}")
        lines += [f"  {line}" for line in v["rule_trace"]]
        lines += [f"  [{c}]" for c in v["citations"]]
    lines.append("survivors: " + (", ".join(_vec(h) for h in doc["survivors"]) or "none"))
    lines.append(doc["conclusion"])
    lines += doc["citations"]
    lines += [f"note: {n}" for n in doc["notes"]]
    return Output(doc, "\n".join(lines))


# -- nodal ----------------------------------------------------------------------------

@command("jacobian", "nodal.jacobian_ideal", "partial derivatives of F",
         lambda p: (p.add_argument("F"), p.add_argument("--vars", type=_pos, default=5)))
def cmd_jacobian(a):
    F = _poly(a.F, a.vars)
    try:
        J = nodal.jacobian_ideal(F)
    except ValueError as exc:
        raise InputError(str(exc))
    gens = [str(g) for g in J.generators]
    return Output({"F": str(F), "generators": gens}, "\n".join(gens))


@command("node", "nodal.verify_node", "is P a node of F (P as comma-separated rationals)",
         lambda p: (p.add_argument("F"), p.add_argument("point"),
                    p.add_argument("--vars", type=_pos, default=5)))
def cmd_node(a):
    F = _poly(a.F, a.vars)
    try:
        P = tuple(rational(x.strip()) for x in a.point.split(","))
    except DocumentError as exc:
        raise InputError(str(exc))
    if len(P) != F.n_vars:
        raise InputError(f"point needs {F.n_vars} coordinates")
    try:
        ok = nodal.verify_node(F, P)
    except ValueError as exc:
        raise InputError(str(exc))
    return Output({"F": str(F), "point": [str(x) for x in P], "node": ok},
                  "node" if ok else "not a node")


@command("points-hilbert", "nodal.points_hilbert", "h_J(k) of the points in a node configuration",
         lambda p: (p.add_argument("nodeconfig"), p.add_argument("k", type=_nonneg)))
def cmd_points_hilbert(a):
    cfg = load_nodeconfig(a.nodeconfig)
    v = nodal.points_hilbert(cfg.points, a.k)
    return Output({"points": len(cfg.points), "k": a.k, "value": v}, str(v))


@command("defect", "nodal.defect", "defect of a node configuration",
         lambda p: p.add_argument("nodeconfig"))
def cmd_defect(a):
    cfg = load_nodeconfig(a.nodeconfig)
    try:
        r = nodal.defect(cfg)
    except ValueError as exc:
        raise InputError(str(exc))
    doc = r.to_dict()
    text = (f"points {r.n_points}\nh_J({r.degree}) = {r.h_J}\ndefect {r.defect}\n"
            f"{r.verdict}\ncaveat: {r.caveat}")
    return Output(doc, text)


@command("gsection", "nodal.gorenstein_section", "Gorenstein ideal through the section of the node ideal",
         lambda p: (p.add_argument("nodeconfig"), p.add_argument("--linear")))
def cmd_gsection(a):
    cfg = load_nodeconfig(a.nodeconfig)
    try:
        ell = (parse_linear(a.linear, 5) if a.linear
               else nodal.random_linear_form(5, a.seed, cfg.points))
        gs = nodal.gorenstein_section(cfg.points, cfg.d, ell, a.seed)
    except ValueError as exc:
        raise InputError(str(exc))
    h = gs.h.trimmed()
    doc = {"d": cfg.d, "linear": str(ell), "h_section": list(gs.h_section), "h": list(h),
           "contains_section": gs.contains_section, "symmetric": gs.symmetric,
           "gorenstein": gs.socle.is_gorenstein, "socle_degree": gs.socle.socle_degree}
    text = (f"hyperplane {ell}\nsection h: {_spaced(gs.h_section)}\nh: {_spaced(h)}\n"
            f"contains section: {gs.contains_section}\nsymmetric: {gs.symmetric}\n"
            f"Gorenstein of socle degree {gs.socle.socle_degree}: {gs.socle.is_gorenstein}")
    return Output(doc, text)


# -- driver -------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON document")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help=f"seed for general choices (default {DEFAULT_SEED})")
    parser = _Parser(prog="nodalfact", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True
    for cmd in COMMANDS.values():
        p = sub.add_parser(cmd.name, parents=[common], help=cmd.help, description=cmd.help)
        cmd.configure(p)
    return parser


def run(argv: Sequence[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(list(argv))
    except InputError as exc:
        print(f"error: {exc}", file=err)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    cmd = COMMANDS[args.command]
    try:
        result = cmd.handler(args)
    except (InputError, DocumentError) as exc:
        print(f"error: {exc}", file=err)
        return 1
    except IndeterminateError as exc:
        print(f"indeterminate: {exc}", file=err)
        return 2
    if args.json:
        print(dumps(result.data), file=out)
    elif result.text:
        print(result.text, file=out)
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
