"""JSON documents for ideals, dual functionals and node configurations.

Ideal::

    {"n_vars": 4, "generators": ["x0", "x1^2", "x2^4", "x3^5"]}

Functional (explicit terms, or a seeded random functional)::

    {"n_vars": 4, "degree": 4, "terms": [[[1, 1, 1, 1], "1"]]}
    {"n_vars": 4, "degree": 8, "random_seed": 3}

Node configuration; a coordinate is a rational (number or "p/q" string) or a
list of four rationals giving an element of Q(zeta_5) in the basis
1, z, z^2, z^3::

    {"d": 3, "F": "x0*x1*x4 - x2*x3*x4 + x0^3 + x1^3 + x2^3 + x3^3",
     "points": [[0, 0, 0, 0, 1]]}
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Union

from .gorenstein import DualFunctional
from .ideals import GradedIdeal
from .nodal import NodeConfig
from .numfield import Cyclo5
from .polyarith import Poly, parse_poly

DATA_PREFIX = "data:"


class DocumentError(ValueError):
    pass


def load_json(source: Union[str, Path]) -> dict:
    """Read a JSON document from a path, or from the packaged data directory
    when the name starts with ``data:``."""
    source = str(source)
    try:
        if source.startswith(DATA_PREFIX):
            name = source[len(DATA_PREFIX):]
            text = resources.files("nodalfact").joinpath("data", name).read_text()
        else:
            text = Path(source).read_text()
    except OSError as exc:
        raise DocumentError(f"cannot read {source}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{source} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise DocumentError(f"{source}: expected a JSON object")
    return doc


def _field(doc: dict, key: str, kind=None) -> Any:
    if key not in doc:
        raise DocumentError(f"missing field {key!r}")
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        raise DocumentError(f"field {key!r} has the wrong type")
    return value


def rational(value) -> Fraction:
    if isinstance(value, bool):
        raise DocumentError(f"not a rational number: {value!r}")
    try:
        if isinstance(value, (int, str)):
            return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"not a rational number: {value!r}") from exc
    raise DocumentError(f"not a rational number: {value!r}")


def rational_str(q: Fraction) -> str:
    return str(q)


# -- ideals ------------------------------------------------------------------

def ideal_from_doc(doc: dict) -> GradedIdeal:
    n = _field(doc, "n_vars", int)
    gens = _field(doc, "generators", list)
    try:
        polys = [parse_poly(g, n) for g in gens]
        return GradedIdeal(n, polys)
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


def ideal_to_doc(I: GradedIdeal) -> dict:
    return {"n_vars": I.n_vars, "generators": [str(g) for g in I.generators]}


def load_ideal(source) -> GradedIdeal:
    return ideal_from_doc(load_json(source))


# -- functionals ---------------------------------------------------------------

def functional_from_doc(doc: dict) -> DualFunctional:
    n = _field(doc, "n_vars", int)
    e = _field(doc, "degree", int)
    if n < 1 or e < 0:
        raise DocumentError("need n_vars >= 1 and degree >= 0")
    if "random_seed" in doc:
        return DualFunctional.random(n, e, _field(doc, "random_seed", int))
    terms = {}
    for item in _field(doc, "terms", list):
        if not isinstance(item, list) or len(item) != 2 or not isinstance(item[0], list):
            raise DocumentError(f"malformed term {item!r}")
        mono = tuple(item[0])
        if len(mono) != n or sum(mono) != e or any(not isinstance(a, int) or a < 0 for a in mono):
            raise DocumentError(f"monomial {list(mono)} is not of degree {e} in {n} variables")
        terms[mono] = terms.get(mono, 0) + rational(item[1])
    return DualFunctional.from_terms(n, e, terms)


def functional_to_doc(lam: DualFunctional) -> dict:
    return {
        "n_vars": lam.n_vars,
        "degree": lam.degree,
        "terms": [[list(m), rational_str(c)] for m, c in lam.terms()],
    }


def load_functional(source) -> DualFunctional:
    return functional_from_doc(load_json(source))


# -- node configurations -----------------------------------------------------------

def coordinate(value):
    if isinstance(value, list):
        if len(value) != 4:
            raise DocumentError(f"field element {value!r} needs four rational coordinates")
        return Cyclo5([rational(v) for v in value])
    return rational(value)


def _rational_json(q: Fraction):
    return q.numerator if q.denominator == 1 else rational_str(q)


def coordinate_to_json(x):
    if isinstance(x, Cyclo5) and not x.is_rational():
        return [_rational_json(v) for v in x.c]
    return _rational_json(x.c[0] if isinstance(x, Cyclo5) else Fraction(x))


def nodeconfig_from_doc(doc: dict) -> NodeConfig:
    d = _field(doc, "d", int)
    F_text = _field(doc, "F", str)
    pts = _field(doc, "points", list)
    try:
        F = parse_poly(F_text, 5)
        points = []
        for P in pts:
            if not isinstance(P, list):
                raise DocumentError(f"malformed point {P!r}")
            points.append(tuple(coordinate(x) for x in P))
        return NodeConfig(F, points, d, note=str(doc.get("note", "")))
    except DocumentError:
        raise
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


def nodeconfig_to_doc(cfg: NodeConfig) -> dict:
    doc = {
        "d": cfg.d,
        "F": str(cfg.F),
        "points": [[coordinate_to_json(x) for x in P] for P in cfg.points],
    }
    if cfg.note:
        doc["note"] = cfg.note
    return doc


def load_nodeconfig(source) -> NodeConfig:
    return nodeconfig_from_doc(load_json(source))


def parse_linear(text: str, n_vars: int) -> Poly:
    try:
        ell = parse_poly(text, n_vars)
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc
    if not ell or ell.homogeneous_degree != 1:
        raise DocumentError(f"{text!r} is not a nonzero linear form")
    return ell


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=True)
