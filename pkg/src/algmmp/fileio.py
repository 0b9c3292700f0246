"""JSON readers and writers for varieties, morphisms, divisors, hints and oracles.

A variety file looks like::

    {"label": "P3",
     "ring": {"field": {"name": "QQ"},
              "variables": [{"name": "x0", "weight": 1}, ...]},
     "ideal": ["x0*x1 - x2^2", ...]}

Polynomials use the canonical string syntax of :func:`parse_poly`.
"""

import json

from .divisors import WeilDivisor
from .geometry import GraphMorphism, BiVariety, MonoVariety, homogeneous_to_graph, product_ring
from .ideal import Ideal
from .mmp import BettiOracle
from .poly import ParseError, PolyRing, parse_poly


class InputError(ValueError):
    pass


def load_json(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    if not text.strip():
        raise InputError(f"{path}: empty file")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def dump_json(obj):
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _polys(ring, texts, where):
    out = []
    for k, t in enumerate(texts):
        if not isinstance(t, str):
            raise InputError(f"{where}[{k}]: polynomial strings expected")
        try:
            out.append(parse_poly(ring, t))
        except ParseError as exc:
            raise InputError(f"{where}[{k}]: {exc}") from exc
    return out


def ring_from_json(d):
    if "variables" not in d:
        raise InputError("ring: missing 'variables'")
    return PolyRing.from_descriptor(d)


def variety_from_json(d, certify=True):
    if not isinstance(d, dict) or "ring" not in d:
        raise InputError("variety: expected an object with 'ring' and 'ideal'")
    R = ring_from_json(d["ring"])
    gens = _polys(R, d.get("ideal", []), "ideal")
    return MonoVariety(R, Ideal(R, gens), d.get("label"), certify=certify)


def variety_to_json(X):
    return {
        "label": X.label,
        "ring": X.ring.descriptor(),
        "ideal": [str(g) for g in X.ideal.gens],
    }


def morphism_from_json(d, certify=True):
    """``{"source", "target", "graph" | "images"}``; graph strings use both rings' names."""
    Y = variety_from_json(d["source"], certify)
    X = variety_from_json(d["target"], certify)
    if "images" in d:
        ims = _polys(Y.ring, d["images"], "images")
        return homogeneous_to_graph(ims, Y, X, check_domain=d.get("check_domain", True))
    if "graph" not in d:
        raise InputError("morphism: need 'graph' or 'images'")
    P = product_ring(Y.ring, X.ring)
    if list(P.names) != list(Y.ring.names) + list(X.ring.names):
        raise InputError("morphism: source and target variable names must be distinct")
    gens = _polys(P, d["graph"], "graph")
    return GraphMorphism(Y, X, BiVariety(Y, X, Ideal(P, gens), P))


def morphism_to_json(f):
    return {
        "source": variety_to_json(f.source),
        "target": variety_to_json(f.target),
        "graph": [str(g) for g in f.graph.ideal.gens],
    }


def divisor_from_json(X, terms):
    """``[{"prime": [...], "coeff": n}, ...]``; an empty list is the zero divisor."""
    out = []
    for k, t in enumerate(terms):
        p = Ideal(X.ring, _polys(X.ring, t["prime"], f"divisor[{k}].prime") + X.ideal.gens)
        out.append((p, int(t.get("coeff", 1))))
    return WeilDivisor(X, out)


def divisor_to_json(D):
    return [{"prime": [str(g) for g in p.gens], "coeff": n} for p, n in D.terms]


def hints_for(X, data):
    """Curves and divisors listed under the label of ``X`` in a hints file."""
    if not data:
        return {"curves": [], "divisors": []}
    entry = data.get(X.label or "", {})
    curves = [Ideal(X.ring, _polys(X.ring, c, "curves") + X.ideal.gens) for c in entry.get("curves", [])]
    divs = [divisor_from_json(X, d) for d in entry.get("divisors", [])]
    return {"curves": curves, "divisors": divs}


def oracle_from_json(d, policy=None):
    if not isinstance(d, dict):
        raise InputError("oracle: expected an object")
    try:
        return BettiOracle.from_json(d, policy)
    except (KeyError, TypeError) as exc:
        raise InputError(f"oracle: malformed entry ({exc})") from exc
