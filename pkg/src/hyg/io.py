"""JSON serialization of hypergroups and complex vectors.

Hypergroup layout::

    {"name": str, "elements": [str, ...], "identity": str,
     "involution": {str: str},
     "convolution": [{"x": str, "y": str, "terms": [{"z": str, "c": "p/q" | number}, ...]}, ...]}

Pairs involving the identity are omitted on output and optional on input.
Exact coefficients are written as ``"p/q"`` strings, floats as JSON numbers.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .core import DEFAULT_TOL, FiniteHypergroup, hypergroup_from_terms
from .errors import StructuralError


def _format_coefficient(c):
    if isinstance(c, Fraction):
        return str(c) if c.denominator != 1 else str(c.numerator)
    return float(c)


def hypergroup_to_dict(H: FiniteHypergroup) -> dict:
    e = H.identity
    conv = []
    for x in range(H.n):
        for y in range(H.n):
            if x == e or y == e:
                continue
            if H.exact is not None:
                items = H.exact[x][y]
            else:
                items = [(int(z), float(H.conv[x, y, z])) for z in np.flatnonzero(H.conv[x, y])]
            conv.append({
                "x": H.elements[x],
                "y": H.elements[y],
                "terms": [{"z": H.elements[z], "c": _format_coefficient(c)} for z, c in items],
            })
    return {
        "name": H.name,
        "elements": list(H.elements),
        "identity": H.elements[e],
        "involution": {H.elements[x]: H.elements[H.involution[x]] for x in range(H.n)},
        "convolution": conv,
    }


def _require(doc, key, kind):
    if key not in doc:
        raise StructuralError(f"missing field {key!r}")
    if not isinstance(doc[key], kind):
        raise StructuralError(f"field {key!r} has the wrong type")
    return doc[key]


def hypergroup_from_dict(doc: dict, *, tol=DEFAULT_TOL) -> FiniteHypergroup:
    if not isinstance(doc, dict):
        raise StructuralError("hypergroup document must be a JSON object")
    elements = [str(e) for e in _require(doc, "elements", list)]
    index = {name: i for i, name in enumerate(elements)}
    if len(index) != len(elements):
        raise StructuralError("duplicate element names")

    def lookup(name, where):
        try:
            return index[str(name)]
        except KeyError:
            raise StructuralError(f"unknown element {name!r} in {where}") from None

    identity = lookup(_require(doc, "identity", str), "identity")
    inv_doc = _require(doc, "involution", dict)
    involution = []
    for name in elements:
        if name not in inv_doc:
            raise StructuralError(f"involution has no image for {name!r}")
        involution.append(lookup(inv_doc[name], "involution"))
    terms = {}
    for entry in _require(doc, "convolution", list):
        if not isinstance(entry, dict):
            raise StructuralError("convolution entries must be objects")
        x = lookup(_require(entry, "x", str), "convolution")
        y = lookup(_require(entry, "y", str), "convolution")
        if (x, y) in terms:
            raise StructuralError(f"duplicate convolution pair ({elements[x]}, {elements[y]})")
        items = []
        for t in _require(entry, "terms", list):
            if not isinstance(t, dict) or "z" not in t or "c" not in t:
                raise StructuralError(f"malformed term in pair ({elements[x]}, {elements[y]})")
            items.append((lookup(t["z"], "terms"), t["c"]))
        terms[(x, y)] = items
    return hypergroup_from_terms(elements, identity, involution, terms, tol=tol, name=str(doc.get("name", "")))


def dumps_hypergroup(H: FiniteHypergroup) -> str:
    return json.dumps(hypergroup_to_dict(H), indent=2)


def loads_hypergroup(text: str, *, tol=DEFAULT_TOL) -> FiniteHypergroup:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StructuralError(f"invalid JSON: {exc}") from exc
    return hypergroup_from_dict(doc, tol=tol)


def load_hypergroup(path, *, tol=DEFAULT_TOL) -> FiniteHypergroup:
    return loads_hypergroup(Path(path).read_text(), tol=tol)


def save_hypergroup(H: FiniteHypergroup, path):
    Path(path).write_text(dumps_hypergroup(H) + "\n")


def complex_to_json(z) -> dict:
    return {"re": float(np.real(z)), "im": float(np.imag(z))}


def complex_from_json(v) -> complex:
    if isinstance(v, bool):
        raise StructuralError(f"not a number: {v!r}")
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, str):
        return complex(float(Fraction(v)))
    if isinstance(v, dict) and "re" in v:
        return complex(float(v["re"]), float(v.get("im", 0.0)))
    raise StructuralError(f"cannot read complex value {v!r}")


def vector_to_json(values) -> list:
    return [complex_to_json(v) for v in values]


def vector_from_json(items, n=None) -> np.ndarray:
    if not isinstance(items, list):
        raise StructuralError("function values must be a JSON array")
    vec = np.array([complex_from_json(v) for v in items], dtype=complex)
    if n is not None and len(vec) != n:
        raise StructuralError(f"expected {n} values, got {len(vec)}")
    return vec
