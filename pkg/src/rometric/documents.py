"""JSON documents for topologies, distance matrices and generalized spaces.

Rationals are written as reduced ``"p/q"`` strings (``"n"`` for integers) and
output uses sorted keys with two-space indentation, so equal values always
serialize to identical bytes.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .distance import DistanceMatrix
from .errors import ParseError
from .finite_topology import FiniteTopology, GroundSet, validate_topology
from .generalized import MapFamily

_RATIONAL = re.compile(r"^\s*-?\d+(\s*/\s*\d+)?\s*$")


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(v) -> Fraction:
    """Parse ``"p/q"``, ``"n"`` or a JSON integer; floats are rejected."""
    if isinstance(v, bool):
        raise ParseError(f"not a rational: {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str) and _RATIONAL.match(v):
        try:
            return Fraction(v.replace(" ", ""))
        except ZeroDivisionError:
            raise ParseError(f"zero denominator in {v!r}") from None
    raise ParseError(f"not an exact rational: {v!r}")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_json(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from None


def _ground(doc) -> GroundSet:
    if not isinstance(doc, dict) or not isinstance(doc.get("points"), list):
        raise ParseError('document needs a "points" list')
    if not all(isinstance(p, str) for p in doc["points"]):
        raise ParseError("point labels must be strings")
    return GroundSet(tuple(doc["points"]))


def family_from_doc(doc) -> tuple[GroundSet, list[int]]:
    """Ground set and raw family of masks; duplicate sets are rejected."""
    g = _ground(doc)
    raw = doc.get("opens")
    if not isinstance(raw, list):
        raise ParseError('topology document needs an "opens" list')
    fam = []
    for s in raw:
        if not isinstance(s, list):
            raise ParseError("each open set must be a list of labels")
        if len(set(s)) != len(s):
            raise ParseError(f"repeated label inside set {s}")
        fam.append(g.mask(s))
    if len(set(fam)) != len(fam):
        raise ParseError("duplicate open sets")
    return g, fam


def topology_from_doc(doc) -> FiniteTopology:
    g, fam = family_from_doc(doc)
    return validate_topology(fam, g)


def topology_to_doc(t: FiniteTopology) -> dict:
    return {"points": list(t.ground.labels), "opens": t.labeled_opens()}


def matrix_from_doc(doc) -> DistanceMatrix:
    g = _ground(doc)
    rows = doc.get("matrix")
    n = g.size
    if not isinstance(rows, list) or len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise ParseError(f'"matrix" must be a {n}x{n} list of lists')
    return DistanceMatrix(g, tuple(tuple(parse_rational(v) for v in r) for r in rows))


def matrix_to_doc(m: DistanceMatrix) -> dict:
    return {
        "points": list(m.ground.labels),
        "matrix": [[format_rational(v) for v in row] for row in m.matrix],
    }


def space_from_doc(doc) -> tuple[DistanceMatrix, MapFamily]:
    m = matrix_from_doc(doc)
    raw = doc.get("maps")
    if not isinstance(raw, list):
        raise ParseError('generalized-space document needs a "maps" list')
    names, maps = [], []
    for entry in raw:
        if not isinstance(entry, dict) or "name" not in entry or "targets" not in entry:
            raise ParseError('each map needs "name" and "targets"')
        targets = entry["targets"]
        if not isinstance(targets, list) or len(targets) != m.size:
            raise ParseError(f"map {entry['name']!r} must list one target per point")
        names.append(str(entry["name"]))
        maps.append(tuple(m.ground.index(v) for v in targets))
    return m, MapFamily(m.ground, tuple(maps), tuple(names))


def space_to_doc(m: DistanceMatrix, family: MapFamily) -> dict:
    doc = matrix_to_doc(m)
    lab = m.ground.labels
    doc["maps"] = [{"name": name, "targets": [lab[v] for v in f]} for name, f in zip(family.names, family.maps)]
    return doc


def labels(ground: GroundSet, mask: int) -> list[str]:
    return ground.members(mask)
