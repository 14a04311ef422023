"""Scene files: JSON descriptions of curves, validated against a versioned schema.

A curve scene::

    {"schema_version": 1, "name": "triangle",
     "components": [{"id": "x", "type": "line", "coeffs": [1, 0, 0]}, ...],
     "queries": [{"name": "q1", "op": "verify", "args": {"theorem": "A", "target": "x"}}]}

An identity-suite scene replaces ``components`` by ``pairs``, each a curve plus
an external smooth conic.  Rational numbers may be written as JSON integers or
as strings such as ``"-3/4"``.  Point coordinates may additionally be objects
``{"a": .., "b": .., "m": ..}`` for ``a + b*sqrt(m)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

import jsonschema

from .arrangement import Component, Curve, ProjPoint, SuppliedPoint, build_curve
from .errors import SchemaError
from .scalars import QuadScalar

SCHEMA_VERSION = 1

_RATIONAL = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^\s*-?\d+\s*(/\s*\d+\s*)?$"},
    ]
}
_COORD = {
    "oneOf": [
        _RATIONAL,
        {
            "type": "object",
            "properties": {"a": _RATIONAL, "b": _RATIONAL, "m": {"type": "integer"}},
            "required": ["a", "b", "m"],
            "additionalProperties": False,
        },
    ]
}
_POINT = {"type": "array", "items": _COORD, "minItems": 3, "maxItems": 3}

COMPONENT_SCHEMA = {
    "type": "object",
    "required": ["id", "type"],
    "properties": {
        "id": {"type": "string", "minLength": 1},
        "type": {"enum": ["line", "conic", "generic"]},
        "coeffs": {"type": "array", "items": _RATIONAL},
        "poly": {"type": "string"},
        "singular_points": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["point", "branches"],
                "properties": {"point": _POINT, "branches": {"type": "integer", "minimum": 1}},
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
    "allOf": [
        {"if": {"properties": {"type": {"const": "line"}}},
         "then": {"required": ["coeffs"], "properties": {"coeffs": {"minItems": 3, "maxItems": 3}}}},
        {"if": {"properties": {"type": {"const": "conic"}}},
         "then": {"required": ["coeffs"], "properties": {"coeffs": {"minItems": 6, "maxItems": 6}}}},
        {"if": {"properties": {"type": {"const": "generic"}}}, "then": {"required": ["poly"]}},
    ],
}

_QUERY = {
    "type": "object",
    "required": ["name", "op"],
    "properties": {
        "name": {"type": "string"},
        "op": {"enum": ["verify", "intersection_count", "deletion_counts", "local", "epsilon_pair",
                        "deletion_context"]},
        "args": {"type": "object"},
    },
    "additionalProperties": False,
}

SCENE_SCHEMA = {
    "type": "object",
    "required": ["schema_version"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "name": {"type": "string"},
        "description": {"type": "string"},
        "components": {"type": "array", "items": COMPONENT_SCHEMA, "minItems": 1},
        "queries": {"type": "array", "items": _QUERY},
        "pairs": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "components", "conic"],
                "properties": {
                    "name": {"type": "string"},
                    "components": {"type": "array", "items": COMPONENT_SCHEMA, "minItems": 1},
                    "conic": COMPONENT_SCHEMA,
                },
                "additionalProperties": False,
            },
        },
    },
    "oneOf": [{"required": ["components"]}, {"required": ["pairs"]}],
    "additionalProperties": False,
}


def parse_rational(v) -> Fraction:
    try:
        return Fraction(v.replace(" ", "")) if isinstance(v, str) else Fraction(v)
    except (ValueError, ZeroDivisionError) as e:
        raise SchemaError(f"bad rational {v!r}") from e


def parse_coord(v):
    if isinstance(v, dict):
        return QuadScalar.make(parse_rational(v["a"]), parse_rational(v["b"]), int(v["m"]))
    return parse_rational(v)


def parse_point(coords) -> ProjPoint:
    try:
        return ProjPoint([parse_coord(c) for c in coords])
    except ValueError as e:
        raise SchemaError(str(e)) from e


def component_from_json(obj: dict) -> Component:
    _validate(obj, COMPONENT_SCHEMA)
    cid, kind = obj["id"], obj["type"]
    if kind == "line":
        return Component.line(cid, [parse_rational(c) for c in obj["coeffs"]])
    if kind == "conic":
        return Component.conic(cid, [parse_rational(c) for c in obj["coeffs"]])
    pts = [SuppliedPoint(parse_point(sp["point"]), sp["branches"]) for sp in obj.get("singular_points", [])]
    return Component.generic(cid, obj["poly"], pts)


def _validate(obj, schema) -> None:
    try:
        jsonschema.validate(obj, schema)
    except jsonschema.ValidationError as e:
        where = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise SchemaError(f"{where}: {e.message}") from None


@dataclass
class Pair:
    name: str
    curve: Curve
    conic: Component


@dataclass
class Scene:
    name: str
    raw: dict
    curve: Curve | None = None
    queries: list = field(default_factory=list)
    pairs: list[Pair] = field(default_factory=list)

    @property
    def is_suite(self) -> bool:
        return self.curve is None


def scene_from_json(obj: dict, default_name: str = "scene") -> Scene:
    _validate(obj, SCENE_SCHEMA)
    name = obj.get("name", default_name)
    if "pairs" in obj:
        pairs = [
            Pair(p["name"], build_curve([component_from_json(c) for c in p["components"]]),
                 component_from_json(p["conic"]))
            for p in obj["pairs"]
        ]
        return Scene(name, obj, None, [], pairs)
    curve = build_curve([component_from_json(c) for c in obj["components"]])
    return Scene(name, obj, curve, list(obj.get("queries", [])))


def load_scene(path: str | Path) -> Scene:
    path = Path(path)
    try:
        obj = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: invalid JSON ({e})") from None
    return scene_from_json(obj, path.stem)


# -- bundled scenes -------------------------------------------------------------

BUNDLED = ("triangle", "near_pencil_4", "chern_factor", "notfree_pencil", "free_6_7", "mu_formula_suite")


def bundled_path(name: str, manifest: bool = False):
    if name not in BUNDLED:
        raise SchemaError(f"unknown bundled example {name!r}; choose from {', '.join(BUNDLED)}")
    fname = f"{name}.expected.json" if manifest else f"{name}.json"
    return resources.files("clarr").joinpath("scenes", fname)


def load_bundled(name: str) -> Scene:
    obj = json.loads(bundled_path(name).read_text())
    return scene_from_json(obj, name)


def load_manifest(name: str) -> dict:
    return json.loads(bundled_path(name, manifest=True).read_text())
