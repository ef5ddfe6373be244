"""JSON input formats, validated with jsonschema.

Rationals are written as strings (``"3/2"``); plain integers are accepted
too.  Three document shapes are understood::

    {"n": 2, "halfspaces": [{"normal": [-1, 0], "offset": "0"}, ...]}
    {"model": {"kind": "hirzebruch", "k": 1, "sigma": "1", "tau": "2"}}
    {"orbit": {"n": 4, "spectrum": ["1", "1", "0", "0"]}, "vector": [3, 1, -1, -3]}
"""

from __future__ import annotations

import json
from typing import Any

import jsonschema

from .coadjoint import OrbitSpec
from .polytope import DelzantPolytope, build_model, from_halfspaces
from .rational import Q, symbol

RATIONAL = {
    "oneOf": [
        {"type": "string", "pattern": r"^[+-]?\d+(/\d+)?$"},
        {"type": "integer"},
    ]
}
PARAM = {"oneOf": [RATIONAL, {"type": "string", "enum": ["sigma", "tau"]}]}
INT_VECTOR = {"type": "array", "items": {"type": "integer"}, "minItems": 1}

HALFSPACE_SCHEMA = {
    "type": "object",
    "required": ["n", "halfspaces"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "halfspaces": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["normal", "offset"],
                "properties": {"normal": INT_VECTOR, "offset": RATIONAL},
                "additionalProperties": False,
            },
        },
        "vector": INT_VECTOR,
    },
    "additionalProperties": False,
}

MODEL_SCHEMA = {
    "type": "object",
    "required": ["model"],
    "properties": {
        "model": {
            "type": "object",
            "required": ["kind"],
            "properties": {
                "kind": {"enum": ["simplex", "hirzebruch", "pl_bundle", "product_of_segments", "s2xs2"]},
                "n": {"type": "integer", "minimum": 1},
                "k": {"type": "integer"},
                "a": {"type": "array", "items": {"type": "integer"}, "minItems": 1},
                "sigma": PARAM,
                "tau": PARAM,
            },
            "additionalProperties": False,
            "allOf": [
                {"if": {"properties": {"kind": {"const": "simplex"}}}, "then": {"required": ["n"]}},
                {"if": {"properties": {"kind": {"const": "hirzebruch"}}},
                 "then": {"required": ["k", "sigma", "tau"]}},
                {"if": {"properties": {"kind": {"const": "pl_bundle"}}},
                 "then": {"required": ["a", "sigma", "tau"]}},
                {"if": {"properties": {"kind": {"enum": ["product_of_segments", "s2xs2"]}}},
                 "then": {"required": ["sigma", "tau"]}},
            ],
        },
        "vector": INT_VECTOR,
    },
    "additionalProperties": False,
}

ORBIT_SCHEMA = {
    "type": "object",
    "required": ["orbit"],
    "properties": {
        "orbit": {
            "type": "object",
            "required": ["n", "spectrum"],
            "properties": {
                "n": {"type": "integer", "minimum": 2},
                "spectrum": {"type": "array", "items": RATIONAL, "minItems": 2},
            },
            "additionalProperties": False,
        },
        "vector": INT_VECTOR,
    },
    "additionalProperties": False,
}

SWEEP_SCHEMA = {
    "type": "object",
    "required": ["test"],
    "properties": {
        "test": {"enum": ["decide", "compare", "orbit-compare", "s-equal"]},
        "model": MODEL_SCHEMA["properties"]["model"],
        "manifold": {"type": "object"},
        "orbit": ORBIT_SCHEMA["properties"]["orbit"],
        "range": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
        "vectors": {"type": "array", "items": INT_VECTOR},
        "trace_free": {"type": "boolean"},
        "incommensurable": {"type": "boolean"},
        "workers": {"type": "integer", "minimum": 1},
    },
    "additionalProperties": False,
}


class SchemaViolation(Exception):
    """Input does not match the expected JSON shape (CLI exit status 2)."""

    def __init__(self, diagnostics: list[str]):
        self.diagnostics = diagnostics
        super().__init__("; ".join(diagnostics))


def _validate(data: Any, schema: dict):
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        raise SchemaViolation([f"{e.json_path}: {e.message}" for e in errors])


def parse_json_text(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaViolation([f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}"]) from None


def load_json_file(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SchemaViolation([f"{path}: {exc.strerror}"]) from None
    return parse_json_text(text, path)


def document_kind(data: Any) -> str:
    if isinstance(data, dict):
        if "orbit" in data:
            return "orbit"
        if "model" in data:
            return "model"
        if "halfspaces" in data:
            return "halfspaces"
    raise SchemaViolation(["$: expected an object with 'halfspaces', 'model' or 'orbit'"])


def param_value(raw, parametric: bool = False, name: str = ""):
    if isinstance(raw, str) and raw.strip() in ("sigma", "tau"):
        return symbol(raw.strip())
    if parametric:
        return symbol(name)
    return Q(raw)


def model_from_json(model: dict, parametric: bool = False) -> DelzantPolytope:
    params = dict(model)
    kind = params.pop("kind")
    for key in ("sigma", "tau"):
        if key in params:
            params[key] = param_value(params[key], parametric, key)
    if parametric and kind in ("simplex",) and "sigma" not in params:
        params["sigma"] = symbol("sigma")
    return build_model(kind, **params)


def polytope_from_json(data: dict, parametric: bool = False) -> DelzantPolytope:
    kind = document_kind(data)
    if kind == "model":
        _validate(data, MODEL_SCHEMA)
        return model_from_json(data["model"], parametric)
    if kind == "halfspaces":
        _validate(data, HALFSPACE_SCHEMA)
        rows = [(h["normal"], Q(h["offset"])) for h in data["halfspaces"]]
        return from_halfspaces(data["n"], rows)
    raise SchemaViolation(["$: expected a polytope document, found an orbit"])


def orbit_from_json(data: dict) -> OrbitSpec:
    _validate(data, ORBIT_SCHEMA)
    orbit = data["orbit"]
    return OrbitSpec(orbit["n"], tuple(Q(r) for r in orbit["spectrum"]))


def validate_sweep(data: Any) -> dict:
    _validate(data, SWEEP_SCHEMA)
    return data
