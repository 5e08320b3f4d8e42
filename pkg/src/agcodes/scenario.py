"""
Scenario files: JSON descriptions of a field, a variety, divisors, points,
G and an optional rectifying function.
"""

from __future__ import annotations

import hashlib
import json

import jsonschema

from .geom import PROD, PROJ, Divisor, Hypersurface, Variety
from .gf import FieldError, field_construct
from .parse import ParseError, parse_expression, parse_poly

_component = {
    "type": "object",
    "properties": {"poly": {"type": "string"}, "mult": {"type": "integer"}},
    "required": ["poly"],
    "additionalProperties": False,
}

_coord = {"type": ["string", "integer"]}

SCHEMA = {
    "type": "object",
    "properties": {
        "field": {
            "type": "object",
            "properties": {
                "p": {"type": "integer", "minimum": 2},
                "m": {"type": "integer", "minimum": 1},
                "modulus": {"type": "string"},
            },
            "required": ["p"],
            "additionalProperties": False,
        },
        "variety": {
            "type": "object",
            "properties": {
                "kind": {"enum": [PROJ, PROD]},
                "r": {"type": "integer", "minimum": 1},
            },
            "required": ["kind", "r"],
            "additionalProperties": False,
        },
        "divisors": {"type": "array", "items": _component},
        "points": {
            "type": "array",
            "items": {"type": "array",
                      "items": {"anyOf": [_coord, {"type": "array", "items": _coord}]}},
        },
        "G": {"type": "array", "items": _component},
        "theta": {"type": "string"},
        "options": {
            "type": "object",
            "properties": {
                "E_max": {"type": "integer", "minimum": 1},
                "A_max": {"type": "integer", "minimum": 1},
                "seed": {"type": "integer"},
            },
            "additionalProperties": False,
        },
    },
    "required": ["field", "variety"],
    "additionalProperties": False,
}


class ScenarioError(ValueError):
    """Schema or parse failure in a scenario document."""

    def __init__(self, msg, path=None):
        super().__init__(msg)
        self.path = path


class Scenario:
    def __init__(self, doc):
        try:
            jsonschema.validate(doc, SCHEMA)
        except jsonschema.ValidationError as exc:
            loc = "/".join(str(x) for x in exc.absolute_path)
            raise ScenarioError(exc.message, loc or None) from None
        self.doc = doc
        f = doc["field"]
        try:
            self.field = field_construct(f["p"], f.get("m", 1), f.get("modulus"))
        except FieldError as exc:
            raise ScenarioError(str(exc), "field") from None
        v = doc["variety"]
        self.variety = V = Variety(self.field, v["kind"], v["r"])
        n = V.names
        try:
            self.divisors = [Divisor.of(V, parse_poly(c["poly"], n, self.field), c.get("mult", 1))
                             for c in doc.get("divisors", [])]
            self.G = Divisor(V, [(Hypersurface(V, parse_poly(c["poly"], n, self.field)),
                                  c.get("mult", 1)) for c in doc.get("G", [])])
            self.theta = (parse_expression(doc["theta"], n, self.field)
                          if "theta" in doc else None)
            self.points = [V.point(_coords(c, self.field)) for c in doc.get("points", [])]
        except (ParseError, FieldError) as exc:
            raise ScenarioError(str(exc)) from None
        except ValueError as exc:
            raise ScenarioError(str(exc)) from None
        opts = doc.get("options", {})
        self.E_max = opts.get("E_max", 4)
        self.A_max = opts.get("A_max", 8)
        self.seed = opts.get("seed", 0)

    def digest(self):
        blob = json.dumps(self.doc, sort_keys=True, separators=(",", ":")).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


def _coords(c, F):
    def one(x):
        return F.parse(x) if isinstance(x, str) else F(x)
    return [[one(y) for y in x] if isinstance(x, list) else one(x) for x in c]


def load_scenario(source):
    """Scenario from a path, a JSON string or a dict."""
    if isinstance(source, dict):
        return Scenario(source)
    try:
        if isinstance(source, str) and source.lstrip().startswith("{"):
            doc = json.loads(source)
        else:
            with open(source) as fh:
                doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"invalid JSON: {exc}") from None
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario: {exc}") from None
    return Scenario(doc)
