"""Manifest files (JSON or YAML): schema, parsing into library objects, and serialization.

A manifest names a coordinate patch, one structure with its ingredient tensors,
and the lift configuration.  Tensors are index/expression lists::

    schema_version: "1"
    patch: {coords: [x, y, z]}
    structure:
      kind: contact
      components:
        beta: {type: form, degree: 1, terms: [{index: [z], expr: "1"}, {index: [y], expr: "x"}]}
    algebra: {preset: "jet(2)"}
    functional: {preset: mixed}
    augmentation: auto

Everything is validated against :data:`SCHEMA` before any computation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import jsonschema
import yaml

from .algebra import LinearFunctional, WeilAlgebra, algebra_from_spec, functional
from .errors import InputError
from .expr import ZERO, Expr, as_expr, free_vars, is_zero_const, to_string
from .geometry import (
    Bivector, Distribution, KForm, MultiVector, Patch, SmoothMap, Tensor02, Tensor11, VectorField,
)
from .lift import LiftConfig, affine_section
from .sampling import SamplePolicy
from .structures import KINDS, StructureManifest

SCHEMA_VERSION = "1"

_EXPR = {"type": "string", "minLength": 1}
_NAMES = {"type": "array", "items": {"type": "string"}}
_TERM = {
    "type": "object",
    "additionalProperties": False,
    "required": ["index", "expr"],
    "properties": {"index": _NAMES, "expr": _EXPR},
}
_COMPONENT = {
    "type": "object",
    "additionalProperties": False,
    "required": ["type"],
    "properties": {
        "type": {"enum": ["form", "tensor02", "tensor11", "bivector", "vector", "distribution", "vectors", "map"]},
        "degree": {"type": "integer", "minimum": 0},
        "terms": {"type": "array", "items": _TERM},
        "components": {"type": "array", "items": _EXPR},
        "generators": {"type": "array", "items": {"type": "array", "items": _EXPR}},
        "fields": {"type": "array", "items": {"type": "array", "items": _EXPR}},
        "rank": {"type": "integer", "minimum": 0},
    },
}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "required": ["schema_version", "patch", "structure"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "patch": {
            "type": "object",
            "additionalProperties": False,
            "required": ["coords"],
            "properties": {"dim": {"type": "integer", "minimum": 1},
                           "coords": {"type": "array", "items": {"type": "string", "pattern": "^[A-Za-z][A-Za-z0-9]*$"},
                                      "minItems": 1}},
        },
        "structure": {
            "type": "object",
            "additionalProperties": False,
            "required": ["kind", "components"],
            "properties": {
                "kind": {"enum": list(KINDS)},
                "components": {"type": "object", "additionalProperties": _COMPONENT},
                "options": {
                    "type": "object",
                    "additionalProperties": False,
                    "properties": {"nabla_J": {"type": "boolean"}, "require_positive": {"type": "boolean"},
                                   "require_riemannian": {"type": "boolean"}},
                },
            },
        },
        "algebra": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "preset": {"type": "string"},
                "table": {"type": "array",
                          "items": {"type": "array", "items": {"type": "array", "items": {"type": ["string", "integer"]}}}},
                "labels": _NAMES,
            },
        },
        "functional": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"preset": {"enum": ["real", "top", "mixed"]},
                           "values": {"type": "array", "items": {"type": ["string", "integer"]}}},
        },
        "sections": {
            "oneOf": [
                {"const": "default"},
                {"type": "object", "additionalProperties": False, "required": ["offsets"],
                 "properties": {"offsets": {"type": "array",
                                            "items": {"type": "array",
                                                      "items": {"type": "array", "items": _EXPR}}}}},
            ]
        },
        "verification": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"samples": {"type": "integer", "minimum": 1},
                           "tol": {"type": "number", "exclusiveMinimum": 0},
                           "seed": {"type": "integer", "minimum": 0},
                           "depth_cap": {"type": "integer", "minimum": 1}},
        },
        "augmentation": {
            "oneOf": [
                {"enum": ["auto", "off"]},
                {"type": "array", "items": {"type": "array", "items": {"type": "integer"}, "minItems": 2,
                                            "maxItems": 2}},
            ]
        },
        "distinguished": {"type": "string"},
        "vector_field": {"type": "array", "items": _EXPR},
    },
}


@dataclass
class Manifest:
    raw: dict
    patch: Patch
    structure: StructureManifest
    algebra: WeilAlgebra | None
    lam: LinearFunctional | None
    policy: SamplePolicy
    depth_cap: int
    sections: object = "default"
    augmentation: object = "auto"
    distinguished: str | None = None
    vector_field: VectorField | None = None
    echo: dict = field(default_factory=dict)

    def lift_config(self) -> LiftConfig:
        if self.algebra is None:
            raise InputError("the manifest has no algebra section")
        return LiftConfig(self.algebra, self.lam, self.sections, self.policy, self.augmentation, self.distinguished)


# ---------------------------------------------------------------------------
# loading


def load_document(path) -> dict:
    text = Path(path).read_text()
    return loads_document(text, str(path))


def loads_document(text: str, name: str = "<manifest>") -> dict:
    try:
        if name.endswith(".json") or text.lstrip().startswith("{"):
            doc = json.loads(text)
        else:
            doc = yaml.safe_load(text)
    except (json.JSONDecodeError, yaml.YAMLError) as exc:
        raise InputError(f"{name}: cannot parse manifest: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError(f"{name}: manifest must be a mapping")
    return doc


def validate(doc: dict):
    try:
        jsonschema.validate(doc, SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise InputError(f"schema error at {where}: {exc.message}") from None


def _expr(s, P: Patch, extra=()) -> Expr:
    e = as_expr(s)
    unknown = free_vars(e) - set(P.coords) - set(extra)
    if unknown:
        raise InputError(f"expression {s!r} uses unknown symbols {sorted(unknown)}")
    return e


def _idx(names, P: Patch):
    try:
        return tuple(P.index(n) for n in names)
    except (KeyError, ValueError):
        raise InputError(f"unknown coordinate in index {list(names)}") from None


def _need(spec, key, what):
    if key not in spec:
        raise InputError(f"{what} component needs {key!r}")
    return spec[key]


def build_component(spec: dict, P: Patch):
    t = spec["type"]
    n = P.dim
    if t == "form":
        deg = _need(spec, "degree", "form")
        comps = {}
        for term in spec.get("terms", []):
            key = _idx(term["index"], P)
            if len(key) != deg:
                raise InputError(f"form term index {term['index']} does not have degree {deg}")
            comps[key] = _expr(term["expr"], P)
        return KForm(P, deg, comps)
    if t == "bivector":
        entries = {}
        for term in spec.get("terms", []):
            key = _idx(term["index"], P)
            if len(key) != 2 or key[0] == key[1]:
                raise InputError("bivector entries need two distinct indices (the antisymmetric partner is implied)")
            entries[key] = _expr(term["expr"], P)
        return Bivector.from_upper(P, entries)
    if t in ("tensor02", "tensor11"):
        m = [[ZERO] * n for _ in range(n)]
        for term in spec.get("terms", []):
            key = _idx(term["index"], P)
            if len(key) != 2:
                raise InputError(f"{t} entries need two indices")
            m[key[0]][key[1]] = _expr(term["expr"], P)
        return (Tensor02 if t == "tensor02" else Tensor11)(P, m)
    if t == "vector":
        comps = _need(spec, "components", "vector")
        if len(comps) != n:
            raise InputError(f"vector needs {n} components")
        return VectorField(P, [_expr(c, P) for c in comps])
    if t in ("distribution", "vectors"):
        rows = _need(spec, "generators" if t == "distribution" else "fields", t)
        fields = []
        for r in rows:
            if len(r) != n:
                raise InputError(f"{t} fields need {n} components")
            fields.append(VectorField(P, [_expr(c, P) for c in r]))
        if t == "vectors":
            return fields
        return Distribution(P, fields, spec.get("rank"))
    if t == "map":
        comps = _need(spec, "components", "map")
        if len(comps) != n:
            raise InputError(f"map needs {n} components")
        return SmoothMap(P, P, [_expr(c, P) for c in comps])
    raise InputError(f"unknown component type {t!r}")  # pragma: no cover


def build_algebra(spec: dict | None) -> WeilAlgebra | None:
    if spec is None:
        return None
    if "preset" in spec and "table" in spec:
        raise InputError("algebra: give either a preset or a table")
    if "preset" in spec:
        return algebra_from_spec(spec["preset"])
    if "table" in spec:
        return WeilAlgebra(spec["table"], spec.get("labels"), name="custom")
    raise InputError("algebra needs a preset or a table")


def parse_manifest(doc: dict, seed: int | None = None) -> Manifest:
    validate(doc)
    pdoc = doc["patch"]
    P = Patch(tuple(pdoc["coords"]))
    if "dim" in pdoc and pdoc["dim"] != P.dim:
        raise InputError(f"patch dim {pdoc['dim']} does not match {P.dim} coordinates")
    sdoc = doc["structure"]
    kind = sdoc["kind"]
    data = {name: build_component(spec, P) for name, spec in sdoc["components"].items()}
    v = doc.get("verification", {})
    options = dict(sdoc.get("options", {}))
    options["depth_cap"] = v.get("depth_cap", 4)
    structure = StructureManifest(kind, P, data, options)
    A = build_algebra(doc.get("algebra"))
    lam = None
    if A is not None:
        fdoc = doc.get("functional", {"preset": "top"})
        if "preset" in fdoc and "values" in fdoc:
            raise InputError("functional: give either a preset or values")
        lam = functional(A, fdoc["values"] if "values" in fdoc else fdoc.get("preset", "top"))
    policy = SamplePolicy(seed=seed if seed is not None else v.get("seed", 0), n=v.get("samples", 24),
                          tol=v.get("tol", 1e-9))
    sections = "default"
    if isinstance(doc.get("sections"), dict):
        if A is None:
            raise InputError("custom sections need an algebra")
        offs = doc["sections"]["offsets"]
        sections = []
        for sec in offs:
            if len(sec) != P.dim or any(len(r) != A.dim - 1 for r in sec):
                raise InputError(f"section offsets need shape {P.dim} x {A.dim - 1}")
            sections.append(affine_section(P, A, [[_expr(c, P) for c in r] for r in sec]))
    dist = doc.get("distinguished")
    if dist is not None and dist not in P.coords:
        raise InputError(f"distinguished coordinate {dist!r} not in the patch")
    vf = None
    if "vector_field" in doc:
        if len(doc["vector_field"]) != P.dim:
            raise InputError(f"vector_field needs {P.dim} components")
        vf = VectorField(P, [_expr(c, P) for c in doc["vector_field"]])
    echo = {
        "schema_version": SCHEMA_VERSION,
        "patch": list(P.coords),
        "kind": kind,
        "algebra": None if A is None else {"name": A.name, "dim": A.dim, "labels": list(A.labels)},
        "functional": None if lam is None else lam.to_dict(),
        "verification": {"seed": policy.seed, "samples": policy.n, "tol": policy.tol,
                         "depth_cap": v.get("depth_cap", 4)},
        "sections": "default" if sections == "default" else "custom",
        "augmentation": doc.get("augmentation", "auto"),
    }
    return Manifest(doc, P, structure, A, lam, policy, v.get("depth_cap", 4), sections,
                    doc.get("augmentation", "auto"), dist, vf, echo)


def load_manifest(path, seed: int | None = None) -> Manifest:
    return parse_manifest(load_document(path), seed)


# ---------------------------------------------------------------------------
# serialization (the inverse direction, used for lifted components)


def _s(e) -> str:
    return to_string(e)


def serialize_component(obj) -> dict:
    if isinstance(obj, KForm):
        P = obj.patch
        return {"type": "form", "degree": obj.degree,
                "terms": [{"index": [P.coords[i] for i in k], "expr": _s(v)} for k, v in obj.comps.items()]}
    if isinstance(obj, MultiVector):
        P = obj.patch
        return {"type": "multivector", "degree": obj.degree,
                "terms": [{"index": [P.coords[i] for i in k], "expr": _s(v)} for k, v in obj.comps.items()]}
    if isinstance(obj, (Tensor02, Tensor11, Bivector)):
        P = obj.patch
        t = {Tensor02: "tensor02", Tensor11: "tensor11", Bivector: "bivector"}[type(obj)]
        n = P.dim
        terms = []
        for i in range(n):
            for j in range(n):
                if t == "bivector" and j <= i:
                    continue
                c = obj.comps[i][j]
                if not is_zero_const(c):
                    terms.append({"index": [P.coords[i], P.coords[j]], "expr": _s(c)})
        return {"type": t, "terms": terms}
    if isinstance(obj, VectorField):
        return {"type": "vector", "components": [_s(c) for c in obj.comps]}
    if isinstance(obj, Distribution):
        return {"type": "distribution", "rank": obj.rank,
                "generators": [[_s(c) for c in V.comps] for V in obj.generators]}
    if isinstance(obj, SmoothMap):
        return {"type": "map", "components": [_s(c) for c in obj.comps]}
    if isinstance(obj, (list, tuple)):
        return {"type": "vectors", "fields": [[_s(c) for c in V.comps] for V in obj]}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def serialize_structure(m: StructureManifest) -> dict:
    return {"kind": m.kind, "patch": list(m.patch.coords),
            "components": {k: serialize_component(v) for k, v in sorted(m.data.items())}}


__all__ = ["SCHEMA", "SCHEMA_VERSION", "Manifest", "load_manifest", "load_document", "loads_document",
           "parse_manifest", "validate", "build_component", "build_algebra", "serialize_component",
           "serialize_structure"]
