"""Manifest loading: schema validation, component building, round trips."""

import json
from pathlib import Path

import pytest
import yaml

from weil.errors import InputError
from weil.expr import ExprSyntaxError
from weil.manifest import (
    build_component, load_manifest, loads_document, parse_manifest, serialize_component, validate,
)
from weil.structures import verify_structure

ROOT = Path(__file__).resolve().parent.parent / "manifests"


def base_doc():
    return {
        "schema_version": "1",
        "patch": {"coords": ["x", "y", "z"]},
        "structure": {"kind": "contact", "components": {
            "beta": {"type": "form", "degree": 1, "terms": [{"index": ["z"], "expr": "1"},
                                                            {"index": ["y"], "expr": "x"}]}}},
        "algebra": {"preset": "jet(2)"},
        "functional": {"preset": "mixed"},
    }


@pytest.mark.parametrize("name", sorted(p.name for p in ROOT.iterdir()))
def test_shipped_manifests_load(name):
    man = load_manifest(ROOT / name)
    assert man.structure.kind


def test_yaml_and_json_agree():
    doc = base_doc()
    a = parse_manifest(loads_document(json.dumps(doc)))
    b = parse_manifest(loads_document(yaml.safe_dump(doc)))
    assert a.echo == b.echo


def test_verify_from_manifest():
    assert verify_structure(parse_manifest(base_doc()).structure).passed


@pytest.mark.parametrize("mutate, fragment", [
    (lambda d: d.update(extra=1), "extra"),
    (lambda d: d.update(schema_version="2"), "schema_version"),
    (lambda d: d["structure"].update(kind="poisson"), "kind"),
    (lambda d: d["patch"].update(coords=["1x"]), "coords"),
])
def test_schema_errors(mutate, fragment):
    doc = base_doc()
    mutate(doc)
    with pytest.raises(InputError) as info:
        validate(doc)
    assert "schema error" in str(info.value)


def test_unknown_symbol_rejected():
    doc = base_doc()
    doc["structure"]["components"]["beta"]["terms"][1]["expr"] = "w"
    with pytest.raises(InputError, match="unknown symbols"):
        parse_manifest(doc)


def test_syntax_error_surfaces():
    doc = base_doc()
    doc["structure"]["components"]["beta"]["terms"][1]["expr"] = "x +"
    with pytest.raises(ExprSyntaxError):
        parse_manifest(doc)


def test_bad_form_degree():
    doc = base_doc()
    doc["structure"]["components"]["beta"]["terms"][0]["index"] = ["x", "z"]
    with pytest.raises(InputError, match="degree"):
        parse_manifest(doc)


def test_seed_override():
    assert parse_manifest(base_doc(), seed=9).policy.seed == 9


def test_custom_sections_shape():
    doc = base_doc()
    doc["sections"] = {"offsets": [[["0", "0"]], [["0", "0"]], [["0", "0"]]]}
    with pytest.raises(InputError, match="shape"):
        parse_manifest(doc)
    doc["sections"] = {"offsets": [[["y", "0"], ["0", "0"], ["0", "x"]]]}
    man = parse_manifest(doc)
    assert len(man.sections) == 1 and man.echo["sections"] == "custom"


@pytest.mark.parametrize("spec", [
    {"type": "form", "degree": 2, "terms": [{"index": ["x", "y"], "expr": "exp(z)"}]},
    {"type": "tensor02", "terms": [{"index": ["x", "x"], "expr": "1"}, {"index": ["y", "z"], "expr": "x"}]},
    {"type": "vector", "components": ["1", "y", "0"]},
    {"type": "bivector", "terms": [{"index": ["x", "y"], "expr": "z"}]},
    {"type": "distribution", "rank": 2, "generators": [["1", "0", "0"], ["0", "1", "x"]]},
])
def test_component_roundtrip(spec):
    from weil.geometry import Patch

    P = Patch(("x", "y", "z"))
    obj = build_component(spec, P)
    again = build_component(serialize_component(obj), P)
    assert serialize_component(again) == serialize_component(obj)
