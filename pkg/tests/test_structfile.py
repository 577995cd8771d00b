from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from daggerlab.algebra import EMAlgebra, KleisliMor
from daggerlab.backend import Backend, Mor
from daggerlab.errors import ParseError, SchemaError
from daggerlab.frobenius import FrobMonoid, dual_numbers
from daggerlab.groupoid import FiniteGroupoid, groupoid_isomorphic, parallel_isos
from daggerlab.structfile import (
    Structure,
    canonical,
    dump,
    dumps,
    load,
    load_schema,
    parse_document,
    parse_text,
    shipped_fixture,
    to_document,
)

DATA = Path(str(shipped_fixture("z2_rel.json"))).parent
SHIPPED = sorted(p.name for p in DATA.glob("*.json"))
REPO_SCHEMA = Path(__file__).resolve().parents[1] / "docs" / "structure.schema.json"


def z2_monoid_doc() -> dict:
    return {
        "kind": "monoid",
        "backend": "rel",
        "dim": 2,
        "mult": [[1, 0, 0, 1], [0, 1, 1, 0]],
        "unit": [[1], [0]],
    }


@pytest.mark.parametrize("name", SHIPPED)
def test_shipped_files_round_trip_exactly(name):
    text = shipped_fixture(name).read_text(encoding="utf-8")
    s = parse_text(text)
    assert dumps(s) == text
    assert parse_document(json.loads(text)).kind == s.kind


def test_expected_fixtures_are_shipped():
    assert {"z2_rel.json", "pants2_nonfem.json"} <= set(SHIPPED)


def test_docs_schema_matches_package_schema():
    if not REPO_SCHEMA.exists():
        pytest.skip("not running from a source checkout")
    assert json.loads(REPO_SCHEMA.read_text(encoding="utf-8")) == load_schema()


def test_value_types():
    assert isinstance(load(shipped_fixture("z2_rel.json")).value, FrobMonoid)
    assert isinstance(load(shipped_fixture("pants2_nonfem.json")).value, EMAlgebra)
    assert isinstance(load(shipped_fixture("kleisli_z3.json")).value, KleisliMor)
    assert isinstance(load(shipped_fixture("s3_plus_discrete2_groupoid.json")).value, FiniteGroupoid)


def test_rel_monoid_decodes_to_booleans():
    M = parse_document(z2_monoid_doc()).value
    assert M.mult.entries.dtype == np.bool_
    assert M.mult.pairs() == {(0, 0), (3, 0), (1, 1), (2, 1)}


def test_complex_entries():
    doc = {"kind": "monoid", "backend": "fhilb", "dim": 1, "mult": [[[1.0, -0.5]]], "unit": [[[0, 2.5]]]}
    M = parse_document(doc).value
    assert M.mult.entries[0, 0] == 1 - 0.5j
    assert M.unit.entries[0, 0] == 2.5j


def test_groupoid_round_trip(tmp_path):
    s = Structure("groupoid", Backend.REL, parallel_isos(), "pi")
    path = tmp_path / "g.json"
    dump(s, path)
    back = load(path)
    assert back.name == "pi"
    assert groupoid_isomorphic(back.value, parallel_isos())
    assert dumps(back) == path.read_text(encoding="utf-8")


@pytest.mark.parametrize(
    "mutate,fragment",
    [
        (lambda d: d.pop("kind"), "kind"),
        (lambda d: d.update(kind="sheaf"), "kind"),
        (lambda d: d.update(backend="set"), "backend"),
        (lambda d: d.update(dim=0), "dim"),
        (lambda d: d.update(mult=[[1, 0, 0, 1]]), "mult"),
        (lambda d: d.update(mult=[[1, 0, 0], [0, 1, 1]]), "mult"),
        (lambda d: d.update(unit=[[[1.0, 0.0]], [[0.0, 0.0]]]), "unit"),
        (lambda d: d.update(extra=True), "extra"),
    ],
)
def test_schema_errors(mutate, fragment):
    doc = z2_monoid_doc()
    mutate(doc)
    with pytest.raises(SchemaError, match=fragment):
        parse_document(doc)


def test_inconsistent_groupoid_is_a_schema_error():
    doc = {
        "kind": "groupoid",
        "backend": "rel",
        "objects": ["*"],
        "morphisms": [{"name": "e", "dom": "*", "cod": "*"}],
        "compose": [["e", "e", "f"]],
        "inverse": {"e": "e"},
    }
    with pytest.raises(SchemaError):
        parse_document(doc)


def test_em_action_shape_checked():
    doc = {"kind": "em_algebra", "backend": "rel", "monoid": {k: v for k, v in z2_monoid_doc().items()
                                                             if k in ("dim", "mult", "unit")},
           "carrier": 2, "action": [[1, 0], [0, 1]]}
    with pytest.raises(SchemaError, match="action"):
        parse_document(doc)


@pytest.mark.parametrize("text", ["", "{", "[1, 2", "{\"kind\": NaN}", "{\"kind\": Infinity}"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_text(text)


def test_missing_file_is_a_parse_error(tmp_path):
    with pytest.raises(ParseError):
        load(tmp_path / "nope.json")


def test_canonical_ignores_layout():
    text = shipped_fixture("z2_rel.json").read_text(encoding="utf-8")
    assert canonical(text) == canonical(json.dumps(json.loads(text), indent=4))


finite = st.floats(allow_nan=False, allow_infinity=False)


@given(st.integers(1, 3), st.data())
def test_float_round_trip_is_bit_exact(n, data):
    re = np.array(data.draw(st.lists(finite, min_size=n * n * n, max_size=n * n * n))).reshape(n, n * n)
    im = np.array(data.draw(st.lists(finite, min_size=n * n * n, max_size=n * n * n))).reshape(n, n * n)
    unit = np.array(data.draw(st.lists(finite, min_size=n, max_size=n))).reshape(n, 1)
    M = FrobMonoid(Mor.fhilb(re + 1j * im), Mor.fhilb(unit))
    s = Structure("monoid", Backend.FHILB, M, "random")
    text = dumps(s)
    back = parse_text(text).value
    assert back.mult.entries.tobytes() == M.mult.entries.tobytes()
    assert back.unit.entries.tobytes() == M.unit.entries.tobytes()
    assert dumps(parse_text(text)) == text


def test_document_keys():
    doc = to_document(Structure("monoid", Backend.FHILB, dual_numbers(), "dual"))
    assert list(doc) == ["kind", "backend", "name", "dim", "mult", "unit"]
