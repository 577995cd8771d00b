"""
Reading and writing structure files.

A structure file is one JSON document with a ``kind`` (groupoid, monoid,
em_algebra, kleisli_morphism) and a ``backend`` (fhilb, rel).  Matrices are
row-major nested arrays; ``fhilb`` entries are ``[re, im]`` pairs of floats and
``rel`` entries are 0/1.  Floats go through ``repr`` so a parse/serialize round
trip is bit-exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any, Union

import jsonschema
import numpy as np

from daggerlab.algebra import EMAlgebra, KleisliMor, TensorMonad
from daggerlab.backend import Backend, Mor
from daggerlab.errors import DaggerLabError, ParseError, SchemaError
from daggerlab.frobenius import FrobMonoid
from daggerlab.groupoid import Arrow, FiniteGroupoid

KINDS = ("groupoid", "monoid", "em_algebra", "kleisli_morphism")

Value = Union[FiniteGroupoid, FrobMonoid, EMAlgebra, KleisliMor]


@dataclass(frozen=True, eq=False)
class Structure:
    """A parsed structure file: the library object plus its file-level metadata."""

    kind: str
    backend: Backend
    value: Value
    name: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")


@lru_cache(maxsize=1)
def load_schema() -> dict:
    text = resources.files("daggerlab").joinpath("schema/structure.schema.json").read_text("utf-8")
    return json.loads(text)


def _reject_constant(token: str):
    raise ParseError(f"non-finite number {token} is not allowed")


# ------------------------------------------------------------------ matrices


def _decode_matrix(data, backend: Backend, what: str, shape: tuple[int, int] | None = None) -> Mor:
    rows = len(data)
    cols = len(data[0])
    if any(len(r) != cols for r in data):
        raise SchemaError(f"{what}: ragged matrix")
    if shape is not None and (rows, cols) != shape:
        raise SchemaError(f"{what}: expected shape {shape[0]}x{shape[1]}, got {rows}x{cols}")
    if backend is Backend.REL:
        if any(isinstance(x, (list, bool)) for r in data for x in r):
            raise SchemaError(f"{what}: rel entries must be 0 or 1")
        return Mor(backend, np.array(data, dtype=np.int64) == 1)
    if any(not isinstance(x, list) for r in data for x in r):
        raise SchemaError(f"{what}: fhilb entries must be [re, im] pairs")
    arr = np.array(data, dtype=float)
    # assign parts instead of re + 1j*im, which turns -0.0 into 0.0
    out = np.empty(arr.shape[:2], dtype=complex)
    out.real, out.imag = arr[..., 0], arr[..., 1]
    return Mor(backend, out)


def _encode_matrix(f: Mor) -> list:
    if f.backend is Backend.REL:
        return [[int(x) for x in row] for row in f.entries]
    return [[[float(z.real), float(z.imag)] for z in row] for row in f.entries]


def _decode_monoid(doc: dict, backend: Backend, name: str) -> FrobMonoid:
    n = doc["dim"]
    mult = _decode_matrix(doc["mult"], backend, "mult", (n, n * n))
    unit = _decode_matrix(doc["unit"], backend, "unit", (n, 1))
    return FrobMonoid(mult, unit, name)


def _encode_monoid(M: FrobMonoid) -> dict:
    return {"dim": M.n, "mult": _encode_matrix(M.mult), "unit": _encode_matrix(M.unit)}


# ------------------------------------------------------------------ documents


def _decode_groupoid(doc: dict, name: str) -> FiniteGroupoid:
    objects = list(doc["objects"])
    arrows = [Arrow(a["name"], a["dom"], a["cod"]) for a in doc["morphisms"]]
    names = [a.name for a in arrows]
    if len(set(names)) != len(names):
        raise SchemaError("duplicate morphism names")
    known, objs = set(names), set(objects)
    for a in arrows:
        if a.dom not in objs or a.cod not in objs:
            raise SchemaError(f"morphism {a.name!r} refers to an unknown object")
    compose = {}
    for f, g, h in doc["compose"]:
        if not {f, g, h} <= known:
            raise SchemaError(f"compose entry {[f, g, h]} refers to an unknown morphism")
        if (f, g) in compose:
            raise SchemaError(f"compose entry for {(f, g)} given twice")
        compose[(f, g)] = h
    inverse = dict(doc["inverse"])
    if not (set(inverse) | set(inverse.values())) <= known:
        raise SchemaError("inverse table refers to an unknown morphism")
    return FiniteGroupoid(tuple(objects), tuple(arrows), compose, inverse, name)


def _encode_groupoid(G: FiniteGroupoid) -> dict:
    return {
        "objects": list(G.objects),
        "morphisms": [{"name": a.name, "dom": a.dom, "cod": a.cod} for a in G.morphisms],
        "compose": [[f, g, h] for (f, g), h in G.compose.items()],
        "inverse": dict(G.inverse),
    }


def parse_document(doc: Any) -> Structure:
    """Validate a decoded JSON document and build the structure it describes.

    Raises
    ------
    SchemaError
        If the document violates the schema or has inconsistent dimensions.
    """
    if not isinstance(doc, dict):
        raise SchemaError("<root>: a structure file must be a JSON object")
    if doc.get("kind") not in KINDS:
        raise SchemaError(f"kind: expected one of {', '.join(KINDS)}, got {doc.get('kind')!r}")
    try:
        jsonschema.validate(doc, load_schema())
    except jsonschema.ValidationError as e:
        where = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise SchemaError(f"{where}: {e.message}") from None
    kind, backend, name = doc["kind"], Backend(doc["backend"]), doc.get("name", "")
    try:
        if kind == "groupoid":
            value: Value = _decode_groupoid(doc, name)
        elif kind == "monoid":
            value = _decode_monoid(doc, backend, name)
        elif kind == "em_algebra":
            T = TensorMonad(_decode_monoid(doc["monoid"], backend, name))
            m = doc["carrier"]
            value = EMAlgebra(T, _decode_matrix(doc["action"], backend, "action", (m, m * T.n)), name)
        else:
            T = TensorMonad(_decode_monoid(doc["monoid"], backend, name))
            shape = (doc["cod"] * T.n, doc["dom"])
            value = KleisliMor(T, _decode_matrix(doc["body"], backend, "body", shape))
    except SchemaError:
        raise
    except DaggerLabError as e:
        raise SchemaError(str(e)) from None
    return Structure(kind, backend, value, name)


def parse_text(text: str) -> Structure:
    """Parse a structure file's contents.

    Raises
    ------
    ParseError
        If ``text`` is not JSON.
    SchemaError
        If it is JSON but not a valid structure.
    """
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from None
    return parse_document(doc)


def load(path: str | Path) -> Structure:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise ParseError(f"cannot read {path}: {e}") from None
    return parse_text(text)


def to_document(s: Structure) -> dict:
    doc: dict[str, Any] = {"kind": s.kind, "backend": s.backend.value}
    if s.name:
        doc["name"] = s.name
    v = s.value
    if s.kind == "groupoid":
        doc.update(_encode_groupoid(v))
    elif s.kind == "monoid":
        doc.update(_encode_monoid(v))
    elif s.kind == "em_algebra":
        doc.update(monoid=_encode_monoid(v.B), carrier=v.carrier, action=_encode_matrix(v.action))
    else:
        doc.update(monoid=_encode_monoid(v.monad.B), dom=v.dom, cod=v.cod, body=_encode_matrix(v.body))
    return doc


def _is_row(x) -> bool:
    scalar = (int, float, str)
    return isinstance(x, list) and all(
        isinstance(v, scalar) or (isinstance(v, list) and all(isinstance(w, scalar) for w in v)) for v in x
    )


def _render(x, depth: int = 0) -> str:
    """JSON with one matrix row (or table row) per line."""
    pad, inner = " " * depth, " " * (depth + 1)
    if isinstance(x, dict):
        if all(isinstance(v, (int, float, str)) for v in x.values()):
            return json.dumps(x, ensure_ascii=False)
        items = [f"{inner}{json.dumps(k, ensure_ascii=False)}: {_render(v, depth + 1)}" for k, v in x.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(x, list) and not _is_row(x):
        return "[\n" + ",\n".join(inner + _render(v, depth + 1) for v in x) + "\n" + pad + "]"
    return json.dumps(x, ensure_ascii=False)


def dumps(s: Structure) -> str:
    return _render(to_document(s)) + "\n"


def dump(s: Structure, path: str | Path) -> None:
    Path(path).write_text(dumps(s), encoding="utf-8")


def canonical(text: str) -> str:
    """Whitespace- and key-order-independent form used to compare files."""
    return json.dumps(json.loads(text), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def shipped_fixture(name: str) -> Path:
    """Path of a structure file bundled with the package, e.g. ``"z2_rel.json"``."""
    return Path(str(resources.files("daggerlab").joinpath("data", name)))
