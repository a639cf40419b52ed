"""JSON file formats for teachers and models.

Field elements are written as strings (``"-3/7"``, ``"5"``).  Every document
carries a ``"field"`` header, ``{"kind": "rational"}`` or
``{"kind": "mod", "p": 97}``; a missing header means rationals.

Teacher kinds: ``rational_function`` (``p``, ``q``), ``recurrence``
(``initial``, ``coeffs``), ``prefix`` (``values``, optional
``order_bound``), plus the two model kinds ``wsa`` and ``csfg`` so a model
file can serve directly as a hidden target.
"""

from __future__ import annotations

import json
from pathlib import Path

from .automata import WSA
from .exactmath import field_from_header
from .flowgraph import CSFG, KINDS, Vertex
from .oracle import (
    CSFGTeacher,
    PrefixTeacher,
    RationalFunctionTeacher,
    RecurrenceTeacher,
    Teacher,
    WSATeacher,
)
from .streams import NonInvertibleDenominator, Polynomial, RationalStreamSpec, RecurrenceSpec


class FormatError(ValueError):
    pass


def _field(doc):
    try:
        return field_from_header(doc.get("field"))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad field header: {exc}") from exc


def _values(fld, xs, what):
    if not isinstance(xs, list):
        raise FormatError(f"{what} must be a list")
    try:
        return [fld(x if isinstance(x, str) else str(x)) for x in xs]
    except (ValueError, TypeError) as exc:
        raise FormatError(f"bad value in {what}: {exc}") from exc


def model_to_dict(model) -> dict:
    fld = model.field
    fmt = fld.format
    if isinstance(model, WSA):
        return {
            "field": fld.header(),
            "kind": "wsa",
            "n_states": model.n_states,
            "start": model.start,
            "output": [fmt(x) for x in model.output],
            "trans": [[fmt(x) for x in row] for row in model.trans],
        }
    return {
        "field": fld.header(),
        "kind": "csfg",
        "vertices": [
            {"id": v.id, "kind": v.kind, **({"value": fmt(v.value)} if v.value is not None else {})}
            for v in model.vertices
        ],
        "edges": [[a, b] for a, b in model.edges],
    }


def model_from_dict(doc: dict):
    fld = _field(doc)
    kind = doc.get("kind")
    try:
        if kind == "wsa":
            output = _values(fld, doc["output"], "output")
            trans = [_values(fld, row, "trans") for row in doc["trans"]]
            if "n_states" in doc and doc["n_states"] != len(output):
                raise FormatError("n_states does not match the output vector")
            return WSA(output, trans, int(doc.get("start", 0)), fld)
        if kind == "csfg":
            vertices = []
            for v in doc["vertices"]:
                if v["kind"] not in KINDS:
                    raise FormatError(f"unknown vertex kind {v['kind']!r}")
                value = _values(fld, [v["value"]], "vertex value")[0] if "value" in v else None
                vertices.append(Vertex(str(v["id"]), v["kind"], value))
            edges = [(str(a), str(b)) for a, b in doc["edges"]]
            return CSFG(vertices, edges, fld)
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed {kind} model: {exc}") from exc
    raise FormatError(f"unknown model kind {kind!r}")


def teacher_from_dict(doc: dict) -> Teacher:
    if not isinstance(doc, dict):
        raise FormatError("teacher document must be a JSON object")
    fld = _field(doc)
    kind = doc.get("kind")
    try:
        if kind == "rational_function":
            p = Polynomial(_values(fld, doc["p"], "p"), fld)
            q = Polynomial(_values(fld, doc["q"], "q"), fld)
            # q[0] == 0 surfaces as NonInvertibleDenominator, a domain error
            return RationalFunctionTeacher(RationalStreamSpec(p, q))
        if kind == "recurrence":
            spec = RecurrenceSpec(_values(fld, doc["initial"], "initial"), _values(fld, doc["coeffs"], "coeffs"), fld)
            return RecurrenceTeacher(spec)
        if kind == "prefix":
            bound = doc.get("order_bound")
            return PrefixTeacher(_values(fld, doc["values"], "values"), None if bound is None else int(bound), fld)
    except (FormatError, NonInvertibleDenominator):
        raise
    except KeyError as exc:
        raise FormatError(f"{kind} teacher is missing {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise FormatError(f"malformed {kind} teacher: {exc}") from exc
    if kind == "wsa":
        return WSATeacher(model_from_dict(doc))
    if kind == "csfg":
        return CSFGTeacher(model_from_dict(doc))
    raise FormatError(f"unknown teacher kind {kind!r}")


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def load_teacher(path) -> Teacher:
    return teacher_from_dict(read_json(path))


def load_model(path):
    return model_from_dict(read_json(path))


def dump_model(model, path):
    Path(path).write_text(json.dumps(model_to_dict(model), indent=2) + "\n")
