"""Reading and writing form files (JSON).

A form file looks like::

    {"semiring": {"kind": "maxplus"}, "kind": "quadratic", "rank": 2,
     "diag": ["0", "-inf"], "off": {"1,2": "3/2"}}

Indices in "off" keys are 1-based with i < j.  A bilinear form gives "gram"
as a list of rows.  An optional "companion" (rows) accompanies a quadratic
form.  Finite semirings use element names as literals.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .forms import GramMatrix, QuadraticScheme
from .semiring import ScalarParseError, Semiring, from_descriptor


class FormFileError(ValueError):
    pass


@dataclass(frozen=True)
class FormDocument:
    ring: Semiring
    kind: str  # "bilinear" or "quadratic"
    form: GramMatrix | QuadraticScheme
    companion: GramMatrix | None = None

    @property
    def rank(self) -> int:
        return self.form.rank


def _scalar(ring, literal, where):
    try:
        return ring.coerce(literal)
    except (ScalarParseError, ValueError, TypeError) as exc:
        raise FormFileError(f"bad scalar at {where}: {exc}") from None


def _matrix(ring, rows, n, name):
    if not isinstance(rows, list) or len(rows) != n:
        raise FormFileError(f"{name} must have {n} rows")
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise FormFileError(f"{name} row {i + 1} must have {n} entries")
        out.append([_scalar(ring, a, f"{name}[{i + 1}][{j + 1}]") for j, a in enumerate(row)])
    for i in range(n):
        for j in range(i + 1, n):
            if out[i][j] != out[j][i]:
                raise FormFileError(f"{name} asymmetric at ({i + 1},{j + 1})")
    return GramMatrix.from_rows(ring, out)


def _key(key, n):
    try:
        i, j = (int(t) for t in str(key).split(","))
    except ValueError:
        raise FormFileError(f"bad scheme key {key!r}: expected 'i,j'") from None
    if not 1 <= i < j <= n:
        raise FormFileError(f"bad scheme key {key!r}: need 1 <= i < j <= {n}")
    return i - 1, j - 1


def document_from_data(data) -> FormDocument:
    if not isinstance(data, dict):
        raise FormFileError("form file must be a JSON object")
    try:
        ring = from_descriptor(data.get("semiring"))
    except ValueError as exc:
        raise FormFileError(str(exc)) from None
    kind = data.get("kind")
    if kind not in ("bilinear", "quadratic"):
        raise FormFileError(f"kind must be 'bilinear' or 'quadratic', got {kind!r}")
    n = data.get("rank")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise FormFileError("rank must be a non-negative integer")
    labels = data.get("labels")
    companion = None
    if kind == "bilinear":
        if "gram" not in data:
            raise FormFileError("bilinear form needs 'gram'")
        form = _matrix(ring, data["gram"], n, "gram")
    else:
        body = data.get("quadratic", data)
        diag = body.get("diag")
        if not isinstance(diag, list) or len(diag) != n:
            raise FormFileError(f"diag must list {n} scalars")
        d = [_scalar(ring, a, f"diag[{i + 1}]") for i, a in enumerate(diag)]
        off = body.get("off", {})
        if not isinstance(off, dict):
            raise FormFileError("off must be an object with 'i,j' keys")
        o = {}
        for key, a in off.items():
            ij = _key(key, n)
            if ij in o:
                raise FormFileError(f"duplicate scheme key {key!r}")
            o[ij] = _scalar(ring, a, f"off[{key}]")
        form = QuadraticScheme.from_parts(ring, d, o)
        if data.get("companion") is not None:
            companion = _matrix(ring, data["companion"], n, "companion")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != n or len(set(labels)) != n:
            raise FormFileError("labels must be distinct, one per base vector")
        form = _relabel(form, labels)
        if companion is not None:
            companion = _relabel(companion, labels)
    return FormDocument(ring, kind, form, companion)


def _relabel(f, labels):
    from .modules import FreeModule
    module = FreeModule(f.ring, f.rank, tuple(str(x) for x in labels))
    if isinstance(f, GramMatrix):
        return GramMatrix(module, f.rows)
    return QuadraticScheme(module, f.diag, f.off)


def parse_form_file(text: str) -> FormDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormFileError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return document_from_data(data)


def read_form_file(path) -> FormDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_form_file(fh.read())


def form_to_data(f, companion: GramMatrix | None = None) -> dict:
    ring = f.ring
    fmt = ring.format
    data = {"semiring": ring.descriptor()}
    if isinstance(f, GramMatrix):
        data["kind"] = "bilinear"
        data["rank"] = f.rank
        data["gram"] = [[fmt(a) for a in row] for row in f.rows]
    else:
        data["kind"] = "quadratic"
        data["rank"] = f.rank
        data["diag"] = [fmt(a) for a in f.diag]
        data["off"] = {f"{i + 1},{j + 1}": fmt(a) for (i, j), a in f.off}
    default = tuple(f"e{i + 1}" for i in range(f.rank))
    if f.module.labels != default:
        data["labels"] = list(f.module.labels)
    if companion is not None:
        data["companion"] = [[fmt(a) for a in row] for row in companion.rows]
    return data


def serialize(doc: FormDocument | GramMatrix | QuadraticScheme) -> str:
    if isinstance(doc, FormDocument):
        data = form_to_data(doc.form, doc.companion)
    else:
        data = form_to_data(doc)
    return json.dumps(data, ensure_ascii=False) + "\n"
