"""JSON document mapping for operators, points, and result records.

The document format round-trips exactly: floats are emitted with
``repr`` precision by :mod:`json`, so ``operator_from_doc`` of an
emitted document reconstructs the identical model object.
"""

from __future__ import annotations

from dataclasses import asdict

from .extreme import NormedSpacePoint, Space
from .models import (
    Certificate,
    HilbertOperator,
    L1Operator,
    Operator,
    Shape,
    TailKind,
    TailRule,
    ValidationError,
)

__all__ = [
    "tail_to_doc",
    "tail_from_doc",
    "operator_to_doc",
    "operator_from_doc",
    "point_to_doc",
    "point_from_doc",
    "certificate_to_doc",
]


def _number(doc, key, what):
    if key not in doc:
        raise ValidationError(f"missing field {what}")
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ValidationError(f"{what} must be a number, got {v!r}")
    return float(v)


def _number_list(doc, key, what, required=True):
    if key not in doc:
        if required:
            raise ValidationError(f"missing field {what}")
        return []
    seq = doc[key]
    if not isinstance(seq, (list, tuple)):
        raise ValidationError(f"{what} must be an array")
    out = []
    for i, v in enumerate(seq):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ValidationError(f"{what}[{i}] must be a number, got {v!r}")
        out.append(float(v))
    return out


def tail_to_doc(tail: TailRule) -> dict:
    if tail.kind is TailKind.CONST:
        return {"kind": "const", "value": tail.limit}
    return {"kind": "geometric", "limit": tail.limit, "ratio": tail.ratio}


def tail_from_doc(doc) -> TailRule:
    if not isinstance(doc, dict):
        raise ValidationError("tail must be an object")
    kind = doc.get("kind")
    if kind == "const":
        return TailRule.const(_number(doc, "value", "tail.value"))
    if kind == "geometric":
        return TailRule.geometric(
            _number(doc, "limit", "tail.limit"), _number(doc, "ratio", "tail.ratio")
        )
    raise ValidationError(f"unknown tail kind {kind!r}, expected const or geometric")


def operator_to_doc(t: Operator) -> dict:
    if isinstance(t, L1Operator):
        return {
            "space": "l1",
            "model": "columns",
            "columns": [list(c) for c in t.columns],
            "tail_weights": list(t.tail_weights),
            "tail": tail_to_doc(t.tail),
        }
    if t.shape is Shape.FINITE_MATRIX:
        return {"space": "l2", "model": "matrix", "entries": [list(r) for r in t.entries]}
    model = "diagonal" if t.shape is Shape.DIAGONAL else "shift"
    return {
        "space": "l2",
        "model": model,
        "explicit": list(t.explicit),
        "tail": tail_to_doc(t.tail),
    }


def operator_from_doc(doc) -> Operator:
    if not isinstance(doc, dict):
        raise ValidationError("operator document must be an object")
    space = doc.get("space")
    model = doc.get("model")
    if space == "l1":
        if model != "columns":
            raise ValidationError(f"unknown l1 model {model!r}, expected columns")
        cols = doc.get("columns")
        if not isinstance(cols, (list, tuple)):
            raise ValidationError("columns must be an array of arrays")
        columns = tuple(
            tuple(_number_list({"c": col}, "c", f"columns[{j}]")) for j, col in enumerate(cols)
        )
        weights = tuple(_number_list(doc, "tail_weights", "tail_weights", required=False))
        tail = tail_from_doc(doc.get("tail", {"kind": "const", "value": 0.0}))
        return L1Operator(columns, weights, tail)
    if space == "l2":
        if model == "matrix":
            entries = doc.get("entries")
            if not isinstance(entries, (list, tuple)) or not entries:
                raise ValidationError("entries must be a nonempty array of rows")
            rows = tuple(
                tuple(_number_list({"r": row}, "r", f"entries[{i}]"))
                for i, row in enumerate(entries)
            )
            return HilbertOperator(Shape.FINITE_MATRIX, entries=rows)
        if model in ("diagonal", "shift"):
            explicit = tuple(_number_list(doc, "explicit", "explicit", required=False))
            if "tail" not in doc:
                raise ValidationError("missing field tail")
            tail = tail_from_doc(doc["tail"])
            shape = Shape.DIAGONAL if model == "diagonal" else Shape.WEIGHTED_SHIFT
            return HilbertOperator(shape, explicit, tail)
        raise ValidationError(
            f"unknown l2 model {model!r}, expected diagonal, shift, or matrix"
        )
    raise ValidationError(f"unknown space {space!r}, expected l1 or l2")


def point_to_doc(p: NormedSpacePoint) -> dict:
    return {"space": p.space.value, "coords": list(p.coords)}


def point_from_doc(doc) -> NormedSpacePoint:
    if not isinstance(doc, dict):
        raise ValidationError("point document must be an object")
    space = Space.from_str(doc.get("space", ""))
    coords = _number_list(doc, "coords", "coords")
    return NormedSpacePoint(space, tuple(coords))


def certificate_to_doc(cert: Certificate) -> dict:
    out = asdict(cert)
    out["residuals"] = list(out["residuals"])
    return out
