"""JSON structure files.

A file holds ``{"order": n, "table": [[cell, ...], ...]}`` where each cell
is a strictly ascending, nonempty list of 0-based element indices.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .core import ORDER_CAP, Hypergroupoid, members


class StructureFileError(ValueError):
    pass


def from_json(data) -> Hypergroupoid:
    if not isinstance(data, dict):
        raise StructureFileError("top level must be an object with 'order' and 'table'")
    missing = {"order", "table"} - data.keys()
    if missing:
        raise StructureFileError(f"missing key(s): {', '.join(sorted(missing))}")
    extra = data.keys() - {"order", "table"}
    if extra:
        raise StructureFileError(f"unexpected key(s): {', '.join(sorted(extra))}")
    n = data["order"]
    if isinstance(n, bool) or not isinstance(n, int) or not 1 <= n <= ORDER_CAP:
        raise StructureFileError(f"order must be an integer in 1..{ORDER_CAP}, got {n!r}")
    table = data["table"]
    if not isinstance(table, list) or len(table) != n:
        raise StructureFileError(f"table must be a list of {n} rows")
    rows = []
    for a, row in enumerate(table):
        if not isinstance(row, list) or len(row) != n:
            raise StructureFileError(f"row {a} must be a list of {n} cells (ragged table)")
        cells = []
        for b, cell in enumerate(row):
            if not isinstance(cell, list):
                raise StructureFileError(f"cell ({a},{b}) must be a list of element indices")
            if not cell:
                raise StructureFileError(f"empty cell ({a},{b})")
            bits = 0
            prev = -1
            for e in cell:
                if isinstance(e, bool) or not isinstance(e, int):
                    raise StructureFileError(f"cell ({a},{b}) has non-integer entry {e!r}")
                if not 0 <= e < n:
                    raise StructureFileError(f"cell ({a},{b}) has out-of-range index {e}")
                if e <= prev:
                    raise StructureFileError(f"cell ({a},{b}) is not strictly ascending")
                prev = e
                bits |= 1 << e
            cells.append(bits)
        rows.append(tuple(cells))
    return Hypergroupoid(n, tuple(rows))


def to_json(H: Hypergroupoid) -> dict:
    return {"order": H.order,
            "table": [[list(members(c)) for c in row] for row in H.table]}


def dumps(H: Hypergroupoid) -> str:
    """Compact single-line encoding; identical input gives identical bytes."""
    return json.dumps(to_json(H), separators=(",", ":"))


def loads(text: str) -> Hypergroupoid:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise StructureFileError(f"line {e.lineno} column {e.colno}: {e.msg}") from None
    return from_json(data)


def load(path: Union[str, Path]) -> Hypergroupoid:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return loads(text)
    except StructureFileError as e:
        raise StructureFileError(f"{path}: {e}") from None


def save(H: Hypergroupoid, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(H) + "\n", encoding="utf-8")
