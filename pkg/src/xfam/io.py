"""JSON interchange for families, pairs and reports; atomic file output."""
from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Any

from .family import CrossPair, Family, FamilyError, elements_of, mask_of


class SchemaError(ValueError):
    """Input does not follow the family / pair JSON layout."""


def family_to_json(f: Family) -> dict[str, Any]:
    return {"n": f.n, "k": f.k, "sets": sorted(elements_of(m) for m in f.members)}


def family_from_json(obj: Any) -> Family:
    if not isinstance(obj, dict) or not {"n", "k", "sets"} <= obj.keys():
        raise SchemaError('a family is {"n": int, "k": int, "sets": [[...], ...]}')
    n, k, sets = obj["n"], obj["k"], obj["sets"]
    if not isinstance(n, int) or not isinstance(k, int) or not isinstance(sets, list):
        raise SchemaError("family fields have the wrong types")
    masks = []
    for s in sets:
        if not isinstance(s, list) or not all(isinstance(x, int) for x in s):
            raise SchemaError(f"set {s!r} is not a list of integers")
        if s != sorted(set(s)):
            raise SchemaError(f"set {s} is not strictly ascending")
        if any(not 1 <= x <= n for x in s):
            raise SchemaError(f"set {s} leaves [1, {n}]")
        masks.append(mask_of(s))
    if any(a >= b for a, b in zip(sets, sets[1:])):
        raise SchemaError("sets must be listed in strictly ascending lexicographic order")
    try:
        return Family(n, k, tuple(masks))
    except FamilyError as exc:
        raise SchemaError(str(exc)) from exc


def pair_to_json(p: CrossPair) -> dict[str, Any]:
    return {"f": family_to_json(p.f), "g": family_to_json(p.g)}


def pair_from_json(obj: Any) -> CrossPair:
    if not isinstance(obj, dict) or not {"f", "g"} <= obj.keys():
        raise SchemaError('a pair is {"f": <family>, "g": <family>}')
    try:
        return CrossPair(family_from_json(obj["f"]), family_from_json(obj["g"]))
    except FamilyError as exc:
        raise SchemaError(str(exc)) from exc


def load_json(path: str | os.PathLike) -> Any:
    """Parse a JSON file; malformed input is reported with line and column."""
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def load_family(path: str | os.PathLike) -> Family:
    return family_from_json(load_json(path))


def load_pair(path: str | os.PathLike) -> CrossPair:
    return pair_from_json(load_json(path))


def write_atomic(path: str | os.PathLike, text: str) -> None:
    """Write through a temporary file in the target directory, then rename."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{target.name}.", dir=target.parent)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_json(path: str | os.PathLike, obj: Any) -> None:
    write_atomic(path, json.dumps(obj, indent=2) + "\n")
