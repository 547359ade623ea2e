from __future__ import annotations

import json
import os

import pytest
from hypothesis import given

from xfam.constructions import disjoint_pair_construction
from xfam.io import (
    SchemaError,
    family_from_json,
    family_to_json,
    load_json,
    load_pair,
    pair_from_json,
    pair_to_json,
    write_atomic,
    write_json,
)

from test_family import families


@given(families())
def test_family_round_trip(f):
    assert family_from_json(json.loads(json.dumps(family_to_json(f)))) == f


def test_pair_round_trip(tmp_path):
    p = disjoint_pair_construction(7, 3, 2)
    write_json(tmp_path / "p.json", pair_to_json(p))
    assert load_pair(tmp_path / "p.json") == p


def test_output_is_lexicographic():
    f = family_from_json({"n": 4, "k": 2, "sets": [[1, 2], [1, 3], [2, 3]]})
    assert family_to_json(f)["sets"] == [[1, 2], [1, 3], [2, 3]]


@pytest.mark.parametrize(
    "obj",
    [
        [],
        {"n": 4, "k": 2},
        {"n": 4, "k": 2, "sets": [[2, 1]]},
        {"n": 4, "k": 2, "sets": [[1, 5]]},
        {"n": 4, "k": 2, "sets": [[1, 2, 3]]},
        {"n": 4, "k": 2, "sets": [[1, 3], [1, 2]]},
        {"n": 4, "k": 2, "sets": [[1, 2], [1, 2]]},
        {"n": 4, "k": 2, "sets": [["1", 2]]},
    ],
)
def test_schema_rejects(obj):
    with pytest.raises(SchemaError):
        family_from_json(obj)


def test_pair_schema():
    with pytest.raises(SchemaError):
        pair_from_json({"f": {"n": 4, "k": 2, "sets": []}})
    with pytest.raises(SchemaError):
        pair_from_json({"f": {"n": 4, "k": 1, "sets": []}, "g": {"n": 4, "k": 2, "sets": []}})


def test_malformed_json_names_position(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"n": 3,\n "sets": [}')
    with pytest.raises(SchemaError, match="line 2, column"):
        load_json(path)


def test_write_atomic_leaves_no_partial_file(tmp_path, monkeypatch):
    target = tmp_path / "out.json"
    write_atomic(target, "old\n")

    def boom(*a):
        raise OSError("disk full")

    monkeypatch.setattr(os, "fsync", boom)
    with pytest.raises(OSError):
        write_atomic(target, "new\n")
    assert target.read_text() == "old\n"
    assert os.listdir(tmp_path) == ["out.json"]
