"""File formats round-trip and stay canonical."""

import json
import os

import pytest

from law.errors import LawError
from law.gallery import bool2, bool4, build, imp2
from law.logics import matrices_logic
from law.matrices import Matrix
from law.partitions import Partition
from law.serialize import (
    algebra_from_json,
    algebra_to_json,
    canonical_json,
    dump_json,
    load_matrix,
    logic_from_json,
    logic_to_json,
    matrix_from_json,
    matrix_to_json,
    partition_to_json,
    payload_to_json,
    translation_from_json,
    translation_to_json,
)
from law.terms import Signature, parse_term
from law.translations import Translation
from law.verdicts import fails


def test_algebra_roundtrip_and_nesting():
    for alg in [bool2(), bool4(), imp2()]:
        data = algebra_to_json(alg)
        assert algebra_from_json(data) == alg
    data = algebra_to_json(bool2())
    assert data["ops"]["and"] == [[0, 0], [0, 1]]  # arity-2 tables nest twice
    assert data["ops"]["not"] == [1, 0]


def test_nullary_ops_are_bare_integers():
    sig = Signature({"c": 0, "f": 1})
    from law.algebra import FiniteAlgebra

    alg = FiniteAlgebra(sig, 2, {"c": (1,), "f": (0, 1)})
    data = algebra_to_json(alg)
    assert data["ops"]["c"] == 1
    assert algebra_from_json(data) == alg
    with pytest.raises(LawError):
        algebra_from_json({**data, "ops": {**data["ops"], "c": [1]}})


def test_matrix_roundtrip_inline_and_path(tmp_path):
    m = Matrix(bool4(), (1, 3))
    assert matrix_from_json(matrix_to_json(m)) == m
    alg_path = os.path.join(tmp_path, "b4.json")
    dump_json(alg_path, algebra_to_json(bool4()))
    mat_path = os.path.join(tmp_path, "m.json")
    dump_json(mat_path, {"algebra": {"path": "b4.json"}, "filter": [1, 3]})
    assert load_matrix(mat_path) == m


def test_logic_roundtrip_both_kinds():
    rules = build("nabla").logic
    assert logic_from_json(logic_to_json(rules)) == rules
    mats = matrices_logic([Matrix(bool2(), (1,)), Matrix(bool2(), (0,))], name="pair")
    again = logic_from_json(logic_to_json(mats))
    assert again.matrices == mats.matrices
    assert again.variable_budget == mats.variable_budget


def test_translation_roundtrip():
    tau = Translation(
        Signature({"⊤": 1}), imp2().signature, {"⊤": parse_term(imp2().signature, "(→ x1 x1)")}
    )
    assert translation_from_json(translation_to_json(tau)) == tau


def test_partition_and_payload_serialization():
    assert partition_to_json(Partition.from_blocks(4, [[3, 1], [0, 2]])) == [[0, 2], [1, 3]]
    verdict = fails({"filter": (0,), "partition": Partition.identity(2)}, depth=3)
    data = payload_to_json(verdict)
    assert data["status"] == "fails"
    assert data["witness"]["partition"] == [[0], [1]]
    assert data["bounds"] == {"depth": 3}
    json.dumps(data)  # JSON-safe all the way down


def test_canonical_json_is_sorted_and_stable():
    a = canonical_json({"b": 1, "a": [2, 1]})
    assert a == '{"a":[2,1],"b":1}'
