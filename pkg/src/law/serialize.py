"""JSON file formats and canonical, deterministic serialization.

Formats:

* algebra: ``{"name": str, "signature": {sym: arity}, "size": n,
  "ops": {sym: nested-array}}`` where nested array depth equals the arity
  and a nullary op is a bare integer
* matrix: ``{"algebra": <inline algebra | {"path": str}>, "filter": [ints]}``
* logic: ``{"signature": {...}, "kind": "rules"|"matrices",
  "rules": [{"premises": [sexpr], "conclusion": sexpr}],
  "matrices": [matrix], "variable_budget": int}``
* translation: ``{"source": sig, "target": sig, "map": {sym: sexpr}}``

Product carriers are indexed row-major with the first factor most
significant, matching `algebra.product_encode`.
"""

from __future__ import annotations

import hashlib
import json
import os
from typing import Any

from .algebra import FiniteAlgebra
from .errors import LawError
from .logics import LogicPresentation, MATRICES, RULES, Rule, matrices_logic, rules_logic
from .matrices import Matrix
from .partitions import Partition
from .terms import Signature, parse_term, to_sexpr
from .translations import Translation
from .verdicts import Verdict


def canonical_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def fingerprint(data: Any) -> str:
    return hashlib.sha256(canonical_json(data).encode("utf-8")).hexdigest()[:16]


def file_fingerprint(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# algebras


def _nest(cells: tuple[int, ...], size: int, arity: int):
    if arity == 0:
        return cells[0]
    if arity == 1:
        return list(cells)
    span = size ** (arity - 1)
    return [_nest(cells[i * span : (i + 1) * span], size, arity - 1) for i in range(size)]


def _flatten(nested, arity: int) -> list[int]:
    if arity == 0:
        if not isinstance(nested, int):
            raise LawError("nullary op must be a bare integer")
        return [nested]
    if not isinstance(nested, list):
        raise LawError("operation table must nest to the arity")
    out: list[int] = []
    for item in nested:
        out.extend(_flatten(item, arity - 1))
    return out


def algebra_to_json(alg: FiniteAlgebra) -> dict:
    sig = alg.signature.as_dict()
    return {
        "name": alg.name,
        "signature": sig,
        "size": alg.size,
        "ops": {sym: _nest(alg.table(sym), alg.size, sig[sym]) for sym in sorted(sig)},
    }


def algebra_from_json(data: dict) -> FiniteAlgebra:
    sig = Signature({str(k): int(v) for k, v in data["signature"].items()})
    size = int(data["size"])
    tables = {
        sym: tuple(_flatten(data["ops"][sym], arity)) for sym, arity in sig.symbols
    }
    return FiniteAlgebra(sig, size, tables, name=str(data.get("name", "")))


def algebra_fingerprint(alg: FiniteAlgebra) -> str:
    data = algebra_to_json(alg)
    data.pop("name", None)
    return fingerprint(data)


# ---------------------------------------------------------------------------
# matrices, partitions


def matrix_to_json(m: Matrix) -> dict:
    return {"algebra": algebra_to_json(m.algebra), "filter": list(m.filter)}


def matrix_from_json(data: dict, base_dir: str = ".") -> Matrix:
    algdata = data["algebra"]
    if isinstance(algdata, dict) and "path" in algdata:
        alg = load_algebra(os.path.join(base_dir, algdata["path"]))
    else:
        alg = algebra_from_json(algdata)
    return Matrix(alg, [int(x) for x in data["filter"]])


def partition_to_json(p: Partition) -> list[list[int]]:
    return [list(b) for b in p.blocks()]


# ---------------------------------------------------------------------------
# logics, translations


def rule_to_json(r: Rule) -> dict:
    return {
        "premises": [to_sexpr(p) for p in r.premises],
        "conclusion": to_sexpr(r.conclusion),
    }


def logic_to_json(logic: LogicPresentation) -> dict:
    out = {
        "signature": logic.signature.as_dict(),
        "kind": logic.kind,
        "variable_budget": logic.variable_budget,
    }
    if logic.name:
        out["name"] = logic.name
    if logic.kind == RULES:
        out["rules"] = [rule_to_json(r) for r in logic.rules]
    else:
        out["matrices"] = [matrix_to_json(m) for m in logic.matrices]
    return out


def logic_from_json(data: dict, base_dir: str = ".") -> LogicPresentation:
    sig = Signature({str(k): int(v) for k, v in data["signature"].items()})
    kind = data["kind"]
    budget = int(data.get("variable_budget", 8))
    name = str(data.get("name", ""))
    if kind == RULES:
        rules = [
            Rule(
                [parse_term(sig, s) for s in r.get("premises", [])],
                parse_term(sig, r["conclusion"]),
            )
            for r in data.get("rules", [])
        ]
        return rules_logic(sig, rules, name=name, variable_budget=budget)
    if kind == MATRICES:
        mats = [matrix_from_json(m, base_dir) for m in data.get("matrices", [])]
        logic = matrices_logic(mats, name=name, variable_budget=budget)
        if logic.signature != sig:
            raise LawError("logic signature differs from its matrices")
        return logic
    raise LawError(f"unknown logic kind {kind!r}")


def translation_to_json(tau: Translation) -> dict:
    return {
        "source": tau.source.as_dict(),
        "target": tau.target.as_dict(),
        "map": {sym: to_sexpr(t) for sym, t in tau.mapping},
    }


def translation_from_json(data: dict) -> Translation:
    source = Signature({str(k): int(v) for k, v in data["source"].items()})
    target = Signature({str(k): int(v) for k, v in data["target"].items()})
    mapping = {sym: parse_term(target, s) for sym, s in data["map"].items()}
    return Translation(source, target, mapping)


# ---------------------------------------------------------------------------
# verdicts and generic payloads


def payload_to_json(value: Any) -> Any:
    """Best-effort canonical JSON for report payloads and witnesses."""
    if isinstance(value, Verdict):
        out = {"status": value.status, "bounds": payload_to_json(value.bounds_dict())}
        if value.witness is not None:
            out["witness"] = payload_to_json(value.witness)
        return out
    if isinstance(value, Partition):
        return partition_to_json(value)
    if isinstance(value, Matrix):
        return matrix_to_json(value)
    if isinstance(value, FiniteAlgebra):
        return algebra_to_json(value)
    if isinstance(value, LogicPresentation):
        return logic_to_json(value)
    if isinstance(value, Rule):
        return rule_to_json(value)
    if isinstance(value, dict):
        return {str(k): payload_to_json(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    if isinstance(value, (list, tuple)):
        return [payload_to_json(v) for v in value]
    if hasattr(value, "to_json"):
        return payload_to_json(value.to_json())
    if hasattr(value, "filters") and hasattr(value, "algebra"):
        return {
            "algebra": payload_to_json(value.algebra),
            "filters": [list(f) for f in value.filters],
        }
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return repr(value)


# ---------------------------------------------------------------------------
# file helpers


def load_json(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def load_algebra(path: str) -> FiniteAlgebra:
    return algebra_from_json(load_json(path))


def load_matrix(path: str) -> Matrix:
    return matrix_from_json(load_json(path), os.path.dirname(path) or ".")


def load_logic(path: str) -> LogicPresentation:
    return logic_from_json(load_json(path), os.path.dirname(path) or ".")


def load_translation(path: str) -> Translation:
    return translation_from_json(load_json(path))


def dump_json(path: str, data: Any) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, sort_keys=True, ensure_ascii=False, indent=2)
        fh.write("\n")
