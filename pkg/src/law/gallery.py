"""Canonical constructions, buildable by name, with machine-checkable
expectations attached. The gallery is self-verifying: `verify_entry` re-runs
every expectation through the core modules."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .algebra import FiniteAlgebra, enumerate_algebras, one_element
from .config import DEFAULTS
from .errors import UnknownName
from .hierarchy import (
    consequence_presentation,
    derive_theorems,
    find_injective_theorem,
    leibniz_monotonicity_probe,
    monotonicity_probe_on_filters,
    nabla_theorem_oracle,
    theorem_search,
    verify_protoalgebraic_witness,
)
from .logics import (
    LogicPresentation,
    MATRICES,
    Rule,
    matrices_logic,
    reduced_filters_on,
    rules_logic,
)
from .matrices import Matrix, leibniz_congruence, matrix_product
from .partitions import Partition
from .terms import App, Signature, Term, Var, enumerate_terms, parse_term, substitute

X, Y = Var("x"), Var("y")

GALLERY_NAMES = (
    "basic-assertional",
    "basic-proto",
    "basic-equiv",
    "nabla",
    "delta",
    "ba-star",
    "ba-star-logic",
    "two-valued-pair",
    "pointed-set",
)


@dataclass(frozen=True)
class GalleryEntry:
    name: str
    params: tuple[tuple[str, int], ...]
    logic: Optional[LogicPresentation]
    matrices: tuple[Matrix, ...]
    inventory: tuple[FiniteAlgebra, ...]
    expectations: tuple[dict, ...]
    provenance: str

    def payload(self):
        return self.logic if self.logic is not None else self.matrices


# ---------------------------------------------------------------------------
# stock algebras


BOOL_SIG = Signature({"and": 2, "or": 2, "not": 1})
IMP_SIG = Signature({"→": 2})
POINTED_SIG = Signature({"⊤": 1})


def bool2() -> FiniteAlgebra:
    return FiniteAlgebra(
        BOOL_SIG,
        2,
        {"and": (0, 0, 0, 1), "or": (0, 1, 1, 1), "not": (1, 0)},
        name="B2",
    )


def bool4() -> FiniteAlgebra:
    """Four-element Boolean algebra, elements 0=bottom, 1=a, 2=b, 3=top
    (pairs (left,right) encoded with the left coordinate most significant)."""
    return FiniteAlgebra(
        BOOL_SIG,
        4,
        {
            "and": (0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 2, 2, 0, 1, 2, 3),
            "or": (0, 1, 2, 3, 1, 1, 3, 3, 2, 3, 2, 3, 3, 3, 3, 3),
            "not": (3, 2, 1, 0),
        },
        name="B4",
    )


def imp2() -> FiniteAlgebra:
    return FiniteAlgebra(IMP_SIG, 2, {"→": (1, 1, 0, 1)}, name="B2→")


def pointed_set(n: int, point: int = 0) -> FiniteAlgebra:
    if not 0 <= point < n:
        raise ValueError("point out of range")
    return FiniteAlgebra(POINTED_SIG, n, {"⊤": (point,) * n}, name=f"pointed{n}")


def boolean_algebras_up_to(max_size: int = 4) -> list[FiniteAlgebra]:
    out = [one_element(BOOL_SIG)]
    if max_size >= 2:
        out.append(bool2())
    if max_size >= 4:
        out.append(bool4())
    return out


# ---------------------------------------------------------------------------
# the named constructions


def _proto_signature(k: int, unary_params: int) -> Signature:
    syms = {f"⊸{i}": 2 for i in range(k)}
    syms.update({f"∗1{i}": 1 for i in range(unary_params)})
    return Signature(syms)


def _arrow(i: int, a: Term, b: Term) -> Term:
    return App(f"⊸{i}", (a, b))


def nabla_hat(max_depth: int = 2, params: Sequence[str] = ("z1",)) -> list[Term]:
    """Implication instances phi(x, zs) → phi(y, zs) of bounded depth."""
    out = []
    for phi in enumerate_terms(IMP_SIG, ("x", *params), max_depth - 1):
        out.append(App("→", (phi, substitute(phi, {"x": Y}))))
    return out


def build(name: str, params: Optional[Mapping[str, int]] = None) -> GalleryEntry:
    """Construct a gallery entry; see GALLERY_NAMES for the vocabulary."""
    params = dict(params or {})
    if name == "basic-assertional":
        logic = rules_logic(
            POINTED_SIG, [Rule((), App("⊤", (X,)))], name="basic-assertional"
        )
        sizes = params.get("n", 3)
        inventory = tuple(pointed_set(i) for i in range(1, sizes + 1))
        return GalleryEntry(
            name,
            tuple(sorted(params.items())),
            logic,
            (),
            inventory,
            (
                {"kind": "reduced_singleton_filters"},
                {"kind": "theorem_exists", "depth": 2},
            ),
            "one unary symbol pinned to a point; every reduced model is a pointed set",
        )

    if name == "basic-proto":
        k = params.get("k", 1)
        unary = params.get("unary_params", 1)
        sig = _proto_signature(k, unary)
        rules = [Rule((), _arrow(i, X, X)) for i in range(k)]
        rules.append(Rule([X] + [_arrow(i, X, Y) for i in range(k)], Y))
        logic = rules_logic(sig, rules, name=f"basic-proto-{k}")
        inventory = tuple(
            itertools.chain.from_iterable(
                enumerate_algebras(sig, n) for n in (1, 2)
            )
        )
        return GalleryEntry(
            name,
            tuple(sorted(params.items())),
            logic,
            (),
            inventory,
            ({"kind": "proto_witness_verifies", "terms": ["(⊸0 x y)"], "depth": 2},),
            "finite-rank basic protoalgebraic logic with one unary parameter symbol",
        )

    if name == "basic-equiv":
        k = params.get("k", 1)
        sig = Signature({f"⊸{i}": 2 for i in range(k)})
        delta = [_arrow(i, X, Y) for i in range(k)]
        x1, y1, x2, y2 = Var("x1"), Var("y1"), Var("x2"), Var("y2")
        rules = [Rule((), _arrow(i, X, X)) for i in range(k)]
        rules.append(Rule([X] + delta, Y))
        for alpha in range(k):
            premises = [_arrow(i, x1, y1) for i in range(k)] + [
                _arrow(i, x2, y2) for i in range(k)
            ]
            for beta in range(k):
                rules.append(
                    Rule(
                        premises,
                        _arrow(beta, _arrow(alpha, x1, x2), _arrow(alpha, y1, y2)),
                    )
                )
        logic = rules_logic(sig, rules, name=f"basic-equiv-{k}")
        inventory = tuple(
            itertools.chain.from_iterable(enumerate_algebras(sig, n) for n in (1, 2))
        )
        return GalleryEntry(
            name,
            tuple(sorted(params.items())),
            logic,
            (),
            inventory,
            ({"kind": "proto_witness_verifies", "terms": ["(⊸0 x y)"], "depth": 2},),
            "finite-rank basic equivalential logic",
        )

    if name == "nabla":
        logic = rules_logic(
            IMP_SIG,
            [Rule((), App("→", (X, X))), Rule([X, App("→", (X, Y))], Y)],
            name="nabla",
        )
        return GalleryEntry(
            name,
            (),
            logic,
            (),
            (one_element(IMP_SIG), imp2()),
            (
                {"kind": "proto_witness_verifies", "terms": ["(→ x y)"], "depth": 2},
                {"kind": "theorem_oracle_agreement", "depth": 3},
            ),
            "two-rule implication logic whose theorems are the self-implications",
        )

    if name == "delta":
        d = params.get("d", 2)
        hat = nabla_hat(d)
        premises = [
            substitute(psi, {"x": App("→", (X, X)), "y": App("→", (Y, Y))}) for psi in hat
        ]
        rules = [Rule((), App("→", (X, X))), Rule([X, App("→", (X, Y))], Y)]
        rules.extend(Rule(premises, psi) for psi in hat)
        logic = rules_logic(IMP_SIG, rules, name=f"delta-depth{d}")
        inventory = tuple(
            itertools.chain.from_iterable(enumerate_algebras(IMP_SIG, n) for n in (1, 2))
        )
        return GalleryEntry(
            name,
            tuple(sorted(params.items())),
            logic,
            (),
            inventory,
            (
                {"kind": "proto_witness_verifies", "terms": ["(→ x y)"], "depth": 2},
                {"kind": "injective_theorem", "term": "(→ x x)", "depth": 2},
            ),
            "depth-capped extension of the implication logic forcing an injective "
            "self-implication; the capped rule family is an approximation",
        )

    if name == "ba-star":
        alg = bool4()
        f_matrix = Matrix(alg, (1, 3))
        g_matrix = Matrix(alg, (1, 2, 3))
        return GalleryEntry(
            name,
            (),
            None,
            (f_matrix, g_matrix),
            (alg,),
            (
                {"kind": "leibniz_blocks", "matrix": 0, "blocks": [[0, 2], [1, 3]]},
                {"kind": "leibniz_blocks", "matrix": 1, "blocks": [[0], [1], [2], [3]]},
                {
                    "kind": "monotonicity_fails",
                    "filter_small": [1, 3],
                    "filter_large": [1, 2, 3],
                },
            ),
            "four-element Boolean algebra on which the Leibniz operator is not "
            "monotone over designated sets",
        )

    if name == "ba-star-logic":
        max_size = params.get("n", 4)
        mats = []
        for alg in boolean_algebras_up_to(max_size):
            top = alg.size - 1
            for subset in itertools.chain.from_iterable(
                itertools.combinations(range(alg.size), k) for k in range(alg.size + 1)
            ):
                if top in subset:
                    mats.append(Matrix(alg, subset))
        logic = matrices_logic(mats, name="ba-star-logic")
        return GalleryEntry(
            name,
            tuple(sorted(params.items())),
            logic,
            (),
            tuple(boolean_algebras_up_to(max_size)),
            ({"kind": "monotonicity_fails_somewhere"},),
            "logic of Boolean algebras with any top-containing designated set, "
            "restricted to algebras of bounded size",
        )

    if name == "two-valued-pair":
        alg = bool2()
        logic = matrices_logic(
            [Matrix(alg, (1,)), Matrix(alg, (0,))], name="two-valued-pair"
        )
        return GalleryEntry(
            name,
            (),
            logic,
            (),
            (alg,),
            ({"kind": "reduced_contains", "filters": [[0], [1]]},),
            "theoremless logic of the two-element Boolean algebra with both "
            "one-element designated sets",
        )

    if name == "pointed-set":
        n = params.get("n", 2)
        alg = pointed_set(n)
        # every equivalence is a congruence of a constant map, so the Leibniz
        # congruence of the point's singleton is the point/rest split
        blocks = [[0]] + ([list(range(1, n))] if n > 1 else [])
        return GalleryEntry(
            name,
            tuple(sorted(params.items())),
            None,
            (Matrix(alg, (0,)),),
            (alg,),
            ({"kind": "leibniz_blocks", "matrix": 0, "blocks": blocks},),
            "pointed set with its point designated",
        )

    raise UnknownName(f"unknown gallery name {name!r}; choose from {GALLERY_NAMES}")


# ---------------------------------------------------------------------------
# companions and products of logics


def companions(
    logic: LogicPresentation,
    which: str,
    inventory: Optional[Sequence[FiniteAlgebra]] = None,
    depth_cap: int = DEFAULTS.depth_default,
) -> LogicPresentation:
    """`theoremless`: extend the defining matrices with an empty-filter copy
    of each defining algebra. `plus`: drop empty-filter matrices. Rule
    presentations are first replaced by their reduced models over an
    inventory, which makes the result bounded."""
    if which not in ("theoremless", "plus"):
        raise UnknownName(f"companion must be 'theoremless' or 'plus', not {which!r}")
    base = consequence_presentation(logic, inventory, depth_cap)
    mats = list(base.matrices)
    if which == "theoremless":
        for alg in sorted({m.algebra for m in mats}, key=lambda a: a.sort_key()):
            empty = Matrix(alg, ())
            if empty not in mats:
                mats.append(empty)
    else:
        mats = [m for m in mats if m.filter]
        if not mats:
            raise ValueError("plus companion removed every defining matrix")
    return matrices_logic(
        sorted(mats, key=lambda m: m.sort_key()),
        name=f"{which}({logic.name or logic.kind})",
        variable_budget=logic.variable_budget,
    )


def product_of_logics(
    l1: LogicPresentation, l2: LogicPresentation, cap: int = DEFAULTS.product_max
) -> LogicPresentation:
    """Defining matrices are all pairwise non-indexed matrix products."""
    if l1.kind != MATRICES or l2.kind != MATRICES:
        raise ValueError("both factors must be matrix presentations")
    mats = [
        matrix_product(m1, m2, cap=cap) for m1 in l1.matrices for m2 in l2.matrices
    ]
    return matrices_logic(
        mats,
        name=f"({l1.name or 'L1'})x({l2.name or 'L2'})",
        variable_budget=max(l1.variable_budget, l2.variable_budget),
    )


# ---------------------------------------------------------------------------
# self-verification


def verify_entry(entry: GalleryEntry, depth_cap: int = DEFAULTS.depth_default) -> list[str]:
    """Run every expectation; return a list of failure descriptions (empty
    when the entry verifies)."""
    problems = []
    for exp in entry.expectations:
        kind = exp["kind"]
        if kind == "leibniz_blocks":
            m = entry.matrices[exp["matrix"]]
            got = leibniz_congruence(m)
            want = Partition.from_blocks(m.algebra.size, exp["blocks"])
            if got != want:
                problems.append(f"{entry.name}: leibniz blocks {got!r} != {want!r}")
        elif kind == "monotonicity_fails":
            alg = entry.matrices[0].algebra
            verdict = monotonicity_probe_on_filters(
                alg, [m.filter for m in entry.matrices]
            )
            if not verdict.fails:
                problems.append(f"{entry.name}: expected a monotonicity failure")
            else:
                w = verdict.witness
                if list(w["filter_small"]) != exp["filter_small"] or list(
                    w["filter_large"]
                ) != exp["filter_large"]:
                    problems.append(f"{entry.name}: wrong monotonicity witness {w}")
        elif kind == "monotonicity_fails_somewhere":
            verdict = leibniz_monotonicity_probe(entry.logic, entry.inventory, depth_cap)
            if not verdict.fails:
                problems.append(f"{entry.name}: expected a monotonicity failure")
        elif kind == "proto_witness_verifies":
            terms = tuple(parse_term(entry.logic.signature, s) for s in exp["terms"])
            consequence = consequence_presentation(entry.logic, entry.inventory, depth_cap)
            if not verify_protoalgebraic_witness(consequence, terms):
                problems.append(f"{entry.name}: witness {exp['terms']} does not verify")
        elif kind == "injective_theorem":
            t = find_injective_theorem(entry.logic, entry.inventory, exp["depth"])
            want = parse_term(entry.logic.signature, exp["term"])
            if t != want:
                problems.append(f"{entry.name}: injective theorem {t!r} != {want!r}")
        elif kind == "theorem_oracle_agreement":
            theorems = derive_theorems(entry.logic, ("x", "y"), exp["depth"])
            for t in enumerate_terms(entry.logic.signature, ("x", "y"), exp["depth"]):
                if (t in theorems) != nabla_theorem_oracle(t):
                    problems.append(f"{entry.name}: chaining and oracle disagree on {t!r}")
                    break
        elif kind == "reduced_singleton_filters":
            for alg in entry.inventory:
                mats = reduced_filters_on(entry.logic, alg, depth_cap=depth_cap)
                if [m.filter for m in mats] != [(0,)]:
                    problems.append(f"{entry.name}: reduced filters on {alg!r} not [{{point}}]")
        elif kind == "theorem_exists":
            if theorem_search(entry.logic, exp["depth"]) is None:
                problems.append(f"{entry.name}: no theorem found")
        elif kind == "reduced_contains":
            for alg in entry.inventory:
                got = {m.filter for m in reduced_filters_on(entry.logic, alg, depth_cap=depth_cap)}
                for f in exp["filters"]:
                    if tuple(f) not in got:
                        problems.append(f"{entry.name}: reduced filters miss {f}")
        else:
            problems.append(f"{entry.name}: unknown expectation {kind!r}")
    return problems
