"""Acceptance criteria, one test per criterion.

Each test enforces the exact expected values and the stated wall-clock
budget, and prints one PASS line (run with ``pytest -s`` to see them).
"""

import io
import itertools
import json
import os
import time

from law.algebra import congruences_bruteforce, enumerate_algebras, product_decode
from law.cli import run as cli_run
from law.gallery import (
    bool2,
    bool4,
    build,
    imp2,
    nabla_hat,
    pointed_set,
    product_of_logics,
)
from law.hierarchy import (
    check_admissibility_bounded,
    check_class,
    derive_theorems,
    find_injective_theorem,
    find_protoalgebraic_witness,
    monotonicity_probe_on_filters,
    nabla_theorem_oracle,
)
from law.logics import Rule, deductive_filters, matrices_logic, reduced_filters_on
from law.matrices import Matrix, leibniz_congruence, restrict_to_subuniverse, subuniverses
from law.partitions import Partition
from law.serialize import algebra_to_json, dump_json, logic_to_json, matrix_to_json, translation_to_json
from law.terms import App, Signature, Var, enumerate_terms, parse_term, substitute, to_sexpr
from law.translations import Translation

X, Y = Var("x"), Var("y")
IMP = imp2().signature
POINTED = Signature({"⊤": 1})


class Budget:
    def __init__(self, criterion, seconds):
        self.criterion = criterion
        self.seconds = seconds

    def __enter__(self):
        self.start = time.monotonic()
        return self

    def __exit__(self, exc_type, *rest):
        elapsed = time.monotonic() - self.start
        if exc_type is None:
            assert elapsed < self.seconds, (
                f"criterion {self.criterion} took {elapsed:.1f}s, budget {self.seconds}s"
            )
            print(f"ACCEPTANCE {self.criterion}: PASS ({elapsed:.2f}s)")
        return False


def test_criterion_1_ba_star_reproduction():
    with Budget("1 (ba-star reproduction)", 1.0):
        entry = build("ba-star")
        f_matrix, g_matrix = entry.matrices
        omega_f = leibniz_congruence(f_matrix)
        assert omega_f == Partition.from_blocks(4, [[3, 1], [0, 2]])
        assert leibniz_congruence(g_matrix).is_identity()
        verdict = monotonicity_probe_on_filters(
            f_matrix.algebra, [m.filter for m in entry.matrices]
        )
        assert verdict.fails
        assert verdict.witness["filter_small"] == (1, 3)
        assert verdict.witness["filter_large"] == (1, 2, 3)


def test_criterion_2_oracle_equivalence():
    with Budget("2 (oracle equivalence)", 60.0):
        plans = [
            (Signature({"⊤": 1}), 4),
            (Signature({"→": 2}), 3),
            (Signature({"and": 2, "or": 2, "not": 1}), 2),
        ]
        total = 0
        for sig, max_n in plans:
            for n in range(1, max_n + 1):
                for alg in enumerate_algebras(sig, n, iso_prune=True):
                    total += 1
                    congruences = congruences_bruteforce(alg)
                    for k in range(n + 1):
                        for f in itertools.combinations(range(n), k):
                            seed = Partition.seed_from_subset(n, f)
                            below = [c for c in congruences if c.refines(seed)]
                            coarsest = below[0]
                            for c in below[1:]:
                                coarsest = coarsest.join(c)
                            assert coarsest in below
                            assert leibniz_congruence(Matrix(alg, f)) == coarsest
        assert total >= 200


def test_criterion_3_nabla_theorem_characterization():
    with Budget("3 (theorem characterization)", 30.0):
        nabla = build("nabla").logic
        theorems = derive_theorems(nabla, ("x", "y"), 4)
        seen = 0
        for t in enumerate_terms(IMP, ["x", "y"], 4):
            seen += 1
            assert (t in theorems) == nabla_theorem_oracle(t), to_sexpr(t)
        assert seen == 2090918
        assert len(theorems) == 1446


def test_criterion_4_protoalgebraic_witnesses():
    with Budget("4 (protoalgebraic witnesses)", 30.0):
        nabla = build("nabla")
        w = find_protoalgebraic_witness(nabla.logic, depth=2, inventory=nabla.inventory)
        assert [to_sexpr(t) for t in w.terms] == ["(→ x y)"]
        proto = build("basic-proto")
        w2 = find_protoalgebraic_witness(proto.logic, depth=2, inventory=proto.inventory)
        assert [to_sexpr(t) for t in w2.terms] == ["(⊸0 x y)"]
        assertional = build("basic-assertional")
        w3 = find_protoalgebraic_witness(
            assertional.logic, depth=3, inventory=[pointed_set(n) for n in (1, 2, 3)]
        )
        assert w3 is None


def test_criterion_5_pointed_set_models():
    with Budget("5 (pointed-set models)", 10.0):
        logic = build("basic-assertional").logic
        inventory = [pointed_set(n) for n in (1, 2, 3, 4)]
        for alg in inventory:
            assert [m.filter for m in reduced_filters_on(logic, alg)] == [(0,)]
        assert check_class("assertional", logic, inventory).holds


def test_criterion_6_truth_minimal_vs_parametric():
    with Budget("6 (truth-minimal vs parametric)", 10.0):
        pair = build("two-valued-pair")
        assert check_class("truth_minimal", pair.logic, pair.inventory).holds
        verdict = check_class("param_truth_equational", pair.logic, pair.inventory)
        assert verdict.fails
        assert [list(f) for f in verdict.witness["family"].filters] == [[1]]
        assert list(verdict.witness["filter"]) == [0]
        for name in ("basic-assertional", "basic-proto", "basic-equiv", "nabla",
                     "delta", "two-valued-pair", "ba-star-logic"):
            entry = build(name)
            pte = check_class("param_truth_equational", entry.logic, entry.inventory)
            tm = check_class("truth_minimal", entry.logic, entry.inventory)
            assert not (pte.holds and not tm.holds), name


def test_criterion_7_truth_equational_uniqueness():
    with Budget("7 (truth-equational uniqueness)", 10.0):
        assertional = build("basic-assertional").logic
        inventory = [pointed_set(n) for n in (1, 2, 3, 4)]
        assert check_class("truth_equational", assertional, inventory).holds
        pair = build("two-valued-pair")
        verdict = check_class("truth_equational", pair.logic, pair.inventory)
        assert verdict.fails
        assert verdict.witness["filters"] == ((0,), (1,))


def test_criterion_8_product_filter_decomposition():
    with Budget("8 (product filter decomposition)", 30.0):
        b2one = matrices_logic([Matrix(bool2(), (1,))], name="b2one")
        prod = product_of_logics(b2one, b2one)
        product_matrix = prod.matrices[0]
        filters = deductive_filters(prod, product_matrix.algebra)
        component = deductive_filters(b2one, bool2())
        assert filters, "the sweep must find filters"
        violations = 0
        for g in filters:
            if not g:
                continue
            left = tuple(sorted({product_decode(x, (2, 2))[0] for x in g}))
            right = tuple(sorted({product_decode(x, (2, 2))[1] for x in g}))
            rebuilt = {a * 2 + b for a in left for b in right}
            if rebuilt != set(g) or left not in component or right not in component:
                violations += 1
        assert violations == 0
        assert (3,) in filters and (0, 1, 2, 3) in filters


def test_criterion_9_interpretation_checks():
    with Budget("9 (interpretation checks)", 10.0):
        assertional = build("basic-assertional").logic
        imp_logic = matrices_logic([Matrix(imp2(), (1,))], name="b2-implication")
        inventory = [restrict_to_subuniverse(imp2(), s) for s in subuniverses(imp2())]
        assert len(inventory) == 2  # the implication algebra and its subalgebra
        good = Translation(POINTED, IMP, {"⊤": parse_term(IMP, "(→ x1 x1)")})
        from law.translations import check_interpretation_bounded

        assert check_interpretation_bounded(good, assertional, imp_logic, inventory).holds
        bad = Translation(POINTED, IMP, {"⊤": Var("x1")})
        verdict = check_interpretation_bounded(bad, assertional, imp_logic, inventory)
        assert verdict.fails
        assert verdict.witness["model"] is not None


def test_criterion_10_injective_theorem():
    with Budget("10 (injective theorem)", 30.0):
        delta = build("delta")
        t = find_injective_theorem(delta.logic, delta.inventory, depth=2)
        assert to_sexpr(t) == "(→ x x)"
        assertional = build("basic-assertional").logic
        assert find_injective_theorem(
            assertional, [pointed_set(2), pointed_set(3)], depth=2
        ) is None


def test_criterion_11_admissibility():
    with Budget("11 (admissibility)", 60.0):
        nabla = build("nabla").logic
        hat = nabla_hat(2)
        premises = [
            substitute(p, {"x": App("→", (X, X)), "y": App("→", (Y, Y))}) for p in hat
        ]
        for psi in hat:
            verdict = check_admissibility_bounded(
                nabla, Rule(premises, psi), subst_depth=2,
                theorem_oracle=nabla_theorem_oracle,
            )
            assert verdict.holds, to_sexpr(psi)
        verdict = check_admissibility_bounded(
            nabla, Rule((), X), subst_depth=2, theorem_oracle=nabla_theorem_oracle
        )
        assert verdict.fails
        assert verdict.witness["substitution"] == {"x": "x"}


def _cli(argv):
    out = io.StringIO()
    code = cli_run(argv, stdout=out, stderr=io.StringIO())
    return code, out.getvalue()


def test_criterion_12_cli_determinism(tmp_path):
    with Budget("12 (report determinism)", 60.0):
        paths = {}

        def save(name, data):
            p = os.path.join(tmp_path, name)
            dump_json(p, data)
            return p

        paths["ba_star_f"] = save("ba-star-F.json", matrix_to_json(Matrix(bool4(), (1, 3))))
        paths["pair"] = save("pair.json", logic_to_json(build("two-valued-pair").logic))
        paths["b2"] = save("b2.json", algebra_to_json(bool2()))
        paths["assertional"] = save(
            "assertional.json", logic_to_json(build("basic-assertional").logic)
        )
        pointed_dir = os.path.join(tmp_path, "pointed")
        os.makedirs(pointed_dir)
        for n in (1, 2, 3):
            dump_json(
                os.path.join(pointed_dir, f"p{n}.json"), algebra_to_json(pointed_set(n))
            )
        paths["nabla"] = save("nabla.json", logic_to_json(build("nabla").logic))
        paths["imp2"] = save("imp2.json", algebra_to_json(imp2()))
        tau = Translation(POINTED, IMP, {"⊤": parse_term(IMP, "(→ x1 x1)")})
        paths["tau"] = save("tau.json", translation_to_json(tau))
        paths["imp_logic"] = save(
            "imp-logic.json", logic_to_json(matrices_logic([Matrix(imp2(), (1,))]))
        )

        invocations = [
            (["leibniz", "-m", paths["ba_star_f"]], 0),
            (["reduce", "-m", paths["ba_star_f"]], 0),
            (["filters", "-l", paths["pair"], "-a", paths["b2"]], 0),
            (["suszko", "-l", paths["pair"], "-a", paths["b2"], "--filter", "1"], 0),
            (["check", "truth_minimal", "-l", paths["pair"], "-i", paths["b2"]], 0),
            (["check", "truth_equational", "-l", paths["pair"], "-i", paths["b2"]], 1),
            (["check", "param_truth_equational", "-l", paths["pair"], "-i", paths["b2"]], 1),
            (["check", "protoalgebraic", "-l", paths["assertional"], "-i", pointed_dir,
              "--depth", "3"], 1),
            (["check", "protoalgebraic", "-l", paths["nabla"], "-i", paths["imp2"]], 0),
            (["check", "assertional", "-l", paths["assertional"], "-i", pointed_dir], 0),
            (["interpret", "-t", paths["tau"], "--from", paths["assertional"],
              "--to", paths["imp_logic"], "-i", paths["imp2"]], 0),
            (["oracle", "congruences", "-a", paths["b2"]], 0),
            (["gallery", "ba-star", "--out", os.path.join(tmp_path, "g1")], 0),
        ]
        for argv, expected in invocations:
            code1, out1 = _cli(argv)
            code2, out2 = _cli(argv)
            assert code1 == code2 == expected, argv
            assert out1 == out2, argv
            json.loads(out1)  # a single well-formed JSON document
