"""Translations: term images, reducts, bounded interpretation checks."""

import itertools
import random

import pytest

from law.algebra import eval_term
from law.errors import SignatureMismatch, TermError
from law.gallery import build, bool2, imp2
from law.logics import matrices_logic
from law.matrices import Matrix, restrict_to_subuniverse, subuniverses
from law.terms import Signature, Var, enumerate_terms, parse_term, substitute, to_sexpr
from law.translations import (
    Translation,
    check_interpretation_bounded,
    tau_reduct,
    translate_term,
)
from law.verdicts import Verdict, fails, holds, unknown, verdict_merge

POINTED = Signature({"⊤": 1})
IMP = imp2().signature

TOP_TO_SELF_IMP = Translation(POINTED, IMP, {"⊤": parse_term(IMP, "(→ x1 x1)")})
TOP_TO_ARG = Translation(POINTED, IMP, {"⊤": Var("x1")})
ASSERTIONAL = build("basic-assertional").logic
IMP_LOGIC = matrices_logic([Matrix(imp2(), (1,))], name="b2-implication")


def imp_inventory():
    return [restrict_to_subuniverse(imp2(), s) for s in subuniverses(imp2())]


def test_translation_validation():
    with pytest.raises(SignatureMismatch):
        Translation(POINTED, IMP, {})
    with pytest.raises(TermError):
        Translation(POINTED, IMP, {"⊤": parse_term(IMP, "(→ x1 x2)")})


def test_translate_term():
    assert to_sexpr(translate_term(TOP_TO_SELF_IMP, parse_term(POINTED, "(⊤ y)"))) == "(→ y y)"
    nested = translate_term(TOP_TO_SELF_IMP, parse_term(POINTED, "(⊤ (⊤ y))"))
    assert to_sexpr(nested) == "(→ (→ y y) (→ y y))"
    ident = Translation.identity(IMP)
    t = parse_term(IMP, "(→ (→ x y) x)")
    assert translate_term(ident, t) == t


def test_translate_commutes_with_substitution():
    rng = random.Random(13)
    terms = list(enumerate_terms(POINTED, ["x", "y"], 2))
    for _ in range(50):
        t = rng.choice(terms)
        sigma = {"x": rng.choice(terms), "y": rng.choice(terms)}
        lhs = translate_term(TOP_TO_SELF_IMP, substitute(t, sigma))
        tau_sigma = {k: translate_term(TOP_TO_SELF_IMP, v) for k, v in sigma.items()}
        rhs = substitute(translate_term(TOP_TO_SELF_IMP, t), tau_sigma)
        assert lhs == rhs


def test_tau_reduct_tables():
    ident = Translation.identity(IMP)
    assert tau_reduct(ident, imp2()).tables == imp2().tables
    reduct = tau_reduct(TOP_TO_SELF_IMP, imp2())
    assert reduct.signature == POINTED
    assert reduct.table("⊤") == (1, 1)  # self-implication is constantly true


def test_tau_reduct_eval_commutes_exhaustively():
    from law.algebra import FiniteAlgebra

    three = FiniteAlgebra(IMP, 3, {"→": (2, 2, 2, 0, 1, 2, 0, 0, 1)})
    for alg in imp_inventory() + [three]:
        reduct = tau_reduct(TOP_TO_SELF_IMP, alg)
        for t in enumerate_terms(POINTED, ["x", "y"], 3):
            for vx in range(alg.size):
                for vy in range(alg.size):
                    v = {"x": vx, "y": vy}
                    assert eval_term(reduct, t, v) == eval_term(
                        alg, translate_term(TOP_TO_SELF_IMP, t), v
                    )


def test_projection_reduct_of_pair_product():
    from law.algebra import nonindexed_product, product_decode

    b2 = bool2()
    prod = nonindexed_product(b2, b2)
    # send each symbol to a pair acting as itself on first coordinates
    tau = Translation(
        b2.signature,
        prod.signature,
        {
            "and": parse_term(prod.signature, "(and⊗and x1 x2)"),
            "or": parse_term(prod.signature, "(or⊗and x1 x2)"),
            "not": parse_term(prod.signature, "(not⊗not x1)"),
        },
    )
    reduct = tau_reduct(tau, prod)
    for sym, arity in b2.signature.symbols:
        for args in itertools.product(range(4), repeat=arity):
            got = product_decode(reduct.apply(sym, args), (2, 2))[0]
            want = b2.apply(sym, [product_decode(a, (2, 2))[0] for a in args])
            assert got == want


def test_interpretation_identity_holds():
    v = check_interpretation_bounded(
        Translation.identity(IMP), IMP_LOGIC, IMP_LOGIC, imp_inventory()
    )
    assert v.holds


def test_interpretation_assertional_into_implication_holds():
    v = check_interpretation_bounded(TOP_TO_SELF_IMP, ASSERTIONAL, IMP_LOGIC, imp_inventory())
    assert v.holds
    assert "inventory" in v.bounds_dict()


def test_interpretation_bad_translation_fails_with_witness():
    v = check_interpretation_bounded(TOP_TO_ARG, ASSERTIONAL, IMP_LOGIC, imp_inventory())
    assert v.fails
    witness = v.witness
    assert witness["reason"]
    # the witness re-verifies: the translated axiom really fails on the model
    from law.logics import Rule, is_model

    model = witness["model"]
    translated = Rule((), translate_term(TOP_TO_ARG, parse_term(POINTED, "(⊤ x)")))
    assert not is_model(model, translated)


def test_interpretation_monotone_under_inventory_shrink():
    inventory = imp_inventory()
    assert check_interpretation_bounded(
        TOP_TO_SELF_IMP, ASSERTIONAL, IMP_LOGIC, inventory
    ).holds
    for k in range(1, len(inventory) + 1):
        for subset in itertools.combinations(inventory, k):
            v = check_interpretation_bounded(
                TOP_TO_SELF_IMP, ASSERTIONAL, IMP_LOGIC, list(subset)
            )
            assert v.holds


def test_verdict_merge():
    w = {"x": 1}
    assert verdict_merge(holds(), holds()).holds
    assert verdict_merge(holds(), fails(w)).witness == w
    assert verdict_merge(fails(w), holds()).fails
    assert verdict_merge(unknown(), holds()).unknown
    assert verdict_merge(fails(w), unknown()).fails
    merged = verdict_merge(holds(depth=2), holds(inventory="abc"))
    assert merged.bounds_dict() == {"depth": 2, "inventory": "abc"}


def test_verdict_validation():
    with pytest.raises(ValueError):
        Verdict("maybe")
