"""Finite algebras: evaluation, products, quotients, congruence engine vs oracle."""

import itertools
import random

import pytest

from law.algebra import (
    congruences_bruteforce,
    direct_product,
    enumerate_algebras,
    eval_term,
    is_congruence,
    is_congruence_uniform,
    largest_congruence_below,
    nonindexed_product,
    one_element,
    product_decode,
    quotient,
)
from law.errors import CapExceeded, NotACongruence, TermError
from law.gallery import bool2, bool4, imp2, pointed_set
from law.matrices import Matrix, find_isomorphism
from law.partitions import Partition, all_partitions
from law.terms import Signature, parse_term

BOOL = bool2().signature


def coarsest_below(alg, seed):
    """Oracle: join of every brute-force congruence refining the seed."""
    below = [c for c in congruences_bruteforce(alg) if c.refines(seed)]
    best = below[0]
    for c in below[1:]:
        best = best.join(c)
    assert best in below, "congruences below a partition must be join-closed"
    return best


def test_eval_truth_tables():
    b2 = bool2()
    t = parse_term(BOOL, "(and x y)")
    assert eval_term(b2, t, {"x": 1, "y": 0}) == 0
    assert eval_term(b2, parse_term(BOOL, "x"), {"x": 1}) == 1
    # join of the two atoms in the four-element Boolean algebra, checked
    # against the independent product-of-two-chains table
    b4 = bool4()
    oracle = direct_product([bool2(), bool2()])
    assert oracle.table("or") == b4.table("or")
    assert eval_term(b4, parse_term(BOOL, "(or x y)"), {"x": 1, "y": 2}) == 3


def test_eval_errors():
    b2 = bool2()
    with pytest.raises(TermError):
        eval_term(b2, parse_term(BOOL, "(and x y)"), {"x": 1})
    with pytest.raises(TermError):
        eval_term(b2, parse_term(Signature({"⊥": 2}), "(⊥ x x)"), {"x": 0})


def test_direct_product_shapes():
    b2 = bool2()
    prod = direct_product([b2, b2])
    assert prod.size == 4
    assert find_isomorphism(Matrix(prod, ()), Matrix(bool4(), ())) is not None
    assert direct_product([b2, b2, b2]).size == 8
    single = direct_product([b2])
    assert single.tables == b2.tables
    trivial = direct_product([one_element(BOOL), one_element(BOOL)])
    assert trivial.size == 1
    with pytest.raises(CapExceeded):
        direct_product([bool4()] * 4, cap=64)


def test_direct_product_componentwise_random():
    rng = random.Random(7)
    b2, b4 = bool2(), bool4()
    prod = direct_product([b2, b4])
    terms = [
        parse_term(BOOL, s)
        for s in ["(and x (or y (not x)))", "(or (not y) (and x x))", "(not (and x y))"]
    ]
    for _ in range(100):
        t = rng.choice(terms)
        v = {"x": rng.randrange(8), "y": rng.randrange(8)}
        left = eval_term(prod, t, v)
        parts = {k: product_decode(e, (2, 4)) for k, e in v.items()}
        expect = (
            eval_term(b2, t, {k: p[0] for k, p in parts.items()}),
            eval_term(b4, t, {k: p[1] for k, p in parts.items()}),
        )
        assert product_decode(left, (2, 4)) == expect


def test_nonindexed_product_signature_counts():
    imp, full = imp2(), bool2()
    prod = nonindexed_product(imp, full)
    arities = {}
    for _, a in prod.signature.symbols:
        arities[a] = arities.get(a, 0) + 1
    assert arities == {2: 2}  # 1 binary times 2 binaries; no unary pairs
    pointed = pointed_set(2)
    pp = nonindexed_product(pointed, pointed)
    assert pp.signature.as_dict() == {"⊤⊗⊤": 1}
    assert pp.apply("⊤⊗⊤", [3]) == 0  # constant at (point, point)


def test_nonindexed_product_componentwise():
    b2 = bool2()
    prod = nonindexed_product(b2, b2)
    # and⊗or applied to ((1,0),(1,1)) is (1 and 1, 0 or 1) = (1,1)
    assert prod.apply("and⊗or", [2, 3]) == 3
    # projections commute with evaluation on every table cell
    for sym, arity in prod.signature.symbols:
        f, g = sym.split("⊗")
        for args in itertools.product(range(4), repeat=arity):
            cols = [product_decode(a, (2, 2)) for a in args]
            out = product_decode(prod.apply(sym, args), (2, 2))
            assert out[0] == b2.apply(f, [c[0] for c in cols])
            assert out[1] == b2.apply(g, [c[1] for c in cols])


def test_quotient_trivial_and_blocks():
    b4 = bool4()
    iso = quotient(b4, Partition.identity(4))
    assert find_isomorphism(Matrix(iso, ()), Matrix(b4, ())) is not None
    assert quotient(b4, Partition.total(4)).size == 1
    theta = Partition.from_blocks(4, [[3, 1], [0, 2]])
    q = quotient(b4, theta)
    assert find_isomorphism(Matrix(q, ()), Matrix(bool2(), ())) is not None
    with pytest.raises(NotACongruence):
        quotient(b4, Partition.from_blocks(4, [[0, 1], [2], [3]]))


def test_quotient_projection_is_homomorphism():
    alg = imp2()
    for theta in congruences_bruteforce(alg):
        q = quotient(alg, theta)
        for a, b in itertools.product(range(alg.size), repeat=2):
            assert q.apply("→", [theta.block_of(a), theta.block_of(b)]) == theta.block_of(
                alg.apply("→", [a, b])
            )


def test_congruences_bruteforce_counts():
    assert len(congruences_bruteforce(one_element(BOOL))) == 1
    assert len(congruences_bruteforce(pointed_set(2))) == 2
    congs = congruences_bruteforce(bool4())
    assert len(congs) == 4
    assert Partition.from_blocks(4, [[3, 1], [0, 2]]) in congs
    with pytest.raises(CapExceeded):
        congruences_bruteforce(pointed_set(7))


def test_largest_congruence_below_examples():
    b4 = bool4()
    assert largest_congruence_below(b4, Partition.identity(4)).is_identity()
    assert largest_congruence_below(b4, Partition.total(4)).is_total()
    theta = Partition.from_blocks(4, [[3, 1], [0, 2]])
    assert largest_congruence_below(b4, theta) == theta


def test_engine_agrees_with_oracle_exhaustively():
    algebras = [bool2(), imp2(), pointed_set(3), bool4()]
    algebras += list(enumerate_algebras(Signature({"f": 1}), 3))
    for alg in algebras:
        for p in all_partitions(alg.size):
            assert largest_congruence_below(alg, p) == coarsest_below(alg, p), (alg, p)


def test_engine_agrees_on_random_seeds_size4():
    rng = random.Random(11)
    sig = Signature({"g": 2})
    pool = list(enumerate_algebras(sig, 2))
    for alg in rng.sample(pool, 8):
        prod = direct_product([alg, alg])
        for p in all_partitions(4):
            assert largest_congruence_below(prod, p) == coarsest_below(prod, p)


def test_is_congruence_uniform():
    assert is_congruence_uniform(bool4())
    assert is_congruence_uniform(one_element(BOOL))
    assert not is_congruence_uniform(pointed_set(3))


def test_enumerate_algebras_counts_and_determinism():
    pointed_sig = Signature({"⊤": 1})
    assert len(list(enumerate_algebras(pointed_sig, 1))) == 1
    all2 = list(enumerate_algebras(pointed_sig, 2))
    assert len(all2) == 4
    constants = [a for a in all2 if len(set(a.table("⊤"))) == 1]
    assert len(constants) == 2
    assert len(list(enumerate_algebras(Signature({"→": 2}), 2))) == 16
    assert list(enumerate_algebras(pointed_sig, 2)) == all2
    with pytest.raises(CapExceeded):
        next(enumerate_algebras(Signature({"→": 2}), 4))


def test_enumerate_algebras_iso_pruning():
    pointed_sig = Signature({"⊤": 1})
    pruned = list(enumerate_algebras(pointed_sig, 2, iso_prune=True))
    assert len(pruned) == 3  # identity, swap, one constant class
    full = list(enumerate_algebras(pointed_sig, 2))
    for alg in full:
        assert any(
            find_isomorphism(Matrix(alg, ()), Matrix(rep, ())) is not None for rep in pruned
        )


def test_is_congruence_matches_oracle_membership():
    alg = bool4()
    congs = set(congruences_bruteforce(alg))
    for p in all_partitions(4):
        assert is_congruence(alg, p) == (p in congs)
