"""Terms: parsing, enumeration order, substitution."""

import pytest

from law.errors import TermError
from law.terms import (
    App,
    Signature,
    Var,
    depth,
    enumerate_terms,
    parse_term,
    substitute,
    to_sexpr,
    variables,
)

IMP = Signature({"→": 2})
POINTED = Signature({"⊤": 1})


def brute_terms(sig, names, max_depth):
    """Independent oracle: build term sets level by level from the raw
    definition and deduplicate, ignoring enumeration order."""
    terms = {Var(v) for v in names}
    for _ in range(max_depth):
        fresh = set(terms)
        for sym, arity in sig.symbols:
            if arity == 0:
                fresh.add(App(sym, ()))
                continue
            import itertools

            for args in itertools.product(sorted(terms, key=to_sexpr), repeat=arity):
                fresh.add(App(sym, args))
        terms = fresh
    return {t for t in terms if depth(t) <= max_depth}


def test_parse_roundtrip():
    t = parse_term(IMP, "(→ (→ x y) x)")
    assert to_sexpr(t) == "(→ (→ x y) x)"
    assert variables(t) == {"x", "y"}
    assert depth(t) == 2


def test_parse_rejects_arity_and_clashes():
    with pytest.raises(TermError):
        parse_term(IMP, "(→ x)")
    with pytest.raises(TermError):
        parse_term(IMP, "(⊥ x y)")
    with pytest.raises(TermError):
        list(enumerate_terms(POINTED, ["⊤"], 1))


def test_nullary_symbol_parses_bare_and_wrapped():
    sig = Signature({"c": 0, "f": 1})
    assert parse_term(sig, "c") == App("c", ())
    assert parse_term(sig, "(c)") == App("c", ())
    assert parse_term(sig, "(f c)") == App("f", (App("c", ()),))


def test_enumerate_small_exact_order():
    assert [to_sexpr(t) for t in enumerate_terms(IMP, ["x"], 1)] == ["x", "(→ x x)"]
    assert [to_sexpr(t) for t in enumerate_terms(POINTED, ["x", "y"], 1)] == [
        "x",
        "y",
        "(⊤ x)",
        "(⊤ y)",
    ]


def test_enumerate_depth2_matches_bruteforce():
    stream = list(enumerate_terms(IMP, ["x", "y"], 2))
    assert len(stream) == len(set(stream)), "duplicates in the stream"
    oracle = brute_terms(IMP, ["x", "y"], 2)
    assert set(stream) == oracle
    # 2 variables, 4 depth-1 implications, 32 fresh depth-2 implications
    assert len(stream) == 38


def test_enumerate_prefix_closed():
    shallow = list(enumerate_terms(IMP, ["x", "y"], 1))
    deeper = list(enumerate_terms(IMP, ["x", "y"], 2))
    assert deeper[: len(shallow)] == shallow


def test_substitute():
    t = parse_term(IMP, "(→ x (→ y x))")
    s = substitute(t, {"x": parse_term(IMP, "(→ y y)")})
    assert to_sexpr(s) == "(→ (→ y y) (→ y (→ y y)))"


def test_hash_equality_structural():
    a = parse_term(IMP, "(→ x y)")
    b = App("→", (Var("x"), Var("y")))
    assert a == b and hash(a) == hash(b)
    assert a != parse_term(IMP, "(→ y x)")
