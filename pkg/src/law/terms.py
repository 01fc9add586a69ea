"""Signatures and terms: the syntactic layer underneath everything else.

Terms are immutable trees. The s-expression syntax used in files is
``(sym arg ...)`` with bare identifiers for variables; a bare identifier that
names a nullary symbol denotes that constant.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import TermError


@dataclass(frozen=True)
class Signature:
    """Symbol names with arities. Stored sorted so signatures hash and compare."""

    symbols: tuple[tuple[str, int], ...]

    def __init__(self, symbols: Mapping[str, int] | Iterable[tuple[str, int]]):
        items = tuple(sorted(dict(symbols).items()))
        for name, arity in items:
            if not name:
                raise TermError("empty symbol name")
            if arity < 0:
                raise TermError(f"negative arity for {name!r}")
        object.__setattr__(self, "symbols", items)

    def arity(self, name: str) -> int:
        for sym, ar in self.symbols:
            if sym == name:
                return ar
        raise TermError(f"unknown symbol {name!r}")

    def __contains__(self, name: str) -> bool:
        return any(sym == name for sym, _ in self.symbols)

    def names(self) -> tuple[str, ...]:
        return tuple(sym for sym, _ in self.symbols)

    def as_dict(self) -> dict[str, int]:
        return dict(self.symbols)

    def __repr__(self) -> str:
        inner = ", ".join(f"{s}:{a}" for s, a in self.symbols)
        return f"Signature({{{inner}}})"


class Term:
    """Base class; instances are Var or App."""

    __slots__ = ()


@dataclass(frozen=True, eq=False, repr=False)
class Var(Term):
    name: str
    _hash: int = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("v", self.name)))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return isinstance(other, Var) and self.name == other.name

    def __repr__(self) -> str:
        return self.name


@dataclass(frozen=True, eq=False, repr=False)
class App(Term):
    sym: str
    args: tuple[Term, ...]
    _hash: int = field(init=False, compare=False)
    depth: int = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("a", self.sym, self.args)))
        object.__setattr__(self, "depth", 1 + max((depth(a) for a in self.args), default=0))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return (
            isinstance(other, App)
            and self._hash == other._hash
            and self.sym == other.sym
            and self.args == other.args
        )

    def __repr__(self) -> str:
        return to_sexpr(self)


def depth(t: Term) -> int:
    """Variables have depth 0; an application adds one level."""
    return t.depth if isinstance(t, App) else 0


def variables(t: Term) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset((t.name,))
    out: set[str] = set()
    stack = list(t.args)
    while stack:
        s = stack.pop()
        if isinstance(s, Var):
            out.add(s.name)
        else:
            stack.extend(s.args)
    return frozenset(out)


def variables_of(terms: Iterable[Term]) -> frozenset[str]:
    out: frozenset[str] = frozenset()
    for t in terms:
        out |= variables(t)
    return out


def substitute(t: Term, mapping: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    return App(t.sym, tuple(substitute(a, mapping) for a in t.args))


def check_term(sig: Signature, t: Term) -> None:
    """Validate arities and the symbol/variable name separation."""
    if isinstance(t, Var):
        if t.name in sig:
            raise TermError(f"variable {t.name!r} clashes with a symbol name")
        return
    if t.sym not in sig:
        raise TermError(f"unknown symbol {t.sym!r}")
    if len(t.args) != sig.arity(t.sym):
        raise TermError(f"{t.sym!r} expects {sig.arity(t.sym)} arguments, got {len(t.args)}")
    for a in t.args:
        check_term(sig, a)


def to_sexpr(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if not t.args:
        return f"({t.sym})"
    return "(" + " ".join([t.sym] + [to_sexpr(a) for a in t.args]) + ")"


def _tokenize(text: str) -> list[str]:
    return text.replace("(", " ( ").replace(")", " ) ").split()


def parse_term(sig: Signature, text: str) -> Term:
    tokens = _tokenize(text)
    if not tokens:
        raise TermError("empty term")
    term, rest = _parse(sig, tokens)
    if rest:
        raise TermError(f"trailing input after term: {' '.join(rest)}")
    check_term(sig, term)
    return term


def _parse(sig: Signature, tokens: list[str]) -> tuple[Term, list[str]]:
    tok, rest = tokens[0], tokens[1:]
    if tok == ")":
        raise TermError("unexpected ')'")
    if tok != "(":
        if tok in sig:
            if sig.arity(tok) != 0:
                raise TermError(f"symbol {tok!r} needs arguments")
            return App(tok, ()), rest
        return Var(tok), rest
    if not rest:
        raise TermError("unterminated '('")
    sym, rest = rest[0], rest[1:]
    if sym in ("(", ")"):
        raise TermError("expected a symbol after '('")
    args: list[Term] = []
    while True:
        if not rest:
            raise TermError("unterminated '('")
        if rest[0] == ")":
            return App(sym, tuple(args)), rest[1:]
        arg, rest = _parse(sig, rest)
        args.append(arg)


def enumerate_terms(sig: Signature, variables: Sequence[str], max_depth: int) -> Iterator[Term]:
    """All terms over `sig` with variables among `variables`, depth <= max_depth.

    Deterministic depth-lexicographic order: variables in the given order,
    then per level every symbol (sorted by name) applied to previously seen
    terms, keeping only applications whose depth equals the current level so
    each term appears exactly once.
    """
    for v in variables:
        if v in sig:
            raise TermError(f"variable {v!r} clashes with a symbol name")
    level: list[Term] = [Var(v) for v in variables]
    seen: list[Term] = list(level)
    yield from level
    syms = sorted(sig.symbols)
    for d in range(1, max_depth + 1):
        nxt: list[Term] = []
        for sym, arity in syms:
            if arity == 0:
                if d == 1:
                    nxt.append(App(sym, ()))
                continue
            for args in itertools.product(seen, repeat=arity):
                if max((depth(a) for a in args), default=0) == d - 1:
                    nxt.append(App(sym, args))
        yield from nxt
        seen.extend(nxt)
        if not nxt:
            break
