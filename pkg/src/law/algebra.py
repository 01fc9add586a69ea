"""Finite algebras over {0..n-1}: evaluation, products, quotients, congruences.

Operation tables are flat tuples in row-major order with the first argument
most significant. Product carriers use the same encoding: the index of
(a1, .., ak) is a1*n2*..*nk + .. + ak, first factor most significant.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .config import DEFAULTS
from .errors import CapExceeded, NotACongruence, SignatureMismatch, TermError
from .partitions import Partition, all_partitions
from .terms import App, Signature, Term, Var


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    """A total interpretation of a signature on the carrier {0..size-1}."""

    signature: Signature
    size: int
    tables: tuple[tuple[str, tuple[int, ...]], ...]
    name: str = field(default="", compare=False)
    _hash: int = field(init=False, compare=False)
    _ops: dict = field(init=False, compare=False, repr=False)

    def __init__(
        self,
        signature: Signature,
        size: int,
        tables: Mapping[str, Sequence[int]] | Iterable[tuple[str, Sequence[int]]],
        name: str = "",
    ):
        if size < 1:
            raise ValueError("carrier must be nonempty")
        tab = {sym: tuple(cells) for sym, cells in dict(tables).items()}
        if set(tab) != set(signature.names()):
            raise SignatureMismatch("tables do not match the signature's symbols")
        for sym, arity in signature.symbols:
            cells = tab[sym]
            if len(cells) != size**arity:
                raise ValueError(f"table for {sym!r} has {len(cells)} cells, expected {size**arity}")
            if any(not 0 <= c < size for c in cells):
                raise ValueError(f"table for {sym!r} has out-of-range entries")
        frozen = tuple(sorted(tab.items()))
        object.__setattr__(self, "signature", signature)
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "tables", frozen)
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "_hash", hash((signature, size, frozen)))
        object.__setattr__(self, "_ops", dict(frozen))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteAlgebra)
            and self._hash == other._hash
            and self.size == other.size
            and self.signature == other.signature
            and self.tables == other.tables
        )

    def table(self, sym: str) -> tuple[int, ...]:
        return self._ops[sym]

    def apply(self, sym: str, args: Sequence[int]) -> int:
        idx = 0
        for a in args:
            idx = idx * self.size + a
        return self._ops[sym][idx]

    def carrier(self) -> range:
        return range(self.size)

    def sort_key(self):
        return (self.size, self.signature.symbols, self.tables)

    def __repr__(self) -> str:
        label = self.name or "FiniteAlgebra"
        return f"<{label} size={self.size} sig={self.signature!r}>"


def eval_term(alg: FiniteAlgebra, t: Term, valuation: Mapping[str, int]) -> int:
    """Evaluate `t` in `alg` under `valuation` by structural recursion."""
    if isinstance(t, Var):
        if t.name in alg.signature:
            raise TermError(f"variable {t.name!r} clashes with a symbol name")
        if t.name not in valuation:
            raise TermError(f"unbound variable {t.name!r}")
        v = valuation[t.name]
        if not 0 <= v < alg.size:
            raise TermError(f"valuation sends {t.name!r} out of range")
        return v
    assert isinstance(t, App)
    arity = alg.signature.arity(t.sym)
    if len(t.args) != arity:
        raise TermError(f"{t.sym!r} expects {arity} arguments, got {len(t.args)}")
    return alg.apply(t.sym, [eval_term(alg, a, valuation) for a in t.args])


def all_valuations(variables: Sequence[str], size: int) -> Iterator[dict[str, int]]:
    """Every assignment of the given variables into {0..size-1}, in lex order."""
    for combo in itertools.product(range(size), repeat=len(variables)):
        yield dict(zip(variables, combo))


# ---------------------------------------------------------------------------
# products and quotients


def product_encode(indices: Sequence[int], sizes: Sequence[int]) -> int:
    idx = 0
    for a, n in zip(indices, sizes):
        idx = idx * n + a
    return idx


def product_decode(idx: int, sizes: Sequence[int]) -> tuple[int, ...]:
    out = []
    for n in reversed(sizes):
        out.append(idx % n)
        idx //= n
    return tuple(reversed(out))


def direct_product(algs: Sequence[FiniteAlgebra], cap: int = DEFAULTS.product_max) -> FiniteAlgebra:
    """Componentwise product of same-signature algebras."""
    if not algs:
        raise ValueError("need at least one factor")
    sig = algs[0].signature
    for a in algs[1:]:
        if a.signature != sig:
            raise SignatureMismatch("direct product factors must share a signature")
    sizes = [a.size for a in algs]
    total = 1
    for n in sizes:
        total *= n
    if total > cap:
        raise CapExceeded(f"product size {total} exceeds cap {cap}")
    tables = {}
    for sym, arity in sig.symbols:
        cells = []
        for args in itertools.product(range(total), repeat=arity):
            cols = [product_decode(a, sizes) for a in args]
            value = tuple(alg.apply(sym, [col[i] for col in cols]) for i, alg in enumerate(algs))
            cells.append(product_encode(value, sizes))
        tables[sym] = tuple(cells)
    return FiniteAlgebra(sig, total, tables)


def pair_symbol(f: str, g: str) -> str:
    return f"{f}⊗{g}"


def nonindexed_signature(sig1: Signature, sig2: Signature) -> Signature:
    syms = {}
    for f, n in sig1.symbols:
        for g, m in sig2.symbols:
            if n == m:
                syms[pair_symbol(f, g)] = n
    return Signature(syms)


def nonindexed_product(
    a1: FiniteAlgebra, a2: FiniteAlgebra, cap: int = DEFAULTS.product_max
) -> FiniteAlgebra:
    """Product over the pair signature: ``f⊗g`` acts as f on the left
    coordinates and as g on the right coordinates."""
    total = a1.size * a2.size
    if total > cap:
        raise CapExceeded(f"product size {total} exceeds cap {cap}")
    sizes = (a1.size, a2.size)
    sig = nonindexed_signature(a1.signature, a2.signature)
    tables = {}
    for f, arity in a1.signature.symbols:
        for g, m in a2.signature.symbols:
            if m != arity:
                continue
            cells = []
            for args in itertools.product(range(total), repeat=arity):
                cols = [product_decode(a, sizes) for a in args]
                left = a1.apply(f, [c[0] for c in cols])
                right = a2.apply(g, [c[1] for c in cols])
                cells.append(product_encode((left, right), sizes))
            tables[pair_symbol(f, g)] = tuple(cells)
    return FiniteAlgebra(sig, total, tables)


def is_congruence(alg: FiniteAlgebra, theta: Partition) -> bool:
    """Single-coordinate replacement test; equivalent to the full condition
    for equivalence relations by chaining one coordinate at a time."""
    if theta.size != alg.size:
        raise ValueError("partition carrier mismatch")
    n = alg.size
    ids = theta.block_ids
    for sym, arity in alg.signature.symbols:
        if arity == 0:
            continue
        table = alg.table(sym)
        for pos in range(arity):
            for ctx in itertools.product(range(n), repeat=arity - 1):
                seen: dict[int, int] = {}
                for a in range(n):
                    args = ctx[:pos] + (a,) + ctx[pos:]
                    idx = 0
                    for x in args:
                        idx = idx * n + x
                    out = ids[table[idx]]
                    if seen.setdefault(ids[a], out) != out:
                        return False
    return True


def quotient(alg: FiniteAlgebra, theta: Partition) -> FiniteAlgebra:
    """Algebra on the blocks of a congruence; raises if theta is not one."""
    if not is_congruence(alg, theta):
        raise NotACongruence("partition is not a congruence of the algebra")
    blocks = theta.blocks()
    reps = [b[0] for b in blocks]
    m = len(blocks)
    tables = {}
    for sym, arity in alg.signature.symbols:
        cells = []
        for args in itertools.product(range(m), repeat=arity):
            value = alg.apply(sym, [reps[b] for b in args])
            cells.append(theta.block_of(value))
        tables[sym] = tuple(cells)
    return FiniteAlgebra(alg.signature, m, tables)


# ---------------------------------------------------------------------------
# congruence computations


def congruences_bruteforce(alg: FiniteAlgebra, cap: int = DEFAULTS.oracle_max) -> list[Partition]:
    """Testing oracle: check the full congruence condition on every partition.

    Deliberately checks every pair of componentwise-related tuples rather than
    reusing the single-coordinate shortcut, so the refinement engine has an
    independent cross-check.
    """
    if alg.size > cap:
        raise CapExceeded(f"carrier {alg.size} exceeds oracle cap {cap}")
    n = alg.size
    out = []
    for p in all_partitions(n):
        ids = p.block_ids
        good = True
        for sym, arity in alg.signature.symbols:
            table = alg.table(sym)
            for xs in itertools.product(range(n), repeat=arity):
                for ys in itertools.product(range(n), repeat=arity):
                    if any(ids[x] != ids[y] for x, y in zip(xs, ys)):
                        continue
                    ix = iy = 0
                    for x in xs:
                        ix = ix * n + x
                    for y in ys:
                        iy = iy * n + y
                    if ids[table[ix]] != ids[table[iy]]:
                        good = False
                        break
                if not good:
                    break
            if not good:
                break
        if good:
            out.append(p)
    return sorted(out, key=lambda q: q.block_ids)


def largest_congruence_below(alg: FiniteAlgebra, p: Partition) -> Partition:
    """Coarsest congruence refining `p`, by iterated signature splitting.

    Each pass tags every element with the blocks reached through every symbol,
    argument position, and concrete context, then splits blocks whose members
    disagree; at the fixpoint single-coordinate replacement stays inside
    blocks, which chains to the full congruence property.
    """
    if p.size != alg.size:
        raise ValueError("partition carrier mismatch")
    n = alg.size
    ids = p.block_ids
    positions = []
    for sym, arity in alg.signature.symbols:
        if arity == 0:
            continue
        table = alg.table(sym)
        strides = [n ** (arity - 1 - i) for i in range(arity)]
        for pos in range(arity):
            ctx_strides = strides[:pos] + strides[pos + 1 :]
            own = strides[pos]
            bases = []
            for ctx in itertools.product(range(n), repeat=arity - 1):
                bases.append(sum(c * s for c, s in zip(ctx, ctx_strides)))
            positions.append((table, own, bases))
    while True:
        keys: list[list[int]] = [[b] for b in ids]
        for table, own, bases in positions:
            for base in bases:
                for a in range(n):
                    keys[a].append(ids[table[base + a * own]])
        fresh = Partition(tuple(tuple(k) for k in keys))  # type: ignore[arg-type]
        if fresh.block_ids == ids:
            return fresh
        ids = fresh.block_ids


def is_congruence_uniform(alg: FiniteAlgebra, cap: int = DEFAULTS.oracle_max) -> bool:
    """True iff every congruence has blocks of one common size."""
    for theta in congruences_bruteforce(alg, cap=cap):
        sizes = {len(b) for b in theta.blocks()}
        if len(sizes) > 1:
            return False
    return True


# ---------------------------------------------------------------------------
# enumeration


def _canonical_tables(alg: FiniteAlgebra) -> tuple:
    n = alg.size
    best = None
    syms = alg.signature.symbols
    for perm in itertools.permutations(range(n)):
        inv = [0] * n
        for i, x in enumerate(perm):
            inv[x] = i
        candidate = []
        for sym, arity in syms:
            table = alg.table(sym)
            cells = []
            for args in itertools.product(range(n), repeat=arity):
                idx = 0
                for a in args:
                    idx = idx * n + perm[a]
                cells.append(inv[table[idx]])
            candidate.append(tuple(cells))
        candidate = tuple(candidate)
        if best is None or candidate < best:
            best = candidate
    return best


def enumerate_algebras(
    sig: Signature,
    n: int,
    cell_budget: int = DEFAULTS.enum_cell_budget,
    iso_prune: bool = False,
) -> Iterator[FiniteAlgebra]:
    """All algebras of size n over `sig`, tables in row-major counter order.

    The budget bounds the total number of table cells across the whole
    stream (count of algebras times cells per algebra). With `iso_prune`
    only the lexicographically least member of each isomorphism class is
    produced.
    """
    cells_per = sum(n**arity for _, arity in sig.symbols)
    count = 1
    for _, arity in sig.symbols:
        count *= n ** (n**arity)
        if count * cells_per > cell_budget:
            raise CapExceeded(f"enumeration needs more than {cell_budget} table cells")
    syms = sig.symbols
    spans = [n**arity for _, arity in syms]
    for flat in itertools.product(range(n), repeat=sum(spans)):
        tables = {}
        offset = 0
        for (sym, _), span in zip(syms, spans):
            tables[sym] = flat[offset : offset + span]
            offset += span
        alg = FiniteAlgebra(sig, n, tables)
        if iso_prune:
            if tuple(t for _, t in alg.tables) != _canonical_tables(alg):
                continue
        yield alg


def one_element(sig: Signature) -> FiniteAlgebra:
    return FiniteAlgebra(sig, 1, {sym: (0,) * 1 for sym, _ in sig.symbols})
