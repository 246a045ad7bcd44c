"""Congruence-preservation analysis on finite function tables.

A congruence preserving function ``T^n -> T`` is determined by its values on
letter vectors (for alphabets of at least three letters), so everything here
works on the table ``g: letters^n -> trees``:

* ``gcp_witness``/``gcp_check`` test the single-letter grafting condition,
* ``wcp_check`` tests the definition directly, over idempotent letter maps,
* ``classify_sigma_valued`` recognises constants and projections,
* ``synthesize`` rebuilds the polynomial that represents the table.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterator, Mapping, Sequence, Union

from .errors import AlphabetTooSmall, ArityMismatch, IncompleteTable, NotWCP, SkeletonMismatch
from .morphisms import Endomorphism, alpha_map, grafting
from .polynomial import Polynomial, TreeFunction, Var
from .tree import ZERO, Alphabet, Leaf, Node, Tree, Zero, check_over, size, star

__all__ = [
    "FunctionTable",
    "Witness",
    "Constant",
    "Projection",
    "NotSigmaValued",
    "NotWCPClass",
    "Classification",
    "letter_maps",
    "tabulate",
    "gcp_witness",
    "gcp_check",
    "wcp_check",
    "common_size",
    "classify_sigma_valued",
    "synthesize",
    "cp_equal_on_alphabet",
    "freeze",
]

MIN_ALPHABET = 3


@dataclass(frozen=True, eq=True)
class FunctionTable:
    """Total map from letter vectors of length ``arity`` to trees."""

    alphabet: Alphabet
    arity: int
    entries: Mapping[tuple[str, ...], Tree]

    def __post_init__(self):
        if self.arity < 0:
            raise ArityMismatch("arity must be non-negative")
        expected = set(self.domain())
        keys = set(self.entries)
        if keys != expected:
            missing = sorted(expected - keys)
            extra = sorted(keys - expected)
            raise IncompleteTable(
                f"table must have exactly {len(expected)} entries; "
                f"missing {missing[:3]}{'...' if len(missing) > 3 else ''}, "
                f"unexpected {extra[:3]}{'...' if len(extra) > 3 else ''}"
            )
        for v in self.entries.values():
            check_over(v, self.alphabet)

    __hash__ = None

    def domain(self) -> Iterator[tuple[str, ...]]:
        """Letter vectors in lexicographic order (letters ordered as in the alphabet)."""
        return product(self.alphabet.letters, repeat=self.arity)

    def __getitem__(self, args: Sequence[str]) -> Tree:
        return self.entries[tuple(args)]

    def __len__(self):
        return len(self.entries)

    def items(self) -> list[tuple[tuple[str, ...], Tree]]:
        return [(u, self.entries[u]) for u in self.domain()]

    def map_values(self, fn: Callable[[Tree], Tree]) -> "FunctionTable":
        return FunctionTable(self.alphabet, self.arity, {u: fn(v) for u, v in self.entries.items()})


@dataclass(frozen=True)
class Witness:
    """Violation of the grafting condition: grafting ``args[position-1] -> letter``
    separates ``g(args)`` from ``g(args with that position set to letter)``."""

    args: tuple[str, ...]
    position: int
    letter: str

    def to_json(self) -> dict:
        return {"args": list(self.args), "position": self.position, "letter": self.letter}


@dataclass(frozen=True)
class Constant:
    value: Tree


@dataclass(frozen=True)
class Projection:
    index: int


@dataclass(frozen=True)
class NotSigmaValued:
    pass


@dataclass(frozen=True)
class NotWCPClass:
    witness: Witness


Classification = Union[Constant, Projection, NotSigmaValued, NotWCPClass]


def letter_maps(alphabet: Alphabet, idempotent_only: bool = False) -> Iterator[dict[str, str]]:
    """All maps alphabet -> alphabet in lexicographic order of their image vectors."""
    letters = alphabet.letters
    for images in product(letters, repeat=len(letters)):
        m = dict(zip(letters, images))
        if idempotent_only and any(m[m[a]] != m[a] for a in letters):
            continue
        yield m


def tabulate(f: Union[Polynomial, TreeFunction, Callable[..., Tree]], alphabet: Alphabet,
             arity: int | None = None) -> FunctionTable:
    """Restrict ``f`` to letter vectors."""
    if arity is None:
        arity = f.arity
    elif getattr(f, "arity", arity) != arity:
        raise ArityMismatch(f"function has arity {f.arity}, asked to tabulate at {arity}")
    entries = {u: f(*[Leaf(a) for a in u]) for u in product(alphabet.letters, repeat=arity)}
    return FunctionTable(alphabet, arity, entries)


def _graftings(alphabet: Alphabet) -> dict[tuple[str, str], Endomorphism]:
    return {(a, b): grafting(a, Leaf(b)) for a in alphabet for b in alphabet if a != b}


def gcp_witness(g: FunctionTable) -> Witness | None:
    """A triple ``(args, position, letter)`` violating the grafting condition, or None.

    The scan is keyed on the vector *after* the replacement, then the position,
    then the replaced letter, so the reported triple is the first in that order.
    """
    graft = _graftings(g.alphabet)
    entries = g.entries
    for v in g.domain():
        gv = entries[v]
        for i in range(g.arity):
            b = v[i]
            for a in g.alphabet:
                if a == b:
                    continue
                h = graft[a, b]
                u = v[:i] + (a,) + v[i + 1:]
                if h(entries[u]) != h(gv):
                    return Witness(u, i + 1, b)
    return None


def gcp_check(g: FunctionTable) -> bool:
    return gcp_witness(g) is None


def wcp_check(g: FunctionTable) -> bool:
    """Check the definition: for every idempotent letter map ``h``, ``h(u) = h(v)``
    implies ``h(g(u)) = h(g(v))``."""
    for m in letter_maps(g.alphabet, idempotent_only=True):
        h = alpha_map(m)
        seen: dict[tuple[str, ...], Tree] = {}
        for u, gu in g.entries.items():
            key = tuple(m[a] for a in u)
            image = h(gu)
            prev = seen.setdefault(key, image)
            if prev != image:
                return False
    return True


def common_size(g: FunctionTable) -> int:
    """The size shared by all values; ``SkeletonMismatch`` if sizes differ."""
    sizes = {size(v) for v in g.entries.values()}
    if len(sizes) != 1:
        raise SkeletonMismatch(f"table values have different sizes {sorted(sizes)}")
    return sizes.pop()


def _require_alphabet(g: FunctionTable) -> None:
    if len(g.alphabet) < MIN_ALPHABET:
        raise AlphabetTooSmall(
            f"alphabet {g.alphabet} has {len(g.alphabet)} letters; at least {MIN_ALPHABET} required"
        )


def classify_sigma_valued(g: FunctionTable) -> Classification:
    """Recognise a letter-valued table as a constant or a projection.

    Tables that fail the grafting condition classify as ``NotWCPClass``; tables
    with a non-letter value as ``NotSigmaValued``.  Projections are preferred
    over constants (they only coincide on one-letter alphabets, which are rejected).
    """
    _require_alphabet(g)
    if any(type(v) is not Leaf for v in g.entries.values()):
        return NotSigmaValued()
    witness = gcp_witness(g)
    if witness is not None:
        return NotWCPClass(witness)
    return _shape(g)


def _shape(g: FunctionTable) -> Classification:
    items = g.items()
    for i in range(g.arity):
        if all(v.label == u[i] for u, v in items):
            return Projection(i + 1)
    values = {v for _, v in items}
    if len(values) == 1:
        return Constant(values.pop())
    # unreachable for alphabets of 3+ letters once the grafting condition holds
    raise RuntimeError(f"letter-valued WCP table is neither constant nor projection: {items}")


def synthesize(g: FunctionTable, check: bool = True) -> Polynomial:
    """Polynomial whose function agrees with ``g`` on every letter vector.

    Values of common size 0 give ``ZERO``, size 1 a constant or a variable,
    larger values are split at the root and both halves synthesized.  With
    ``check=False`` the grafting condition is not verified up front.
    """
    _require_alphabet(g)
    if check:
        witness = gcp_witness(g)
        if witness is not None:
            raise NotWCP(witness)
    return Polynomial(g.arity, _synth(g))


def _synth(g: FunctionTable) -> Tree:
    kinds = {type(v) for v in g.entries.values()}
    if len(kinds) != 1:
        raise SkeletonMismatch(
            "table values are not similar: " + ", ".join(sorted(k.__name__ for k in kinds))
        )
    kind = kinds.pop()
    if kind is Zero:
        return ZERO
    if kind is Leaf:
        witness = gcp_witness(g)
        if witness is not None:
            raise NotWCP(witness)
        c = _shape(g)
        if isinstance(c, Projection):
            return Leaf(Var(c.index))
        return c.value
    left = FunctionTable(g.alphabet, g.arity, {u: v.left for u, v in g.entries.items()})
    right = FunctionTable(g.alphabet, g.arity, {u: v.right for u, v in g.entries.items()})
    return star(_synth(left), _synth(right))


def cp_equal_on_alphabet(f_table: FunctionTable, g_table: FunctionTable) -> bool:
    """Equality of the tables; for congruence preserving functions over 3+ letters
    this decides equality on all trees."""
    if f_table.arity != g_table.arity:
        raise ArityMismatch(f"arities differ: {f_table.arity} vs {g_table.arity}")
    if f_table.alphabet != g_table.alphabet:
        return False
    return all(f_table.entries[u] == g_table.entries[u] for u in f_table.domain())


def freeze(f: Union[Polynomial, TreeFunction], fixed: Mapping[int, Tree]) -> TreeFunction:
    """Fix the arguments at the given 1-based positions; the rest keep their order.

    ``freeze(f, {n + 1: t})`` is ``f(..., t)`` and ``freeze(f, {1: u1, ..., n: un})``
    is the unary ``f(u1, ..., un, .)``.
    """
    n = f.arity
    bad = [i for i in fixed if not 1 <= i <= n]
    if bad:
        raise ArityMismatch(f"positions {bad} are outside 1..{n}")
    free = [i for i in range(1, n + 1) if i not in fixed]

    def frozen(*args: Tree) -> Tree:
        full: list[Tree] = [ZERO] * n
        for i, t in fixed.items():
            full[i - 1] = t
        for i, t in zip(free, args):
            full[i - 1] = t
        return f(*full)

    return TreeFunction(len(free), frozen)
