"""Polynomials: trees whose leaves are letters or variables ``x1 .. xn``."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import ArityMismatch, InvalidWordSet
from .morphisms import Endomorphism
from .tree import ZERO, Alphabet, Leaf, Node, Tree, fold, from_word_set, labels_of, show, star, to_words

__all__ = [
    "Var",
    "Polynomial",
    "TreeFunction",
    "var",
    "evaluate",
    "variables_of",
    "substitute",
]

_VAR_TOKEN = re.compile(r"x([1-9][0-9]*)\Z")


@dataclass(frozen=True, slots=True, order=True)
class Var:
    index: int

    def __str__(self):
        return f"x{self.index}"


def var(i: int) -> Tree:
    return Leaf(Var(i))


@dataclass(frozen=True)
class Polynomial:
    arity: int
    body: Tree

    def __post_init__(self):
        if self.arity < 0:
            raise ArityMismatch("arity must be non-negative")
        for x in labels_of(self.body):
            if isinstance(x, Var) and not 1 <= x.index <= self.arity:
                raise ArityMismatch(f"variable {x} exceeds arity {self.arity}")

    def __call__(self, *args: Tree) -> Tree:
        return evaluate(self, args)

    def __str__(self):
        return show(self.body)

    def function(self) -> "TreeFunction":
        return TreeFunction(self.arity, self)

    def map_letters(self, h: Endomorphism) -> "Polynomial":
        """Rewrite the letter leaves of the body through ``h``; variables stay put."""
        def leaf(x):
            return Leaf(x) if isinstance(x, Var) else h.image(x)
        return Polynomial(self.arity, fold(self.body, ZERO, leaf, star))

    def to_json(self) -> dict:
        return {"arity": self.arity, "body": to_words(self.body)}

    @classmethod
    def from_words(cls, arity: int, words: Iterable[str], alphabet: Alphabet | None = None) -> "Polynomial":
        def parse(token: str):
            m = _VAR_TOKEN.match(token)
            if m:
                return Var(int(m.group(1)))
            if len(token) != 1:
                raise InvalidWordSet(f"leaf token {token!r} is neither a letter nor a variable")
            if alphabet is not None and token not in alphabet:
                raise InvalidWordSet(f"letter {token!r} is not in alphabet {alphabet}")
            return token
        return cls(arity, from_word_set(words, parse_label=parse))


def evaluate(p: Polynomial, args: Sequence[Tree]) -> Tree:
    """The polynomial function: constants stay, ``xi`` becomes ``args[i-1]``, products become ``star``."""
    if len(args) != p.arity:
        raise ArityMismatch(f"polynomial of arity {p.arity} applied to {len(args)} arguments")

    def go(t: Tree) -> Tree:
        if type(t) is Node:
            return star(go(t.left), go(t.right))
        if type(t) is Leaf and type(t.label) is Var:
            return args[t.label.index - 1]
        return t

    return go(p.body)


def variables_of(p: Polynomial) -> set[int]:
    return {x.index for x in labels_of(p.body) if isinstance(x, Var)}


def substitute(outer: Polynomial, inner: Sequence[Polynomial]) -> Polynomial:
    """Compose: replace ``xi`` in ``outer`` by the body of ``inner[i-1]``.

    All inner polynomials must share one arity, which becomes the result's arity.
    """
    if len(inner) != outer.arity:
        raise ArityMismatch(f"{outer.arity} substitutes expected, got {len(inner)}")
    arities = {q.arity for q in inner}
    if len(arities) > 1:
        raise ArityMismatch("substituted polynomials must share one arity")
    arity = arities.pop() if arities else 0
    bodies = [q.body for q in inner]

    def leaf(x):
        return bodies[x.index - 1] if isinstance(x, Var) else Leaf(x)

    return Polynomial(arity, fold(outer.body, ZERO, leaf, star))


class TreeFunction:
    """An n-ary function on trees, given by any callable."""

    __slots__ = ("arity", "fn")

    def __init__(self, arity: int, fn: Callable[..., Tree]):
        self.arity = arity
        self.fn = fn

    def __call__(self, *args: Tree) -> Tree:
        if len(args) != self.arity:
            raise ArityMismatch(f"function of arity {self.arity} applied to {len(args)} arguments")
        return self.fn(*args)

    def __repr__(self):
        return f"TreeFunction(arity={self.arity}, fn={self.fn!r})"
