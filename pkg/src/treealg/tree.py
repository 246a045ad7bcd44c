"""Leaf-labelled binary trees and the product ``star``.

A tree is stored as an immutable term: ``ZERO`` (the empty tree), ``Leaf(label)``
or ``Node(left, right)``.  The interchange form is the set of leaf words: each
leaf contributes its binary address (``0`` = left, ``1`` = right) followed by
its label, so ``star(star(b, 0), a)`` is ``{"00b", "1a"}``.

``Node(ZERO, ZERO)`` is not a tree; ``star`` collapses it to ``ZERO`` and the
``Node`` constructor rejects it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, TypeVar, Union

from .errors import DecompositionUndefined, InvalidAlphabet, InvalidWordSet

__all__ = [
    "Alphabet",
    "Zero",
    "Leaf",
    "Node",
    "Tree",
    "ZERO",
    "star",
    "decompose",
    "size",
    "fold",
    "letters_of",
    "labels_of",
    "skeleton",
    "to_word_set",
    "to_words",
    "from_word_set",
    "word_key",
    "check_over",
    "show",
]

ADDRESS_CHARS = "01"


@dataclass(frozen=True)
class Alphabet:
    """Ordered, duplicate-free set of single-character letters, none of them ``0`` or ``1``."""

    letters: str

    def __post_init__(self):
        if not isinstance(self.letters, str) or not self.letters:
            raise InvalidAlphabet("alphabet must be a non-empty string of letters")
        if len(set(self.letters)) != len(self.letters):
            raise InvalidAlphabet(f"duplicate letters in alphabet {self.letters!r}")
        bad = [c for c in self.letters if c in ADDRESS_CHARS or c.isspace()]
        if bad:
            raise InvalidAlphabet(f"letters {bad!r} are not allowed in an alphabet")

    def __iter__(self):
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)

    def __contains__(self, item):
        return isinstance(item, str) and len(item) == 1 and item in self.letters

    def __str__(self):
        return self.letters

    @property
    def first(self) -> str:
        return self.letters[0]


@dataclass(frozen=True, slots=True)
class Zero:
    def __repr__(self):
        return "ZERO"


ZERO = Zero()


@dataclass(frozen=True, slots=True)
class Leaf:
    # a letter, or a polynomial variable (any hashable whose str() is its word token)
    label: object


@dataclass(frozen=True, slots=True)
class Node:
    left: "Tree"
    right: "Tree"

    def __post_init__(self):
        if type(self.left) is Zero and type(self.right) is Zero:
            raise ValueError("Node(ZERO, ZERO) is not a tree; use star()")


Tree = Union[Zero, Leaf, Node]

T = TypeVar("T")


def star(t1: Tree, t2: Tree) -> Tree:
    if type(t1) is Zero and type(t2) is Zero:
        return ZERO
    return Node(t1, t2)


def decompose(t: Tree) -> tuple[Tree, Tree]:
    """Return the unique pair ``(t1, t2) != (ZERO, ZERO)`` with ``star(t1, t2) == t``."""
    if type(t) is not Node:
        raise DecompositionUndefined(f"{show(t)} is not a product of two trees")
    return t.left, t.right


def size(t: Tree) -> int:
    """Number of nodes: 0 for ZERO, 1 for a leaf, 1 + both sides otherwise."""
    if type(t) is Node:
        return size(t.left) + size(t.right) + 1
    if type(t) is Leaf:
        return 1
    return 0


def fold(t: Tree, zero: T, leaf: Callable[[object], T], node: Callable[[T, T], T]) -> T:
    """Structural recursion: ZERO -> zero, Leaf(x) -> leaf(x), Node(l, r) -> node(fold l, fold r)."""
    if type(t) is Node:
        return node(fold(t.left, zero, leaf, node), fold(t.right, zero, leaf, node))
    if type(t) is Leaf:
        return leaf(t.label)
    return zero


def labels_of(t: Tree) -> set:
    out = set()
    stack = [t]
    while stack:
        s = stack.pop()
        if type(s) is Node:
            stack.append(s.left)
            stack.append(s.right)
        elif type(s) is Leaf:
            out.add(s.label)
    return out


def letters_of(t: Tree) -> set[str]:
    """Letters labelling the leaves of ``t`` (polynomial variables excluded)."""
    return {x for x in labels_of(t) if isinstance(x, str)}


def skeleton(t: Tree) -> Tree:
    """``t`` with every leaf label erased (replaced by ``None``)."""
    return fold(t, ZERO, lambda _: Leaf(None), star)


def word_key(word: str) -> tuple[int, ...]:
    # '0' < '1' < every letter, letters by code point
    return tuple(ADDRESS_CHARS.index(c) if c in ADDRESS_CHARS else 2 + ord(c) for c in word)


def to_word_set(t: Tree) -> frozenset[str]:
    words = []

    def walk(s, address):
        if type(s) is Node:
            walk(s.left, address + "0")
            walk(s.right, address + "1")
        elif type(s) is Leaf:
            words.append(address + str(s.label))

    walk(t, "")
    return frozenset(words)


def to_words(t: Tree) -> list[str]:
    """Sorted word list: the serialized form, ``[]`` for ZERO."""
    return sorted(to_word_set(t), key=word_key)


def _split_word(word: str) -> tuple[str, str]:
    i = 0
    while i < len(word) and word[i] in ADDRESS_CHARS:
        i += 1
    return word[:i], word[i:]


def from_word_set(
    words: Iterable[str],
    alphabet: Alphabet | None = None,
    parse_label: Callable[[str], object] | None = None,
) -> Tree:
    """Rebuild a tree from its leaf words.

    ``parse_label`` turns the token after the address into a leaf label and
    raises ``InvalidWordSet`` on bad tokens; by default the token must be one
    letter (of ``alphabet`` when given).
    """
    if isinstance(words, str):
        raise InvalidWordSet("a word set must be a collection of strings, not a string")
    entries = {}
    for word in set(words):
        if not isinstance(word, str):
            raise InvalidWordSet(f"word {word!r} is not a string")
        address, token = _split_word(word)
        if parse_label is None:
            label = _parse_letter(word, token, alphabet)
        else:
            label = parse_label(token)
        if address in entries:
            raise InvalidWordSet(f"two leaves share the address {address!r}")
        entries[address] = label

    addresses = sorted(entries, key=word_key)
    for u, v in zip(addresses, addresses[1:]):
        if v.startswith(u):
            raise InvalidWordSet(f"address {u!r} is a prefix of address {v!r}")

    def build(items: list[tuple[str, object]]) -> Tree:
        if not items:
            return ZERO
        if len(items) == 1 and items[0][0] == "":
            return Leaf(items[0][1])
        left = [(a[1:], x) for a, x in items if a[0] == "0"]
        right = [(a[1:], x) for a, x in items if a[0] == "1"]
        return star(build(left), build(right))

    return build(sorted(entries.items(), key=lambda kv: word_key(kv[0])))


def _parse_letter(word: str, token: str, alphabet: Alphabet | None) -> str:
    if not token:
        raise InvalidWordSet(f"word {word!r} has no letter")
    if len(token) != 1:
        raise InvalidWordSet(f"word {word!r} does not end with a single letter")
    if alphabet is not None and token not in alphabet:
        raise InvalidWordSet(f"letter {token!r} of word {word!r} is not in alphabet {alphabet}")
    return token


def check_over(t: Tree, alphabet: Alphabet) -> Tree:
    """Return ``t`` unchanged if every leaf is a letter of ``alphabet``."""
    for x in labels_of(t):
        if x not in alphabet:
            raise InvalidWordSet(f"leaf label {x!r} is not a letter of alphabet {alphabet}")
    return t


def show(t: Tree) -> str:
    """Term notation: ``0``, ``a``, ``(l*r)``."""
    return fold(t, "0", str, lambda l, r: f"({l}*{r})")
