"""Homomorphisms out of the tree algebra.

Every map from letters to trees extends uniquely to an endomorphism, and every
map from letters into a finite magma extends to a homomorphism into it once the
image of ``ZERO`` is fixed.  Congruences are only ever handled through such
homomorphisms: two trees are congruent iff their images coincide.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Mapping, Sequence

from .errors import InvalidMagma, InvalidWordSet
from .tree import ZERO, Alphabet, Leaf, Node, Tree, Zero, fold, labels_of, show, star

__all__ = [
    "Endomorphism",
    "extend_endo",
    "apply",
    "grafting",
    "nu",
    "alpha_map",
    "is_idempotent",
    "similar",
    "FiniteMagma",
    "MagmaHom",
    "hom_to_magma",
]


class Endomorphism:
    """Endomorphism of the tree algebra given by its letter images.

    Letters without an explicit image are fixed, which is how graftings are
    stated. ``ZERO`` always maps to ``ZERO``.
    """

    __slots__ = ("images",)

    def __init__(self, images: Mapping[str, Tree]):
        self.images = dict(images)

    def __call__(self, t: Tree) -> Tree:
        if type(t) is Node:
            return star(self(t.left), self(t.right))
        if type(t) is Leaf:
            return self.images.get(t.label, t)
        return ZERO

    def image(self, letter: str) -> Tree:
        return self.images.get(letter, Leaf(letter))

    def then(self, other: "Endomorphism") -> "Endomorphism":
        """``other`` after ``self``."""
        letters = set(self.images) | set(other.images)
        return Endomorphism({a: other(self.image(a)) for a in letters})

    def __eq__(self, other):
        if not isinstance(other, Endomorphism):
            return NotImplemented
        letters = set(self.images) | set(other.images)
        return all(self.image(a) == other.image(a) for a in letters)

    def __hash__(self):
        return hash(frozenset((a, t) for a, t in self.images.items() if t != Leaf(a)))

    def __repr__(self):
        body = ", ".join(f"{a}->{show(t)}" for a, t in sorted(self.images.items()))
        return f"Endomorphism({body})"


def extend_endo(images: Mapping[str, Tree], alphabet: Alphabet | None = None) -> Endomorphism:
    """Extend a letter map to an endomorphism; with ``alphabet`` the map must be total on it."""
    if alphabet is not None:
        if set(images) != set(alphabet):
            raise InvalidWordSet(
                f"letter map domain {sorted(images)} is not the alphabet {alphabet}"
            )
        for t in images.values():
            for x in labels_of(t):
                if x not in alphabet:
                    raise InvalidWordSet(f"image letter {x!r} is not in alphabet {alphabet}")
    return Endomorphism(images)


def apply(h: Endomorphism, t: Tree) -> Tree:
    return h(t)


def grafting(a: str, tau: Tree) -> Endomorphism:
    """Send the letter ``a`` to ``tau`` and fix every other letter."""
    return Endomorphism({a: tau})


def nu(a: str, alphabet: Alphabet) -> Endomorphism:
    """Relabel every leaf to ``a``."""
    return Endomorphism({b: Leaf(a) for b in alphabet})


def alpha_map(mapping: Mapping[str, str]) -> Endomorphism:
    """Endomorphism induced by a letter-to-letter map."""
    return Endomorphism({a: Leaf(b) for a, b in mapping.items()})


def is_idempotent(h: Endomorphism, alphabet: Alphabet | None = None) -> bool:
    # checking on letters suffices: both sides are homomorphisms
    letters = alphabet if alphabet is not None else h.images
    return all(h(h.image(a)) == h.image(a) for a in letters)


def similar(t1: Tree, t2: Tree, alphabet: Alphabet) -> bool:
    """Same skeleton: equal after relabelling every leaf to the alphabet's first letter."""
    n = nu(alphabet.first, alphabet)
    return n(t1) == n(t2)


@dataclass(frozen=True)
class FiniteMagma:
    """Carrier ``range(size)`` with ``op[x][y]``; ``zero`` is the image of the empty tree."""

    size: int
    op: tuple[tuple[int, ...], ...]
    zero: int

    def __post_init__(self):
        if self.size < 1:
            raise InvalidMagma("magma carrier must be non-empty")
        if len(self.op) != self.size or any(len(row) != self.size for row in self.op):
            raise InvalidMagma(f"op table must be {self.size}x{self.size}")
        if any(not 0 <= v < self.size for row in self.op for v in row):
            raise InvalidMagma("op table values must lie in the carrier")
        if not 0 <= self.zero < self.size:
            raise InvalidMagma("zero image must lie in the carrier")
        # ZERO = ZERO * ZERO forces the zero image to be op-idempotent
        if self.op[self.zero][self.zero] != self.zero:
            raise InvalidMagma(f"zero image {self.zero} is not idempotent: op(z,z) != z")

    @classmethod
    def from_flat(cls, size: int, table: Sequence[int], zero: int) -> "FiniteMagma":
        if len(table) != size * size:
            raise InvalidMagma(f"row-major op table must have {size * size} entries")
        rows = tuple(tuple(table[i * size:(i + 1) * size]) for i in range(size))
        return cls(size, rows, zero)

    def __call__(self, x: int, y: int) -> int:
        return self.op[x][y]

    def idempotents(self) -> list[int]:
        return [z for z in range(self.size) if self.op[z][z] == z]

    @staticmethod
    def all_tables(size: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        for flat in product(range(size), repeat=size * size):
            yield tuple(tuple(flat[i * size:(i + 1) * size]) for i in range(size))


class MagmaHom:
    """Homomorphism from trees into a finite magma, fixed by its letter images."""

    __slots__ = ("magma", "letter_images")

    def __init__(self, magma: FiniteMagma, letter_images: Mapping[str, int]):
        for a, v in letter_images.items():
            if not 0 <= v < magma.size:
                raise InvalidMagma(f"image of {a!r} is outside the carrier")
        self.magma = magma
        self.letter_images = dict(letter_images)

    def __call__(self, t: Tree) -> int:
        return fold(t, self.magma.zero, self.letter_images.__getitem__, self.magma)

    def congruent(self, t1: Tree, t2: Tree) -> bool:
        return self(t1) == self(t2)


def hom_to_magma(m: Mapping[str, int], magma: FiniteMagma, t: Tree) -> int:
    return MagmaHom(magma, m)(t)
