"""Bounded enumeration and brute-force verification.

Everything here is ground truth for the test suite: trees, letter maps and
finite magmas are enumerated exhaustively up to a bound, and each verifier
checks one statement about the tree algebra on every in-bounds instance (or on
a seeded random sample when the space is too large).  A FAIL always means an
implementation bug: the statements are theorems.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from functools import lru_cache
from itertools import product
from math import comb
from typing import Callable, Iterator, Sequence

from .cp import (
    Constant,
    FunctionTable,
    Projection,
    classify_sigma_valued,
    gcp_check,
    letter_maps,
    synthesize,
    tabulate,
    wcp_check,
)
from .jsonio import table_to_json
from .errors import AlphabetTooSmall, CostLimitExceeded, UnknownProposition
from .morphisms import FiniteMagma, MagmaHom, grafting, nu, similar
from .polynomial import Polynomial, TreeFunction, Var, evaluate
from .tree import (
    ZERO,
    Alphabet,
    Leaf,
    Node,
    Tree,
    decompose,
    from_word_set,
    size,
    star,
    to_word_set,
    to_words,
    word_key,
)

__all__ = [
    "EnumerationBounds",
    "Report",
    "COST_LIMIT",
    "PROPOSITIONS",
    "tree_counts",
    "trees_of_size",
    "enumerate_trees",
    "enumerate_alpha_maps",
    "enumerate_magmas",
    "enumerate_polynomials",
    "random_tree",
    "random_polynomial",
    "random_table",
    "presentations",
    "verify_proposition",
    "verify_all",
]

COST_LIMIT = 10**8


@dataclass(frozen=True)
class EnumerationBounds:
    """Bounds for enumeration; ``None`` means "use the verifier's default"."""

    alphabet: Alphabet = field(default_factory=lambda: Alphabet("abc"))
    max_tree_size: int | None = None
    max_arity: int | None = None
    max_magma_size: int | None = None
    # secondary tree bound: grafted trees, or arguments fed to polynomials
    max_aux_size: int | None = None
    samples: int | None = None
    seed: int = 0

    def __post_init__(self):
        for name in ("max_tree_size", "max_arity", "max_magma_size", "max_aux_size", "samples"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise ValueError(f"{name} must be >= 0")

    def resolve(self, **defaults) -> "EnumerationBounds":
        return replace(self, **{k: v for k, v in defaults.items() if getattr(self, k) is None})

    def to_json(self) -> dict:
        out = asdict(self)
        out["alphabet"] = self.alphabet.letters
        return {k: v for k, v in out.items() if v is not None}


@dataclass
class Report:
    proposition: str
    bounds: dict
    instances: int
    result: str
    counterexample: object = None
    message: str | None = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.result == "PASS"

    def to_json(self) -> dict:
        return {
            "proposition": self.proposition,
            "bounds": self.bounds,
            "instances": self.instances,
            "result": self.result,
            "counterexample": self.counterexample,
            "message": self.message,
            "details": self.details,
        }


# -- enumeration ------------------------------------------------------------


def tree_counts(n_labels: int, max_size: int) -> list[int]:
    """Number of trees of each size 0..max_size, by dynamic programming on sizes."""
    counts = [1]
    for s in range(1, max_size + 1):
        if s == 1:
            counts.append(n_labels)
            continue
        counts.append(sum(counts[i] * counts[s - 1 - i] for i in range(s)))
    return counts


def _order(trees) -> tuple[Tree, ...]:
    return tuple(sorted(trees, key=lambda t: [word_key(w) for w in to_words(t)]))


@lru_cache(maxsize=None)
def _trees_of_size(labels: tuple, s: int) -> tuple[Tree, ...]:
    if s == 0:
        return (ZERO,)
    if s == 1:
        return _order(Leaf(x) for x in labels)
    out = []
    for i in range(s):
        for left in _trees_of_size(labels, i):
            for right in _trees_of_size(labels, s - 1 - i):
                out.append(Node(left, right))
    return _order(out)


def trees_of_size(labels: Sequence, s: int) -> tuple[Tree, ...]:
    """All trees of exactly size ``s`` with leaves drawn from ``labels``, lexicographically ordered."""
    return _trees_of_size(tuple(labels), s)


def enumerate_trees(alphabet: Alphabet, max_size: int) -> Iterator[Tree]:
    """Every tree of size <= max_size, each once, by size then lexicographic word list."""
    for s in range(max_size + 1):
        yield from trees_of_size(alphabet.letters, s)


def enumerate_alpha_maps(alphabet: Alphabet, idempotent_only: bool = False) -> Iterator[dict[str, str]]:
    return letter_maps(alphabet, idempotent_only)


def enumerate_magmas(max_size: int) -> Iterator[FiniteMagma]:
    """Every op table of carrier size 1..max_size, once per idempotent choice of zero image."""
    for n in range(1, max_size + 1):
        for rows in FiniteMagma.all_tables(n):
            for z in range(n):
                if rows[z][z] == z:
                    yield FiniteMagma(n, rows, z)


def poly_labels(alphabet: Alphabet, arity: int) -> tuple:
    return tuple(alphabet.letters) + tuple(Var(i) for i in range(1, arity + 1))


def enumerate_polynomials(alphabet: Alphabet, arity: int, max_size: int) -> Iterator[Polynomial]:
    labels = poly_labels(alphabet, arity)
    for s in range(max_size + 1):
        for body in trees_of_size(labels, s):
            yield Polynomial(arity, body)


def random_tree(rng: random.Random, s: int, labels: Sequence) -> Tree:
    """A random tree of exactly size ``s`` (not uniform over trees)."""
    if s == 0:
        return ZERO
    if s == 1:
        return Leaf(rng.choice(labels))
    i = rng.randrange(s)
    return star(random_tree(rng, i, labels), random_tree(rng, s - 1 - i, labels))


def random_polynomial(rng: random.Random, alphabet: Alphabet, arity: int, max_size: int) -> Polynomial:
    letters = list(alphabet.letters)
    variables = [Var(i) for i in range(1, arity + 1)]

    def label():
        if variables and rng.random() < 0.5:
            return rng.choice(variables)
        return rng.choice(letters)

    def build(s):
        if s == 0:
            return ZERO
        if s == 1:
            return Leaf(label())
        i = rng.randrange(s)
        return star(build(i), build(s - 1 - i))

    return Polynomial(arity, build(rng.randint(0, max_size)))


def random_table(rng: random.Random, alphabet: Alphabet, arity: int, max_value_size: int = 3) -> FunctionTable:
    """A random total table, mixing polynomial tables, perturbed ones and unstructured ones."""
    kind = rng.randrange(4)
    letters = list(alphabet.letters)
    if kind == 0:
        return tabulate(random_polynomial(rng, alphabet, arity, max_value_size), alphabet)
    if kind == 1:
        g = tabulate(random_polynomial(rng, alphabet, arity, max_value_size), alphabet)
        entries = dict(g.entries)
        u = rng.choice(list(entries))
        entries[u] = _relabel_one(rng, entries[u], letters)
        return FunctionTable(alphabet, arity, entries)
    if kind == 2:
        entries = {u: Leaf(rng.choice(letters)) for u in product(letters, repeat=arity)}
        return FunctionTable(alphabet, arity, entries)
    entries = {
        u: random_tree(rng, rng.randint(0, max_value_size), letters)
        for u in product(letters, repeat=arity)
    }
    return FunctionTable(alphabet, arity, entries)


def _relabel_one(rng: random.Random, t: Tree, letters: list[str]) -> Tree:
    words = sorted(to_word_set(t), key=word_key)
    if not words:
        return Leaf(rng.choice(letters))
    i = rng.randrange(len(words))
    w = words[i]
    words[i] = w[:-1] + rng.choice(letters)
    return from_word_set(words)


def _positions(t: Tree, path: str = "") -> Iterator[tuple[str, Tree]]:
    yield path, t
    if type(t) is Node:
        yield from _positions(t.left, path + "0")
        yield from _positions(t.right, path + "1")


def _replace_at(t: Tree, path: str, new: Tree) -> Tree:
    if not path:
        return new
    if path[0] == "0":
        return Node(_replace_at(t.left, path[1:], new), t.right)
    return Node(t.left, _replace_at(t.right, path[1:], new))


def presentations(p: Polynomial) -> Iterator[tuple[str, TreeFunction]]:
    """Alternative presentations of ``p``: for every subterm ``r`` at ``path`` that is
    not a bare variable, ``u -> q(u, r(u))`` where ``q`` is ``p`` with that subterm
    abstracted into a fresh last variable."""
    n = p.arity
    for path, sub in _positions(p.body):
        if type(sub) is Leaf and type(sub.label) is Var:
            continue
        q = Polynomial(n + 1, _replace_at(p.body, path, Leaf(Var(n + 1))))
        r = Polynomial(n, sub)

        def g(*u, q=q, r=r):
            return evaluate(q, (*u, evaluate(r, u)))

        yield path, TreeFunction(n, g)


# -- verifiers --------------------------------------------------------------


class _Check:
    """Counts instances and records the first failure."""

    def __init__(self, name: str, bounds: EnumerationBounds):
        self.name = name
        self.bounds = bounds
        self.instances = 0
        self.counterexample = None
        self.details: dict = {}

    def fail(self, counterexample) -> None:
        if self.counterexample is None:
            self.counterexample = counterexample

    @property
    def failed(self) -> bool:
        return self.counterexample is not None

    def report(self) -> Report:
        if self.failed:
            return Report(
                self.name, self.bounds.to_json(), self.instances, "FAIL", self.counterexample,
                "in-bounds counterexample to a proven statement: this is an implementation bug",
                self.details,
            )
        return Report(self.name, self.bounds.to_json(), self.instances, "PASS", None, None, self.details)


def _words(t: Tree) -> list[str]:
    return to_words(t)


def _count_upto(alphabet: Alphabet, k: int) -> int:
    return sum(tree_counts(len(alphabet), k))


def _cost_unique_decomposition(b: EnumerationBounds) -> int:
    return _count_upto(b.alphabet, b.max_tree_size)


def _verify_unique_decomposition(b: EnumerationBounds) -> Report:
    c = _Check("unique-decomposition", b)
    letters = b.alphabet.letters
    for s in range(2, b.max_tree_size + 1):
        # the product on word sets: 0.t1 | 1.t2, over every pair of total size s - 1
        factorizations: dict[frozenset, list] = {}
        for i in range(s):
            for t1 in trees_of_size(letters, i):
                w1 = {"0" + w for w in to_word_set(t1)}
                for t2 in trees_of_size(letters, s - 1 - i):
                    if i == 0 and s - 1 == 0:
                        continue
                    ws = frozenset(w1 | {"1" + w for w in to_word_set(t2)})
                    factorizations.setdefault(ws, []).append((t1, t2))
        trees = trees_of_size(letters, s)
        if len(factorizations) != len(trees):
            c.fail({"size": s, "reason": "product image differs from the trees of this size"})
        for t in trees:
            c.instances += 1
            found = factorizations.get(to_word_set(t), [])
            if len(found) != 1 or decompose(t) != found[0] or star(*decompose(t)) != t:
                c.fail({"tree": _words(t), "factorizations": [[_words(x), _words(y)] for x, y in found]})
    return c.report()


def _cost_two_grafting(b: EnumerationBounds) -> int:
    n = _count_upto(b.alphabet, b.max_tree_size)
    k = len(b.alphabet)
    return n * n * _count_upto(b.alphabet, b.max_aux_size) * k * (k - 1)


def _verify_two_grafting(b: EnumerationBounds) -> Report:
    c = _Check("two-grafting-injectivity", b)
    letters = b.alphabet.letters
    trees = list(enumerate_trees(b.alphabet, b.max_tree_size))
    for tau in enumerate_trees(b.alphabet, b.max_aux_size):
        images = {a: [grafting(a, tau)(t) for t in trees] for a in letters}
        for a1 in letters:
            for a2 in letters:
                if a1 == a2:
                    continue
                # all ordered pairs (t, t'): the premise holds exactly within a group
                c.instances += len(trees) ** 2
                groups: dict = {}
                for j, key in enumerate(zip(images[a1], images[a2])):
                    groups.setdefault(key, []).append(j)
                for js in groups.values():
                    if len(js) > 1:
                        c.fail({"t": _words(trees[js[0]]), "t_prime": _words(trees[js[1]]),
                                "tau": _words(tau), "letters": [a1, a2]})
    return c.report()


def _similar_classes(b: EnumerationBounds) -> list[list[Tree]]:
    n = nu(b.alphabet.first, b.alphabet)
    classes: dict[Tree, list[Tree]] = {}
    for t in enumerate_trees(b.alphabet, b.max_tree_size):
        classes.setdefault(n(t), []).append(t)
    return list(classes.values())


def _cost_similar_cancellation(b: EnumerationBounds) -> int:
    # upper bound: all ordered pairs, not only similar ones
    n = _count_upto(b.alphabet, b.max_tree_size)
    return n * n * len(b.alphabet) * (_count_upto(b.alphabet, b.max_aux_size) + 1)


def _verify_similar_cancellation(b: EnumerationBounds) -> Report:
    if len(b.alphabet) < 3:
        raise AlphabetTooSmall("similar-tree cancellation needs at least 3 letters")
    c = _Check("similar-cancellation", b)
    letters = b.alphabet.letters
    classes = _similar_classes(b)
    pairs = sum(len(cl) ** 2 for cl in classes)
    taus = [t for t in enumerate_trees(b.alphabet, b.max_aux_size) if size(t) != 1]
    part1 = part2 = 0
    for a in letters:
        for tau in taus:
            h = grafting(a, tau)
            part1 += pairs
            for cl in classes:
                seen: dict[Tree, Tree] = {}
                for t in cl:
                    prev = seen.setdefault(h(t), t)
                    if prev != t:
                        c.fail({"part": 1, "t": _words(prev), "t_prime": _words(t),
                                "letter": a, "tau": _words(tau)})
        hs = [grafting(a, Leaf(x)) for x in letters if x != a]
        part2 += pairs
        for cl in classes:
            seen2: dict[tuple, Tree] = {}
            for t in cl:
                prev = seen2.setdefault(tuple(h(t) for h in hs), t)
                if prev != t:
                    c.fail({"part": 2, "t": _words(prev), "t_prime": _words(t), "letter": a})
    c.instances = part1 + part2
    c.details = {"similar_pairs": pairs, "part1_instances": part1, "part2_instances": part2}
    return c.report()


def _arg_vectors(b: EnumerationBounds, arity: int) -> list[tuple[Tree, ...]]:
    args = list(enumerate_trees(b.alphabet, b.max_aux_size))
    return list(product(args, repeat=arity))


def _cost_determination(b: EnumerationBounds) -> int:
    total = 0
    for n in range(1, b.max_arity + 1):
        n_polys = sum(tree_counts(len(b.alphabet) + n, b.max_tree_size))
        total += n_polys * (b.max_tree_size + 1) * _count_upto(b.alphabet, b.max_aux_size) ** n
    return total


def _determination(name: str, b: EnumerationBounds, arities: Sequence[int],
                   compare: Callable[[Tree, Tree], bool]) -> Report:
    """Pairs of presentations that agree on letters must satisfy ``compare`` everywhere in bounds.

    The population is every polynomial in bounds against each of its alternative
    presentations; separately, agreement on letters between distinct polynomials
    is counted (it never happens: the letter table determines the polynomial).
    """
    if len(b.alphabet) < 3:
        raise AlphabetTooSmall(f"{name} needs at least 3 letters")
    c = _Check(name, b)
    pairs = 0
    colliding = 0
    for n in arities:
        vectors = _arg_vectors(b, n)
        by_table: dict[tuple, Polynomial] = {}
        for p in enumerate_polynomials(b.alphabet, n, b.max_tree_size):
            fp = tabulate(p, b.alphabet)
            key = tuple(fp.entries[u] for u in fp.domain())
            if by_table.setdefault(key, p) != p:
                colliding += 1
            for path, g in presentations(p):
                if tabulate(g, b.alphabet, n).entries != fp.entries:
                    c.fail({"polynomial": p.to_json(), "path": path, "reason": "presentation differs on letters"})
                    continue
                pairs += 1
                for u in vectors:
                    c.instances += 1
                    if not compare(p(*u), g(*u)):
                        c.fail({"polynomial": p.to_json(), "path": path, "args": [_words(t) for t in u]})
    c.details = {"presentation_pairs": pairs, "distinct_polynomials_agreeing_on_letters": colliding}
    return c.report()


def _verify_similarity_lemma(b: EnumerationBounds) -> Report:
    return _determination("similarity-lemma", b, [1], lambda x, y: similar(x, y, b.alphabet))


def _verify_unary_determination(b: EnumerationBounds) -> Report:
    return _determination("unary-determination", b, [1], lambda x, y: x == y)


def _verify_nary_determination(b: EnumerationBounds) -> Report:
    return _determination("nary-determination", b, range(1, b.max_arity + 1), lambda x, y: x == y)


def _cost_sampled_determination(b: EnumerationBounds) -> int:
    return 2 * b.samples * _count_upto(b.alphabet, b.max_aux_size) ** b.max_arity


def _verify_sampled_determination(b: EnumerationBounds) -> Report:
    """Random polynomials against a random alternative presentation each.

    Every pair agrees on all of the letter table (checked), so the pair must agree on
    every argument vector in bounds. A second tally records how many distinct
    polynomials met in the sample share a letter table; it stays at zero.
    """
    if len(b.alphabet) < 3:
        raise AlphabetTooSmall("determination needs at least 3 letters")
    c = _Check("sampled-determination", b)
    rng = random.Random(b.seed)
    vectors = {n: _arg_vectors(b, n) for n in range(1, b.max_arity + 1)}
    by_table: dict[tuple, Polynomial] = {}
    colliding = pairs = 0
    while pairs < b.samples:
        n = rng.randint(1, b.max_arity)
        p = random_polynomial(rng, b.alphabet, n, b.max_tree_size)
        alternatives = list(presentations(p))
        if not alternatives:  # a bare variable
            continue
        fp = tabulate(p, b.alphabet)
        key = (n, tuple(fp.entries[u] for u in fp.domain()))
        if by_table.setdefault(key, p) != p:
            colliding += 1
        path, g = rng.choice(alternatives)
        pairs += 1
        if tabulate(g, b.alphabet, n).entries != fp.entries:
            c.fail({"polynomial": p.to_json(), "path": path, "reason": "presentation differs on letters"})
            continue
        for u in vectors[n]:
            c.instances += 1
            if p(*u) != g(*u):
                c.fail({"polynomial": p.to_json(), "path": path, "args": [_words(t) for t in u]})
                break
    c.details = {"pairs": pairs, "distinct_polynomials_sampled": len(by_table),
                 "distinct_polynomials_agreeing_on_letters": colliding}
    return c.report()


def _cost_wcp_gcp(b: EnumerationBounds) -> int:
    k = len(b.alphabet)
    return _count_upto(b.alphabet, b.max_tree_size) ** k + b.samples


def _verify_wcp_gcp(b: EnumerationBounds) -> Report:
    c = _Check("wcp-gcp", b)
    letters = b.alphabet.letters
    values = list(enumerate_trees(b.alphabet, b.max_tree_size))
    passing = 0
    for combo in product(values, repeat=len(letters)):
        g = FunctionTable(b.alphabet, 1, {(a,): v for a, v in zip(letters, combo)})
        c.instances += 1
        w = wcp_check(g)
        if w != gcp_check(g):
            c.fail(table_to_json(g))
        passing += w
    rng = random.Random(b.seed)
    sampled_passing = 0
    for _ in range(b.samples):
        g = random_table(rng, b.alphabet, 2, b.max_tree_size)
        c.instances += 1
        w = wcp_check(g)
        if w != gcp_check(g):
            c.fail(table_to_json(g))
        sampled_passing += w
    c.details = {"unary_tables": c.instances - b.samples, "unary_wcp": passing,
                 "binary_samples": b.samples, "binary_wcp": sampled_passing}
    return c.report()


def _cost_classification(b: EnumerationBounds) -> int:
    k = len(b.alphabet)
    return sum(k ** (k ** n) for n in range(1, b.max_arity + 1))


def constructive_survivors(alphabet: Alphabet, arity: int) -> set[tuple]:
    """Constant and projection tables, built directly, as value tuples in domain order."""
    letters = alphabet.letters
    domain = list(product(letters, repeat=arity))
    out = {tuple(c for _ in domain) for c in letters}
    out |= {tuple(u[i] for u in domain) for i in range(arity)}
    return out


def _verify_classification(b: EnumerationBounds) -> Report:
    if len(b.alphabet) < 3:
        raise AlphabetTooSmall("classification needs at least 3 letters")
    c = _Check("classification", b)
    letters = b.alphabet.letters
    survivors_by_arity = {}
    for n in range(1, b.max_arity + 1):
        domain = list(product(letters, repeat=n))
        survivors = set()
        for values in product(letters, repeat=len(domain)):
            c.instances += 1
            g = FunctionTable(b.alphabet, n, {u: Leaf(v) for u, v in zip(domain, values)})
            if gcp_check(g):
                survivors.add(values)
                cls = classify_sigma_valued(g)
                if not isinstance(cls, (Constant, Projection)):
                    c.fail({"table": table_to_json(g), "classification": type(cls).__name__})
        expected = constructive_survivors(b.alphabet, n)
        if survivors != expected:
            c.fail({"arity": n, "unexpected": sorted(survivors - expected)[:5],
                    "missing": sorted(expected - survivors)[:5]})
        survivors_by_arity[n] = len(survivors)
    c.details = {"survivors": survivors_by_arity}
    return c.report()


def _cost_synthesis(b: EnumerationBounds) -> int:
    total = b.samples * 150
    for n in range(0, b.max_arity + 1):
        total += sum(tree_counts(len(b.alphabet) + n, b.max_tree_size)) * (
            len(b.alphabet) ** n + _count_upto(b.alphabet, b.max_aux_size) ** n)
    return total


def _check_synthesis(c: _Check, p: Polynomial, alphabet: Alphabet, vectors) -> bool:
    g = tabulate(p, alphabet)
    q = synthesize(g)
    c.instances += 1
    if tabulate(q, alphabet).entries != g.entries:
        c.fail({"polynomial": p.to_json(), "synthesized": q.to_json(), "reason": "differs on letters"})
    for u in vectors:
        if p(*u) != q(*u):
            c.fail({"polynomial": p.to_json(), "synthesized": q.to_json(), "args": [_words(t) for t in u]})
            break
    return q == p


def _verify_synthesis(b: EnumerationBounds) -> Report:
    if len(b.alphabet) < 3:
        raise AlphabetTooSmall("synthesis needs at least 3 letters")
    c = _Check("synthesis", b)
    identical = 0
    for n in range(0, b.max_arity + 1):
        vectors = _arg_vectors(b, n)
        for p in enumerate_polynomials(b.alphabet, n, b.max_tree_size):
            identical += _check_synthesis(c, p, b.alphabet, vectors)
    exhaustive = c.instances
    rng = random.Random(b.seed)
    args = list(enumerate_trees(b.alphabet, 4))
    for _ in range(b.samples):
        n = rng.randint(0, 3)
        p = random_polynomial(rng, b.alphabet, n, 9)
        vectors = [tuple(rng.choice(args) for _ in range(n)) for _ in range(100)]
        identical += _check_synthesis(c, p, b.alphabet, vectors)
    c.details = {"exhaustive_polynomials": exhaustive, "random_polynomials": b.samples,
                 "syntactically_identical": identical}
    return c.report()


def _cost_polynomials_cp(b: EnumerationBounds) -> int:
    return b.samples * 10


def _verify_polynomials_cp(b: EnumerationBounds) -> Report:
    c = _Check("polynomials-cp", b)
    rng = random.Random(b.seed)
    letters = b.alphabet.letters
    pool = list(enumerate_trees(b.alphabet, b.max_aux_size))
    for _ in range(b.samples):
        n = rng.randint(1, b.max_arity)
        p = random_polynomial(rng, b.alphabet, n, b.max_tree_size)
        h, u, v = random_congruent_pair(rng, b.alphabet, b.max_magma_size, pool, n)
        c.instances += 1
        if h(p(*u)) != h(p(*v)):
            c.fail({"polynomial": p.to_json(), "magma": magma_json(h.magma, h.letter_images, letters),
                    "u": [_words(t) for t in u], "v": [_words(t) for t in v]})
    return c.report()


def random_magma(rng: random.Random, max_size: int) -> FiniteMagma:
    n = rng.randint(1, max_size)
    while True:
        rows = tuple(tuple(rng.randrange(n) for _ in range(n)) for _ in range(n))
        zeros = [z for z in range(n) if rows[z][z] == z]
        if zeros:
            return FiniteMagma(n, rows, rng.choice(zeros))


def random_congruent_pair(rng: random.Random, alphabet: Alphabet, max_magma_size: int,
                          pool: Sequence[Tree], arity: int):
    """A random magma homomorphism ``h`` and vectors ``u``, ``v`` with ``h(u_i) = h(v_i)``."""
    magma = random_magma(rng, max_magma_size)
    h = MagmaHom(magma, {a: rng.randrange(magma.size) for a in alphabet})
    classes: dict[int, list[Tree]] = {}
    for t in pool:
        classes.setdefault(h(t), []).append(t)
    u, v = [], []
    for _ in range(arity):
        x = rng.choice(pool)
        cl = classes[h(x)]
        y = rng.choice([t for t in cl if t != x] or cl)
        u.append(x)
        v.append(y)
    return h, tuple(u), tuple(v)


def magma_json(magma: FiniteMagma, letter_images, letters) -> dict:
    return {"size": magma.size, "op": [v for row in magma.op for v in row], "zero": magma.zero,
            "letters": [letter_images[a] for a in letters]}


def _cost_fingerprint(b: EnumerationBounds) -> int:
    return sum(sum(tree_counts(len(b.alphabet) + n, b.max_tree_size)) * len(b.alphabet) ** n
               for n in range(b.max_arity + 1))


def _verify_fingerprint(b: EnumerationBounds) -> Report:
    """Distinct polynomials have distinct letter tables (needs 2+ letters)."""
    c = _Check("fingerprint-injectivity", b)
    for n in range(b.max_arity + 1):
        seen: dict[tuple, Polynomial] = {}
        for p in enumerate_polynomials(b.alphabet, n, b.max_tree_size):
            c.instances += 1
            g = tabulate(p, b.alphabet)
            key = tuple(g.entries[u] for u in g.domain())
            prev = seen.setdefault(key, p)
            if prev != p:
                c.fail({"p": prev.to_json(), "q": p.to_json()})
    return c.report()


@dataclass(frozen=True)
class _Prop:
    verify: Callable[[EnumerationBounds], Report]
    cost: Callable[[EnumerationBounds], int]
    defaults: dict


PROPOSITIONS: dict[str, _Prop] = {
    "unique-decomposition": _Prop(_verify_unique_decomposition, _cost_unique_decomposition,
                                  {"max_tree_size": 6}),
    "two-grafting-injectivity": _Prop(_verify_two_grafting, _cost_two_grafting,
                                      {"max_tree_size": 4, "max_aux_size": 3}),
    "similar-cancellation": _Prop(_verify_similar_cancellation, _cost_similar_cancellation,
                                  {"max_tree_size": 5, "max_aux_size": 3}),
    "similarity-lemma": _Prop(_verify_similarity_lemma, _cost_determination,
                              {"max_tree_size": 4, "max_aux_size": 3, "max_arity": 1}),
    "unary-determination": _Prop(_verify_unary_determination, _cost_determination,
                                 {"max_tree_size": 4, "max_aux_size": 3, "max_arity": 1}),
    "nary-determination": _Prop(_verify_nary_determination, _cost_determination,
                                {"max_tree_size": 3, "max_aux_size": 2, "max_arity": 2}),
    "sampled-determination": _Prop(_verify_sampled_determination, _cost_sampled_determination,
                                   {"max_tree_size": 9, "max_aux_size": 4, "max_arity": 2,
                                    "samples": 1000}),
    "wcp-gcp": _Prop(_verify_wcp_gcp, _cost_wcp_gcp, {"max_tree_size": 3, "samples": 10_000}),
    "classification": _Prop(_verify_classification, _cost_classification, {"max_arity": 2}),
    "synthesis": _Prop(_verify_synthesis, _cost_synthesis,
                       {"max_tree_size": 3, "max_aux_size": 2, "max_arity": 2, "samples": 1000}),
    "polynomials-cp": _Prop(_verify_polynomials_cp, _cost_polynomials_cp,
                            {"max_tree_size": 9, "max_aux_size": 3, "max_arity": 3,
                             "max_magma_size": 3, "samples": 1000}),
    "fingerprint-injectivity": _Prop(_verify_fingerprint, _cost_fingerprint,
                                     {"max_tree_size": 3, "max_arity": 2}),
}


def verify_proposition(name: str, bounds: EnumerationBounds | None = None, force: bool = False) -> Report:
    """Run one verifier. Bounds left as ``None`` take the verifier's defaults;
    bounds whose instance count exceeds ``COST_LIMIT`` are refused unless ``force``."""
    try:
        prop = PROPOSITIONS[name]
    except KeyError:
        raise UnknownProposition(
            f"unknown proposition {name!r}; known: {', '.join(PROPOSITIONS)}"
        ) from None
    b = (bounds or EnumerationBounds()).resolve(**prop.defaults)
    cost = prop.cost(b)
    if cost > COST_LIMIT and not force:
        raise CostLimitExceeded(f"{name}: estimated {cost} instances exceeds {COST_LIMIT}; use force")
    return prop.verify(b)


def _run(args) -> Report:
    name, bounds, force = args
    return verify_proposition(name, bounds, force)


def verify_all(bounds: EnumerationBounds | None = None, force: bool = False, jobs: int = 1) -> list[Report]:
    """Every verifier, in registry order; ``jobs > 1`` runs them in worker processes."""
    work = [(name, bounds, force) for name in PROPOSITIONS]
    if jobs <= 1:
        return [_run(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run, work))


def idempotent_map_count(k: int) -> int:
    """Closed form for the number of idempotent self-maps of a k-set: sum C(k,j) j^(k-j)."""
    return sum(comb(k, j) * j ** (k - j) for j in range(1, k + 1)) if k else 1
