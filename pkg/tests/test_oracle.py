from itertools import combinations, product

import pytest

from treealg import ZERO, Alphabet, Leaf, Polynomial, from_word_set, size, star, tabulate, var
from treealg.errors import AlphabetTooSmall, CostLimitExceeded, UnknownProposition
from treealg.oracle import (
    PROPOSITIONS,
    EnumerationBounds,
    enumerate_alpha_maps,
    enumerate_magmas,
    enumerate_polynomials,
    enumerate_trees,
    idempotent_map_count,
    presentations,
    random_polynomial,
    random_table,
    tree_counts,
    verify_all,
    verify_proposition,
)
import treealg.oracle as oracle_mod

ABC = Alphabet("abc")


def brute_force_counts(k, max_size):
    """Count trees by size straight from the word-set definition: prefix-free
    address sets, weighted by the number of leaf labellings."""
    addresses = [""] + ["".join(p) for n in range(1, max_size) for p in product("01", repeat=n)]
    counts = [0] * (max_size + 1)
    for r in range(0, max_size + 1):
        for chosen in combinations(addresses, r):
            if any(u != v and v.startswith(u) for u in chosen for v in chosen):
                continue
            nodes = {u[:i] for u in chosen for i in range(len(u) + 1)}
            if len(nodes) <= max_size:
                counts[len(nodes)] += k ** r
    return counts


class TestTrees:
    def test_size_zero(self):
        assert list(enumerate_trees(ABC, 0)) == [ZERO]

    def test_size_one(self):
        assert list(enumerate_trees(ABC, 1)) == [ZERO, Leaf("a"), Leaf("b"), Leaf("c")]

    def test_exactly_size_two(self):
        twos = [t for t in enumerate_trees(ABC, 2) if size(t) == 2]
        by_hand = {star(ZERO, Leaf(x)) for x in "abc"} | {star(Leaf(x), ZERO) for x in "abc"}
        assert len(twos) == 6 and set(twos) == by_hand

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_counts_match_word_set_brute_force(self, k):
        letters = "abc"[:k]
        expected = brute_force_counts(k, 4)
        assert tree_counts(k, 4) == expected
        trees = list(enumerate_trees(Alphabet(letters), 4))
        assert len(trees) == len(set(trees)) == sum(expected)
        assert [sum(1 for t in trees if size(t) == s) for s in range(5)] == expected

    def test_counts_up_to_six(self):
        assert tree_counts(3, 6) == [1, 3, 6, 21, 78, 318, 1356]
        assert sum(1 for _ in enumerate_trees(ABC, 6)) == 1783

    def test_order_and_determinism(self):
        first = list(enumerate_trees(ABC, 4))
        assert first == list(enumerate_trees(ABC, 4))
        sizes = [size(t) for t in first]
        assert sizes == sorted(sizes)


class TestMaps:
    def test_all(self):
        assert sum(1 for _ in enumerate_alpha_maps(ABC)) == 27

    def test_idempotent(self):
        maps = list(enumerate_alpha_maps(ABC, idempotent_only=True))
        assert len(maps) == idempotent_map_count(3) == 10
        assert all(m[m[x]] == m[x] for m in maps for x in "abc")

    def test_single_letter(self):
        assert len(list(enumerate_alpha_maps(Alphabet("a"), idempotent_only=True))) == 1

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_idempotent_counts(self, k):
        letters = Alphabet("abcd"[:k])
        brute = sum(1 for m in product(range(k), repeat=k) if all(m[m[i]] == m[i] for i in range(k)))
        assert len(list(enumerate_alpha_maps(letters, True))) == brute == idempotent_map_count(k)


class TestMagmas:
    def test_size_one(self):
        assert len(list(enumerate_magmas(1))) == 1

    def test_size_two(self):
        twos = [m for m in enumerate_magmas(2) if m.size == 2]
        # each of the 16 tables contributes one magma per idempotent element
        tables = list(product(range(2), repeat=4))
        with_zero = [t for t in tables if t[0] == 0 or t[3] == 1]
        assert len(tables) == 16 and len({m.op for m in twos}) == len(with_zero) == 12
        assert len(twos) == sum((t[0] == 0) + (t[3] == 1) for t in tables) == 16

    def test_zero_images_are_idempotent(self):
        assert all(m.op[m.zero][m.zero] == m.zero for m in enumerate_magmas(2))


class TestPolynomials:
    def test_enumeration_counts(self):
        # labels a, b, c, x1
        assert sum(1 for _ in enumerate_polynomials(ABC, 1, 3)) == sum(tree_counts(4, 3)) == 45

    def test_presentations_agree(self):
        p = Polynomial(2, star(star(var(1), Leaf("c")), var(2)))
        args = [(ZERO, Leaf("a")), (from_word_set(["0a", "1b"]), Leaf("c"))]
        paths = []
        for path, g in presentations(p):
            paths.append(path)
            for u in args:
                assert g(*u) == p(*u)
        # root, left subterm, and the letter leaf; bare variables are skipped
        assert paths == ["", "0", "01"]

    def test_random_generators_are_seeded(self):
        import random
        r1, r2 = random.Random(5), random.Random(5)
        assert [random_polynomial(r1, ABC, 2, 9) for _ in range(20)] == \
               [random_polynomial(r2, ABC, 2, 9) for _ in range(20)]
        assert random_table(random.Random(3), ABC, 2) == random_table(random.Random(3), ABC, 2)


class TestVerify:
    def test_unique_decomposition(self):
        r = verify_proposition("unique-decomposition", EnumerationBounds(max_tree_size=6))
        assert r.passed and r.instances == 1783 - 4

    def test_two_grafting(self):
        r = verify_proposition("two-grafting-injectivity",
                               EnumerationBounds(max_tree_size=4, max_aux_size=3))
        assert r.passed
        assert r.instances == 109 ** 2 * 31 * 6

    def test_classification(self):
        r = verify_proposition("classification", EnumerationBounds(max_arity=2))
        assert r.passed and r.instances == 19710
        assert r.details["survivors"] == {1: 4, 2: 5}

    @pytest.mark.parametrize("name", sorted(PROPOSITIONS))
    def test_every_proposition_small(self, name):
        r = verify_proposition(name, EnumerationBounds(max_tree_size=2, max_aux_size=2, samples=30))
        assert r.passed, r.to_json()
        assert r.instances > 0

    def test_report_format(self):
        r = verify_proposition("unique-decomposition", EnumerationBounds(max_tree_size=3))
        j = r.to_json()
        assert list(j)[:5] == ["proposition", "bounds", "instances", "result", "counterexample"]
        assert j["result"] == "PASS" and j["counterexample"] is None
        assert j["bounds"]["alphabet"] == "abc" and j["bounds"]["max_tree_size"] == 3

    def test_unknown(self):
        with pytest.raises(UnknownProposition):
            verify_proposition("riemann")

    def test_cost_guard(self):
        b = EnumerationBounds(max_tree_size=9, max_aux_size=6)
        with pytest.raises(CostLimitExceeded):
            verify_proposition("two-grafting-injectivity", b)

    def test_small_alphabet_rejected(self):
        with pytest.raises(AlphabetTooSmall):
            verify_proposition("classification", EnumerationBounds(alphabet=Alphabet("ab")))

    def test_fail_reports_counterexample(self, monkeypatch):
        monkeypatch.setattr(oracle_mod, "gcp_check", lambda g: True)
        r = verify_proposition("wcp-gcp", EnumerationBounds(max_tree_size=1, samples=0))
        assert r.result == "FAIL"
        assert r.counterexample["arity"] == 1
        assert "implementation bug" in r.message

    def test_verify_all_is_deterministic_across_jobs(self):
        b = EnumerationBounds(max_tree_size=2, max_aux_size=1, samples=20, seed=7)
        one = [r.to_json() for r in verify_all(b, jobs=1)]
        two = [r.to_json() for r in verify_all(b, jobs=2)]
        assert one == two
        assert [r["proposition"] for r in one] == list(PROPOSITIONS)

    def test_determination_population_has_no_distinct_collisions(self):
        r = verify_proposition("nary-determination")
        assert r.passed
        assert r.details["presentation_pairs"] > 0
        assert r.details["distinct_polynomials_agreeing_on_letters"] == 0
