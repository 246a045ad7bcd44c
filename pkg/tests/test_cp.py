from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import ABC, polynomials, trees
from treealg import (
    ZERO,
    Alphabet,
    AlphabetTooSmall,
    ArityMismatch,
    Constant,
    FunctionTable,
    IncompleteTable,
    InvalidWordSet,
    Leaf,
    NotSigmaValued,
    NotWCP,
    NotWCPClass,
    Polynomial,
    Projection,
    SkeletonMismatch,
    Witness,
    alpha_map,
    classify_sigma_valued,
    cp_equal_on_alphabet,
    freeze,
    from_word_set,
    gcp_check,
    gcp_witness,
    grafting,
    similar,
    star,
    synthesize,
    tabulate,
    var,
    wcp_check,
)
from treealg.cp import common_size
from treealg.oracle import enumerate_polynomials

x1, x2 = var(1), var(2)
a, b, c = (Leaf(s) for s in "abc")


def W(*words):
    return from_word_set(words)


def unary(**values):
    return FunctionTable(ABC, 1, {(k,): v for k, v in values.items()})


BAD = unary(a=a, b=b, c=a)
X1C = Polynomial(1, star(x1, c))


class TestTable:
    def test_totality(self):
        with pytest.raises(IncompleteTable):
            FunctionTable(ABC, 1, {("a",): a, ("b",): b})
        with pytest.raises(IncompleteTable):
            FunctionTable(ABC, 1, {("a",): a, ("b",): b, ("c",): c, ("d",): c})

    def test_values_over_alphabet(self):
        with pytest.raises(InvalidWordSet):
            unary(a=a, b=b, c=Leaf("d"))

    def test_domain_order(self):
        g = tabulate(Polynomial(2, star(x1, x2)), ABC)
        assert list(g.domain())[:4] == [("a", "a"), ("a", "b"), ("a", "c"), ("b", "a")]
        assert len(g) == 9

    def test_common_size(self):
        assert common_size(tabulate(X1C, ABC)) == 3
        with pytest.raises(SkeletonMismatch):
            common_size(unary(a=a, b=W("0a"), c=c))


class TestGCP:
    def test_constant_table(self):
        assert gcp_check(unary(a=W("0a", "1b"), b=W("0a", "1b"), c=W("0a", "1b")))

    def test_identity(self):
        assert gcp_check(unary(a=a, b=b, c=c))

    def test_witness(self):
        # grafting c -> b: g(c) = a stays a, g(b) = b stays b
        w = gcp_witness(BAD)
        assert w == Witness(("c",), 1, "b")
        h = grafting("c", b)
        assert h(BAD["c"]) == a and h(BAD["b"]) == b

    def test_mirror_triple_is_also_a_violation(self):
        # args (b), position 1, letter c: grafting b -> c gives c vs a
        h = grafting("b", c)
        assert h(BAD["b"]) == c and h(BAD["c"]) == a

    def test_witness_is_first_by_replaced_vector(self):
        g = BAD
        found = []
        for v in g.domain():
            for x in "abc":
                if x != v[0]:
                    h = grafting(x, Leaf(v[0]))
                    if h(g[(x,)]) != h(g[v]):
                        found.append(((x,), 1, v[0]))
        assert found == [(("c",), 1, "b"), (("b",), 1, "c")]

    def test_witness_json(self):
        assert gcp_witness(BAD).to_json() == {"args": ["c"], "position": 1, "letter": "b"}

    def test_nullary_table_is_vacuously_wcp(self):
        g = FunctionTable(ABC, 0, {(): W("0a", "1b")})
        assert gcp_check(g) and wcp_check(g)


class TestWCP:
    def test_projections(self):
        for i in (1, 2):
            assert wcp_check(tabulate(Polynomial(2, var(i)), ABC))

    def test_bad_table(self):
        assert not wcp_check(BAD)
        # the idempotent map b -> c, a -> a, c -> c identifies b and c but not g(b), g(c)
        h = alpha_map({"a": "a", "b": "c", "c": "c"})
        assert h(BAD["b"]) != h(BAD["c"])

    @settings(max_examples=150)
    @given(polynomials(max_arity=2))
    def test_polynomial_tables(self, p):
        assert wcp_check(tabulate(p, ABC))

    @settings(max_examples=300)
    @given(st.integers(1, 2), st.data())
    def test_agrees_with_gcp(self, n, data):
        entries = {u: data.draw(trees(max_leaves=2)) for u in product("abc", repeat=n)}
        g = FunctionTable(ABC, n, entries)
        assert wcp_check(g) == gcp_check(g)

    @settings(max_examples=100)
    @given(polynomials(max_arity=2), st.data())
    def test_agrees_with_gcp_near_polynomials(self, p, data):
        g = tabulate(p, ABC)
        u = data.draw(st.sampled_from(list(g.domain())))
        entries = dict(g.entries)
        entries[u] = data.draw(trees(max_leaves=3))
        g2 = FunctionTable(ABC, p.arity, entries)
        assert wcp_check(g2) == gcp_check(g2)
        if gcp_check(g2):
            vals = list(g2.entries.values())
            assert all(similar(vals[0], v, ABC) for v in vals)


class TestClassify:
    def test_second_projection(self):
        g = FunctionTable(ABC, 2, {(x, y): Leaf(y) for x, y in product("abc", repeat=2)})
        assert classify_sigma_valued(g) == Projection(2)

    def test_constant(self):
        assert classify_sigma_valued(unary(a=b, b=b, c=b)) == Constant(b)

    def test_unary_survivors_by_enumeration(self):
        survivors = []
        for values in product("abc", repeat=3):
            g = unary(**{k: Leaf(v) for k, v in zip("abc", values)})
            if gcp_check(g):
                survivors.append("".join(values))
        assert sorted(survivors) == ["aaa", "abc", "bbb", "ccc"]

    def test_not_wcp(self):
        assert classify_sigma_valued(BAD) == NotWCPClass(Witness(("c",), 1, "b"))

    def test_not_sigma_valued(self):
        assert classify_sigma_valued(tabulate(X1C, ABC)) == NotSigmaValued()

    def test_small_alphabet(self):
        ab = Alphabet("ab")
        with pytest.raises(AlphabetTooSmall):
            classify_sigma_valued(FunctionTable(ab, 1, {("a",): a, ("b",): b}))


class TestSynthesize:
    def test_x1_star_c(self):
        g = unary(a=W("0a", "1c"), b=W("0b", "1c"), c=W("0c", "1c"))
        p = synthesize(g)
        assert p == X1C
        assert tabulate(p, ABC) == g
        # the only unary polynomial of size <= 3 with this table
        matches = [q for q in enumerate_polynomials(ABC, 1, 3) if tabulate(q, ABC) == g]
        assert matches == [X1C]

    def test_zero_table(self):
        assert synthesize(unary(a=ZERO, b=ZERO, c=ZERO)) == Polynomial(1, ZERO)

    def test_nullary(self):
        t = W("00b", "1a")
        assert synthesize(FunctionTable(ABC, 0, {(): t})) == Polynomial(0, t)

    @settings(max_examples=300)
    @given(polynomials(max_arity=3, max_leaves=8))
    def test_round_trip(self, p):
        g = tabulate(p, ABC)
        q = synthesize(g)
        assert tabulate(q, ABC) == g
        assert q == p

    def test_not_wcp(self):
        with pytest.raises(NotWCP) as e:
            synthesize(BAD)
        assert e.value.witness == Witness(("c",), 1, "b")

    def test_dissimilar_values(self):
        g = unary(a=a, b=W("0b"), c=c)
        with pytest.raises(NotWCP):
            synthesize(g)
        with pytest.raises(SkeletonMismatch):
            synthesize(g, check=False)

    def test_small_alphabet(self):
        with pytest.raises(AlphabetTooSmall):
            synthesize(FunctionTable(Alphabet("ab"), 1, {("a",): a, ("b",): b}))


class TestEquality:
    def test_same_polynomial(self):
        assert cp_equal_on_alphabet(tabulate(X1C, ABC), tabulate(X1C, ABC))

    def test_mirror(self):
        f, g = tabulate(X1C, ABC), tabulate(Polynomial(1, star(c, x1)), ABC)
        assert f[("a",)] == W("0a", "1c") and g[("a",)] == W("0c", "1a")
        assert not cp_equal_on_alphabet(f, g)

    def test_arity(self):
        with pytest.raises(ArityMismatch):
            cp_equal_on_alphabet(tabulate(X1C, ABC), tabulate(Polynomial(2, x1), ABC))


class TestFreeze:
    def test_last_position(self):
        f = freeze(Polynomial(2, star(x1, x2)), {2: c})
        assert f.arity == 1
        for t in (ZERO, a, W("0a", "1b")):
            assert f(t) == X1C(t)

    def test_first_positions(self):
        p = Polynomial(3, star(star(x1, x2), var(3)))
        f = freeze(p, {1: a, 2: b})
        assert f.arity == 1
        assert f(c) == p(a, b, c)

    def test_projection_becomes_constant(self):
        t = W("00b", "1a")
        f = freeze(Polynomial(2, x2), {2: t})
        assert f(a) == t and f(ZERO) == t

    def test_bad_position(self):
        with pytest.raises(ArityMismatch):
            freeze(X1C, {2: a})

    def test_frozen_function_tabulates(self):
        f = freeze(Polynomial(2, star(x1, x2)), {2: c})
        assert tabulate(f, ABC) == tabulate(X1C, ABC)
