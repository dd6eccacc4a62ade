import random

import pytest
from hypothesis import given, strategies as st

from oracles import all_ideals, table_associative
from vk.corpus import monoid_corpus, random_semigroup
from vk.errors import (
    AssociativityViolation,
    BackendNotFinite,
    EmptyGeneratorSet,
    IndexOutOfRange,
    NotAMonoid,
    NotAnIdeal,
    NotIdempotent,
)
from vk.semigroup import (
    Bicyclic,
    Integers,
    adjoin,
    builtin,
    classify,
    cyclic_group,
    distinguished_elements,
    green_relations,
    ideal_generated,
    left_zero,
    maximal_subgroup_at,
    nilpotent_monoid,
    proper_ideal_union,
    rees_quotient,
    symmetric_group,
    trivial,
    validate_table,
)

M1A0 = nilpotent_monoid()  # 1, a, 0 at indices 0, 1, 2
semigroups = st.integers(0, 2**32).map(lambda s: random_semigroup(random.Random(s), 6))


class TestValidate:
    def test_trivial(self):
        S = validate_table([[0]])
        assert S.n == 1 and S.identity == 0

    def test_z2(self):
        S = validate_table([[0, 1], [1, 0]])
        assert S.identity == 0 and S.is_group

    def test_non_associative(self):
        with pytest.raises(AssociativityViolation) as info:
            validate_table([[0, 0], [1, 0]])
        x, y, z = info.value.triple
        t = [[0, 0], [1, 0]]
        assert t[t[x][y]][z] != t[x][t[y][z]]

    @pytest.mark.parametrize("table", [[[0, 2], [1, 0]], [[0, 1]], [[-1]]])
    def test_out_of_range(self, table):
        with pytest.raises(IndexOutOfRange):
            validate_table(table)

    @given(st.integers(1, 3).flatmap(
        lambda n: st.lists(st.lists(st.integers(0, n - 1), min_size=n, max_size=n), min_size=n, max_size=n)))
    def test_matches_triple_oracle(self, table):
        try:
            validate_table(table)
            ok = True
        except AssociativityViolation:
            ok = False
        assert ok == table_associative(table)


class TestDistinguished:
    def test_z2(self):
        d = distinguished_elements(cyclic_group(2))
        assert (d.identity, d.zero, d.idempotents) == (0, None, {0})

    def test_nilpotent(self):
        d = distinguished_elements(M1A0)
        assert (d.identity, d.zero, d.idempotents) == (0, 2, {0, 2})

    def test_left_zero(self):
        d = distinguished_elements(left_zero(2))
        assert (d.identity, d.zero, d.idempotents) == (None, None, {0, 1})


class TestAdjoin:
    def test_trivial_zero(self):
        A = adjoin(trivial(), "zero")
        assert A.semigroup.n == 2 and A.semigroup.mul(0, 1) == 1 and A.semigroup.zero == 1

    def test_group_with_zero(self):
        A = adjoin(cyclic_group(2), "zero")
        assert A.semigroup.table == ((0, 1, 2), (1, 0, 2), (2, 2, 2))
        assert table_associative(A.semigroup.table)
        assert classify(A.semigroup).kind == "zero_simple"

    def test_left_zero_identity(self):
        A = adjoin(left_zero(2), "identity")
        assert A.semigroup.identity == 2 and A.semigroup.n == 3

    def test_adds_fresh_even_if_present(self):
        A = adjoin(M1A0, "zero")
        assert A.semigroup.n == 4 and A.semigroup.zero == 3


class TestIdeals:
    def test_nilpotent(self):
        assert ideal_generated(M1A0, {1}) == {1, 2}

    def test_whole(self):
        S = symmetric_group(3)
        assert ideal_generated(S, S.elements()) == set(S.elements())

    def test_left_zero(self):
        assert ideal_generated(left_zero(2), {0}) == {0, 1}

    def test_empty(self):
        with pytest.raises(EmptyGeneratorSet):
            ideal_generated(M1A0, set())

    def test_union(self):
        assert proper_ideal_union(cyclic_group(2)) is None
        assert proper_ideal_union(M1A0) == {1, 2}
        assert proper_ideal_union(trivial()) is None
        with pytest.raises(NotAMonoid):
            proper_ideal_union(left_zero(2))

    @given(semigroups, st.data())
    def test_least_ideal(self, S, data):
        x = data.draw(st.sampled_from(S.elements()))
        I = ideal_generated(S, {x})
        containing = [J for J in all_ideals(S.table) if x in J]
        assert I in containing
        assert all(I <= J for J in containing)

    def test_infinite_rejected(self):
        with pytest.raises(BackendNotFinite):
            ideal_generated(Integers(), {1})


class TestQuotient:
    def test_nilpotent(self):
        q = rees_quotient(M1A0, {1, 2})
        assert q.semigroup.table == ((0, 1), (1, 1))
        assert q.projection == (0, 1, 1) and not q.degenerate

    def test_zero_singleton_is_copy(self):
        q = rees_quotient(M1A0, {2})
        assert q.semigroup.table == M1A0.table

    def test_degenerate(self):
        q = rees_quotient(M1A0, {0, 1, 2})
        assert q.semigroup.n == 1 and q.degenerate

    def test_not_ideal(self):
        with pytest.raises(NotAnIdeal):
            rees_quotient(M1A0, {1})

    def test_reduction_of_every_small_monoid(self):
        for M in monoid_corpus(5):
            I = proper_ideal_union(M)
            N = M if I is None else rees_quotient(M, I).semigroup
            assert classify(N).kind in ("simple", "zero_simple"), M.table


class TestClassify:
    def test_group(self):
        c = classify(cyclic_group(2))
        assert c.kind == "simple" and c.group_case

    def test_nilpotent(self):
        c = classify(M1A0)
        assert c.kind == "neither"
        assert (c.reduction, c.reduction_group_order) == ("group_with_zero", 1)

    def test_group_with_zero(self):
        assert classify(adjoin(cyclic_group(2), "zero").semigroup).kind == "zero_simple"

    def test_every_small_monoid_reduces_to_group_case(self):
        assert all(classify(M).group_case for M in monoid_corpus(5))


class TestGreen:
    def test_group(self):
        g = green_relations(symmetric_group(3))
        assert len(g.R) == len(g.L) == len(g.H) == 1

    def test_left_zero(self):
        g = green_relations(left_zero(2))
        assert g.R == [{0}, {1}] and g.L == [{0, 1}]

    def test_nilpotent(self):
        assert green_relations(M1A0).H == [{0}, {1}, {2}]

    @given(semigroups)
    def test_h_refines_r_and_l(self, S):
        g = green_relations(S)
        for h in g.H:
            assert any(h <= r for r in g.R) and any(h <= l for l in g.L)


class TestMaximalSubgroup:
    def test_z2(self):
        sub = maximal_subgroup_at(cyclic_group(2), 0)
        assert sub.group.n == 2 and sub.embedding == (0, 1)

    def test_group_with_zero_at_zero(self):
        S = adjoin(cyclic_group(2), "zero").semigroup
        assert maximal_subgroup_at(S, 2).group.n == 1

    def test_not_idempotent(self):
        with pytest.raises(NotIdempotent):
            maximal_subgroup_at(M1A0, 1)

    @given(semigroups)
    def test_is_group_in_s(self, S):
        for e in S.idempotents:
            sub = maximal_subgroup_at(S, e)
            emb = sub.embedding
            assert emb[0] == e
            for x in range(sub.group.n):
                for y in range(sub.group.n):
                    assert emb[sub.group.mul(x, y)] == S.mul(emb[x], emb[y])
            assert sub.group.is_group


class TestBackends:
    @given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
    def test_integers(self, x, y, z):
        Z = Integers()
        assert Z.mul(Z.mul(x, y), z) == Z.mul(x, Z.mul(y, z))
        assert Z.mul(x, Z.inverse(x)) == Z.identity

    pairs = st.tuples(st.integers(0, 6), st.integers(0, 6))

    @given(pairs, pairs, pairs)
    def test_bicyclic_associative(self, x, y, z):
        B = Bicyclic()
        assert B.mul(B.mul(x, y), z) == B.mul(x, B.mul(y, z))
        assert B.mul(B.identity, x) == x == B.mul(x, B.identity)

    def test_bicyclic_relation(self):
        B = Bicyclic()
        assert B.mul(B.INC, B.DEC) == B.identity
        assert B.mul(B.DEC, B.INC) != B.identity

    def test_builtins(self):
        assert builtin("S3").n == 6 and builtin("S3").is_group
        assert builtin("Z3").n == 3
        assert builtin("leftzero3").n == 3
        with pytest.raises(KeyError):
            builtin("Q8")

    def test_monoid_counts(self):
        counts = {}
        for M in monoid_corpus(5):
            counts[M.n] = counts.get(M.n, 0) + 1
            assert M.identity == 0
        # monoids up to isomorphism of orders 1..5
        assert counts == {1: 1, 2: 2, 3: 7, 4: 35, 5: 228}
