import random

import pytest
from hypothesis import given, strategies as st

from oracles import table_associative
from vk.corpus import (
    CorpusSizes,
    enumerate_monoids,
    flip_sandwich_entry,
    generate,
    monoid_corpus,
    random_semigroup,
    random_valence,
    rees_corpus,
)
from vk import demos
from vk.rees import ZERO
from vk.semigroup import builtin


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_enumeration_matches_packaged_data(n):
    packaged = sorted(M.table for M in monoid_corpus(n) if M.n == n)
    assert sorted(tuple(map(tuple, t)) for t in enumerate_monoids(n)) == packaged


@given(st.integers(0, 2**32))
def test_random_semigroup_is_associative(seed):
    S = random_semigroup(random.Random(seed), 8)
    assert S.n <= 8 and table_associative(S.table)


def test_generate_is_deterministic():
    sizes = CorpusSizes(valence_per_kind=5)
    a, b = generate(11, sizes), generate(11, sizes)
    assert [(n, k, p, V.edges) for n, k, p, V in a[0]] == [(n, k, p, V.edges) for n, k, p, V in b[0]]
    assert [S.table for S in a[1]] == [S.table for S in b[1]]
    assert generate(12, sizes)[0] != a[0]


def test_sizes_are_respected():
    instances, semigroups, rees = generate(2, CorpusSizes(valence_per_kind=15))
    assert len(instances) == 60
    assert all(S.n <= 8 for S in semigroups)
    assert all(S.n_i <= 3 and S.n_j <= 3 and repr(S.base) for S in rees)
    for _, _, _, V in instances:
        assert V.n <= 4 and len(V.alphabet) <= 2


def test_rees_corpus_covers_bases_and_shapes():
    shapes = {(S.base.n, S.n_i, S.n_j, S.with_zero) for S in rees_corpus(0)}
    assert len(shapes) == 3 * 9 * 2


def test_plain_instances_are_plain():
    rng = random.Random(0)
    V = random_valence(rng, builtin("Z3"), rational=False)
    assert V.X0.edges == V.X1.edges


def test_flip_sandwich_entry():
    V = demos.r2_even_loop()
    W = flip_sandwich_entry(V)
    assert W.owner.P[0][0] != V.owner.P[0][0] and W.owner.P[1][1] is ZERO
    assert flip_sandwich_entry(demos.z2_parity()) is None
