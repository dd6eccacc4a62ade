import random

import pytest
from hypothesis import given, strategies as st

from oracles import words
from vk.errors import AlphabetMismatch
from vk.regular import (
    Dfa,
    Nfa,
    determinize,
    empty_dfa,
    enumerate_words,
    equivalent,
    minimize,
    to_dot,
)


def ab_star():
    return Nfa.from_edges(2, "ab", 0, {0}, [(0, "a", 1), (1, "b", 0)])


def b_parity(even=True):
    return Dfa(("b",), [[1], [0]], 0, {0} if even else {1})


def random_nfa(seed, n_max=4, alphabet="ab"):
    rng = random.Random(seed)
    n = rng.randint(1, n_max)
    symbols = list(alphabet) + [None]
    edges = [(rng.randrange(n), rng.choice(symbols), rng.randrange(n)) for _ in range(rng.randint(0, 3 * n))]
    accepting = {q for q in range(n) if rng.random() < 0.4}
    return Nfa.from_edges(n, alphabet, 0, accepting, edges)


def nfa_oracle(A, word):
    """Search over (state, position) with epsilon moves, independent of closure code."""
    seen = set()
    todo = [(q, 0) for q in A.initial]
    while todo:
        q, k = todo.pop()
        if (q, k) in seen:
            continue
        seen.add((q, k))
        if k == len(word) and q in A.accepting:
            return True
        for (p, a), targets in A.delta.items():
            if p != q:
                continue
            if a is None:
                todo.extend((t, k) for t in targets)
            elif k < len(word) and word[k] == a:
                todo.extend((t, k + 1) for t in targets)
    return False


class TestDeterminize:
    def test_ab_star(self):
        D = determinize(ab_star())
        assert D.n == 3
        assert [w for w in words("ab", 6) if D.accepts(w)] == [w for w in words("ab", 6) if ab_star().accepts(w)]

    def test_empty(self):
        D = minimize(determinize(Nfa(1, "a", 0, ())))
        assert D.n == 1 and not D.accepting

    def test_deterministic_input(self):
        D = b_parity()
        assert equivalent(determinize(D.to_nfa()), D)[0]


class TestMinimize:
    def test_parity(self):
        assert minimize(b_parity()).n == 2

    def test_all_accepting(self):
        D = Dfa(("a", "b"), [[1, 0], [0, 1]], 0, {0, 1})
        assert minimize(D).n == 1

    def test_minimal_input(self):
        M = minimize(b_parity())
        assert minimize(M).delta == M.delta

    @given(st.integers(0, 2**32))
    def test_idempotent_and_language_preserving(self, seed):
        A = random_nfa(seed)
        M = minimize(determinize(A))
        assert minimize(M).delta == M.delta and minimize(M).accepting == M.accepting
        for w in words("ab", 6):
            assert M.accepts(w) == nfa_oracle(A, w)


class TestEquivalent:
    def test_round_trip(self):
        assert equivalent(ab_star(), determinize(ab_star())) == (True, None)

    def test_parity_counterexample(self):
        assert equivalent(b_parity(True), b_parity(False)) == (False, ())

    def test_alphabet_mismatch(self):
        with pytest.raises(AlphabetMismatch):
            equivalent(b_parity(), ab_star())

    @given(st.integers(0, 2**32), st.integers(0, 2**32))
    def test_counterexample_is_shortest(self, s1, s2):
        A, B = random_nfa(s1), random_nfa(s2)
        ok, w = equivalent(A, B)
        diffs = [u for u in words("ab", 7) if nfa_oracle(A, u) != nfa_oracle(B, u)]
        if ok:
            assert not diffs
        else:
            assert nfa_oracle(A, w) != nfa_oracle(B, w)
            if diffs:
                assert len(w) == len(diffs[0])

    @given(st.integers(0, 2**32))
    def test_reflexive_symmetric(self, seed):
        A = random_nfa(seed)
        B = minimize(determinize(A))
        assert equivalent(A, A)[0] and equivalent(A, B)[0] and equivalent(B, A)[0]


class TestEnumerate:
    def test_empty(self):
        assert enumerate_words(empty_dfa("ab"), 4) == []

    def test_sigma_star(self):
        D = Dfa(("a",), [[0]], 0, {0})
        assert enumerate_words(D, 2) == [(), ("a",), ("a", "a")]

    @given(st.integers(0, 2**32))
    def test_nfa_and_dfa_agree(self, seed):
        A = random_nfa(seed)
        assert enumerate_words(A, 5) == enumerate_words(minimize(determinize(A)), 5)


def test_dot():
    text = to_dot(ab_star())
    assert text.startswith("digraph") and '0 -> 1 [label="a"]' in text
