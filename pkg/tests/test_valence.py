import random

import pytest
from hypothesis import given, strategies as st

from oracles import valence_accepts, words
from vk import demos
from vk.corpus import mutate_sandwich, monoid_corpus, random_valence, rees_corpus, regular_rees
from vk.errors import (
    BackendNotFinite,
    NotAFiniteGroup,
    NotAMonoid,
    NotAnIdeal,
    NotCompletelySimpleOrZeroSimple,
    NotPlainMAutomaton,
    NotReesWithZero,
    ZeroInInitialOrTerminalSet,
)
from vk.rational import SAutomaton, accepted_subset
from vk.rees import ZERO, build_rees
from vk.regular import Nfa, enumerate_words, equivalent
from vk.semigroup import Integers, adjoin, builtin, cyclic_group, nilpotent_monoid, trivial
from vk.valence import (
    ValenceAutomaton,
    Verdict,
    accepts,
    certify,
    eliminate_target_set,
    enumerate_accepted,
    is_plain,
    language,
    language_dfa,
    lift_from_quotient,
    normalize_initial,
    nozero_normalize,
    singleton,
    strip_ideal_quotient,
    to_dot,
    to_group_automaton,
    zero_simple_reduction,
)

E, A = 0, 1
Z2 = cyclic_group(2)
M = nilpotent_monoid()  # 1, a, 0
REES = [S for S in rees_corpus(5) if regular_rees(S)]
MONOIDS = [m for m in monoid_corpus(4) if m.n >= 2]


def same(V, W):
    return equivalent(language_dfa(V), language_dfa(W))[0]


def lang(V, n=8):
    return ["".join(w) for w in enumerate_words(language_dfa(V), n)]


def rand(seed, owners, **kw):
    rng = random.Random(seed)
    return random_valence(rng, rng.choice(owners), **kw)


class TestAccepts:
    def test_anbn(self):
        V = demos.anbn_machine()
        assert accepts(V, "aabb") is Verdict.YES
        assert accepts(V, "aab") is Verdict.NO

    def test_trivial_register_is_skeleton(self):
        T = trivial()
        edges = [(0, 0, "a", 1), (1, 0, "b", 0), (1, 0, "", 2)]
        V = ValenceAutomaton.plain(T, ("a", "b"), 3, 0, {2}, edges)
        N = Nfa.from_edges(3, "ab", 0, {2}, [(0, "a", 1), (1, "b", 0), (1, None, 2)])
        for w in words("ab", 6):
            assert (accepts(V, w) is Verdict.YES) == N.accepts(w)

    def test_budget(self):
        Z = Integers()
        V = ValenceAutomaton.plain(Z, ("a",), 2, 0, {1}, [(0, 1, "", 0), (0, -5, "a", 1)])
        assert accepts(V, "a") is Verdict.YES
        assert accepts(V, "a", budget=3) is Verdict.INCONCLUSIVE
        # an epsilon loop can pump the register forever, so a miss is never a firm NO
        assert accepts(V, "aa") is Verdict.INCONCLUSIVE

    def test_dyck(self):
        V = demos.dyck_machine()
        assert [w for w in words("ab", 4) if accepts(V, w) is Verdict.YES] == [
            (), ("a", "b"), ("a", "a", "b", "b"), ("a", "b", "a", "b")]

    def test_handle(self):
        h = language(demos.anbn_machine())
        assert not h.exact
        assert ["".join(w) for w in h.enumerate(4)] == ["ab", "aabb"]
        assert language(demos.z2_parity()).exact

    @given(st.integers(0, 2**32), st.sampled_from(["monoid", "group", "rees", "semigroup"]))
    def test_matches_configuration_oracle(self, seed, kind):
        owners = {
            "monoid": MONOIDS,
            "group": [Z2, builtin("S3")],
            "rees": REES[:20],
            "semigroup": [Z2.as_semigroup(), M.as_semigroup(), demos.r1()],
        }[kind]
        V = rand(seed, owners, max_word=2)
        S = V.owner
        x0s, x1s = accepted_subset(V.X0), accepted_subset(V.X1)
        D = language_dfa(V)
        for w in words(V.alphabet, 5):
            want = valence_accepts(S, V, w, x0s, x1s)
            assert (accepts(V, w) is Verdict.YES) == want
            assert D.accepts(w) == want


class TestLanguage:
    def test_z2_parity(self):
        assert lang(demos.z2_parity()) == ["", "bb", "bbbb", "bbbbbb", "bbbbbbbb"]

    def test_empty_target(self):
        V = demos.z2_parity().replace(X1=SAutomaton.empty(Z2))
        D = language_dfa(V)
        assert D.n == 1 and not D.accepting

    def test_identity_labels_give_skeleton(self):
        V = ValenceAutomaton.plain(Z2, ("a", "b"), 2, 0, {1}, [(0, E, "a", 1), (1, E, "b", 1)])
        assert lang(V, 3) == ["a", "ab", "abb"]

    def test_infinite_rejected(self):
        with pytest.raises(BackendNotFinite):
            language_dfa(demos.anbn_machine())


class TestIdealQuotient:
    def test_only_identity_labels(self):
        V = ValenceAutomaton.plain(M, ("a",), 1, 0, {0}, [(0, 0, "a", 0)])
        W = strip_ideal_quotient(V, {1, 2})
        assert W.owner.n == 2 and same(V, W)

    def test_edge_removed(self):
        V = demos.nilpotent_demo()
        W = strip_ideal_quotient(V, {1, 2})
        assert len(W.edges) == len(V.edges) - 1
        assert same(V, W)

    def test_group_with_zero(self):
        G0 = adjoin(Z2, "zero").semigroup
        V = ValenceAutomaton.plain(G0, ("a", "b"), 1, 0, {0}, [(0, A, "a", 0), (0, 2, "b", 0)])
        W = strip_ideal_quotient(V, {2})
        assert all(s != W.owner.zero for _, s, _, _ in W.edges)
        assert same(V, W) and lang(V, 4) == ["", "aa", "aaaa"]

    def test_errors(self):
        with pytest.raises(NotAnIdeal):
            strip_ideal_quotient(demos.nilpotent_demo(), {1})
        with pytest.raises(NotPlainMAutomaton):
            strip_ideal_quotient(demos.z2_parity(), {0})

    @given(st.integers(0, 2**32))
    def test_lift_back(self, seed):
        V = rand(seed, [M], rational=False)
        W = strip_ideal_quotient(V, {1, 2})
        assert same(lift_from_quotient(W, M, {1, 2}), V)


class TestZeroSimple:
    def test_group_unchanged(self):
        V = demos.z2_parity().replace(X0=singleton(Z2, E), X1=singleton(Z2, E))
        N, W = zero_simple_reduction(V)
        assert N == Z2 and W == V

    def test_nilpotent(self):
        N, W = zero_simple_reduction(demos.nilpotent_demo())
        assert N.n == 2 and N.zero == 1 and same(W, demos.nilpotent_demo())

    def test_group_with_zero_is_kept(self):
        G0 = adjoin(Z2, "zero").semigroup
        V = ValenceAutomaton.plain(G0, ("a",), 1, 0, {0}, [(0, A, "a", 0)])
        N, W = zero_simple_reduction(V)
        assert N == G0


class TestNormalizeInitial:
    def test_already_identity(self):
        V = demos.nilpotent_demo()
        assert same(V, normalize_initial(V))

    def test_z2_parity(self):
        W = normalize_initial(demos.z2_parity())
        assert accepted_subset(W.X0) == {E}
        assert lang(W) == lang(demos.z2_parity())

    def test_empty_initial_set(self):
        W = normalize_initial(demos.z2_parity().replace(X0=SAutomaton.empty(Z2)))
        assert not language_dfa(W).accepting

    def test_not_monoid(self):
        with pytest.raises(NotAMonoid):
            normalize_initial(demos.r2_even_loop())

    @given(st.integers(0, 2**32))
    def test_preserves_language(self, seed):
        V = rand(seed, MONOIDS, max_word=2)
        assert same(V, normalize_initial(V))


class TestEliminateTarget:
    def test_identity_target(self):
        V = demos.z2_parity().replace(X0=singleton(Z2, E), X1=singleton(Z2, E))
        W = eliminate_target_set(V)
        assert is_plain(W) and same(V, W)

    def test_z2_odd(self):
        V = demos.z2_parity().replace(X0=singleton(Z2, E))
        W = eliminate_target_set(V)
        assert is_plain(W) and lang(W, 5) == ["b", "bbb", "bbbbb"] and same(V, W)

    def test_whole_group(self):
        V = demos.z2_parity().replace(X0=singleton(Z2, E), X1=SAutomaton.from_elements(Z2, [E, A]))
        assert lang(eliminate_target_set(V), 3) == ["", "b", "bb", "bbb"]

    def test_not_group(self):
        with pytest.raises(NotAFiniteGroup):
            eliminate_target_set(demos.nilpotent_demo())

    @given(st.integers(0, 2**32))
    def test_preserves_language(self, seed):
        V = rand(seed, [Z2, builtin("Z3"), builtin("S3")], max_word=2)
        W = eliminate_target_set(normalize_initial(V))
        assert is_plain(W) and same(V, W)


class TestNozero:
    def test_zero_in_both(self):
        V = demos.r2_even_loop()
        z = singleton(V.owner, ZERO)
        V = V.replace(X0=z, X1=z)
        W = nozero_normalize(V)
        assert ZERO not in accepted_subset(W.X0) | accepted_subset(W.X1)
        # the owner has no identity, so the empty path does not count
        assert lang(W, 3) == ["a", "aa", "aaa"] and same(V, W)

    def test_zero_only_in_initial(self):
        V = demos.r2_even_loop()
        V = V.replace(X0=SAutomaton.from_elements(V.owner, [ZERO, (0, E, 0)]))
        W = nozero_normalize(V)
        assert accepted_subset(W.X0) == {(0, E, 0)} and same(V, W)

    def test_zero_branch(self):
        V = demos.r2_zero_branch()
        assert lang(V) == ["ab"]
        W = nozero_normalize(V)
        assert ZERO not in accepted_subset(W.X0) | accepted_subset(W.X1)
        assert same(V, W)

    def test_not_rees(self):
        with pytest.raises(NotReesWithZero):
            nozero_normalize(demos.z2_parity())

    @given(st.integers(0, 2**32))
    def test_preserves_language(self, seed):
        V = rand(seed, [S for S in REES if S.with_zero], zero_rate=0.4)
        W = nozero_normalize(V)
        assert ZERO not in accepted_subset(W.X0) | accepted_subset(W.X1)
        assert same(V, W)


class TestToGroup:
    def test_r2_even(self):
        V = demos.r2_even_loop()
        W = to_group_automaton(V)
        assert W.owner == Z2 and is_plain(W)
        assert lang(V) == lang(W) == ["aa", "aaaa", "aaaaaa", "aaaaaaaa"]

    def test_r1(self):
        R1 = demos.r1()
        x = singleton(R1, (0, E, 0))
        V = ValenceAutomaton(R1, ("a", "b"), 2, 0, {1}, [(0, (1, A, 0), "a", 1), (1, (0, A, 0), "b", 1)], x, x)
        W = to_group_automaton(V)
        assert is_plain(W) and same(V, W)

    def test_table_input(self):
        V = demos.r2_even_loop()
        T, elems, index = V.owner.materialize()
        f = index.__getitem__
        lift = lambda X: SAutomaton(T, X.n, X.initial, X.terminal, [(p, f(s), q) for p, s, q in X.edges])
        U = ValenceAutomaton(T, V.alphabet, V.n, V.initial, V.terminal,
                             [(p, f(s), w, q) for p, s, w, q in V.edges], lift(V.X0), lift(V.X1))
        W = to_group_automaton(U)
        assert is_plain(W) and same(U, W) and lang(W, 4) == ["aa", "aaaa"]

    def test_empty_initial(self):
        V = demos.r2_even_loop()
        V = V.replace(X0=SAutomaton.empty(V.owner))
        assert not language_dfa(to_group_automaton(V)).accepting

    def test_preconditions(self):
        V = demos.r2_even_loop()
        with pytest.raises(ZeroInInitialOrTerminalSet):
            to_group_automaton(V.replace(X1=singleton(V.owner, ZERO)))
        with pytest.raises(NotCompletelySimpleOrZeroSimple):
            to_group_automaton(demos.nilpotent_demo())
        S = build_rees(Z2, 2, 2, [[E, E], ["0", "0"]], with_zero=True)
        x = singleton(S, (0, E, 0))
        with pytest.raises(NotCompletelySimpleOrZeroSimple):
            to_group_automaton(ValenceAutomaton(S, ("a",), 1, 0, {0}, [], x, x))

    def test_mutation_is_detected(self):
        V = demos.r2_even_loop()
        W = to_group_automaton(V)
        bad = mutate_sandwich(V, 0, 0, A)
        ok, witness = equivalent(language_dfa(bad), language_dfa(W))
        assert not ok and witness == ("a",)

    @given(st.integers(0, 2**32))
    def test_pipeline(self, seed):
        V = rand(seed, REES, max_word=2)
        W = to_group_automaton(nozero_normalize(V))
        assert is_plain(W) and W.owner == V.owner.base
        assert same(V, W)


def test_certify_and_enumerate():
    V = demos.r2_even_loop()
    ok, witness, dv, dw = certify(V, to_group_automaton(V))
    assert ok and witness is None and dv.n == dw.n
    assert ["".join(w) for w in enumerate_accepted(V, 4)] == ["aa", "aaaa"]


def test_dot():
    assert "(" in to_dot(demos.z2_parity()) and to_dot(demos.z2_parity()).startswith("digraph")
