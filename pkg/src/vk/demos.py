"""Small named objects used by the CLI, the tests and the acceptance run."""

from __future__ import annotations

from .rees import ZERO, build_rees
from .semigroup import Bicyclic, Integers, cyclic_group, nilpotent_monoid
from .valence import ValenceAutomaton, singleton

E, A = 0, 1  # identity and generator of Z2


def r1():
    """M(Z2; 2, 1; [[e, e]]), completely simple with four elements."""
    return build_rees(cyclic_group(2), 2, 1, [[E, E]], with_zero=False)


def r2():
    """M0(Z2; 2, 2; [[e, e], [e, 0]]), completely 0-simple with nine elements."""
    return build_rees(cyclic_group(2), 2, 2, [[E, E], [E, ZERO]], with_zero=True)


def r2_even_loop() -> ValenceAutomaton:
    """One vertex, loop ((0,a,0), a), X0 = X1 = {(0,e,0)}: the words a^2k, k >= 1."""
    S = r2()
    x = singleton(S, (0, E, 0))
    return ValenceAutomaton(S, ("a",), 1, 0, {0}, [(0, (0, A, 0), "a", 0)], x, x)


def r2_zero_branch() -> ValenceAutomaton:
    """Accepts only through P_11 = 0: a then b lands on the zero, which is in X1."""
    S = r2()
    X0 = singleton(S, (0, E, 1))
    X1 = singleton(S, ZERO)
    edges = [(0, (1, E, 0), "a", 1), (1, (0, A, 0), "b", 2)]
    return ValenceAutomaton(S, ("a", "b"), 3, 0, {2}, edges, X0, X1)


def z2_parity() -> ValenceAutomaton:
    """Loop (a, b) at one vertex with X0 = X1 = {a}: the even powers of b."""
    G = cyclic_group(2)
    x = singleton(G, A)
    return ValenceAutomaton(G, ("b",), 1, 0, {0}, [(0, A, "b", 0)], x, x)


def nilpotent_demo() -> ValenceAutomaton:
    """Plain automaton over {1, a, 0} using the label a once."""
    M = nilpotent_monoid()
    edges = [(0, 0, "a", 0), (0, 1, "b", 1), (1, 0, "a", 1)]
    return ValenceAutomaton.plain(M, ("a", "b"), 2, 0, {0, 1}, edges)


def anbn_machine() -> ValenceAutomaton:
    """Z-automaton for a^n b^n, n >= 1: +1 on each a, -1 on each b."""
    Z = Integers()
    edges = [(0, 1, "a", 1), (1, 1, "a", 1), (1, -1, "b", 2), (2, -1, "b", 2)]
    return ValenceAutomaton.plain(Z, ("a", "b"), 3, 0, {2}, edges)


def dyck_machine() -> ValenceAutomaton:
    """Bicyclic automaton: a increments, b decrements a counter that must stay >= 0."""
    B = Bicyclic()
    return ValenceAutomaton.plain(B, ("a", "b"), 1, 0, {0}, [(0, B.INC, "a", 0), (0, B.DEC, "b", 0)])


def is_anbn(word) -> bool:
    w = "".join(word)
    n = len(w) // 2
    return n >= 1 and w == "a" * n + "b" * n


def is_dyck(word) -> bool:
    height = 0
    for c in word:
        height += 1 if c == "a" else -1
        if height < 0:
            return False
    return height == 0


def z_rees_1x1():
    """M(Z; 1, 1; [[1]]): (0, s, 0)(0, t, 0) = (0, s + 1 + t, 0)."""
    return build_rees(Integers(), 1, 1, [[1]], with_zero=False, monoid=False)


def z_rees_generated(k: int = 2):
    """The subsemigroup generated by (0, k, 0), as a one-loop automaton."""
    from .rational import SAutomaton

    S = z_rees_1x1()
    return SAutomaton(S, 1, 0, {0}, [(0, (0, k, 0), 0)])
