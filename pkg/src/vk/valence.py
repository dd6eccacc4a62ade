"""Valence automata with rational initial and terminal sets.

A ``ValenceAutomaton`` is a finite automaton over S x Sigma* together with
rational subsets X0, X1 of S.  It accepts w when some x0 in X0 and some path
labelled (x, w) from the initial to a terminal vertex give x0 x in X1.  The
plain M-automaton is the case X0 = X1 = {1}.

The transformations at the bottom all preserve the accepted language; for
finite registers ``language_dfa`` turns that into a checkable statement.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Optional

from .errors import (
    BackendNotFinite,
    Inconclusive,
    IndexOutOfRange,
    NotAFiniteGroup,
    NotAMonoid,
    NotAnIdeal,
    NotCompletelySimpleOrZeroSimple,
    NotCompletelyZeroSimple,
    NotPlainMAutomaton,
    NotReesWithZero,
    VkError,
    ZeroInInitialOrTerminalSet,
)
from .rational import (
    SAutomaton,
    accepted_subset,
    drop_zero,
    enumerate_bounded,
    extract_component,
    invert_group_subset,
    member,
)
from .rees import ZERO, ReesMatrixSemigroup, is_regular_matrix, rees_decompose
from .regular import Dfa, Nfa, determinize, enumerate_words, minimize
from .semigroup import FiniteSemigroup, proper_ideal_union, rees_quotient


class Verdict(str, Enum):
    YES = "yes"
    NO = "no"
    INCONCLUSIVE = "inconclusive"


def _word(w, alphabet) -> tuple:
    if isinstance(w, str):
        if w == "":
            return ()
        if w in alphabet:
            return (w,)
        return tuple(w)
    return tuple(w)


def singleton(S, x) -> SAutomaton:
    return SAutomaton.from_elements(S, [x])


@dataclass(frozen=True, eq=False)
class ValenceAutomaton:
    owner: object
    alphabet: tuple
    n: int
    initial: int
    terminal: frozenset
    edges: tuple  # (p, s, word, q), word a tuple of symbols
    X0: SAutomaton
    X1: SAutomaton

    def __post_init__(self):
        alphabet = tuple(self.alphabet)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "terminal", frozenset(self.terminal))
        edges = tuple((p, s, _word(w, alphabet), q) for p, s, w, q in self.edges)
        object.__setattr__(self, "edges", edges)
        if not 0 <= self.initial < self.n:
            raise IndexOutOfRange("initial vertex out of range")
        if any(not 0 <= q < self.n for q in self.terminal):
            raise IndexOutOfRange("terminal vertex out of range")
        for p, s, w, q in edges:
            if not (0 <= p < self.n and 0 <= q < self.n):
                raise IndexOutOfRange(f"edge ({p}, {q}) leaves the vertex set")
            if not self.owner.contains(s):
                raise IndexOutOfRange(f"edge label {s!r} is not an element of the owner")
            for a in w:
                if a not in alphabet:
                    raise IndexOutOfRange(f"symbol {a!r} not in alphabet")
        for X in (self.X0, self.X1):
            if not (X.owner is self.owner or X.owner == self.owner):
                raise IndexOutOfRange("initial/terminal sets must live over the register semigroup")

    @classmethod
    def plain(cls, owner, alphabet, n, initial, terminal, edges) -> "ValenceAutomaton":
        if owner.identity is None:
            raise NotAMonoid("plain M-automata need an identity")
        one = singleton(owner, owner.identity)
        return cls(owner, alphabet, n, initial, terminal, edges, one, one)

    def replace(self, **kw) -> "ValenceAutomaton":
        return dataclasses.replace(self, **kw)

    @cached_property
    def letter_graph(self):
        """(vertex count, out-lists) with every edge carrying at most one letter.

        Long words get fresh intermediate vertices; the register label rides on
        the first piece and the remaining pieces carry ``None`` (no effect).
        """
        n = self.n
        pieces = []
        for p, s, w, q in self.edges:
            if len(w) <= 1:
                pieces.append((p, s, w[0] if w else None, q))
                continue
            prev = p
            for k, a in enumerate(w):
                if k == len(w) - 1:
                    nxt = q
                else:
                    nxt = n
                    n += 1
                pieces.append((prev, s if k == 0 else None, a, nxt))
                prev = nxt
        out = [[] for _ in range(n)]
        for p, s, a, q in pieces:
            out[p].append((s, a, q))
        return n, tuple(tuple(o) for o in out)


def is_plain(V: ValenceAutomaton) -> bool:
    S = V.owner
    if S.identity is None:
        return False
    for X in (V.X0, V.X1):
        if S.finite:
            values = accepted_subset(X)
        else:
            values, complete = enumerate_bounded(X)
            if not complete:
                return False
        if values != {S.identity}:
            return False
    return True


# --- acceptance ----------------------------------------------------------


def _step_register(S, r, s):
    return r if s is None else S.mul(r, s)


def accepts(V: ValenceAutomaton, word, budget: Optional[int] = None) -> Verdict:
    """Configuration search; exact for finite owners, bounded otherwise.

    ``budget`` caps the number of epsilon moves with a non-identity register
    label along one run (default 2 |Q| (|w| + 1)); hitting it, or an
    inconclusive bounded membership test, yields INCONCLUSIVE instead of NO.
    """
    S = V.owner
    word = _word(word, V.alphabet)
    _, out = V.letter_graph
    truncated = False
    if S.finite:
        x0s = accepted_subset(V.X0)
        x1s = accepted_subset(V.X1)
        in_x1 = x1s.__contains__
        budget = None
    else:
        x0s, complete = enumerate_bounded(V.X0)
        truncated = not complete
        in_x1 = lambda r: member(V.X1, r)
        if budget is None:
            budget = 2 * V.n * (len(word) + 1)
    one = S.identity
    cur = {(V.initial, x, False): 0 for x in x0s}
    for pos in range(len(word) + 1):
        cur, cut = _eps_closure(S, out, cur, budget, one)
        truncated |= cut
        if pos == len(word):
            break
        a = word[pos]
        nxt = {}
        for (v, r, started), used in cur.items():
            for s, letter, q in out[v]:
                if letter == a:
                    key = (q, _step_register(S, r, s), started or s is not None)
                    if nxt.get(key, used + 1) > used:
                        nxt[key] = used
        cur = nxt
        if not cur:
            break
    if len(cur) and pos == len(word):
        for (v, r, started) in cur:
            if v in V.terminal and (started or S.is_monoid):
                hit = in_x1(r)
                if hit:
                    return Verdict.YES
                if hit is None:
                    truncated = True
    return Verdict.INCONCLUSIVE if truncated else Verdict.NO


def _eps_closure(S, out, configs, budget, one):
    result = dict(configs)
    todo = list(configs.items())
    cut = False
    while todo:
        (v, r, started), used = todo.pop()
        if result.get((v, r, started), used) < used:
            continue
        for s, letter, q in out[v]:
            if letter is not None:
                continue
            cost = used + (0 if s is None or s == one else 1)
            if budget is not None and cost > budget:
                cut = True
                continue
            key = (q, _step_register(S, r, s), started or s is not None)
            if key not in result or result[key] > cost:
                result[key] = cost
                todo.append((key, cost))
    return result, cut


def language_nfa(V: ValenceAutomaton) -> Nfa:
    """NFA on reachable configurations (vertex, x0 * path product, started)."""
    S = V.owner
    if not S.finite:
        raise BackendNotFinite("exact languages need a finite register semigroup")
    _, out = V.letter_graph
    x1s = accepted_subset(V.X1)
    index = {}
    order = []

    def idx(c):
        if c not in index:
            index[c] = len(order)
            order.append(c)
        return index[c]

    starts = [idx((V.initial, x, False)) for x in sorted(accepted_subset(V.X0), key=repr)]
    edges = []
    k = 0
    while k < len(order):
        v, r, started = order[k]
        for s, a, q in out[v]:
            edges.append((k, a, idx((q, _step_register(S, r, s), started or s is not None))))
        k += 1
    accepting = [
        k for k, (v, r, started) in enumerate(order)
        if v in V.terminal and (started or S.is_monoid) and r in x1s
    ]
    return Nfa.from_edges(len(order), V.alphabet, starts, accepting, edges)


def language_dfa(V: ValenceAutomaton) -> Dfa:
    return minimize(determinize(language_nfa(V)))


class LanguageHandle:
    """Exact DFA for finite registers, bounded acceptance otherwise."""

    def __init__(self, V: ValenceAutomaton, budget: Optional[int] = None):
        self.automaton = V
        self.budget = budget
        self.dfa = language_dfa(V) if V.owner.finite else None

    @property
    def exact(self) -> bool:
        return self.dfa is not None

    def accepts(self, word) -> Verdict:
        if self.dfa is not None:
            ok = self.dfa.accepts(_word(word, self.automaton.alphabet))
            return Verdict.YES if ok else Verdict.NO
        return accepts(self.automaton, word, self.budget)

    def enumerate(self, max_len: int) -> list:
        if self.dfa is not None:
            return enumerate_words(self.dfa, max_len)
        return enumerate_accepted(self.automaton, max_len, self.budget)


def language(V: ValenceAutomaton, budget: Optional[int] = None) -> LanguageHandle:
    return LanguageHandle(V, budget)


def enumerate_accepted(V: ValenceAutomaton, max_len: int, budget: Optional[int] = None) -> list:
    """Words of length <= max_len accepted by V, in length-lex order."""
    alphabet = sorted(V.alphabet)
    words = [()]
    out = []
    for length in range(max_len + 1):
        for w in words:
            verdict = accepts(V, w, budget)
            if verdict is Verdict.INCONCLUSIVE:
                raise Inconclusive(f"acceptance of {''.join(w)!r} is inconclusive")
            if verdict is Verdict.YES:
                out.append(w)
        if length < max_len:
            words = [w + (a,) for w in words for a in alphabet]
    return out


# --- monoid-level transformations ----------------------------------------


def _require_plain(V):
    if not isinstance(V.owner, FiniteSemigroup) or not V.owner.is_monoid:
        raise NotPlainMAutomaton("expected a finite monoid register")
    if not is_plain(V):
        raise NotPlainMAutomaton("initial and terminal sets must both be {1}")


def strip_ideal_quotient(V: ValenceAutomaton, I) -> ValenceAutomaton:
    """Delete edges labelled inside the proper ideal I and pass to M/I."""
    _require_plain(V)
    M = V.owner
    I = frozenset(I)
    if M.identity in I:
        raise NotAnIdeal("the ideal must be proper")
    quot = rees_quotient(M, I)
    proj = quot.projection
    edges = [(p, proj[s], w, q) for p, s, w, q in V.edges if s not in I]
    return ValenceAutomaton.plain(quot.semigroup, V.alphabet, V.n, V.initial, V.terminal, edges)


def lift_from_quotient(W: ValenceAutomaton, M: FiniteSemigroup, I) -> ValenceAutomaton:
    """Reverse direction: an M/I-automaton becomes an M-automaton."""
    I = frozenset(I)
    if M.identity is None or M.identity in I:
        raise NotAnIdeal("the ideal must be proper in a monoid")
    quot = rees_quotient(M, I)
    if W.owner != quot.semigroup:
        raise NotPlainMAutomaton("automaton does not live over M/I")
    _require_plain(W)
    back = {proj: x for x, proj in enumerate(quot.projection) if x not in I}
    edges = [(p, back[s], w, q) for p, s, w, q in W.edges if s != quot.zero]
    return ValenceAutomaton.plain(M, W.alphabet, W.n, W.initial, W.terminal, edges)


def zero_simple_reduction(V: ValenceAutomaton):
    """(N, automaton over N) with N simple or 0-simple and the same language."""
    _require_plain(V)
    I = proper_ideal_union(V.owner)
    if I is None:
        return V.owner, V
    W = strip_ideal_quotient(V, I)
    return W.owner, W


def normalize_initial(V: ValenceAutomaton) -> ValenceAutomaton:
    """Fold X0 into the graph: run the X0 automaton on the empty word first."""
    S = V.owner
    if not S.is_monoid:
        raise NotAMonoid("initial-set normalization needs a monoid register")
    C = V.X0
    off = C.n
    one = S.identity
    edges = [(p, s, (), q) for p, s, q in C.edges]
    edges += [(f, one, (), V.initial + off) for f in sorted(C.terminal)]
    edges += [(p + off, s, w, q + off) for p, s, w, q in V.edges]
    return ValenceAutomaton(
        S, V.alphabet, C.n + V.n, C.initial, {q + off for q in V.terminal},
        edges, singleton(S, one), V.X1,
    )


def eliminate_target_set(V: ValenceAutomaton) -> ValenceAutomaton:
    """Plain G-automaton for a finite group G, given X0 = {1}.

    Each terminal vertex gets an epsilon edge labelled x1^-1 into one new
    terminal vertex, for every x1 in X1.
    """
    G = V.owner
    if not (getattr(G, "finite", False) and getattr(G, "is_group", False)):
        raise NotAFiniteGroup("target-set elimination is implemented for finite groups")
    if accepted_subset(V.X0) != {G.identity}:
        raise NotPlainMAutomaton("normalize the initial set to {1} first")
    t = V.n
    edges = list(V.edges)
    for f in sorted(V.terminal):
        for x in sorted(accepted_subset(V.X1)):
            edges.append((f, G.inverse(x), (), t))
    return ValenceAutomaton.plain(G, V.alphabet, V.n + 1, V.initial, {t}, edges)


# --- Rees matrix registers -----------------------------------------------


def _nonzero_idempotent(S):
    for x in S.elements():
        if x is not ZERO and S.mul(x, x) == x:
            return x
    raise NotCompletelySimpleOrZeroSimple("no non-zero idempotent to carry the register")


def _anchor(S, x0s, x1s):
    """(x0, e, y): e idempotent with x0 e = x0 and x0 y in X1."""
    idem = [x for x in S.elements() if x is not ZERO and S.mul(x, x) == x]
    for x0 in S.elements():
        if x0 not in x0s:
            continue
        fixes = [e for e in idem if S.mul(x0, e) == x0]
        if not fixes:
            continue
        for y in S.elements():
            if S.mul(x0, y) in x1s:
                return x0, fixes[0], y
    return None


def nozero_normalize(V: ValenceAutomaton) -> ValenceAutomaton:
    """Equivalent automaton whose initial and terminal sets avoid 0.

    * 0 in X0 and X1: every skeleton path accepts, so all labels become a
      fixed non-zero idempotent e and X0 = X1 = {e}.
    * 0 in X0 only: 0 can never reach X1, drop it.
    * 0 in X1: split off L0, the words with a run whose register hits 0.
      Whether a run hits 0 depends only on the column of x0 and the sandwich
      zero pattern, so L0 is tracked by the finite control on (vertex,
      last column | ZERO).  That branch carries e on its letters and ends
      with one edge y where x0* e = x0* and x0* y lies in X1 minus 0.
    """
    S = V.owner
    if not isinstance(S, ReesMatrixSemigroup):
        raise NotReesWithZero("nozero normalization needs a Rees matrix register")
    if not S.with_zero:
        return V
    if not S.finite:
        raise BackendNotFinite("nozero normalization is implemented for finite bases")
    x0s = accepted_subset(V.X0)
    x1s = accepted_subset(V.X1)
    if ZERO in x0s and ZERO in x1s:
        e = _nonzero_idempotent(S)
        edges = [(p, e, w, q) for p, _, w, q in V.edges]
        one = singleton(S, e)
        return V.replace(edges=tuple(edges), X0=one, X1=one)
    X0 = drop_zero(V.X0) if ZERO in x0s else V.X0
    if ZERO not in x1s:
        return V.replace(X0=X0)
    X1 = drop_zero(V.X1)
    x0s = accepted_subset(X0)
    x1s = accepted_subset(X1)
    if not x0s:
        return V.replace(X0=X0, X1=X1)

    cols = sorted({x[2] for x in x0s})
    width = S.n_j + 1  # last slot marks ZERO
    zslot = S.n_j

    def track(c, s):
        if c == zslot or s is ZERO or S.P[c][s[0]] is ZERO:
            return zslot
        return s[2]

    anchor = _anchor(S, x0s, x1s)
    if anchor is None:
        if any(True for _ in _difference_witness(S, x0s, x1s)):
            raise NotCompletelySimpleOrZeroSimple("no idempotent anchor for the zero branch")
        e = _nonzero_idempotent(S)
        label, X0, X1 = e, singleton(S, e), singleton(S, e)
        keep_main = False
    else:
        x0, label, y = anchor
        keep_main = True

    # layout: 0 = fresh start, then main copy, then zero-tracking copy, then final
    main_off = 1
    zoff = main_off + (V.n if keep_main else 0)

    def zv(q, c):
        return zoff + q * width + c

    final = zoff + V.n * width
    edges = []
    terminal = set()
    if keep_main:
        edges += [(p + main_off, s, w, q + main_off) for p, s, w, q in V.edges]
        edges += [(0, s, w, q + main_off) for p, s, w, q in V.edges if p == V.initial]
        terminal |= {q + main_off for q in V.terminal}
        if V.initial in V.terminal:
            terminal.add(0)
    for p, s, w, q in V.edges:
        for c in range(width):
            edges.append((zv(p, c), label, w, zv(q, track(c, s))))
        if p == V.initial:
            for c in cols:
                edges.append((0, label, w, zv(q, track(c, s))))
    if keep_main:
        edges += [(zv(f, zslot), y, (), final) for f in sorted(V.terminal)]
        terminal.add(final)
    else:
        terminal |= {zv(f, zslot) for f in V.terminal}
    return ValenceAutomaton(S, V.alphabet, final + 1, 0, terminal, edges, X0, X1)


def _difference_witness(S, x0s, x1s):
    for x0 in x0s:
        for y in S.elements():
            if S.mul(x0, y) in x1s:
                yield (x0, y)


def _fresh_start(V: ValenceAutomaton) -> ValenceAutomaton:
    """Same language, initial vertex with no incoming edges and not terminal."""
    s = V.n
    edges = list(V.edges) + [(s, lab, w, q) for p, lab, w, q in V.edges if p == V.initial]
    return V.replace(n=V.n + 1, initial=s, edges=tuple(edges))


def _translate(V: ValenceAutomaton, f, owner) -> ValenceAutomaton:
    def sa(X):
        return SAutomaton(owner, X.n, X.initial, X.terminal, [(p, f(s), q) for p, s, q in X.edges])

    return ValenceAutomaton(
        owner, V.alphabet, V.n, V.initial, V.terminal,
        [(p, f(s), w, q) for p, s, w, q in V.edges], sa(V.X0), sa(V.X1),
    )


def to_group_automaton(V: ValenceAutomaton) -> ValenceAutomaton:
    """Plain G-automaton over the maximal subgroup G with the same language.

    The register of the result runs through g0 P g1 P ... gm (g')^-1 where
    (i0, g0, j0) is the chosen initial value and (i0, g', jm) the final one:
    the sub-automata C_ij guess g0, the copy of V indexed by (i0, ., j)
    multiplies in the sandwiched labels, and D_ij checks the inverse of g'.
    """
    S = V.owner
    if isinstance(S, FiniteSemigroup):
        try:
            dec = rees_decompose(S)
        except NotCompletelyZeroSimple as exc:
            raise NotCompletelySimpleOrZeroSimple(str(exc)) from None
        rees = dec.rees
        if not S.is_monoid and rees.is_monoid:
            rees = dataclasses.replace(rees, monoid=False)
        V = _translate(V, dec.iso.__getitem__, rees)
        S = rees
    if not isinstance(S, ReesMatrixSemigroup):
        raise NotCompletelySimpleOrZeroSimple("register is neither a Rees matrix semigroup nor a table")
    G = S.base
    if not (getattr(G, "finite", False) and getattr(G, "is_group", False)):
        raise NotCompletelySimpleOrZeroSimple("base must be a finite group")
    if S.with_zero and not is_regular_matrix(S.P):
        raise NotCompletelySimpleOrZeroSimple("sandwich matrix is not regular")
    C, D = V.X0, V.X1
    if S.with_zero and (ZERO in accepted_subset(C) or ZERO in accepted_subset(D)):
        raise ZeroInInitialOrTerminalSet("apply nozero_normalize first")

    A = V
    if not S.is_monoid and A.initial in A.terminal:
        A = _fresh_start(A)
    a_edges = [(p, s, w, q) for p, s, w, q in A.edges if s is not ZERO]
    labels = [s for _, s, _, _ in a_edges]
    labels += [s for _, s, _ in C.edges if s is not ZERO]
    labels += [s for _, s, _ in D.edges if s is not ZERO]
    rows = {x[0] for x in labels}
    cols = {x[2] for x in labels}
    if S.is_monoid and S.identity is not ZERO:
        rows.add(S.identity[0])
        cols.add(S.identity[2])
    rows, cols = sorted(rows), sorted(cols)
    row_idx = {r: k for k, r in enumerate(rows)}
    col_idx = {c: k for k, c in enumerate(cols)}
    Q = A.n
    one = G.identity

    def av(i, q, j):
        return 1 + (row_idx[i] * Q + q) * len(cols) + col_idx[j]

    n = 1 + len(rows) * Q * len(cols)
    edges = []
    terminal = set()
    for p, (i, g, j), w, q in a_edges:
        for i2 in rows:
            for j2 in cols:
                sandwich = S.P[j2][i]
                if sandwich is not ZERO:
                    edges.append((av(i2, p, j2), G.mul(sandwich, g), w, av(i2, q, j)))
    for i in rows:
        for j in cols:
            Cij = extract_component(C, i, j)
            off = n
            n += Cij.n
            edges += [(p + off, g, (), q + off) for p, g, q in Cij.edges]
            edges.append((0, one, (), Cij.initial + off))
            edges += [(f + off, one, (), av(i, A.initial, j)) for f in sorted(Cij.terminal)]
            Dij = invert_group_subset(extract_component(D, i, j))
            off = n
            n += Dij.n
            edges += [(p + off, g, (), q + off) for p, g, q in Dij.edges]
            edges += [(av(i, p, j), one, (), Dij.initial + off) for p in sorted(A.terminal)]
            terminal |= {f + off for f in Dij.terminal}
    return ValenceAutomaton.plain(G, V.alphabet, n, 0, terminal, edges)


def certify(V: ValenceAutomaton, W: ValenceAutomaton):
    """(equivalent?, counterexample word or None, dfa of V, dfa of W)."""
    from .regular import equivalent

    dv, dw = language_dfa(V), language_dfa(W)
    ok, witness = equivalent(dv, dw)
    return ok, witness, dv, dw


def to_dot(V: ValenceAutomaton, label=repr) -> str:
    lines = ["digraph V {", "  rankdir=LR;"]
    for q in range(V.n):
        shape = "doublecircle" if q in V.terminal else "circle"
        lines.append(f"  {q} [shape={shape}];")
    lines.append(f"  start [shape=point]; start -> {V.initial};")
    for p, s, w, q in V.edges:
        word = "".join(w) or "ε"
        lines.append(f'  {p} -> {q} [label="({label(s)}, {word})"];')
    lines.append("}")
    return "\n".join(lines)
