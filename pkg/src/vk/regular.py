"""Classical automata over a finite alphabet of string symbols.

This is the oracle substrate: every language-equality claim elsewhere in the
package is settled here by subset construction and product search.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional

from .errors import AlphabetMismatch


@dataclass(frozen=True, eq=False)
class Nfa:
    """States ``0..n-1``; ``delta`` maps (state, symbol or None) to targets.

    ``None`` is the epsilon symbol.  Several initial states are allowed.
    """

    n: int
    alphabet: tuple
    initial: frozenset
    accepting: frozenset
    delta: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(sorted(set(self.alphabet))))
        init = self.initial
        object.__setattr__(self, "initial", frozenset([init] if isinstance(init, int) else init))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        for (p, a), qs in self.delta.items():
            if not 0 <= p < self.n or any(not 0 <= q < self.n for q in qs):
                raise ValueError(f"transition from {p} on {a!r} leaves the state set")
            if a is not None and a not in self.alphabet:
                raise ValueError(f"symbol {a!r} not in alphabet")

    @classmethod
    def from_edges(cls, n, alphabet, initial, accepting, edges) -> "Nfa":
        delta = {}
        for p, a, q in edges:
            delta.setdefault((p, a), set()).add(q)
        return cls(n, alphabet, initial, accepting, {k: frozenset(v) for k, v in delta.items()})

    @cached_property
    def _closure(self) -> tuple:
        closures = []
        for s in range(self.n):
            seen = {s}
            todo = [s]
            while todo:
                p = todo.pop()
                for q in self.delta.get((p, None), ()):
                    if q not in seen:
                        seen.add(q)
                        todo.append(q)
            closures.append(frozenset(seen))
        return tuple(closures)

    def closure(self, states: Iterable[int]) -> frozenset:
        out = set()
        for s in states:
            out |= self._closure[s]
        return frozenset(out)

    def step(self, states: frozenset, a: str) -> frozenset:
        nxt = set()
        for p in states:
            nxt.update(self.delta.get((p, a), ()))
        return self.closure(nxt)

    def accepts(self, word) -> bool:
        cur = self.closure(self.initial)
        for a in word:
            cur = self.step(cur, a)
            if not cur:
                return False
        return bool(cur & self.accepting)


@dataclass(frozen=True, eq=False)
class Dfa:
    """Total DFA: ``delta[state][k]`` is the target on ``alphabet[k]``."""

    alphabet: tuple
    delta: tuple
    initial: int
    accepting: frozenset
    minimal: bool = False

    def __post_init__(self):
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "delta", tuple(tuple(row) for row in self.delta))
        for row in self.delta:
            if len(row) != len(self.alphabet):
                raise ValueError("DFA transition function is not total")

    @property
    def n(self) -> int:
        return len(self.delta)

    @cached_property
    def _sym(self) -> dict:
        return {a: k for k, a in enumerate(self.alphabet)}

    def accepts(self, word) -> bool:
        s = self.initial
        for a in word:
            k = self._sym.get(a)
            if k is None:
                return False
            s = self.delta[s][k]
        return s in self.accepting

    def to_nfa(self) -> Nfa:
        edges = [(p, a, self.delta[p][k]) for p in range(self.n) for k, a in enumerate(self.alphabet)]
        return Nfa.from_edges(self.n, self.alphabet, self.initial, self.accepting, edges)


def determinize(A: Nfa) -> Dfa:
    """Subset construction over reachable subsets; the empty set is the sink."""
    start = A.closure(A.initial)
    index = {start: 0}
    order = [start]
    delta = []
    k = 0
    while k < len(order):
        cur = order[k]
        row = []
        for a in A.alphabet:
            nxt = A.step(cur, a)
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
            row.append(index[nxt])
        delta.append(row)
        k += 1
    accepting = {i for i, s in enumerate(order) if s & A.accepting}
    return Dfa(A.alphabet, delta, 0, accepting)


def _as_dfa(A) -> Dfa:
    return A if isinstance(A, Dfa) else determinize(A)


def minimize(D: Dfa) -> Dfa:
    """Moore partition refinement over the reachable part.

    States of the result are numbered in BFS order from the initial state, so
    isomorphic minimal DFAs come out identical.
    """
    D = _as_dfa(D)
    reach = [D.initial]
    seen = {D.initial}
    for s in reach:
        for t in D.delta[s]:
            if t not in seen:
                seen.add(t)
                reach.append(t)
    block = {s: int(s in D.accepting) for s in reach}
    while True:
        sig = {s: (block[s],) + tuple(block[t] for t in D.delta[s]) for s in reach}
        ids = {}
        new = {s: ids.setdefault(sig[s], len(ids)) for s in reach}
        if len(ids) == len(set(block.values())):
            block = new
            break
        block = new
    # renumber blocks in BFS order
    order = {block[D.initial]: 0}
    rep = {block[D.initial]: D.initial}
    queue = [D.initial]
    for s in queue:
        for t in D.delta[s]:
            b = block[t]
            if b not in order:
                order[b] = len(order)
                rep[b] = t
                queue.append(t)
    delta = [None] * len(order)
    for b, i in order.items():
        delta[i] = [order[block[t]] for t in D.delta[rep[b]]]
    accepting = {order[block[s]] for s in reach if s in D.accepting}
    return Dfa(D.alphabet, delta, 0, accepting, minimal=True)


def equivalent(A, B):
    """(True, None) or (False, shortest distinguishing word as a tuple).

    BFS over the product of the two subset constructions, built lazily, so the
    first disagreement found is a shortest (then symbol-ordered) witness.
    """
    if tuple(sorted(A.alphabet)) != tuple(sorted(B.alphabet)):
        raise AlphabetMismatch(f"{A.alphabet} vs {B.alphabet}")
    alphabet = tuple(sorted(A.alphabet))
    sa, acc_a, step_a = _lazy(A)
    sb, acc_b, step_b = _lazy(B)
    start = (sa, sb)
    parent = {start: None}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        x, y = pair
        if acc_a(x) != acc_b(y):
            word = []
            while parent[pair] is not None:
                pair, a = parent[pair]
                word.append(a)
            return False, tuple(reversed(word))
        for a in alphabet:
            nxt = (step_a(x, a), step_b(y, a))
            if nxt not in parent:
                parent[nxt] = (pair, a)
                queue.append(nxt)
    return True, None


def _lazy(A):
    if isinstance(A, Dfa):
        sym = A._sym
        return A.initial, A.accepting.__contains__, lambda s, a: A.delta[s][sym[a]]
    cache = {}

    def step(s, a):
        key = (s, a)
        if key not in cache:
            cache[key] = A.step(s, a)
        return cache[key]

    return A.closure(A.initial), (lambda s: bool(s & A.accepting)), step


def enumerate_words(A, max_len: int) -> list:
    """Accepted words of length <= max_len in length-lexicographic order."""
    alphabet = tuple(sorted(A.alphabet))
    out = []
    if isinstance(A, Dfa):
        layer = [((), A.initial)]
        acc = A.accepting.__contains__
        step = lambda s, a: A.delta[s][A._sym[a]]
    else:
        layer = [((), A.closure(A.initial))]
        acc = lambda s: bool(s & A.accepting)
        step = A.step
    for length in range(max_len + 1):
        out.extend(w for w, s in layer if acc(s))
        if length == max_len:
            break
        layer = [(w + (a,), step(s, a)) for w, s in layer for a in alphabet]
    return out


def empty_dfa(alphabet) -> Dfa:
    alphabet = tuple(sorted(set(alphabet)))
    return Dfa(alphabet, [[0] * len(alphabet)], 0, (), minimal=True)


def to_dot(A, name: str = "A") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    if isinstance(A, Dfa):
        for s in range(A.n):
            shape = "doublecircle" if s in A.accepting else "circle"
            lines.append(f'  {s} [shape={shape}];')
        lines.append(f"  start [shape=point]; start -> {A.initial};")
        for s in range(A.n):
            for k, a in enumerate(A.alphabet):
                lines.append(f'  {s} -> {A.delta[s][k]} [label="{a}"];')
    else:
        for s in range(A.n):
            shape = "doublecircle" if s in A.accepting else "circle"
            lines.append(f'  {s} [shape={shape}];')
        for s in sorted(A.initial):
            lines.append(f"  start{s} [shape=point]; start{s} -> {s};")
        for (p, a), qs in sorted(A.delta.items(), key=lambda kv: (kv[0][0], kv[0][1] or "")):
            for q in sorted(qs):
                lines.append(f'  {p} -> {q} [label="{a if a is not None else "ε"}"];')
    lines.append("}")
    return "\n".join(lines)
