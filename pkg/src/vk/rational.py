"""Finite automata over a semigroup S, read as rational subsets of S.

An ``SAutomaton`` has vertices ``0..n-1``, one initial vertex, a set of
terminal vertices and edges ``(p, s, q)`` labelled by elements of its owner.
It accepts the products of labels along initial-to-terminal paths; the
empty path (contributing the identity) counts only when the owner is used
as a monoid.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import (
    BackendNotFinite,
    HypothesisFails,
    IndexOutOfRange,
    NotAGroup,
    OwnerMismatch,
    UndecidableBase,
)
from .rees import ZERO, ReesMatrixSemigroup

DEFAULT_PATH_BOUND = 64


@dataclass(frozen=True, eq=False)
class SAutomaton:
    owner: object
    n: int
    initial: int
    terminal: frozenset
    edges: tuple  # (p, s, q)

    def __post_init__(self):
        object.__setattr__(self, "terminal", frozenset(self.terminal))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if not 0 <= self.initial < self.n:
            raise IndexOutOfRange(f"initial vertex {self.initial} out of range")
        for q in self.terminal:
            if not 0 <= q < self.n:
                raise IndexOutOfRange(f"terminal vertex {q} out of range")
        for p, s, q in self.edges:
            if not (0 <= p < self.n and 0 <= q < self.n):
                raise IndexOutOfRange(f"edge ({p}, {s!r}, {q}) leaves the vertex set")
            if not self.owner.contains(s):
                raise IndexOutOfRange(f"edge label {s!r} is not an element of the owner")

    @classmethod
    def from_elements(cls, owner, elements: Iterable) -> "SAutomaton":
        """One edge per element from the start to a single terminal vertex."""
        return cls(owner, 2, 0, {1}, [(0, x, 1) for x in dict.fromkeys(elements)])

    @classmethod
    def empty(cls, owner) -> "SAutomaton":
        return cls(owner, 1, 0, (), ())

    @cached_property
    def out_edges(self) -> tuple:
        out = [[] for _ in range(self.n)]
        for p, s, q in self.edges:
            out[p].append((s, q))
        return tuple(tuple(o) for o in out)

    @property
    def accepts_empty_path(self) -> bool:
        return self.owner.is_monoid and self.initial in self.terminal

    @cached_property
    def subset(self) -> frozenset:
        return accepted_subset(self)

    def __contains__(self, x) -> bool:
        return member(self, x) is True


def _require_finite(S):
    if not getattr(S, "finite", False):
        raise BackendNotFinite(f"{S!r} is not finite")


def accepted_subset(A: SAutomaton) -> frozenset:
    """Exact accepted set over a finite owner, by saturating (vertex, value) pairs."""
    S = A.owner
    _require_finite(S)
    if "subset" in A.__dict__:
        return A.__dict__["subset"]
    out = A.out_edges
    seen = set()
    todo = deque()
    for s, q in out[A.initial]:
        if (q, s) not in seen:
            seen.add((q, s))
            todo.append((q, s))
    while todo:
        p, x = todo.popleft()
        for s, q in out[p]:
            y = (q, S.mul(x, s))
            if y not in seen:
                seen.add(y)
                todo.append(y)
    result = {x for q, x in seen if q in A.terminal}
    if A.accepts_empty_path:
        result.add(S.identity)
    return frozenset(result)


def enumerate_bounded(A: SAutomaton, max_len: int = DEFAULT_PATH_BOUND):
    """Accepted values along paths of length <= max_len.

    Returns ``(values, complete)``; ``complete`` is True when no path longer
    than ``max_len`` could contribute anything new (the search frontier died).
    """
    S = A.owner
    out = A.out_edges
    values = {S.identity} if A.accepts_empty_path else set()
    frontier = {(q, s) for s, q in out[A.initial]}
    seen = set(frontier)
    for _ in range(max_len):
        if not frontier:
            return frozenset(values), True
        values.update(x for q, x in frontier if q in A.terminal)
        nxt = set()
        for p, x in frontier:
            for s, q in out[p]:
                y = (q, S.mul(x, s))
                if y not in seen:
                    seen.add(y)
                    nxt.add(y)
        frontier = nxt
    return frozenset(values), not frontier


def member(A: SAutomaton, x, max_len: int = DEFAULT_PATH_BOUND) -> Optional[bool]:
    """Membership of x; exact for finite owners, else bounded (None = unknown)."""
    S = A.owner
    if getattr(S, "finite", False):
        return x in accepted_subset(A)
    if A.accepts_empty_path and x == S.identity:
        return True
    out = A.out_edges
    frontier = {(q, s) for s, q in out[A.initial]}
    seen = set(frontier)
    for _ in range(max_len):
        if not frontier:
            return False
        if any(q in A.terminal and v == x for q, v in frontier):
            return True
        nxt = set()
        for p, v in frontier:
            for s, q in out[p]:
                y = (q, S.mul(v, s))
                if y not in seen:
                    seen.add(y)
                    nxt.add(y)
        frontier = nxt
    if not frontier:
        return False
    return None


# --- combinators ---------------------------------------------------------


def _same_owner(X, Y):
    if not (X.owner is Y.owner or X.owner == Y.owner):
        raise OwnerMismatch("automata live over different semigroups")


def _shifted(A: SAutomaton, offset: int):
    return [(p + offset, s, q + offset) for p, s, q in A.edges]


def combine(X: SAutomaton, Y: Optional[SAutomaton], op: str) -> SAutomaton:
    """Automaton for X | Y, X . Y, or the closure X+ (X* for monoid owners)."""
    S = X.owner
    if op == "star":
        return _star(X)
    _same_owner(X, Y)
    m = X.n
    edges = _shifted(X, 0) + _shifted(Y, m)
    if op == "union":
        start = m + Y.n
        edges += [(start, s, q) for s, q in X.out_edges[X.initial]]
        edges += [(start, s, q + m) for s, q in Y.out_edges[Y.initial]]
        terminal = set(X.terminal) | {q + m for q in Y.terminal}
        if X.accepts_empty_path or Y.accepts_empty_path:
            terminal.add(start)
        return SAutomaton(S, start + 1, start, terminal, edges)
    if op == "product":
        if S.is_monoid:
            edges += [(f, S.identity, Y.initial + m) for f in X.terminal]
            return SAutomaton(S, m + Y.n, X.initial, {q + m for q in Y.terminal}, edges)
        # fresh copy of Y's start so that Y contributes a non-empty path
        y0 = m + Y.n
        edges += [(y0, s, q + m) for s, q in Y.out_edges[Y.initial]]
        edges += [(p, s, y0) for p, s, q in X.edges if q in X.terminal]
        return SAutomaton(S, y0 + 1, X.initial, {q + m for q in Y.terminal}, edges)
    raise ValueError(f"unknown combinator {op!r}")


def _star(X: SAutomaton) -> SAutomaton:
    S = X.owner
    edges = list(X.edges) + [(p, s, X.initial) for p, s, q in X.edges if q in X.terminal]
    if not S.is_monoid:
        return SAutomaton(S, X.n, X.initial, X.terminal, edges)
    start = X.n
    edges.append((start, S.identity, X.initial))
    return SAutomaton(S, X.n + 1, start, set(X.terminal) | {start}, edges)


def invert_group_subset(X: SAutomaton) -> SAutomaton:
    """Reverse every edge and invert its label; accepts exactly X^-1."""
    G = X.owner
    if not getattr(G, "is_group", False):
        raise NotAGroup("inversion needs a group owner")
    start = X.n
    edges = [(q, G.inverse(s), p) for p, s, q in X.edges]
    edges += [(start, G.inverse(s), p) for p, s, q in X.edges if q in X.terminal]
    terminal = {X.initial}
    if X.accepts_empty_path:
        terminal.add(start)
    return SAutomaton(G, X.n + 1, start, terminal, edges)


# --- Rees matrix semigroups ---------------------------------------------


def _require_rees(S):
    if not isinstance(S, ReesMatrixSemigroup):
        raise OwnerMismatch("expected an automaton over a Rees matrix semigroup")


def extract_component(A: SAutomaton, i: int, j: int) -> SAutomaton:
    """Automaton over the base accepting {t : (i, t, j) in L(A)}.

    Vertices are a fresh start plus pairs (q, j') where j' ranges over the
    third coordinates occurring in A; the pair remembers the column of the
    last label so that the next edge can be multiplied by the sandwich entry.
    """
    S = A.owner
    _require_rees(S)
    if not (0 <= i < S.n_i and 0 <= j < S.n_j):
        raise IndexOutOfRange(f"({i}, {j}) outside the index sets")
    T = S.base
    edges_nz = [(p, s, q) for p, s, q in A.edges if s is not ZERO]
    cols = sorted({s[2] for _, s, _ in edges_nz} | {j})
    col_idx = {c: k for k, c in enumerate(cols)}
    width = len(cols)

    def v(q, c):
        return 1 + q * width + col_idx[c]

    n = 1 + A.n * width
    edges = []
    for p, (i1, t1, j1), q in edges_nz:
        if p == A.initial and i1 == i:
            edges.append((0, t1, v(q, j1)))
    for p, (i2, t2, j2), q in edges_nz:
        for c in cols:
            sandwich = S.P[c][i2]
            if sandwich is not ZERO:
                edges.append((v(p, c), T.mul(sandwich, t2), v(q, j2)))
    terminal = {v(q, j) for q in A.terminal}
    if A.accepts_empty_path:
        e = S.identity
        if e is not ZERO and e[0] == i and e[2] == j:
            edges.append((0, e[1], n))
            terminal.add(n)
            n += 1
    return SAutomaton(T, n, 0, terminal, edges)


def lift_subset(X: SAutomaton, i: int, j: int, S: ReesMatrixSemigroup) -> SAutomaton:
    """Automaton over S accepting {(i, t, j) : t in L(X)}.

    Needs every label t of X to factor as P_{j_t i_t} s_t (T = P'T) or, failing
    that, as s_t P_{j_t i_t} (T = TP').  Factors are found with the group
    formula for group bases and by exhaustive search for finite bases.
    """
    _require_rees(S)
    T = S.base
    if not (X.owner is T or X.owner == T):
        raise OwnerMismatch("X must live over the base of S")
    if not (0 <= i < S.n_i and 0 <= j < S.n_j):
        raise IndexOutOfRange(f"({i}, {j}) outside the index sets")
    labels = list(dict.fromkeys(s for _, s, _ in X.edges))
    left = _factorizations(S, labels, side="left")
    if left is not None:
        return _lift_left(X, i, j, S, left)
    right = _factorizations(S, labels, side="right")
    if right is not None:
        return _lift_right(X, i, j, S, right)
    raise HypothesisFails("some edge label has no factorization through the sandwich entries")


def _factorizations(S, labels, side):
    T = S.base
    entries = [
        (jj, ii, S.P[jj][ii])
        for jj in range(S.n_j) for ii in range(S.n_i)
        if S.P[jj][ii] is not ZERO
    ]
    out = {}
    for t in labels:
        found = None
        for jj, ii, p in entries:
            if getattr(T, "is_group", False):
                s = T.mul(T.inverse(p), t) if side == "left" else T.mul(t, T.inverse(p))
                found = (jj, ii, s)
                break
            if not T.finite:
                break
            for s in T.elements():
                if (T.mul(p, s) if side == "left" else T.mul(s, p)) == t:
                    found = (jj, ii, s)
                    break
            if found:
                break
        if found is None:
            return None
        out[t] = found
    return out


def _lift_left(X, i, j, S, fac):
    cols = sorted({fac[s][0] for _, s, _ in X.edges} | {j})
    col_idx = {c: k for k, c in enumerate(cols)}
    width = len(cols)

    def v(q, c):
        return 1 + q * width + col_idx[c]

    edges = []
    for p, t, q in X.edges:
        jt, it, st = fac[t]
        for c in cols:
            if p == X.initial:
                edges.append((0, (i, t, c), v(q, c)))
            edges.append((v(p, jt), (it, st, c), v(q, c)))
    terminal = {v(q, j) for q in X.terminal}
    n = 1 + X.n * width
    return _with_identity(X, i, j, S, n, edges, terminal)


def _lift_right(X, i, j, S, fac):
    rows = sorted({fac[s][1] for _, s, _ in X.edges} | {i})
    row_idx = {r: k for k, r in enumerate(rows)}
    width = len(rows)
    fin = 1 + X.n * width

    def v(q, r):
        return 1 + q * width + row_idx[r]

    edges = []
    for p, t, q in X.edges:
        jt, it, st = fac[t]
        sources = [(v(p, r), r) for r in rows]
        if p == X.initial:
            sources.append((0, i))
        for src, r in sources:
            edges.append((src, (r, st, jt), v(q, it)))
            if q in X.terminal:
                edges.append((src, (r, t, j), fin))
    return _with_identity(X, i, j, S, fin + 1, edges, {fin})


def _with_identity(X, i, j, S, n, edges, terminal):
    # the empty path of X contributes (i, 1, j), which S can only reach by an edge
    if X.accepts_empty_path:
        edges.append((0, (i, X.owner.identity, j), n))
        terminal = set(terminal) | {n}
        n += 1
    return SAutomaton(S, n, 0, terminal, edges)


def drop_zero(A: SAutomaton) -> SAutomaton:
    """Automaton over the same Rees semigroup accepting L(A) minus {0}.

    Tracks the column of the last label and only allows edges whose junction
    with it has a non-zero sandwich entry, so every surviving path has a
    non-zero product.
    """
    S = A.owner
    _require_rees(S)
    edges_nz = [(p, s, q) for p, s, q in A.edges if s is not ZERO]
    cols = sorted({s[2] for _, s, _ in edges_nz})
    col_idx = {c: k for k, c in enumerate(cols)}
    width = max(len(cols), 1)

    def v(q, c):
        return 1 + q * width + col_idx[c]

    edges = []
    for p, s, q in edges_nz:
        if p == A.initial:
            edges.append((0, s, v(q, s[2])))
        for c in cols:
            if S.P[c][s[0]] is not ZERO:
                edges.append((v(p, c), s, v(q, s[2])))
    terminal = {v(q, c) for q in A.terminal for c in cols}
    n = 1 + A.n * width
    if A.accepts_empty_path and S.identity is not ZERO:
        edges.append((0, S.identity, n))
        terminal.add(n)
        n += 1
    return SAutomaton(S, n, 0, terminal, edges)


def contains_zero(A: SAutomaton) -> bool:
    """Whether 0 is accepted, decided from the sandwich zero pattern alone."""
    S = A.owner
    _require_rees(S)
    if not S.with_zero:
        return False
    if A.accepts_empty_path and S.identity is ZERO:
        return True
    start = ("start",)
    seen = {(A.initial, start)}
    todo = [(A.initial, start)]
    while todo:
        p, c = todo.pop()
        if c is ZERO and p in A.terminal:
            return True
        for s, q in A.out_edges[p]:
            if c is ZERO or s is ZERO:
                nxt = ZERO
            elif c is start:
                nxt = s[2]
            else:
                nxt = ZERO if S.P[c][s[0]] is ZERO else s[2]
            if (q, nxt) not in seen:
                seen.add((q, nxt))
                todo.append((q, nxt))
    return False


def intersect_max_subgroup(X: SAutomaton, i: int, j: int) -> SAutomaton:
    """Automaton over the base group accepting P_ji X_ij.

    Mapping its accepted set through g -> (i, P_ji^-1 g, j) gives X n H_ij.
    """
    from .rees import max_subgroup_coords

    S = X.owner
    _require_rees(S)
    max_subgroup_coords(S, i, j)  # raises for zero sandwich entries
    p = S.P[j][i]
    Y = extract_component(X, i, j)
    G = S.base
    start = Y.n
    edges = list(Y.edges) + [(start, G.mul(p, s), q) for s, q in Y.out_edges[Y.initial]]
    terminal = set(Y.terminal)
    if Y.accepts_empty_path:
        edges.append((start, p, start + 1))
        terminal.add(start + 1)
    return SAutomaton(G, start + 2, start, terminal, edges)


def set_difference(X0, X1, S=None) -> frozenset:
    """{x : x0 x = x1 for some x0 in X0, x1 in X1}, by enumeration."""
    if isinstance(X0, SAutomaton):
        S = X0.owner
        X0 = accepted_subset(X0)
    if isinstance(X1, SAutomaton):
        S = X1.owner
        X1 = accepted_subset(X1)
    if S is None:
        raise ValueError("owner semigroup required for explicit subsets")
    _require_finite(S)
    X1 = frozenset(X1)
    return frozenset(x for x in S.elements() if any(S.mul(x0, x) in X1 for x0 in X0))


def member_rees(S: ReesMatrixSemigroup, word: Sequence, X: SAutomaton, sigma=None,
                max_len: int = DEFAULT_PATH_BOUND) -> bool:
    """Decide whether the element spelled by ``word`` lies in L(X).

    ``sigma`` maps generator symbols to elements of S (identity map when
    omitted).  Zero products are detected from the sandwich pattern; otherwise
    the word folds to (i, t, j) and t is tested against the (i, j) component of
    X in the base.
    """
    _require_rees(S)
    if not (X.owner is S or X.owner == S):
        raise OwnerMismatch("X must live over S")
    if not word:
        raise ValueError("words over generators must be non-empty")
    elems = [sigma[a] if sigma is not None else a for a in word]
    if _represents_zero(S, elems):
        return contains_zero(X)
    T = S.base
    i0, t, j = elems[0]
    for i2, t2, j2 in elems[1:]:
        t = T.mul(T.mul(t, S.P[j][i2]), t2)
        j = j2
    answer = member(extract_component(X, i0, j), t, max_len)
    if answer is None:
        raise UndecidableBase(f"bounded search for {t!r} in the base was inconclusive")
    return answer


def _represents_zero(S, elems) -> bool:
    if any(x is ZERO for x in elems):
        return True
    return any(S.P[a[2]][b[0]] is ZERO for a, b in zip(elems, elems[1:]))
