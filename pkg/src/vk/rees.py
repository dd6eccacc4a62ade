"""Rees matrix semigroups M(T; I, J; P) and M0(T; I, J; P).

Elements are triples ``(i, t, j)`` with ``i < n_i``, ``j < n_j`` and ``t`` a
base element, or the sentinel ``ZERO``.  The sandwich matrix is indexed
``P[j][i]`` (rows by J, columns by I) and may contain ``ZERO`` entries when
the semigroup has a zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, NamedTuple, Optional

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    NotAGroup,
    NotCompletelyZeroSimple,
    ZeroEntryInMatrixWithoutZero,
    ZeroSandwichEntry,
)
from .semigroup import (
    FiniteSemigroup,
    classify,
    green_relations,
    maximal_subgroup_at,
    validate_table,
)


class _Zero:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZERO"

    def __reduce__(self):
        return (_Zero, ())

    def __lt__(self, other):
        return not isinstance(other, _Zero)


ZERO = _Zero()


@dataclass(frozen=True, eq=False)
class ReesMatrixSemigroup:
    base: object
    n_i: int
    n_j: int
    P: tuple  # P[j][i]
    with_zero: bool
    monoid: Optional[bool] = None

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, ReesMatrixSemigroup):
            return NotImplemented
        return (self.base, self.n_i, self.n_j, self.P, self.with_zero, self.is_monoid) == (
            other.base, other.n_i, other.n_j, other.P, other.with_zero, other.is_monoid)

    def __hash__(self):
        return hash((self.n_i, self.n_j, self.P, self.with_zero))

    def __repr__(self):
        kind = "M0" if self.with_zero else "M"
        return f"{kind}({self.base!r}; {self.n_i}, {self.n_j}; {self.P})"

    @property
    def finite(self) -> bool:
        return self.base.finite

    @property
    def zero(self):
        return ZERO if self.with_zero else None

    def mul(self, x, y):
        if x is ZERO or y is ZERO:
            return ZERO
        i, t, j = x
        i2, t2, j2 = y
        p = self.P[j][i2]
        if p is ZERO:
            return ZERO
        b = self.base
        return (i, b.mul(b.mul(t, p), t2), j2)

    def contains(self, x) -> bool:
        if x is ZERO:
            return self.with_zero
        return (
            isinstance(x, tuple) and len(x) == 3
            and 0 <= x[0] < self.n_i and 0 <= x[2] < self.n_j
            and self.base.contains(x[1])
        )

    def elements(self):
        out = [
            (i, t, j)
            for i in range(self.n_i)
            for t in self.base.elements()
            for j in range(self.n_j)
        ]
        if self.with_zero:
            out.append(ZERO)
        return out

    @cached_property
    def _materialized(self):
        elems = self.elements()
        index = {x: k for k, x in enumerate(elems)}
        table = [[index[self.mul(x, y)] for y in elems] for x in elems]
        return validate_table(table, [element_label(self, x) for x in elems]), elems, index

    def materialize(self):
        """(FiniteSemigroup, element list, element -> index) for finite bases."""
        return self._materialized

    @cached_property
    def identity(self):
        if not self.finite:
            return None
        T, elems, _ = self._materialized
        return None if T.identity is None else elems[T.identity]

    @property
    def is_monoid(self) -> bool:
        return self.identity is not None and self.monoid is not False

    is_group = False

    def inverse(self, x):
        raise NotAGroup("Rees matrix semigroups are not treated as groups")

    def sandwich(self, j, i):
        return self.P[j][i]


def element_label(S: ReesMatrixSemigroup, x) -> str:
    if x is ZERO:
        return "0"
    i, t, j = x
    lab = S.base.label(t) if hasattr(S.base, "label") else str(t)
    return f"({i},{lab},{j})"


def rees_multiply(S: ReesMatrixSemigroup, x, y):
    return S.mul(x, y)


def build_rees(base, n_i: int, n_j: int, P, with_zero: bool, monoid=None) -> ReesMatrixSemigroup:
    """Construct and, for finite bases, materialize and validate the table."""
    if n_i < 1 or n_j < 1:
        raise DimensionMismatch("index sets must be non-empty")
    P = tuple(tuple(ZERO if _is_zero_token(p) else p for p in row) for row in P)
    if len(P) != n_j or any(len(row) != n_i for row in P):
        raise DimensionMismatch(f"sandwich matrix must be {n_j}x{n_i} (rows J, columns I)")
    for row in P:
        for p in row:
            if p is ZERO:
                if not with_zero:
                    raise ZeroEntryInMatrixWithoutZero("zero entry in a Rees matrix semigroup without zero")
            elif not base.contains(p):
                raise IndexOutOfRange(f"sandwich entry {p!r} is not a base element")
    S = ReesMatrixSemigroup(base, n_i, n_j, P, with_zero, monoid)
    if S.finite:
        S.materialize()
    return S


def _is_zero_token(p) -> bool:
    return p is ZERO or (isinstance(p, str) and p == "0")


def is_regular_matrix(P) -> bool:
    rows = [[p for p in row] for row in P]
    if not rows or not rows[0]:
        return False
    nonzero_row = all(any(not _is_zero_token(p) for p in row) for row in rows)
    nonzero_col = all(any(not _is_zero_token(row[i]) for row in rows) for i in range(len(rows[0])))
    return nonzero_row and nonzero_col


class MaxSubgroup(NamedTuple):
    i: int
    j: int
    group: object
    phi: Callable
    phi_inv: Callable

    def elements(self):
        return [self.phi(g) for g in self.group.elements()]


def max_subgroup_coords(S: ReesMatrixSemigroup, i: int, j: int) -> MaxSubgroup:
    """The group H = {(i, g, j)} with g -> (i, P_ji^-1 g, j) as isomorphism."""
    G = S.base
    if not getattr(G, "is_group", False):
        raise NotAGroup("maximal subgroup coordinates need a group base")
    if not (0 <= i < S.n_i and 0 <= j < S.n_j):
        raise IndexOutOfRange(f"({i}, {j}) outside the index sets")
    p = S.P[j][i]
    if p is ZERO:
        raise ZeroSandwichEntry(f"P[{j}][{i}] is zero; that H-class is not a group")
    p_inv = G.inverse(p)

    def phi(g):
        return (i, G.mul(p_inv, g), j)

    def phi_inv(x):
        if x is ZERO or x[0] != i or x[2] != j:
            raise IndexOutOfRange(f"{x!r} is not in H_{i}{j}")
        return G.mul(p, x[1])

    return MaxSubgroup(i, j, G, phi, phi_inv)


class Decomposition(NamedTuple):
    rees: ReesMatrixSemigroup
    iso: dict  # S element -> Rees element
    inverse: dict  # Rees element -> S element


def rees_decompose(S: FiniteSemigroup) -> Decomposition:
    """Rees coordinates for a finite completely simple or completely 0-simple S.

    I indexes the R-classes and J the L-classes of the non-zero part; the base
    is the maximal subgroup at a chosen idempotent e.  Representatives are
    picked so that the first row and first column of P are the identity
    wherever they are non-zero.
    """
    kind = classify(S).kind
    z = S.zero
    if kind == "neither":
        raise NotCompletelyZeroSimple("semigroup has a proper non-zero ideal")
    if kind == "simple":
        z = None
    nonzero = [x for x in S.elements() if x != z]
    idem = sorted(e for e in S.idempotents if e != z)
    if not idem:
        raise NotCompletelyZeroSimple("no non-zero idempotent")
    if not any(_primitive(S, e, z) for e in idem):
        raise NotCompletelyZeroSimple("no primitive idempotent")

    green = green_relations(S)
    Rs = [c for c in green.R if z not in c]
    Ls = [c for c in green.L if z not in c]
    e = idem[0]
    # put the classes of e first so its H-class sits at (0, 0)
    Rs.sort(key=lambda c: (e not in c, min(c)))
    Ls.sort(key=lambda c: (e not in c, min(c)))
    R_of = {x: k for k, c in enumerate(Rs) for x in c}
    L_of = {x: k for k, c in enumerate(Ls) for x in c}

    sub = maximal_subgroup_at(S, e)
    G, emb = sub.group, sub.embedding
    to_G = {x: k for k, x in enumerate(emb)}

    def h_class(r, l):
        return [x for x in nonzero if R_of[x] == r and L_of[x] == l]

    # r[i] in H(i, 0) with e*r[i] = e when that product is non-zero
    r = []
    for i in range(len(Rs)):
        cand = h_class(i, 0)[0] if i else e
        prod = S.mul(e, cand)
        if prod != z and i:
            cand = S.mul(cand, emb[G.inverse(to_G[prod])])
        r.append(cand)
    # q[l] in H(0, l) with q[l]*e = e when that product is non-zero
    q = []
    for l in range(len(Ls)):
        cand = h_class(0, l)[0] if l else e
        prod = S.mul(cand, e)
        if prod != z and l:
            cand = S.mul(emb[G.inverse(to_G[prod])], cand)
        q.append(cand)

    P = []
    for l in range(len(Ls)):
        row = []
        for i in range(len(Rs)):
            p = S.mul(q[l], r[i])
            if p == z:
                row.append(ZERO)
            elif p in to_G:
                row.append(to_G[p])
            else:
                raise NotCompletelyZeroSimple("sandwich product left the base group")
        P.append(tuple(row))

    rees = build_rees(G, len(Rs), len(Ls), P, with_zero=z is not None)
    iso = {}
    for i in range(len(Rs)):
        for l in range(len(Ls)):
            for g in G.elements():
                x = S.mul(S.mul(r[i], emb[g]), q[l])
                iso[x] = (i, g, l)
    if z is not None:
        iso[z] = ZERO
    inverse = {v: k for k, v in iso.items()}
    if len(iso) != len(S) or len(inverse) != len(S):
        raise NotCompletelyZeroSimple("coordinate map is not a bijection")
    for x in S.elements():
        for y in S.elements():
            if iso[S.mul(x, y)] != rees.mul(iso[x], iso[y]):
                raise NotCompletelyZeroSimple("coordinate map is not a homomorphism")
    return Decomposition(rees, iso, inverse)


def _primitive(S, e, z) -> bool:
    for f in S.idempotents:
        if f != z and S.mul(e, f) == f and S.mul(f, e) == f and f != e:
            return False
    return True
