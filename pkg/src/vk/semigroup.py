"""Finite semigroups given by multiplication tables, plus two computable
infinite backends (the integers under addition and the bicyclic monoid).

Every semigroup object in the package exposes the same small duck-typed
surface, which the automaton code relies on:

    finite      -- True when ``elements()`` enumerates everything
    mul(x, y)   -- the product
    identity    -- identity element or None
    is_monoid   -- whether empty paths count (identity present and not disabled)
    is_group    -- whether ``inverse`` is available
    contains(x) -- element validity
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .errors import (
    AssociativityViolation,
    BackendNotFinite,
    EmptyGeneratorSet,
    HClassNotGroup,
    IndexOutOfRange,
    NotAGroup,
    NotAMonoid,
    NotAnIdeal,
    NotIdempotent,
)


@dataclass(frozen=True, eq=False)
class FiniteSemigroup:
    """Semigroup on ``0..n-1`` with ``table[x][y] == x*y``.

    ``monoid=False`` keeps the table but switches off empty-path semantics,
    i.e. the semigroup is used as a plain semigroup even if it has an identity.
    """

    table: tuple
    labels: Optional[tuple] = None
    monoid: Optional[bool] = None

    finite = True

    def __post_init__(self):
        table = tuple(tuple(int(v) for v in row) for row in self.table)
        object.__setattr__(self, "table", table)
        n = len(table)
        for row in table:
            if len(row) != n:
                raise IndexOutOfRange("multiplication table is not square")
            for v in row:
                if not 0 <= v < n:
                    raise IndexOutOfRange(f"table entry {v} outside [0, {n})")
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != n:
                raise IndexOutOfRange("label count does not match table size")
            object.__setattr__(self, "labels", labels)
        if self.monoid and self.identity is None:
            raise NotAMonoid("monoid=True but the table has no identity")

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FiniteSemigroup):
            return NotImplemented
        return self.table == other.table and self.is_monoid == other.is_monoid

    def __hash__(self):
        return hash((self.table, self.is_monoid))

    def __repr__(self):
        return f"FiniteSemigroup(n={self.n})"

    @property
    def n(self) -> int:
        return len(self.table)

    def __len__(self):
        return len(self.table)

    def elements(self):
        return range(len(self.table))

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def contains(self, x) -> bool:
        return isinstance(x, (int, np.integer)) and 0 <= x < len(self.table)

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    def product(self, xs: Sequence[int]) -> int:
        it = iter(xs)
        acc = next(it)
        for x in it:
            acc = self.table[acc][x]
        return acc

    @cached_property
    def identity(self) -> Optional[int]:
        n = len(self.table)
        for e in range(n):
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n)):
                return e
        return None

    @cached_property
    def zero(self) -> Optional[int]:
        n = len(self.table)
        for z in range(n):
            if all(self.table[z][x] == z and self.table[x][z] == z for x in range(n)):
                return z
        return None

    @property
    def is_monoid(self) -> bool:
        return self.identity is not None and self.monoid is not False

    @cached_property
    def idempotents(self) -> frozenset:
        return frozenset(x for x in range(len(self.table)) if self.table[x][x] == x)

    @cached_property
    def _inverses(self) -> Optional[tuple]:
        e = self.identity
        if e is None:
            return None
        inv = []
        for x in range(len(self.table)):
            for y in range(len(self.table)):
                if self.table[x][y] == e and self.table[y][x] == e:
                    inv.append(y)
                    break
            else:
                return None
        return tuple(inv)

    @property
    def is_group(self) -> bool:
        return self._inverses is not None

    def inverse(self, x: int) -> int:
        if self._inverses is None:
            raise NotAGroup("semigroup is not a group")
        return self._inverses[x]

    def as_semigroup(self) -> "FiniteSemigroup":
        """Same table, empty paths no longer accepted."""
        return FiniteSemigroup(self.table, self.labels, monoid=False)

    def to_json(self) -> dict:
        d = {"n": self.n, "table": [list(r) for r in self.table]}
        if self.labels:
            d["labels"] = list(self.labels)
        return d


def validate_table(table, labels=None) -> FiniteSemigroup:
    """Check closure and associativity, raising on the first bad triple."""
    arr = np.asarray(table)
    if arr.size == 0:
        raise IndexOutOfRange("empty table")
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise IndexOutOfRange("multiplication table is not square")
    if not np.issubdtype(arr.dtype, np.integer):
        raise IndexOutOfRange("table entries must be integers")
    n = arr.shape[0]
    bad = np.argwhere((arr < 0) | (arr >= n))
    if len(bad):
        x, y = bad[0]
        raise IndexOutOfRange(f"table[{x}][{y}] = {arr[x, y]} outside [0, {n})")
    # left[x, y, z] = (xy)z, right[x, y, z] = x(yz)
    left = arr[arr]
    right = arr[:, arr]
    bad = np.argwhere(left != right)
    if len(bad):
        raise AssociativityViolation(*(int(v) for v in bad[0]))
    return FiniteSemigroup(tuple(map(tuple, arr.tolist())), labels)


class Distinguished(NamedTuple):
    identity: Optional[int]
    zero: Optional[int]
    idempotents: frozenset


def distinguished_elements(S: FiniteSemigroup) -> Distinguished:
    return Distinguished(S.identity, S.zero, S.idempotents)


class Adjoined(NamedTuple):
    semigroup: FiniteSemigroup
    new: int
    back_map: tuple


def adjoin(S: FiniteSemigroup, kind: str) -> Adjoined:
    """Append a fresh zero or identity, even if S already has one."""
    n = S.n
    if kind == "zero":
        rows = [list(r) + [n] for r in S.table] + [[n] * (n + 1)]
        name = "0"
    elif kind == "identity":
        rows = [list(r) + [x] for x, r in enumerate(S.table)] + [list(range(n + 1))]
        name = "1"
    else:
        raise ValueError(f"unknown adjoin kind {kind!r}")
    labels = None
    if S.labels:
        labels = S.labels + (name if name not in S.labels else name + "'",)
    return Adjoined(FiniteSemigroup(tuple(map(tuple, rows)), labels), n, tuple(range(n)))


def _require_finite(S):
    if not getattr(S, "finite", False):
        raise BackendNotFinite(f"{S!r} does not support exhaustive algorithms")


def ideal_generated(S, X) -> frozenset:
    """Least ideal containing X, by closing under left and right multiplication."""
    _require_finite(S)
    X = set(X)
    if not X:
        raise EmptyGeneratorSet("ideal needs at least one generator")
    elems = list(S.elements())
    seen = set(X)
    todo = list(X)
    while todo:
        x = todo.pop()
        for s in elems:
            for y in (S.mul(s, x), S.mul(x, s)):
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
    return frozenset(seen)


def is_ideal(S, I) -> bool:
    I = frozenset(I)
    if not I:
        return False
    return all(S.mul(s, x) in I and S.mul(x, s) in I for x in I for s in S.elements())


def proper_ideal_union(M: FiniteSemigroup) -> Optional[frozenset]:
    """Union of all proper ideals of a finite monoid, or None when M is simple.

    Every ideal is a union of principal ideals, so only singletons are tried.
    """
    _require_finite(M)
    if M.identity is None:
        raise NotAMonoid("proper_ideal_union needs a monoid")
    n = len(M)
    union = set()
    for x in M.elements():
        J = ideal_generated(M, {x})
        if len(J) < n:
            union |= J
    return frozenset(union) if union else None


class Quotient(NamedTuple):
    semigroup: FiniteSemigroup
    projection: tuple  # old index -> new index
    zero: int
    degenerate: bool


def rees_quotient(S: FiniteSemigroup, I) -> Quotient:
    """Collapse the ideal I to a single zero, which becomes the last element."""
    _require_finite(S)
    I = frozenset(I)
    if not is_ideal(S, I):
        raise NotAnIdeal(f"{sorted(I)} is not an ideal")
    keep = [x for x in S.elements() if x not in I]
    z = len(keep)
    proj = [z] * len(S)
    for k, x in enumerate(keep):
        proj[x] = k
    table = [[proj[S.mul(x, y)] for y in keep] + [z] for x in keep]
    table.append([z] * (z + 1))
    labels = None
    if S.labels:
        labels = tuple(S.labels[x] for x in keep) + ("0",)
    Q = FiniteSemigroup(tuple(map(tuple, table)), labels)
    return Quotient(Q, tuple(proj), z, degenerate=len(I) == len(S))


@dataclass(frozen=True)
class Classification:
    kind: str  # "simple" | "zero_simple" | "neither"
    # monoid-only: shape of the 0-simple reduction M/I
    reduction: Optional[str] = None  # "group" | "group_with_zero"
    reduction_group_order: Optional[int] = None

    @property
    def group_case(self) -> bool:
        return self.reduction in ("group", "group_with_zero")


def _simplicity(S) -> str:
    n = len(list(S.elements()))
    z = S.zero
    nonzero_full = True
    for x in S.elements():
        if len(ideal_generated(S, {x})) < n:
            if x == z:
                continue
            nonzero_full = False
            break
    if nonzero_full and (z is None or len(ideal_generated(S, {z})) == n):
        return "simple"
    if nonzero_full and z is not None:
        return "zero_simple"
    return "neither"


def classify(S: FiniteSemigroup) -> Classification:
    _require_finite(S)
    kind = _simplicity(S)
    if S.identity is None:
        return Classification(kind)
    I = proper_ideal_union(S)
    N = S if I is None else rees_quotient(S, I).semigroup
    units = [x for x in N.elements() if x != (N.zero if I is not None else None)]
    sub = FiniteSemigroup(
        tuple(tuple(units.index(N.mul(x, y)) for y in units) for x in units)
    ) if all(N.mul(x, y) in units for x in units for y in units) else None
    if sub is None or not sub.is_group:
        # cannot happen for finite monoids: the top J-class is the group of units
        raise HClassNotGroup("0-simple reduction of a finite monoid is not a group")
    return Classification(kind, "group" if I is None else "group_with_zero", len(units))


class GreenClasses(NamedTuple):
    R: list
    L: list
    H: list


def _partition(S, key):
    groups = {}
    for x in S.elements():
        groups.setdefault(key(x), []).append(x)
    return sorted((frozenset(g) for g in groups.values()), key=min)


def green_relations(S) -> GreenClasses:
    _require_finite(S)
    elems = list(S.elements())
    right = {x: frozenset([x, *(S.mul(x, s) for s in elems)]) for x in elems}
    left = {x: frozenset([x, *(S.mul(s, x) for s in elems)]) for x in elems}
    R = _partition(S, right.__getitem__)
    L = _partition(S, left.__getitem__)
    H = _partition(S, lambda x: (right[x], left[x]))
    return GreenClasses(R, L, H)


class Subgroup(NamedTuple):
    group: FiniteSemigroup
    embedding: tuple  # group index -> S element; index 0 is the idempotent


def maximal_subgroup_at(S, e) -> Subgroup:
    """H-class of the idempotent e, as a group table with e at index 0."""
    _require_finite(S)
    if S.mul(e, e) != e:
        raise NotIdempotent(f"{e} is not idempotent")
    H = next(h for h in green_relations(S).H if e in h)
    members = [e] + sorted((x for x in H if x != e), key=_sort_key)
    index = {x: k for k, x in enumerate(members)}
    try:
        table = tuple(tuple(index[S.mul(x, y)] for y in members) for x in members)
    except KeyError:
        raise HClassNotGroup(f"H-class of {e} is not closed") from None
    labels = None
    if isinstance(S, FiniteSemigroup) and S.labels:
        labels = tuple(S.labels[x] for x in members)
    elif not isinstance(S, FiniteSemigroup):
        labels = tuple(str(x) for x in members)
    G = FiniteSemigroup(table, labels)
    if not G.is_group or G.identity != 0:
        raise HClassNotGroup(f"H-class of {e} is not a group")
    return Subgroup(G, tuple(members))


def _sort_key(x):
    return (0, x) if isinstance(x, int) else (1, repr(x))


# --- built-in finite groups and small semigroups -------------------------


def cyclic_group(n: int) -> FiniteSemigroup:
    labels = ("e", "a") if n == 2 else ("e",) + tuple(f"a{k}" for k in range(1, n))
    return FiniteSemigroup(
        tuple(tuple((x + y) % n for y in range(n)) for x in range(n)), labels[:n]
    )


def symmetric_group(k: int) -> FiniteSemigroup:
    """Permutations of k points, identity first, composed left to right."""
    perms = sorted(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    # (x*y)(p) = y(x(p)): apply x first, matching left-to-right path products
    table = tuple(
        tuple(index[tuple(y[x[p]] for p in range(k))] for y in perms) for x in perms
    )
    labels = tuple("".join(map(str, p)) for p in perms)
    return FiniteSemigroup(table, labels)


def trivial() -> FiniteSemigroup:
    return FiniteSemigroup(((0,),), ("e",))


def left_zero(n: int) -> FiniteSemigroup:
    return FiniteSemigroup(tuple(tuple(x for _ in range(n)) for x in range(n)))


def nilpotent_monoid() -> FiniteSemigroup:
    """M = {1, a, 0} with a*a = 0."""
    return FiniteSemigroup(((0, 1, 2), (1, 2, 2), (2, 2, 2)), ("1", "a", "0"))


# --- computable infinite backends ----------------------------------------


class Integers:
    """The integers under addition: registers of blind one-counter machines."""

    finite = False
    identity = 0
    is_monoid = True
    is_group = True
    zero = None

    def mul(self, x, y):
        return x + y

    def inverse(self, x):
        return -x

    def contains(self, x):
        return isinstance(x, int) and not isinstance(x, bool)

    def elements(self):
        raise BackendNotFinite("the integers are infinite")

    def __eq__(self, other):
        return isinstance(other, Integers)

    def __hash__(self):
        return hash("Z")

    def __repr__(self):
        return "Integers()"


class Bicyclic:
    """Bicyclic monoid; (m, n) stands for c^m b^n with b*c = 1.

    Reading b as increment and c as decrement, a product is the identity
    exactly when the counter returns to zero without ever going negative.
    """

    finite = False
    identity = (0, 0)
    is_monoid = True
    is_group = False
    zero = None
    INC = (0, 1)
    DEC = (1, 0)

    def mul(self, x, y):
        (m, n), (p, q) = x, y
        k = min(n, p)
        return (m + p - k, n + q - k)

    def inverse(self, x):
        raise NotAGroup("the bicyclic monoid is not a group")

    def contains(self, x):
        return (
            isinstance(x, tuple) and len(x) == 2
            and all(isinstance(v, int) and v >= 0 for v in x)
        )

    def elements(self):
        raise BackendNotFinite("the bicyclic monoid is infinite")

    def __eq__(self, other):
        return isinstance(other, Bicyclic)

    def __hash__(self):
        return hash("B")

    def __repr__(self):
        return "Bicyclic()"


def builtin(name: str):
    """Resolve names like Z, B, Z2, Z3, S3, trivial, leftzero2, nilpotent."""
    if name in ("Z", "integers"):
        return Integers()
    if name in ("B", "bicyclic"):
        return Bicyclic()
    if name == "trivial":
        return trivial()
    if name == "nilpotent":
        return nilpotent_monoid()
    if name.startswith("leftzero") and name[8:].isdigit():
        return left_zero(int(name[8:]))
    if name.startswith("Z") and name[1:].isdigit():
        return cyclic_group(int(name[1:]))
    if name.startswith("S") and name[1:].isdigit():
        return symmetric_group(int(name[1:]))
    raise KeyError(f"unknown built-in semigroup {name!r}")
