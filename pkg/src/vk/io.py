"""JSON file formats for semigroups, Rees constructions and automata.

Semigroup references may be a built-in name (``"Z2"``, ``"S3"``, ``"Z"``,
``"B"``...), a path to a JSON file, or an inline object: ``{"n", "table",
"labels"?}`` for tables and ``{"base", "I", "J", "P", "with_zero"}`` for Rees
matrix semigroups.  Elements are encoded as an index (tables), an integer
(Z), a pair (bicyclic), ``["rees", i, t, j]`` or ``"0"`` (Rees).
"""

from __future__ import annotations

import json
import os
import re

from .rational import SAutomaton
from .rees import ZERO, ReesMatrixSemigroup, build_rees
from .regular import Dfa, Nfa
from .semigroup import Bicyclic, FiniteSemigroup, Integers, builtin, validate_table
from .valence import ValenceAutomaton, singleton


def read_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


_FLAT_ARRAY = re.compile(r"\[\s*((?:[^\[\]{}\s][^\[\]{}]*?)?)\s*\]", re.S)


def _collapse(match) -> str:
    return "[" + re.sub(r",\n\s*", ", ", match.group(1)) + "]"


def write_json(obj, path=None) -> str:
    """Indented JSON with arrays of scalars kept on one line."""
    text = json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False)
    text = _FLAT_ARRAY.sub(_collapse, text)
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return text


def _resolve(ref, base_dir):
    if isinstance(ref, str) and (ref.endswith(".json") or os.sep in ref):
        path = ref if os.path.isabs(ref) else os.path.join(base_dir or ".", ref)
        return read_json(path), os.path.dirname(path)
    return ref, base_dir


# --- semigroups ----------------------------------------------------------


def load_semigroup(ref, base_dir=None):
    ref, base_dir = _resolve(ref, base_dir)
    if isinstance(ref, str):
        return builtin(ref)
    if "table" in ref:
        S = validate_table(ref["table"], ref.get("labels"))
        if "n" in ref and ref["n"] != S.n:
            raise ValueError(f"declared n={ref['n']} but table has {S.n} rows")
        if ref.get("monoid") is False:
            S = S.as_semigroup()
        return S
    if "base" in ref:
        base = load_semigroup(ref["base"], base_dir)
        P = [[_decode_entry(base, p) for p in row] for row in ref["P"]]
        return build_rees(base, ref["I"], ref["J"], P, bool(ref.get("with_zero", False)),
                          monoid=ref.get("monoid"))
    raise ValueError("unrecognised semigroup description")


def _decode_entry(base, p):
    if p == "0":
        return ZERO
    return decode_element(base, p)


def semigroup_to_json(S) -> object:
    if isinstance(S, FiniteSemigroup):
        d = S.to_json()
        if S.identity is not None and not S.is_monoid:
            d["monoid"] = False
        return d
    if isinstance(S, ReesMatrixSemigroup):
        d = {
            "base": semigroup_to_json(S.base),
            "I": S.n_i,
            "J": S.n_j,
            "P": [["0" if p is ZERO else encode_element(S.base, p) for p in row] for row in S.P],
            "with_zero": S.with_zero,
        }
        if S.monoid is False:
            d["monoid"] = False
        return d
    if isinstance(S, Integers):
        return "Z"
    if isinstance(S, Bicyclic):
        return "B"
    raise TypeError(f"cannot serialise {S!r}")


def decode_element(S, x):
    if isinstance(S, ReesMatrixSemigroup):
        if x == "0":
            return ZERO
        if isinstance(x, list) and len(x) == 4 and x[0] == "rees":
            return (int(x[1]), decode_element(S.base, x[2]), int(x[3]))
        raise ValueError(f"bad Rees element {x!r}")
    if isinstance(S, Bicyclic):
        return (int(x[0]), int(x[1]))
    if isinstance(S, FiniteSemigroup) and isinstance(x, str):
        if S.labels and x in S.labels:
            return S.labels.index(x)
        return int(x)
    return int(x)


def encode_element(S, x):
    if isinstance(S, ReesMatrixSemigroup):
        if x is ZERO:
            return "0"
        return ["rees", x[0], encode_element(S.base, x[1]), x[2]]
    if isinstance(S, Bicyclic):
        return list(x)
    return int(x)


# --- automata over semigroups ---------------------------------------------


def load_sautomaton(obj, S=None, base_dir=None) -> SAutomaton:
    obj, base_dir = _resolve(obj, base_dir)
    if "semigroup" in obj:
        S = load_semigroup(obj["semigroup"], base_dir)
    if S is None:
        raise ValueError("automaton has no semigroup")
    edges = [(p, decode_element(S, s), q) for p, s, q in obj.get("edges", [])]
    return SAutomaton(S, obj["vertices"], obj.get("initial", 0), obj.get("terminal", []), edges)


def sautomaton_to_json(A: SAutomaton, with_semigroup=True) -> dict:
    d = {}
    if with_semigroup:
        d["semigroup"] = semigroup_to_json(A.owner)
    d.update(
        vertices=A.n,
        initial=A.initial,
        terminal=sorted(A.terminal),
        edges=[[p, encode_element(A.owner, s), q] for p, s, q in A.edges],
    )
    return d


def _load_set(spec, S, base_dir) -> SAutomaton:
    if spec is None:
        return singleton(S, S.identity)
    if isinstance(spec, list):
        return SAutomaton.from_elements(S, [decode_element(S, x) for x in spec])
    if isinstance(spec, dict) and "elements" in spec:
        return SAutomaton.from_elements(S, [decode_element(S, x) for x in spec["elements"]])
    return load_sautomaton(spec, S, base_dir)


def _split_word(word, alphabet):
    if isinstance(word, list):
        return tuple(word)
    if word == "":
        return ()
    if all(len(a) == 1 for a in alphabet):
        return tuple(word)
    return tuple(word.split())


def _join_word(word, alphabet):
    if all(len(a) == 1 for a in alphabet):
        return "".join(word)
    return " ".join(word)


def load_valence(obj, base_dir=None) -> ValenceAutomaton:
    if isinstance(obj, str):
        base_dir = os.path.dirname(obj)
        obj = read_json(obj)
    S = load_semigroup(obj["semigroup"], base_dir)
    alphabet = tuple(obj["alphabet"])
    edges = [
        (p, decode_element(S, s), _split_word(w, alphabet), q)
        for p, s, w, q in obj.get("edges", [])
    ]
    return ValenceAutomaton(
        S, alphabet, obj["vertices"], obj.get("initial", 0), obj.get("terminal", []), edges,
        _load_set(obj.get("X0"), S, base_dir), _load_set(obj.get("X1"), S, base_dir),
    )


def valence_to_json(V: ValenceAutomaton) -> dict:
    S = V.owner
    return {
        "semigroup": semigroup_to_json(S),
        "alphabet": list(V.alphabet),
        "vertices": V.n,
        "initial": V.initial,
        "terminal": sorted(V.terminal),
        "edges": [[p, encode_element(S, s), _join_word(w, V.alphabet), q] for p, s, w, q in V.edges],
        "X0": sautomaton_to_json(V.X0, with_semigroup=False),
        "X1": sautomaton_to_json(V.X1, with_semigroup=False),
    }


# --- classical automata ----------------------------------------------------


def load_nfa(obj) -> Nfa:
    if isinstance(obj, str):
        obj = read_json(obj)
    alphabet = tuple(obj["alphabet"])
    n = obj["vertices"]
    edges = []
    for p, w, q in obj.get("edges", []):
        word = _split_word(w, alphabet)
        if len(word) <= 1:
            edges.append((p, word[0] if word else None, q))
            continue
        prev = p
        for k, a in enumerate(word):
            nxt = q if k == len(word) - 1 else n
            if k < len(word) - 1:
                n += 1
            edges.append((prev, a, nxt))
            prev = nxt
    initial = obj.get("initial", 0)
    return Nfa.from_edges(n, alphabet, initial, obj.get("terminal", []), edges)


def dfa_to_json(D: Dfa) -> dict:
    return {
        "alphabet": list(D.alphabet),
        "vertices": D.n,
        "initial": D.initial,
        "terminal": sorted(D.accepting),
        "edges": [[p, a, D.delta[p][k]] for p in range(D.n) for k, a in enumerate(D.alphabet)],
        "minimal": D.minimal,
    }
