"""Seeded random instances: monoids, Rees matrix semigroups and automata.

All randomness comes from ``random.Random`` seeded with one 64-bit integer,
so every generator here is a pure function of its seed and sizes.
"""

from __future__ import annotations

import itertools
import json
import os
import random
from dataclasses import asdict, dataclass
from functools import lru_cache
from importlib import resources

from .rational import SAutomaton
from .rees import ZERO, ReesMatrixSemigroup, build_rees, is_regular_matrix
from .semigroup import FiniteSemigroup, builtin, validate_table
from .valence import ValenceAutomaton, singleton

GROUP_BASES = ("Z2", "Z3", "S3")


@dataclass(frozen=True)
class CorpusSizes:
    max_vertices: int = 4
    max_alphabet: int = 2
    max_semigroup: int = 8
    max_index: int = 3
    semigroups: int = 20
    rees_instances: int = 24
    valence_per_kind: int = 60
    max_word: int = 1


# --- monoids of small order ------------------------------------------------


def enumerate_monoids(n: int) -> list:
    """All monoids of order n up to isomorphism, identity at index 0.

    Backtracking over the (n-1)^2 non-identity cells with an associativity
    check after every assignment, then dedupe by the lexicographically least
    relabelling that fixes the identity.
    """
    t = [[None] * n for _ in range(n)]
    for x in range(n):
        t[0][x] = t[x][0] = x
    cells = [(x, y) for x in range(1, n) for y in range(1, n)]
    rng = range(1, n)
    found = set()

    def consistent():
        for x in rng:
            for y in rng:
                xy = t[x][y]
                if xy is None:
                    continue
                for z in rng:
                    yz = t[y][z]
                    if yz is None:
                        continue
                    a, b = t[xy][z], t[x][yz]
                    if a is not None and b is not None and a != b:
                        return False
        return True

    def rec(k):
        if k == len(cells):
            found.add(_canonical(t, n))
            return
        x, y = cells[k]
        for v in range(n):
            t[x][y] = v
            if consistent():
                rec(k + 1)
        t[x][y] = None

    rec(0)
    return sorted(found)


def _canonical(t, n):
    best = None
    for perm in itertools.permutations(range(1, n)):
        p = (0,) + perm
        inv = [0] * n
        for i, v in enumerate(p):
            inv[v] = i
        c = tuple(tuple(p[t[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
        if best is None or c < best:
            best = c
    return best


@lru_cache(maxsize=None)
def monoid_corpus(max_order: int = 5) -> tuple:
    """Packaged monoids of order <= max_order as FiniteSemigroups."""
    text = resources.files("vk.data").joinpath("monoids.json").read_text(encoding="utf-8")
    tables = json.loads(text)
    return tuple(
        FiniteSemigroup(tuple(tuple(r) for r in tab))
        for order, tabs in sorted(tables.items(), key=lambda kv: int(kv[0]))
        if int(order) <= max_order
        for tab in tabs
    )


# --- random semigroups -------------------------------------------------------


def random_semigroup(rng: random.Random, max_size: int = 8) -> FiniteSemigroup:
    """Transformation semigroup on three points generated by 1-3 random maps."""
    while True:
        gens = [tuple(rng.randrange(3) for _ in range(3)) for _ in range(rng.randint(1, 3))]
        elems = list(dict.fromkeys(gens))
        k = 0
        while k < len(elems) and len(elems) <= max_size:
            f = elems[k]
            for g in gens:
                h = tuple(g[f[x]] for x in range(3))  # f then g
                if h not in elems:
                    elems.append(h)
            k += 1
        if len(elems) > max_size:
            continue
        index = {f: i for i, f in enumerate(elems)}
        table = [[index[tuple(g[f[x]] for x in range(3))] for g in elems] for f in elems]
        return validate_table(table)


def random_sandwich(rng: random.Random, G, n_i, n_j, with_zero, regular=True):
    elems = G.elements()
    while True:
        P = [
            [ZERO if with_zero and rng.random() < 0.3 else rng.choice(elems) for _ in range(n_i)]
            for _ in range(n_j)
        ]
        if not with_zero or is_regular_matrix(P) == regular:
            return P
        if not regular and n_i * n_j == 1:
            return [[ZERO]]


def rees_corpus(seed: int = 0, sizes: CorpusSizes = CorpusSizes()) -> list:
    """Every base, every |I|, |J| <= max_index, with and without zero.

    Each combination gets one regular sandwich matrix; the with-zero cases
    also get a non-regular one.
    """
    rng = random.Random(seed)
    out = []
    for name in GROUP_BASES:
        G = builtin(name)
        for n_i in range(1, sizes.max_index + 1):
            for n_j in range(1, sizes.max_index + 1):
                for with_zero in (False, True):
                    out.append(build_rees(G, n_i, n_j, random_sandwich(rng, G, n_i, n_j, with_zero), with_zero))
                    if with_zero:
                        P = random_sandwich(rng, G, n_i, n_j, True, regular=False)
                        out.append(build_rees(G, n_i, n_j, P, True))
    return out


def regular_rees(S: ReesMatrixSemigroup) -> bool:
    return not S.with_zero or is_regular_matrix(S.P)


# --- random automata ---------------------------------------------------------


def random_sautomaton(rng: random.Random, S, max_vertices: int = 3, labels=None) -> SAutomaton:
    labels = list(labels if labels is not None else S.elements())
    n = rng.randint(1, max_vertices)
    m = rng.randint(1, 2 * n + 1)
    edges = [(rng.randrange(n), rng.choice(labels), rng.randrange(n)) for _ in range(m)]
    terminal = {q for q in range(n) if rng.random() < 0.5} or {rng.randrange(n)}
    return SAutomaton(S, n, 0, terminal, edges)


def _nonzero(S):
    return [x for x in S.elements() if x is not ZERO]


def random_valence(rng: random.Random, S, max_vertices: int = 4, max_alphabet: int = 2,
                   rational: bool = True, zero_rate: float = 0.1, max_word: int = 1) -> ValenceAutomaton:
    """Random automaton over S; rational ones get small random X0 and X1."""
    alphabet = ("a", "b")[: rng.randint(1, max_alphabet)]
    elems = S.elements()
    nonzero = _nonzero(S)

    def label():
        if len(nonzero) < len(elems) and rng.random() >= zero_rate:
            return rng.choice(nonzero)
        return rng.choice(elems)

    n = rng.randint(1, max_vertices)
    m = rng.randint(n, 3 * n)
    edges = []
    for _ in range(m):
        length = 0 if rng.random() < 0.15 else rng.randint(1, max_word)
        word = tuple(rng.choice(alphabet) for _ in range(length))
        edges.append((rng.randrange(n), label(), word, rng.randrange(n)))
    terminal = {q for q in range(n) if rng.random() < 0.4} or {rng.randrange(n)}
    if not rational:
        return ValenceAutomaton.plain(S, alphabet, n, 0, terminal, edges)
    X0 = _random_set(rng, S, label)
    X1 = _random_set(rng, S, label)
    if rng.random() < 0.6:
        # bias X1 towards a value some run actually reaches
        hit = _random_run(rng, S, X0, edges, terminal)
        if hit is not None:
            X1 = SAutomaton.from_elements(S, [hit] + [label() for _ in range(rng.randint(0, 1))])
    return ValenceAutomaton(S, alphabet, n, 0, terminal, edges, X0, X1)


def _random_run(rng, S, X0, edges, terminal, steps: int = 6):
    from .rational import accepted_subset

    x0s = sorted(accepted_subset(X0), key=repr)
    if not x0s:
        return None
    r, v = rng.choice(x0s), 0
    for _ in range(rng.randint(1, steps)):
        out = [e for e in edges if e[0] == v]
        if not out:
            break
        _, s, _, v = rng.choice(out)
        r = S.mul(r, s)
    return r if v in terminal else None


def _random_set(rng, S, label) -> SAutomaton:
    if rng.random() < 0.5:
        return SAutomaton.from_elements(S, [label() for _ in range(rng.randint(1, 2))])
    return random_sautomaton(rng, S, 2, [label() for _ in range(3)])


# --- on-disk corpus ----------------------------------------------------------


def _seeded(seed: int, *tags) -> random.Random:
    return random.Random(f"{seed}:" + ":".join(map(str, tags)))


def generate(seed: int, sizes: CorpusSizes = CorpusSizes()) -> tuple:
    """(instances, semigroups, rees) as a pure function of the seed.

    ``instances`` holds (name, kind, pipeline, automaton) tuples.
    """
    from .semigroup import proper_ideal_union

    out = []
    rng = _seeded(seed, "sgp")
    semigroups = [random_semigroup(rng, sizes.max_semigroup) for _ in range(sizes.semigroups)]
    monoids = [M for M in monoid_corpus() if M.n >= 2 and proper_ideal_union(M) is not None]
    rees = [S for S in rees_corpus(seed, sizes) if regular_rees(S)]
    groups = [builtin(g) for g in GROUP_BASES]
    rng = _seeded(seed, "val")
    k = sizes.valence_per_kind
    opts = dict(max_vertices=sizes.max_vertices, max_alphabet=sizes.max_alphabet, max_word=sizes.max_word)
    for t in range(k):
        M = rng.choice(monoids)
        out.append((f"monoid-{t:03d}", "plain-monoid", "zero-simple",
                    random_valence(rng, M, rational=False, **opts)))
    for t in range(k):
        M = rng.choice(monoids)
        out.append((f"ratmonoid-{t:03d}", "rational-monoid", "normalize-initial",
                    random_valence(rng, M, **opts)))
    for t in range(k):
        G = rng.choice(groups)
        out.append((f"group-{t:03d}", "rational-group", "normalize-initial,eliminate-target",
                    random_valence(rng, G, **opts)))
    for t in range(k):
        S = rng.choice(rees)
        pipe = "nozero,to-group" if S.with_zero else "to-group"
        out.append((f"rees-{t:03d}", "rational-rees", pipe, random_valence(rng, S, **opts)))
    return out, semigroups, [S for S in rees_corpus(seed, sizes)]


def gen_corpus(seed: int, out_dir: str, sizes: CorpusSizes = CorpusSizes()) -> dict:
    """Write every instance as JSON plus ``manifest.json``; returns the manifest."""
    from .io import semigroup_to_json, valence_to_json, write_json

    os.makedirs(out_dir, exist_ok=True)
    instances, semigroups, rees = generate(seed, sizes)
    entries = []
    for k, S in enumerate(semigroups):
        name = f"semigroup-{k:03d}.json"
        write_json(semigroup_to_json(S), os.path.join(out_dir, name))
        entries.append({"file": name, "kind": "semigroup"})
    for k, S in enumerate(rees):
        name = f"reesmatrix-{k:03d}.json"
        write_json(semigroup_to_json(S), os.path.join(out_dir, name))
        entries.append({"file": name, "kind": "rees", "regular": regular_rees(S)})
    for name, kind, pipeline, V in instances:
        fname = f"{name}.json"
        write_json(valence_to_json(V), os.path.join(out_dir, fname))
        entries.append({"file": fname, "kind": kind, "pipeline": pipeline})
    manifest = {
        "seed": seed,
        "sizes": asdict(sizes),
        "valence_instances": len(instances),
        "instances": entries,
    }
    write_json(manifest, os.path.join(out_dir, "manifest.json"))
    return manifest


# --- certification runs and reports -----------------------------------------


def _certify_entry(args):
    from .io import load_valence
    from .pipeline import PipelineSpec, certify, run_pipeline

    corpus_dir, entry, pipeline, mutate = args
    row = {"instance": entry["file"], "pipeline": pipeline}
    try:
        V = load_valence(os.path.join(corpus_dir, entry["file"]))
        W = run_pipeline(V, PipelineSpec.parse(pipeline))
        if mutate:
            V = flip_sandwich_entry(V)
            row["mutated"] = V is not None
            if V is None:
                row.update(verdict="skipped", counterexample=None)
                return row
        cert, _, _ = certify(V, W)
        row.update(verdict=cert.verdict, counterexample=cert.counterexample,
                   source_states=cert.source_states, result_states=cert.result_states)
    except Exception as exc:  # reported, not raised: one bad instance must not hide the rest
        row.update(verdict="error", counterexample=None, error=f"{type(exc).__name__}: {exc}")
    return row


def run_corpus(corpus_dir: str, cert_dir: str, pipeline: str = None, workers: int = 1,
               mutate: bool = False) -> list:
    """Run each manifest instance through its pipeline and write certificates.

    With ``mutate`` the converted machine is certified against a copy of the
    source whose sandwich matrix has one entry changed, so a working checker
    must report counterexamples.  Non-Rees instances are skipped.
    """
    from .io import read_json, write_json

    manifest = read_json(os.path.join(corpus_dir, "manifest.json"))
    jobs = [
        (corpus_dir, e, pipeline or e["pipeline"], mutate)
        for e in manifest["instances"]
        if "pipeline" in e
    ]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as pool:
            rows = list(pool.map(_certify_entry, jobs, chunksize=8))
    else:
        rows = [_certify_entry(j) for j in jobs]
    os.makedirs(cert_dir, exist_ok=True)
    for row in rows:
        stem = os.path.splitext(row["instance"])[0]
        write_json(row, os.path.join(cert_dir, f"{stem}.cert.json"))
    return rows


def report(cert_dir: str) -> dict:
    """Summary of every ``*.cert.json`` in cert_dir; an empty dir gives an empty report."""
    from .io import read_json

    rows = []
    if os.path.isdir(cert_dir):
        for name in sorted(os.listdir(cert_dir)):
            if name.endswith(".cert.json"):
                rows.append(read_json(os.path.join(cert_dir, name)))
    counts = {}
    for r in rows:
        counts[r["verdict"]] = counts.get(r["verdict"], 0) + 1
    return {
        "instances": len(rows),
        "verdicts": dict(sorted(counts.items())),
        "counterexamples": [
            {"instance": r["instance"], "word": r["counterexample"]}
            for r in rows if r["verdict"] == "inequivalent"
        ],
        "rows": rows,
    }


def format_report(summary: dict) -> str:
    lines = [f"{'instance':<28} {'pipeline':<36} {'verdict':<13} counterexample"]
    for r in summary["rows"]:
        word = r.get("counterexample")
        shown = "-" if word is None else repr(word)
        if r["verdict"] == "error":
            shown = r.get("error", "")
        lines.append(f"{r['instance']:<28} {r['pipeline']:<36} {r['verdict']:<13} {shown}")
    verdicts = ", ".join(f"{k}={v}" for k, v in summary["verdicts"].items()) or "none"
    lines.append(f"{summary['instances']} instances: {verdicts}")
    return "\n".join(lines)


def mutate_sandwich(V: ValenceAutomaton, j: int, i: int, value) -> ValenceAutomaton:
    """The same automaton over a Rees semigroup with P[j][i] replaced."""
    S = V.owner
    P = [list(row) for row in S.P]
    P[j][i] = value
    T = build_rees(S.base, S.n_i, S.n_j, P, S.with_zero, S.monoid)

    def move(X):
        return SAutomaton(T, X.n, X.initial, X.terminal, X.edges)

    return ValenceAutomaton(T, V.alphabet, V.n, V.initial, V.terminal, V.edges, move(V.X0), move(V.X1))


def flip_sandwich_entry(V: ValenceAutomaton):
    """Mutant of V with the first non-zero sandwich entry multiplied by a generator, or None."""
    S = V.owner
    if not isinstance(S, ReesMatrixSemigroup):
        return None
    G = S.base
    shift = next((g for g in G.elements() if g != G.identity), None)
    if shift is None:
        return None
    for j, row in enumerate(S.P):
        for i, p in enumerate(row):
            if p is not ZERO:
                return mutate_sandwich(V, j, i, G.mul(p, shift))
    return None
