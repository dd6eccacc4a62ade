"""Command line interface: ``vk <group> <command> ...``.

Exit codes: 0 success / equivalent / accepted, 1 inequivalent / rejected,
2 parse or precondition error, 3 inconclusive bounded search.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import io
from .errors import VkError
from .pipeline import PipelineError, PipelineSpec, certify, run_pipeline
from .rational import (
    accepted_subset,
    enumerate_bounded,
    extract_component,
    invert_group_subset,
    member,
)
from .rees import ReesMatrixSemigroup, element_label, is_regular_matrix, rees_decompose
from .regular import determinize, equivalent, minimize, to_dot as dfa_dot
from .semigroup import FiniteSemigroup, classify, green_relations
from .valence import Verdict, accepts, language_dfa, to_dot

EXIT_OK, EXIT_DIFFERENT, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2, 3


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    return int(os.environ.get("VK_SEED", "0"), 0)


def _emit(obj, out=None):
    text = io.write_json(obj, out)
    if out is None:
        print(text)
    else:
        print(f"wrote {out}")


def _show(S, x) -> str:
    if isinstance(S, ReesMatrixSemigroup):
        return element_label(S, x)
    if isinstance(S, FiniteSemigroup):
        return S.label(x)
    return str(x)


def _elements_json(S, xs):
    return [io.encode_element(S, x) for x in sorted(xs, key=repr)]


# --- sgp -----------------------------------------------------------------


def cmd_sgp_validate(args):
    S = io.load_semigroup(args.file)
    print(f"valid semigroup of order {len(S.elements())}")
    return EXIT_OK


def _info(S) -> dict:
    T = S.materialize()[0] if isinstance(S, ReesMatrixSemigroup) else S
    c = classify(T)
    green = green_relations(T)
    lab = T.label

    def classes(cs):
        return [[lab(x) for x in sorted(c)] for c in cs]

    return {
        "order": T.n,
        "identity": None if T.identity is None else lab(T.identity),
        "zero": None if T.zero is None else lab(T.zero),
        "idempotents": [lab(e) for e in sorted(T.idempotents)],
        "classification": c.kind,
        "R": classes(green.R),
        "L": classes(green.L),
        "H": classes(green.H),
    }


def cmd_sgp_info(args):
    S = io.load_semigroup(args.file)
    if not S.finite:
        print(f"{S!r}: infinite computable backend, identity {S.identity!r}")
        return EXIT_OK
    _emit(_info(S))
    return EXIT_OK


# --- rees ----------------------------------------------------------------


def cmd_rees_build(args):
    S = io.load_semigroup(args.file)
    if not isinstance(S, ReesMatrixSemigroup):
        raise VkError("file does not describe a Rees matrix semigroup")
    info = {"regular_matrix": not S.with_zero or is_regular_matrix(S.P)}
    if S.finite:
        info.update(_info(S))
        if args.table:
            T, _, _ = S.materialize()
            info["table"] = [list(r) for r in T.table]
            info["labels"] = list(T.labels)
    _emit(info, args.out)
    return EXIT_OK


def cmd_rees_decompose(args):
    S = io.load_semigroup(args.file)
    dec = rees_decompose(S)
    R = dec.rees
    doc = io.semigroup_to_json(R)
    doc["iso"] = {S.label(x): io.encode_element(R, y) for x, y in sorted(dec.iso.items(), key=lambda kv: kv[0])}
    _emit(doc, args.out)
    return EXIT_OK


# --- rat -----------------------------------------------------------------


def _subset_doc(A, max_len):
    S = A.owner
    if S.finite:
        xs = accepted_subset(A)
        return {"complete": True, "size": len(xs), "elements": _elements_json(S, xs)}
    xs, complete = enumerate_bounded(A, max_len)
    return {"complete": complete, "size": len(xs), "elements": _elements_json(S, xs)}


def cmd_rat_subset(args):
    _emit(_subset_doc(io.load_sautomaton(args.file), args.max_len))
    return EXIT_OK


def _parse_element(S, text):
    try:
        value = json.loads(text)
    except json.JSONDecodeError:
        value = text
    return io.decode_element(S, value)


def cmd_rat_member(args):
    A = io.load_sautomaton(args.file)
    x = _parse_element(A.owner, args.element)
    answer = member(A, x, args.max_len)
    print({True: "yes", False: "no", None: "inconclusive"}[answer])
    return {True: EXIT_OK, False: EXIT_DIFFERENT, None: EXIT_INCONCLUSIVE}[answer]


def cmd_rat_extract(args):
    A = io.load_sautomaton(args.file)
    X = extract_component(A, args.i, args.j)
    if args.out:
        io.write_json(io.sautomaton_to_json(X), args.out)
    _emit(_subset_doc(X, args.max_len))
    return EXIT_OK


def cmd_rat_invert(args):
    X = invert_group_subset(io.load_sautomaton(args.file))
    if args.out:
        io.write_json(io.sautomaton_to_json(X), args.out)
    _emit(_subset_doc(X, args.max_len))
    return EXIT_OK


# --- val -----------------------------------------------------------------


def _word(V, text):
    return io._split_word(text, V.alphabet)


def cmd_val_accept(args):
    V = io.load_valence(args.file)
    verdict = accepts(V, _word(V, args.word), args.budget)
    print(verdict.value)
    return {Verdict.YES: EXIT_OK, Verdict.NO: EXIT_DIFFERENT, Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE}[verdict]


def cmd_val_lang(args):
    V = io.load_valence(args.file)
    D = language_dfa(V)
    if args.dot:
        print(dfa_dot(D, "L"))
        return EXIT_OK
    _emit(io.dfa_to_json(D), args.out)
    return EXIT_OK


def cmd_val_convert(args):
    V = io.load_valence(args.file)
    spec = PipelineSpec.parse(args.pipeline)
    W = run_pipeline(V, spec)
    if args.out:
        io.write_json(io.valence_to_json(W), args.out)
        print(f"wrote {args.out}")
    else:
        print(io.write_json(io.valence_to_json(W)))
    if not args.certify:
        return EXIT_OK
    cert, dv, dw = certify(V, W)
    doc = {
        "pipeline": str(spec),
        "verdict": cert.verdict,
        "counterexample": cert.counterexample,
        "cross_checked_words": cert.cross_checked,
        "source_dfa": io.dfa_to_json(dv),
        "result_dfa": io.dfa_to_json(dw),
    }
    if args.cert:
        io.write_json(doc, args.cert)
    print(f"certificate: {cert.verdict}" + (f" (counterexample {cert.counterexample!r})" if not cert.equivalent else ""))
    return EXIT_OK if cert.equivalent else EXIT_DIFFERENT


def _verdict(ok, witness, alphabet):
    if ok:
        print("equivalent")
        return EXIT_OK
    sep = "" if all(len(a) == 1 for a in alphabet) else " "
    print(f"inequivalent: counterexample {sep.join(witness)!r}")
    return EXIT_DIFFERENT


def cmd_val_equiv(args):
    V, W = io.load_valence(args.a), io.load_valence(args.b)
    ok, witness = equivalent(language_dfa(V), language_dfa(W))
    return _verdict(ok, witness, V.alphabet)


def cmd_val_dot(args):
    V = io.load_valence(args.file)
    print(to_dot(V, lambda s: _show(V.owner, s)))
    return EXIT_OK


# --- re ------------------------------------------------------------------


def cmd_re_equiv(args):
    A, B = io.load_nfa(args.a), io.load_nfa(args.b)
    ok, witness = equivalent(A, B)
    return _verdict(ok, witness, A.alphabet)


def cmd_re_min(args):
    D = minimize(determinize(io.load_nfa(args.file)))
    if args.dot:
        print(dfa_dot(D, "M"))
        return EXIT_OK
    _emit(io.dfa_to_json(D), args.out)
    return EXIT_OK


# --- corpus --------------------------------------------------------------


def cmd_corpus_gen(args):
    from .corpus import CorpusSizes, gen_corpus

    sizes = CorpusSizes(valence_per_kind=args.per_kind, max_index=args.max_index)
    manifest = gen_corpus(_seed(args), args.out, sizes)
    print(f"wrote {len(manifest['instances'])} files ({manifest['valence_instances']} valence instances) to {args.out}")
    return EXIT_OK


def cmd_corpus_run(args):
    from .corpus import format_report, report, run_corpus

    run_corpus(args.dir, args.out, args.pipeline, args.workers, args.mutate)
    summary = report(args.out)
    print(format_report(summary))
    return EXIT_OK if not summary["counterexamples"] and "error" not in summary["verdicts"] else EXIT_DIFFERENT


def cmd_corpus_report(args):
    from .corpus import format_report, report

    summary = report(args.dir)
    if args.json:
        _emit(summary)
    else:
        print(format_report(summary))
    return EXIT_OK if not summary["counterexamples"] else EXIT_DIFFERENT


# --- parser --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="vk", description="Valence automata over finite and computable semigroups.")
    ap.add_argument("--seed", type=lambda s: int(s, 0), default=None,
                    help="64-bit seed (default: $VK_SEED or 0)")
    groups = ap.add_subparsers(dest="group", required=True)

    def command(group, name, func, help):
        p = group.add_parser(name, help=help)
        p.set_defaults(func=func)
        return p

    sgp = groups.add_parser("sgp", help="finite semigroups").add_subparsers(dest="cmd", required=True)
    command(sgp, "validate", cmd_sgp_validate, "check closure and associativity").add_argument("file")
    command(sgp, "info", cmd_sgp_info, "identity, zero, idempotents, Green classes").add_argument("file")

    rees = groups.add_parser("rees", help="Rees matrix semigroups").add_subparsers(dest="cmd", required=True)
    p = command(rees, "build", cmd_rees_build, "materialize and classify a Rees matrix semigroup")
    p.add_argument("file")
    p.add_argument("--table", action="store_true", help="include the multiplication table")
    p.add_argument("-o", "--out")
    p = command(rees, "decompose", cmd_rees_decompose, "Rees coordinates of a completely (0-)simple table")
    p.add_argument("file")
    p.add_argument("-o", "--out")

    rat = groups.add_parser("rat", help="rational subsets").add_subparsers(dest="cmd", required=True)
    p = command(rat, "subset", cmd_rat_subset, "accepted subset")
    p.add_argument("file")
    p.add_argument("--max-len", type=int, default=16)
    p = command(rat, "member", cmd_rat_member, "membership of one element")
    p.add_argument("file")
    p.add_argument("element", help="JSON element, e.g. 3, '[\"rees\",0,1,0]' or '\"0\"'")
    p.add_argument("--max-len", type=int, default=64)
    p = command(rat, "extract", cmd_rat_extract, "component X_ij over the base")
    p.add_argument("file")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--max-len", type=int, default=16)
    p.add_argument("-o", "--out")
    p = command(rat, "invert", cmd_rat_invert, "elementwise inverse over a group")
    p.add_argument("file")
    p.add_argument("--max-len", type=int, default=16)
    p.add_argument("-o", "--out")

    val = groups.add_parser("val", help="valence automata").add_subparsers(dest="cmd", required=True)
    p = command(val, "accept", cmd_val_accept, "decide acceptance of one word")
    p.add_argument("file")
    p.add_argument("word", help="letters, or space separated symbols for long symbol names")
    p.add_argument("--budget", type=int, default=None)
    p = command(val, "lang", cmd_val_lang, "minimal DFA of the language")
    p.add_argument("file")
    p.add_argument("--dot", action="store_true")
    p.add_argument("-o", "--out")
    p = command(val, "convert", cmd_val_convert, "run a transformation pipeline")
    p.add_argument("file")
    p.add_argument("--pipeline", required=True, help="comma separated: nozero,to-group,zero-simple,normalize-initial,eliminate-target")
    p.add_argument("--certify", action="store_true", help="check language equality with the source")
    p.add_argument("--cert", help="write the certificate JSON here")
    p.add_argument("-o", "--out")
    p = command(val, "equiv", cmd_val_equiv, "language equivalence of two automata")
    p.add_argument("a")
    p.add_argument("b")
    command(val, "dot", cmd_val_dot, "Graphviz rendering").add_argument("file")

    re_ = groups.add_parser("re", help="classical automata").add_subparsers(dest="cmd", required=True)
    p = command(re_, "equiv", cmd_re_equiv, "language equivalence")
    p.add_argument("a")
    p.add_argument("b")
    p = command(re_, "min", cmd_re_min, "minimal DFA")
    p.add_argument("file")
    p.add_argument("--dot", action="store_true")
    p.add_argument("-o", "--out")

    corpus = groups.add_parser("corpus", help="random test corpora").add_subparsers(dest="cmd", required=True)
    p = command(corpus, "gen", cmd_corpus_gen, "write a seeded corpus and its manifest")
    p.add_argument("--out", required=True)
    p.add_argument("--per-kind", type=int, default=60, help="valence instances per kind (four kinds)")
    p.add_argument("--max-index", type=int, default=3, help="largest |I| and |J| for Rees instances")
    p = command(corpus, "run", cmd_corpus_run, "convert and certify every corpus instance")
    p.add_argument("dir")
    p.add_argument("--out", required=True, help="certificate directory")
    p.add_argument("--pipeline", default=None, help="override the per-instance pipeline")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--mutate", action="store_true",
                   help="certify against a source with one sandwich entry changed (checker self-test)")
    p = command(corpus, "report", cmd_corpus_report, "summarize a certificate directory")
    p.add_argument("dir")
    p.add_argument("--json", action="store_true")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PipelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (VkError, ValueError, KeyError, TypeError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
