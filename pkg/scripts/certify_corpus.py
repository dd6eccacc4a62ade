"""Generate a seeded corpus, certify every instance, then rerun with a mutated sandwich matrix.

The clean run should report no counterexamples and the mutated run at least one.
"""

import argparse
import tempfile
import time
from pathlib import Path

from vk.corpus import CorpusSizes, gen_corpus, report, run_corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--per-kind", type=int, default=60)
    ap.add_argument("--workers", type=int, default=4)
    ap.add_argument("--out", default=None, help="working directory (default: a temporary one)")
    args = ap.parse_args()

    root = Path(args.out or tempfile.mkdtemp(prefix="vk-corpus-"))
    corpus, clean, mutant = root / "corpus", root / "certs", root / "mutant"
    manifest = gen_corpus(args.seed, str(corpus), CorpusSizes(valence_per_kind=args.per_kind))
    print(f"{manifest['valence_instances']} valence instances in {corpus}")

    for label, out, mutate in (("clean", clean, False), ("mutated", mutant, True)):
        t0 = time.perf_counter()
        run_corpus(str(corpus), str(out), workers=args.workers, mutate=mutate)
        summary = report(str(out))
        print(f"{label:8s} {summary['verdicts']}  counterexamples={len(summary['counterexamples'])}"
              f"  ({time.perf_counter() - t0:.1f}s)")
        for cx in summary["counterexamples"][:5]:
            print(f"         {cx['instance']}: {''.join(cx['word'])!r}")


if __name__ == "__main__":
    main()
