"""Regenerate the packaged table of monoids of order <= 5 (up to isomorphism)."""

import argparse
import json
import time
from pathlib import Path

from vk.corpus import enumerate_monoids

EXPECTED = {1: 1, 2: 2, 3: 7, 4: 35, 5: 228}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int, default=5)
    ap.add_argument("-o", "--out", default=str(Path(__file__).resolve().parents[1] / "src/vk/data/monoids.json"))
    args = ap.parse_args()
    tables = {}
    for n in range(1, args.max_order + 1):
        t0 = time.perf_counter()
        found = enumerate_monoids(n)
        tables[str(n)] = [[list(row) for row in tab] for tab in found]
        status = "ok" if EXPECTED.get(n, len(found)) == len(found) else f"expected {EXPECTED[n]}"
        print(f"order {n}: {len(found)} monoids ({time.perf_counter() - t0:.1f}s) {status}")
    Path(args.out).write_text(json.dumps(tables, separators=(",", ":")) + "\n", encoding="utf-8")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
