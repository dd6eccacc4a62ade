"""Write the demo machines as JSON files for use with the ``vk`` command."""

import argparse
from pathlib import Path

from vk import demos, io

MACHINES = {
    "z2_parity": demos.z2_parity,
    "nilpotent": demos.nilpotent_demo,
    "r2_even_loop": demos.r2_even_loop,
    "r2_zero_branch": demos.r2_zero_branch,
    "anbn": demos.anbn_machine,
    "dyck": demos.dyck_machine,
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out", nargs="?", default="demo")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, make in MACHINES.items():
        io.write_json(io.valence_to_json(make()), out / f"{name}.json")
    io.write_json(io.semigroup_to_json(demos.r2()), out / "r2_semigroup.json")
    print(f"wrote {len(MACHINES) + 1} files to {out}")


if __name__ == "__main__":
    main()
