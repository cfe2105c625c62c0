#!/usr/bin/env python3
"""Build the Psi table up to a given level and write it as JSON, with timing."""
import argparse
import json
import time

from g2daha.psi import build_psi_table


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-level", type=int, default=8)
    ap.add_argument("--out", default="psi_table.json")
    args = ap.parse_args()
    t0 = time.perf_counter()
    tab = build_psi_table(args.max_level)
    dt = time.perf_counter() - t0
    with open(args.out, "w") as fh:
        json.dump(tab.to_json(), fh, sort_keys=True)
    sizes = {str(t): len(tab[t]) for t in sorted(tab.triples())}
    print("%d polynomials up to level %d in %.2fs -> %s" % (len(sizes), args.max_level, dt, args.out))
    print("largest:", max(sizes.items(), key=lambda kv: kv[1]))


if __name__ == "__main__":
    main()
