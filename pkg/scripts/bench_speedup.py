"""Family-based vs per-product timings over a range of feature counts.

    python scripts/bench_speedup.py --features 2 4 6 8 10 --states 20 --out bench.csv
"""

import argparse
import csv
import sys

from fwa.cli import BENCH_FIELDS, bench_rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--features", type=int, nargs="+", default=[2, 4, 6, 8, 10])
    ap.add_argument("--states", type=int, default=20)
    ap.add_argument("--instances", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", help="CSV path (default: stdout)")
    args = ap.parse_args()
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    writer = csv.DictWriter(out, fieldnames=BENCH_FIELDS)
    writer.writeheader()
    for k in args.features:
        for row in bench_rows(k, args.states, None, args.instances, args.seed):
            writer.writerow(row)
            out.flush()
    if out is not sys.stdout:
        out.close()


if __name__ == "__main__":
    main()
