"""Hierarchy and false-positive scans over several local dimensions."""
import argparse
import json

from sepcrit import analysis as A


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--terms", type=int, default=3)
    args = ap.parse_args()

    for dims in ([2, 2], [3, 3]):
        rep = A.hierarchy_check(args.samples, dims, args.seed)
        print(json.dumps(rep.to_dict()))
    for dims in ([2, 2], [3, 3], [2, 4], [2, 2, 2, 2]):
        n = args.samples if len(dims) == 2 else max(1, args.samples // 5)
        rep = A.false_positive_scan(n, dims, args.terms, args.seed)
        print(json.dumps(rep.to_dict()))


if __name__ == "__main__":
    main()
