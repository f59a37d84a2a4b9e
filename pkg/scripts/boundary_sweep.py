"""Boundary curves of the noisy Horodecki 3x3 state (CSV) and their minima."""
import argparse
import time

from sepcrit import analysis as A
from sepcrit import criteria as C


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--output", default="boundary.csv")
    ap.add_argument("--tol", type=float, default=A.DEFAULT_P_TOL)
    args = ap.parse_args()

    t0 = time.perf_counter()
    curves = A.boundary_curves(A.default_a_grid(), args.tol)
    with open(args.output, "w", newline="") as fh:
        fh.write(A.curves_to_csv(curves))
    print(f"wrote {args.output} ({len(A.default_a_grid())} rows) in {time.perf_counter() - t0:.1f}s")

    for name, crit in [("ccnr", C.ccnr), ("opt-witness", C.optimal_witness), ("thm1", C.theorem1)]:
        a, p = A.min_detection_point(crit)
        print(f"{name:12s} min critical p = {p:.5f} at a = {a:.3f}")


if __name__ == "__main__":
    main()
