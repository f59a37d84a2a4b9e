"""Command-line front end.

Exit status: 0 on success, 2 for invalid input, 3 for numerical failures
(including thresholds without a usable bracket).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

from . import analysis as A
from . import criteria as C
from . import states as S
from .errors import NumericalError, ValidationError

EXIT_OK, EXIT_INVALID, EXIT_NUMERICAL = 0, 2, 3

STATES = ("horodecki", "noisy-singlet", "max-entangled", "file:<path>")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError as exc:
        raise ValidationError(f"bad dimension list {text!r}") from exc


def _state_family(args) -> tuple[A.Family, str]:
    """Map the state flags to a one-parameter family and the parameter's name.

    ``noisy-singlet`` varies its own mixing weight ``p``; every other state
    varies the white-noise weight.
    """
    name = args.state
    if name == "noisy-singlet":
        return S.noisy_singlet, "p"
    if name == "horodecki":
        if args.a is None:
            raise ValidationError("--state horodecki needs --a")
        base = S.horodecki_3x3(args.a)
    elif name == "max-entangled":
        if args.d is None:
            raise ValidationError("--state max-entangled needs --d")
        base = S.max_entangled(args.d)
    elif name.startswith("file:"):
        base = S.load(name[len("file:"):])
    else:
        raise ValidationError(f"unknown state {name!r}; expected one of {', '.join(STATES)}")
    return (lambda p: S.with_white_noise(base, p)), "noise_p"


def build_state(args) -> S.DensityMatrix:
    if args.state == "noisy-singlet":
        if args.p is None:
            raise ValidationError("--state noisy-singlet needs --p")
        rho = S.noisy_singlet(args.p)
    else:
        family, _ = _state_family(args)
        rho = family(1.0)
    if args.noise_p is not None:
        rho = S.with_white_noise(rho, args.noise_p)
    return rho


def _criterion_names(text: str) -> list[str]:
    names = [n.strip() for n in text.split(",") if n.strip()]
    for n in names:
        if n != "all" and n not in C.CRITERIA_NAMES:
            raise ValidationError(f"unknown criterion {n!r}; expected one of {', '.join(C.CRITERIA_NAMES)}, all")
    return names


def _single_criterion(name: str) -> A.Criterion:
    if name in C.BIPARTITE:
        return C.BIPARTITE[name]
    if name == "thm2-pair":
        return C.theorem2_pair
    if name == "thm2-full":
        return C.theorem2_full
    raise ValidationError(f"unknown criterion {name!r}")


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    # write-then-rename so a failed run never leaves a partial file behind
    path = Path(output)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_eval(args) -> str:
    rho = build_state(args)
    names = _criterion_names(args.criteria)
    results = C.evaluate_all(rho) if "all" in names else C.evaluate(rho, names)
    if args.format == "csv":
        rows = ["name,lhs,rhs,margin,detected"]
        rows += [f"{r.name},{r.lhs!r},{r.rhs!r},{r.margin!r},{str(r.detected).lower()}" for r in results]
        return "\n".join(rows) + "\n"
    return _dump([r.to_dict() for r in results])


def cmd_threshold(args) -> str:
    family, param = _state_family(args)
    crit = _single_criterion(args.criterion)
    res = A.detection_threshold(family, crit, args.lo, args.hi, args.tol, parameter=param)
    out = res.to_dict()
    out["criterion"] = args.criterion
    out["state"] = args.state
    return _dump(out)


def cmd_sweep(args) -> str:
    grid = np.round(np.arange(args.a_min, args.a_max + args.a_step / 2, args.a_step), 10)
    curves = A.boundary_curves(grid, args.tol)
    if args.format == "json":
        return _dump({col: {"a": list(c.parameter_grid), "p": list(c.boundary)} for col, c in curves.items()})
    return A.curves_to_csv(curves)


def cmd_randcheck(args) -> str:
    dims = _int_list(args.dims)
    reports = []
    if len(dims) == 2:
        reports.append(A.hierarchy_check(args.samples, dims, args.seed).to_dict())
    reports.append(A.false_positive_scan(args.samples, dims, args.terms, args.seed).to_dict())
    return _dump(reports)


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sepcrit", description="Evaluate separability criteria on density matrices.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def state_flags(sp, need_param=True):
        sp.add_argument("--state", required=True,
                        help="horodecki | noisy-singlet | max-entangled | file:<path>")
        sp.add_argument("--a", type=float, help="Horodecki parameter a in (0, 1)")
        if need_param:
            sp.add_argument("--p", type=float, help="noisy-singlet mixing weight")
        sp.add_argument("--d", type=int, help="local dimension for max-entangled")

    e = sub.add_parser("eval", help="evaluate criteria on one state")
    state_flags(e)
    e.add_argument("--noise-p", type=float, help="mix the state with white noise at this weight")
    e.add_argument("--criteria", default="all", help="comma list of " + ", ".join(C.CRITERIA_NAMES) + " or all")
    e.add_argument("--format", choices=("json", "csv"), default="json")
    e.add_argument("--output")
    e.set_defaults(func=cmd_eval)

    t = sub.add_parser("threshold", help="bisect the detection threshold of one criterion")
    state_flags(t, need_param=False)
    t.add_argument("--criterion", required=True)
    t.add_argument("--lo", type=float, default=0.0)
    t.add_argument("--hi", type=float, default=1.0)
    t.add_argument("--tol", type=float, default=A.DEFAULT_P_TOL)
    t.add_argument("--format", choices=("json",), default="json")
    t.add_argument("--output")
    t.set_defaults(func=cmd_threshold)

    s = sub.add_parser("sweep", help="noisy Horodecki boundary curves for ccnr, opt-witness and thm1")
    s.add_argument("--a-min", type=float, default=0.01)
    s.add_argument("--a-max", type=float, default=0.99)
    s.add_argument("--a-step", type=float, default=0.002)
    s.add_argument("--tol", type=float, default=A.DEFAULT_P_TOL)
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("--output")
    s.set_defaults(func=cmd_sweep)

    r = sub.add_parser("randcheck", help="hierarchy and false-positive scans on random states")
    r.add_argument("--dims", default="2,2")
    r.add_argument("--samples", type=int, default=1000)
    r.add_argument("--terms", type=int, default=4)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--format", choices=("json",), default="json")
    r.add_argument("--output")
    r.set_defaults(func=cmd_randcheck)
    return p


def main(argv=None) -> int:
    try:
        args = make_parser().parse_args(argv)
        text = args.func(args)
        _emit(text, args.output)
    except ValidationError as exc:
        print(f"sepcrit: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (NumericalError, np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"sepcrit: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
