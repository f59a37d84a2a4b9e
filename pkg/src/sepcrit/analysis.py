"""Detection thresholds, white-noise sweeps and randomized consistency scans."""
from __future__ import annotations

import csv
import io
from collections import Counter
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np

from . import criteria as C
from . import states as S
from .errors import BracketError, ValidationError

Family = Callable[[float], S.DensityMatrix]
Criterion = Callable[[S.DensityMatrix], C.CriterionResult]

PRESCAN_POINTS = 32
DEFAULT_P_TOL = 1e-4


def default_a_grid() -> np.ndarray:
    """``0.01, 0.012, ..., 0.99``."""
    return np.round(np.arange(0.01, 0.99 + 1e-9, 0.002), 6)


@dataclass(frozen=True)
class ThresholdResult:
    criterion: str
    parameter: str
    critical_value: float
    bracket: tuple[float, float]
    iterations: int

    def to_dict(self) -> dict:
        return {
            "criterion": self.criterion,
            "parameter": self.parameter,
            "critical_value": self.critical_value,
            "bracket": list(self.bracket),
            "iterations": self.iterations,
        }


@dataclass(frozen=True)
class SweepCurve:
    criterion: str
    parameter_grid: tuple[float, ...]
    boundary: tuple[float | None, ...]


def _name(criterion) -> str:
    return getattr(criterion, "__name__", str(criterion))


def detection_threshold(family: Family, criterion: Criterion, lo: float = 0.0, hi: float = 1.0,
                        tol: float = DEFAULT_P_TOL, parameter: str = "p") -> ThresholdResult:
    """Bisect the verdict boundary of ``criterion`` along ``family`` on ``[lo, hi]``.

    The verdict must be "not detected" at ``lo`` and "detected" at ``hi``.
    A pre-scan of :data:`PRESCAN_POINTS` uniform points checks that the
    verdict switches exactly once; a non-monotone bracket raises
    :class:`BracketError` rather than being bisected.
    """
    if tol <= 0:
        raise ValidationError("tolerance must be positive")
    if not lo < hi:
        raise ValidationError(f"empty bracket [{lo}, {hi}]")

    def detected(x: float) -> bool:
        return criterion(family(x)).detected

    grid = np.linspace(lo, hi, PRESCAN_POINTS)
    verdicts = [detected(float(x)) for x in grid]
    if verdicts[0] or not verdicts[-1]:
        raise BracketError(
            f"{_name(criterion)}: verdict does not change from undetected to detected "
            f"on [{lo}, {hi}]"
        )
    switches = sum(a != b for a, b in zip(verdicts, verdicts[1:]))
    if switches != 1:
        raise BracketError(f"{_name(criterion)}: verdict is not monotone on [{lo}, {hi}]")

    k = verdicts.index(True)
    a, b = float(grid[k - 1]), float(grid[k])
    iterations = 0
    while b - a > tol:
        mid = (a + b) / 2
        if detected(mid):
            b = mid
        else:
            a = mid
        iterations += 1
    return ThresholdResult(_name(criterion), parameter, (a + b) / 2, (a, b), iterations)


def noisy_horodecki(a: float) -> Family:
    rho = S.horodecki_3x3(a)
    return lambda p: S.with_white_noise(rho, p)


def sweep_curve(criterion: Criterion, a_grid: Sequence[float] | None = None,
                p_tol: float = DEFAULT_P_TOL) -> SweepCurve:
    """Critical white-noise weight ``p`` of the noisy Horodecki state per ``a``.

    Grid points where the criterion does not detect even at ``p = 1`` get
    ``None``.
    """
    a_grid = default_a_grid() if a_grid is None else np.asarray(a_grid, dtype=float)
    if np.any(np.diff(a_grid) <= 0):
        raise ValidationError("a grid must be strictly increasing")
    if np.any((a_grid <= 0) | (a_grid >= 1)):
        raise ValidationError("a grid must lie inside (0, 1)")
    boundary = []
    for a in a_grid:
        family = noisy_horodecki(float(a))
        if not criterion(family(1.0)).detected:
            boundary.append(None)
            continue
        try:
            boundary.append(detection_threshold(family, criterion, 0.0, 1.0, p_tol).critical_value)
        except BracketError:
            boundary.append(None)
    return SweepCurve(_name(criterion), tuple(float(a) for a in a_grid), tuple(boundary))


def min_detection_point(criterion: Criterion, a_grid: Sequence[float] | None = None,
                        p_tol: float = 1e-7) -> tuple[float, float]:
    """Grid point with the smallest critical ``p`` (ties go to smaller ``a``)."""
    curve = sweep_curve(criterion, a_grid, p_tol)
    points = [(p, a) for a, p in zip(curve.parameter_grid, curve.boundary) if p is not None]
    if not points:
        raise BracketError(f"{curve.criterion}: no detection anywhere on the grid")
    p, a = min(points)
    return a, p


CSV_COLUMNS = (("p_ccnr", C.ccnr), ("p_opt", C.optimal_witness), ("p_thm1", C.theorem1))


def boundary_curves(a_grid: Sequence[float] | None = None, p_tol: float = DEFAULT_P_TOL) -> dict[str, SweepCurve]:
    return {col: sweep_curve(crit, a_grid, p_tol) for col, crit in CSV_COLUMNS}


def curves_to_csv(curves: dict[str, SweepCurve]) -> str:
    """``a,p_ccnr,p_opt,p_thm1`` rows; empty fields where no boundary exists."""
    cols = list(curves)
    grid = curves[cols[0]].parameter_grid
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["a"] + cols)
    for i, a in enumerate(grid):
        row = [f"{a:.6g}"]
        for c in cols:
            p = curves[c].boundary[i]
            row.append("" if p is None else f"{p:.10f}")
        w.writerow(row)
    return buf.getvalue()


# -- randomized checks -----------------------------------------------------------

def _reference_witness(dims: tuple[int, ...]):
    """A fixed state detected by thm1 but not by CCNR, when one is known."""
    if dims == (2, 2):
        return "noisy_singlet(p=0.25)", S.noisy_singlet(0.25)
    if dims == (3, 3):
        return "horodecki(a=0.232) noisy p=0.9945", S.with_white_noise(S.horodecki_3x3(0.232), 0.9945)
    return None, None


@dataclass
class HierarchyReport:
    dims: tuple[int, ...]
    samples: int
    seed: int
    patterns: dict[str, int] = field(default_factory=dict)
    violations: int = 0
    thm1_only: int = 0
    reference: dict | None = None

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> dict:
        return {
            "kind": "hierarchy",
            "dims": list(self.dims),
            "samples": self.samples,
            "seed": self.seed,
            "patterns": dict(sorted(self.patterns.items())),
            "violations": self.violations,
            "thm1_only": self.thm1_only,
            "reference": self.reference,
            "ok": self.ok,
        }


def _pattern(results: dict[str, C.CriterionResult]) -> str:
    return ",".join(k for k, r in results.items() if r.detected) or "none"


def hierarchy_check(samples: int, dims, seed: int) -> HierarchyReport:
    """Count verdict patterns on random states and flag weaker-detects-stronger-misses.

    A violation is any state detected by CCNR, the nonlinear witness, the
    optimal witness or the Bloch-vector bound but not by thm1.
    """
    if samples < 1:
        raise ValidationError("samples must be at least 1")
    dims = tuple(int(d) for d in dims)
    rng = np.random.default_rng(seed)
    report = HierarchyReport(dims, samples, seed)
    counts: Counter[str] = Counter()
    for _ in range(samples):
        res = {r.name: r for r in C.evaluate_all(S.random_density(dims, rng))}
        counts[_pattern(res)] += 1
        weaker = any(res[k].detected for k in ("ccnr", "witness", "opt-witness", "dv"))
        if weaker and not res["thm1"].detected:
            report.violations += 1
        if res["thm1"].detected and not res["ccnr"].detected:
            report.thm1_only += 1
    report.patterns = dict(counts)
    label, ref = _reference_witness(dims)
    if ref is not None:
        thm1, ccnr = C.theorem1(ref), C.ccnr(ref)
        report.reference = {
            "state": label,
            "thm1": thm1.to_dict(),
            "ccnr": ccnr.to_dict(),
            "thm1_only": thm1.detected and not ccnr.detected,
        }
    return report


@dataclass
class FalsePositiveReport:
    dims: tuple[int, ...]
    samples: int
    terms: int
    seed: int
    detections: dict[str, int] = field(default_factory=dict)
    worst_margin: dict[str, float] = field(default_factory=dict)

    @property
    def failures(self) -> int:
        return sum(self.detections.values())

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        return {
            "kind": "false_positive",
            "dims": list(self.dims),
            "samples": self.samples,
            "terms": self.terms,
            "seed": self.seed,
            "detections": dict(self.detections),
            "worst_margin": dict(self.worst_margin),
            "failures": self.failures,
            "ok": self.ok,
        }


def false_positive_scan(samples: int, dims, terms: int, seed: int) -> FalsePositiveReport:
    """Run every applicable criterion on random separable states.

    Any detection is a failure of the criterion (or of the implementation).
    """
    if samples < 1:
        raise ValidationError("samples must be at least 1")
    dims = tuple(int(d) for d in dims)
    rng = np.random.default_rng(seed)
    report = FalsePositiveReport(dims, samples, terms, seed)
    extra = [C.theorem1_bloch_form] if len(dims) == 2 else []
    for _ in range(samples):
        rho = S.random_separable(dims, terms, rng)
        for r in C.evaluate_all(rho) + [f(rho) for f in extra]:
            report.detections[r.name] = report.detections.get(r.name, 0) + int(r.detected)
            report.worst_margin[r.name] = max(report.worst_margin.get(r.name, -np.inf), r.margin)
    return report
