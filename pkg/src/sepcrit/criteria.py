"""Separability criteria returning uniform :class:`CriterionResult` records.

Every criterion is a necessary condition for separability of the form
``lhs <= rhs``; a state is reported as detected (entangled) only when
``lhs - rhs`` exceeds :data:`DETECTION_GUARD`, so equality cases stay
undetected.
"""
from __future__ import annotations

import itertools
import json
from collections.abc import Sequence
from dataclasses import asdict, dataclass

import numpy as np

from . import linalg
from .errors import ValidationError
from .states import DensityMatrix

DETECTION_GUARD = 1e-9
# 1 - Tr(rho_k^2) below this counts as a pure marginal (exact zero bound)
PURE_TOL = 1e-12

CRITERIA_NAMES = (
    "ccnr", "witness", "opt-witness", "thm1", "dv", "prop3", "thm2-pair", "thm2-full",
)


@dataclass(frozen=True)
class CriterionResult:
    name: str
    lhs: float
    rhs: float
    margin: float
    detected: bool

    @classmethod
    def from_sides(cls, name: str, lhs: float, rhs: float) -> "CriterionResult":
        lhs, rhs = float(lhs), float(rhs)
        margin = lhs - rhs
        return cls(name, lhs, rhs, margin, bool(margin > DETECTION_GUARD))

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass(frozen=True)
class BlochDecomposition:
    T: np.ndarray
    r: np.ndarray
    s: np.ndarray


@dataclass(frozen=True)
class PartitionClasses:
    """Bipartitions of ``n`` parties split by side parity.

    Each bipartition is a pair of sorted tuples; the trivial one is
    ``((), (0, ..., n-1))`` and otherwise the first side holds party 0.
    """

    n: int
    p1: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    p2: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]


# -- bases -------------------------------------------------------------------

def gell_mann(d: int) -> list[np.ndarray]:
    """Generalized Gell-Mann matrices with ``Tr(l_i l_j) = 2 delta_ij``.

    Order: symmetric ``(j, k)``, antisymmetric ``(j, k)`` for ``j < k`` in
    lexicographic order, then the ``d - 1`` diagonal ones.
    """
    if d < 2:
        raise ValidationError(f"dimension d={d} must be at least 2")
    sym, asym, diag = [], [], []
    for j, k in itertools.combinations(range(d), 2):
        m = np.zeros((d, d), dtype=complex)
        m[j, k] = m[k, j] = 1
        sym.append(m)
        m = np.zeros((d, d), dtype=complex)
        m[j, k], m[k, j] = -1j, 1j
        asym.append(m)
    for l in range(1, d):
        v = np.zeros(d)
        v[:l] = 1
        v[l] = -l
        diag.append(np.diag(v * np.sqrt(2 / (l * (l + 1)))).astype(complex))
    return sym + asym + diag


def default_basis(d: int) -> list[np.ndarray]:
    """``I/sqrt(d)`` followed by the Gell-Mann matrices scaled by ``1/sqrt(2)``.

    A complete Hilbert-Schmidt orthonormal set of ``d^2`` Hermitian operators.
    """
    return [np.eye(d, dtype=complex) / np.sqrt(d)] + [g / np.sqrt(2) for g in gell_mann(d)]


def _expect(rho: np.ndarray, op: np.ndarray) -> float:
    # Tr(rho op) without forming the product
    return float(np.real(np.sum(rho.T * op)))


def _check_bipartite(rho: DensityMatrix) -> tuple[int, int]:
    if rho.n_parties != 2:
        raise ValidationError(f"criterion needs a bipartite state, got dims {list(rho.dims)}")
    return rho.dims


def _check_basis(basis: Sequence[np.ndarray], d: int) -> None:
    if len(basis) != d * d or any(np.shape(g) != (d, d) for g in basis):
        raise ValidationError(f"basis is not a complete set of {d}x{d} operators")


def _marginals(rho: DensityMatrix):
    return rho.reduced([0]), rho.reduced([1])


def _purity(r: np.ndarray) -> float:
    return float(np.real(np.sum(r * r.T)))


def _correlation_part(rho: DensityMatrix) -> np.ndarray:
    ra, rb = _marginals(rho)
    return rho.mat - np.kron(ra, rb)


def _sqrt0(x: float) -> float:
    return float(np.sqrt(max(x, 0.0)))


def _mixedness(purity: float) -> float:
    m = 1.0 - purity
    return 0.0 if m < PURE_TOL else m


# -- bipartite criteria --------------------------------------------------------

def ccnr(rho: DensityMatrix) -> CriterionResult:
    dA, dB = _check_bipartite(rho)
    return CriterionResult.from_sides("ccnr", linalg.trace_norm(linalg.realign(rho.mat, dA, dB)), 1.0)


def covariance_tau(rho: DensityMatrix, basis_a=None, basis_b=None) -> np.ndarray:
    """``tau_lm = <A_l (x) B_m> - <A_l (x) 1><1 (x) B_m>``."""
    dA, dB = _check_bipartite(rho)
    basis_a = default_basis(dA) if basis_a is None else basis_a
    basis_b = default_basis(dB) if basis_b is None else basis_b
    _check_basis(basis_a, dA)
    _check_basis(basis_b, dB)
    ra, rb = _marginals(rho)
    ea = np.array([_expect(ra, g) for g in basis_a])
    eb = np.array([_expect(rb, g) for g in basis_b])
    joint = np.array([[_expect(rho.mat, np.kron(ga, gb)) for gb in basis_b] for ga in basis_a])
    return joint - np.outer(ea, eb)


def witness_value(rho: DensityMatrix, basis_a=None, basis_b=None) -> float:
    """The nonlinear CCNR witness; negative values certify entanglement.

    Bases are paired by position. For unequal local dimensions the shorter
    list is padded with zero operators.
    """
    dA, dB = _check_bipartite(rho)
    basis_a = list(default_basis(dA) if basis_a is None else basis_a)
    basis_b = list(default_basis(dB) if basis_b is None else basis_b)
    _check_basis(basis_a, dA)
    _check_basis(basis_b, dB)
    k = max(len(basis_a), len(basis_b))
    basis_a += [np.zeros((dA, dA))] * (k - len(basis_a))
    basis_b += [np.zeros((dB, dB))] * (k - len(basis_b))
    ia, ib = np.eye(dA), np.eye(dB)
    f = 1.0
    for ga, gb in zip(basis_a, basis_b):
        f -= _expect(rho.mat, np.kron(ga, gb))
        f -= 0.5 * _expect(rho.mat, np.kron(ga, ib) - np.kron(ia, gb)) ** 2
    return f


def nonlinear_witness(rho: DensityMatrix, basis_a=None, basis_b=None) -> CriterionResult:
    return CriterionResult.from_sides("witness", -witness_value(rho, basis_a, basis_b), 0.0)


def optimal_witness(rho: DensityMatrix) -> CriterionResult:
    _check_bipartite(rho)
    ra, rb = _marginals(rho)
    dA, dB = rho.dims
    tau_norm = linalg.trace_norm(linalg.realign(_correlation_part(rho), dA, dB))
    lhs = tau_norm + (_purity(ra) + _purity(rb)) / 2
    return CriterionResult.from_sides("opt-witness", lhs, 1.0)


def _thm1_bound(rho: DensityMatrix) -> float:
    ra, rb = _marginals(rho)
    return _sqrt0(_mixedness(_purity(ra)) * _mixedness(_purity(rb)))


def theorem1(rho: DensityMatrix) -> CriterionResult:
    """``||R(rho - rho_A (x) rho_B)|| <= sqrt((1 - Tr rho_A^2)(1 - Tr rho_B^2))``."""
    dA, dB = _check_bipartite(rho)
    lhs = linalg.trace_norm(linalg.realign(_correlation_part(rho), dA, dB))
    return CriterionResult.from_sides("thm1", lhs, _thm1_bound(rho))


def prop3(rho: DensityMatrix) -> CriterionResult:
    """Partial-transpose analogue of :func:`theorem1` with a doubled bound."""
    _check_bipartite(rho)
    lhs = linalg.trace_norm(linalg.partial_transpose(_correlation_part(rho), rho.dims, 1))
    return CriterionResult.from_sides("prop3", lhs, 2 * _thm1_bound(rho))


def bloch_decompose(rho: DensityMatrix) -> BlochDecomposition:
    M, N = _check_bipartite(rho)
    la, lb = gell_mann(M), gell_mann(N)
    ra, rb = _marginals(rho)
    r = np.array([M / 2 * _expect(ra, g) for g in la])
    s = np.array([N / 2 * _expect(rb, g) for g in lb])
    T = np.array([[M * N / 4 * _expect(rho.mat, np.kron(ga, gb)) for gb in lb] for ga in la])
    return BlochDecomposition(T, r, s)


def bloch_reconstruct(bd: BlochDecomposition, M: int, N: int) -> np.ndarray:
    la, lb = gell_mann(M), gell_mann(N)
    ia, ib = np.eye(M), np.eye(N)
    out = np.kron(ia, ib).astype(complex)
    out += sum(ri * np.kron(g, ib) for ri, g in zip(bd.r, la))
    out += sum(sj * np.kron(ia, g) for sj, g in zip(bd.s, lb))
    for i, ga in enumerate(la):
        for j, gb in enumerate(lb):
            out += bd.T[i, j] * np.kron(ga, gb)
    return out / (M * N)


def dv_criterion(rho: DensityMatrix) -> CriterionResult:
    M, N = _check_bipartite(rho)
    T = bloch_decompose(rho).T
    return CriterionResult.from_sides("dv", linalg.trace_norm(T), np.sqrt(M * N * (M - 1) * (N - 1) / 4))


def theorem1_bloch_form(rho: DensityMatrix) -> CriterionResult:
    M, N = _check_bipartite(rho)
    bd = bloch_decompose(rho)
    lhs = linalg.trace_norm(bd.T - np.outer(bd.r, bd.s))
    fa = M - 1 - 2 * np.sum(bd.r ** 2) / M
    fb = N - 1 - 2 * np.sum(bd.s ** 2) / N
    return CriterionResult.from_sides("thm1-bloch", lhs, _sqrt0(M * N / 4 * fa * fb))


# -- even-partite criteria -------------------------------------------------------

def partition_classes(n: int) -> PartitionClasses:
    if n < 2 or n % 2:
        raise ValidationError(f"partition classes need an even number of parties, got {n}")
    everyone = tuple(range(n))
    p1, p2 = [], [((), everyone)]
    for size in range(1, n):
        for rest in itertools.combinations(range(1, n), size - 1):
            side = (0,) + rest
            other = tuple(p for p in everyone if p not in side)
            (p1 if size % 2 else p2).append((side, other))
    return PartitionClasses(n, tuple(p1), tuple(p2))


def _partition_term(rho: DensityMatrix, side: tuple, other: tuple) -> np.ndarray:
    if not side:
        return rho.mat
    prod = np.kron(rho.reduced(side), rho.reduced(other))
    order = list(side) + list(other)
    return linalg.permute_subsystems(prod, [rho.dims[p] for p in order], order)


def delta_rho(rho: DensityMatrix) -> np.ndarray:
    """Signed combination of even/even minus odd/odd bipartition products."""
    n = rho.n_parties
    classes = partition_classes(n)
    q2 = sum(_partition_term(rho, a, b) for a, b in classes.p2)
    q1 = sum(_partition_term(rho, a, b) for a, b in classes.p1)
    return (q2 - q1) / 2 ** (n - 2)


def _thm2_bound(rho: DensityMatrix) -> float:
    mixedness = [_mixedness(_purity(rho.reduced([k]))) for k in range(rho.n_parties)]
    return min(_sqrt0(mixedness[k] * mixedness[l])
               for k, l in itertools.permutations(range(rho.n_parties), 2))


def _thm2_name(base: str, rhs: float) -> str:
    return base + " (rhs=0)" if rhs == 0 else base


def theorem2_pair(rho: DensityMatrix, m: int = 0, n: int = 1) -> CriterionResult:
    if rho.n_parties % 2:
        raise ValidationError("even number of parties required")
    lhs = linalg.trace_norm(linalg.pair_realign(delta_rho(rho), rho.dims, m, n))
    rhs = _thm2_bound(rho)
    return CriterionResult.from_sides(_thm2_name(f"thm2-pair[{m},{n}]", rhs), lhs, rhs)


def theorem2_full(rho: DensityMatrix, pairing=None) -> CriterionResult:
    n = rho.n_parties
    if n % 2:
        raise ValidationError("even number of parties required")
    if pairing is None:
        pairing = [(k, k + 1) for k in range(0, n, 2)]
    pairing = [tuple(int(x) for x in pair) for pair in pairing]
    lhs = linalg.trace_norm(linalg.multi_pair_realign(delta_rho(rho), rho.dims, pairing))
    rhs = _thm2_bound(rho) / 2 ** (n // 2 - 1)
    label = ",".join(f"{a}{b}" for a, b in pairing)
    return CriterionResult.from_sides(_thm2_name(f"thm2-full[{label}]", rhs), lhs, rhs)


def perfect_matchings(parties: Sequence[int]) -> list[list[tuple[int, int]]]:
    parties = list(parties)
    if not parties:
        return [[]]
    first, rest = parties[0], parties[1:]
    out = []
    for i, partner in enumerate(rest):
        for tail in perfect_matchings(rest[:i] + rest[i + 1:]):
            out.append([(first, partner)] + tail)
    return out


# -- dispatch ------------------------------------------------------------------

BIPARTITE = {
    "ccnr": ccnr,
    "witness": nonlinear_witness,
    "opt-witness": optimal_witness,
    "thm1": theorem1,
    "dv": dv_criterion,
    "prop3": prop3,
}


def evaluate(rho: DensityMatrix, names: Sequence[str]) -> list[CriterionResult]:
    """Run the named criteria; ``thm2-*`` expand over all pairs/matchings."""
    out = []
    for name in names:
        if name in BIPARTITE:
            out.append(BIPARTITE[name](rho))
        elif name == "thm2-pair":
            out += [theorem2_pair(rho, m, n)
                    for m, n in itertools.combinations(range(rho.n_parties), 2)]
        elif name == "thm2-full":
            out += [theorem2_full(rho, p) for p in perfect_matchings(range(rho.n_parties))]
        else:
            raise ValidationError(f"unknown criterion {name!r}")
    return out


def evaluate_all(rho: DensityMatrix) -> list[CriterionResult]:
    """All applicable criteria in a fixed order.

    Bipartite states get the six bipartite criteria; even multipartite states
    get the thm2 criteria over every pair and every perfect matching.
    """
    n = rho.n_parties
    if n == 2:
        return evaluate(rho, list(BIPARTITE))
    if n % 2:
        raise ValidationError(f"no criteria for an odd number ({n}) of parties")
    return evaluate(rho, ["thm2-pair", "thm2-full"])
