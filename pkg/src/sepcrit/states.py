"""Validated density matrices and the states used in the examples and tests."""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ValidationError
from .linalg import partial_trace

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10


@dataclass(frozen=True)
class DensityMatrix:
    """A quantum state on parties of dimensions ``dims``.

    Construction validates Hermiticity, unit trace and positivity and raises
    :class:`ValidationError` instead of repairing the input.
    """

    mat: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        mat = np.array(self.mat, dtype=complex)
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "mat", mat)
        object.__setattr__(self, "dims", dims)
        validate(mat, dims)
        mat.setflags(write=False)

    @property
    def size(self) -> int:
        return self.mat.shape[0]

    @property
    def n_parties(self) -> int:
        return len(self.dims)

    def reduced(self, keep) -> np.ndarray:
        return partial_trace(self.mat, self.dims, keep)

    def purity(self, party: int) -> float:
        r = self.reduced([party])
        return float(np.real(np.trace(r @ r)))


def validate(mat: np.ndarray, dims) -> None:
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValidationError(f"density matrix must be square, got {mat.shape}")
    if not dims or any(d < 1 for d in dims):
        raise ValidationError(f"invalid dimension list {list(dims)}")
    if int(np.prod(dims)) != mat.shape[0]:
        raise ValidationError(
            f"dims {list(dims)} do not match matrix size {mat.shape[0]}"
        )
    if not np.all(np.isfinite(mat)):
        raise ValidationError("density matrix has non-finite entries")
    herm = np.max(np.abs(mat - mat.conj().T))
    if herm > HERMITIAN_TOL:
        raise ValidationError(f"matrix is not Hermitian (deviation {herm:.3g})")
    tr = np.trace(mat)
    if abs(tr - 1) > TRACE_TOL:
        raise ValidationError(f"trace is {tr.real:.15g}, expected 1")
    lam = np.linalg.eigvalsh(mat)[0]
    if lam < -PSD_TOL:
        raise ValidationError(f"matrix is not positive semidefinite (min eigenvalue {lam:.3g})")


def symmetrize(mat, dims) -> DensityMatrix:
    """Hermitian part of ``mat``, renormalized to unit trace.

    Meant for external data carrying round-off; positivity is still checked.
    """
    mat = np.asarray(mat, dtype=complex)
    h = (mat + mat.conj().T) / 2
    tr = np.trace(h).real
    if tr <= 0:
        raise ValidationError("matrix has non-positive trace")
    return DensityMatrix(h / tr, dims)


def _pure(psi, dims) -> DensityMatrix:
    psi = np.asarray(psi, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    return DensityMatrix(np.outer(psi, psi.conj()), dims)


def horodecki_3x3(a: float) -> DensityMatrix:
    """Horodecki's 3x3 bound entangled state, ``0 < a < 1``."""
    if not 0 < a < 1:
        raise ValidationError(f"parameter a={a} outside (0, 1)")
    m = np.diag([a, a, a, a, a, a, (1 + a) / 2, a, (1 + a) / 2])
    # off-diagonal a's of the |00>+|11>+|22> block; (8, 8) keeps (1+a)/2
    for i, j in [(0, 4), (0, 8), (4, 8)]:
        m[i, j] = m[j, i] = a
    m[6, 8] = m[8, 6] = np.sqrt(1 - a * a) / 2
    return DensityMatrix(m / (8 * a + 1), (3, 3))


def with_white_noise(rho: DensityMatrix, p: float) -> DensityMatrix:
    """``p * rho + (1 - p) * I / size``."""
    if not 0 <= p <= 1:
        raise ValidationError(f"mixing weight p={p} outside [0, 1]")
    n = rho.size
    return DensityMatrix(p * rho.mat + (1 - p) * np.eye(n) / n, rho.dims)


def singlet() -> DensityMatrix:
    return _pure([0, 1, -1, 0], (2, 2))


def noisy_singlet(p: float) -> DensityMatrix:
    """Singlet mixed with the separable ``2/3 |00><00| + 1/3 |01><01|``."""
    if not 0 <= p <= 1:
        raise ValidationError(f"mixing weight p={p} outside [0, 1]")
    sep = np.diag([2 / 3, 1 / 3, 0, 0])
    return DensityMatrix(p * singlet().mat + (1 - p) * sep, (2, 2))


def max_entangled(d: int) -> DensityMatrix:
    """Projector onto ``sum_i |ii> / sqrt(d)``."""
    if d < 2:
        raise ValidationError(f"local dimension d={d} must be at least 2")
    psi = np.eye(d).reshape(-1)
    return _pure(psi, (d, d))


def maximally_mixed(dims) -> DensityMatrix:
    n = int(np.prod(dims))
    return DensityMatrix(np.eye(n) / n, dims)


def product_state(*factors: DensityMatrix) -> DensityMatrix:
    mat = np.ones((1, 1), dtype=complex)
    dims: tuple[int, ...] = ()
    for f in factors:
        mat = np.kron(mat, f.mat)
        dims += f.dims
    return DensityMatrix(mat, dims)


def _rng(seed) -> np.random.Generator:
    # an existing Generator is used as-is so batches can share one stream
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_pure_vector(d: int, seed) -> np.ndarray:
    rng = _rng(seed)
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def random_density(dims, seed) -> DensityMatrix:
    """``G G^H / Tr(G G^H)`` for a complex Ginibre matrix ``G``."""
    rng = _rng(seed)
    dims = tuple(int(d) for d in dims)
    n = int(np.prod(dims))
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    m = g @ g.conj().T
    m = (m + m.conj().T) / 2
    return DensityMatrix(m / np.trace(m).real, dims)


def random_separable(dims, terms: int, seed) -> DensityMatrix:
    """Dirichlet-weighted mixture of ``terms`` random pure product states."""
    if terms < 1:
        raise ValidationError("terms must be at least 1")
    rng = _rng(seed)
    dims = tuple(int(d) for d in dims)
    n = int(np.prod(dims))
    weights = rng.dirichlet(np.ones(terms))
    mat = np.zeros((n, n), dtype=complex)
    for w in weights:
        psi = np.ones(1, dtype=complex)
        for d in dims:
            psi = np.kron(psi, random_pure_vector(d, rng))
        mat += w * np.outer(psi, psi.conj())
    mat = (mat + mat.conj().T) / 2
    return DensityMatrix(mat / np.trace(mat).real, dims)


def to_json(rho: DensityMatrix) -> dict:
    return {
        "dims": list(rho.dims),
        "re": rho.mat.real.tolist(),
        "im": rho.mat.imag.tolist(),
    }


def from_json(obj: dict) -> DensityMatrix:
    try:
        dims = [int(d) for d in obj["dims"]]
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed density-matrix record: {exc}") from exc
    if re.shape != im.shape:
        raise ValidationError("real and imaginary parts differ in shape")
    return DensityMatrix(re + 1j * im, dims)


def load(path) -> DensityMatrix:
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read density matrix from {path}: {exc}") from exc
    if not isinstance(obj, dict):
        raise ValidationError(f"{path}: expected a JSON object")
    return from_json(obj)


def save(rho: DensityMatrix, path) -> None:
    Path(path).write_text(json.dumps(to_json(rho)))
