"""Dense complex linear algebra and index reshuffles.

Matrices are plain ``numpy.ndarray`` objects. Multipartite operators on
parties with dimensions ``dims = [d0, d1, ...]`` are viewed as index tensors
``rho[i0, i1, ..., j0, j1, ...]`` (row slots first, then column slots), which
is what ``rho.reshape(dims + dims)`` gives for the usual Kronecker ordering.
Party indices are 0-based throughout.
"""
from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from .errors import NumericalError, ValidationError

# Largest matrix side we accept; well beyond the 81x81 four-ququart case.
MAX_SIZE = 4096


def _as_matrix(a) -> np.ndarray:
    a = np.asarray(a)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if a.ndim != 2:
        raise ValidationError(f"expected a 2-d matrix, got shape {a.shape}")
    if a.size == 0:
        raise ValidationError("empty matrix")
    return a


def _check_square(rho: np.ndarray, size: int) -> None:
    if rho.shape != (size, size):
        raise ValidationError(
            f"matrix of shape {rho.shape} does not match subsystem size {size}"
        )


def _check_dims(dims: Sequence[int]) -> list[int]:
    dims = [int(d) for d in dims]
    if not dims or any(d < 1 for d in dims):
        raise ValidationError(f"invalid dimension list {dims}")
    return dims


def kron(a, b) -> np.ndarray:
    """Kronecker product; block ``(i, j)`` of the result is ``a[i, j] * b``."""
    a, b = _as_matrix(a), _as_matrix(b)
    rows, cols = a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]
    if rows > MAX_SIZE or cols > MAX_SIZE:
        raise ValidationError(f"Kronecker product of size {rows}x{cols} too large")
    return np.kron(a, b)


def vec(a) -> np.ndarray:
    """Stack the columns of ``a`` into a column vector.

    ``vec([[1, 2], [3, 4]])`` is ``[1, 3, 2, 4]^T``.
    """
    a = _as_matrix(a)
    return a.reshape(-1, order="F")[:, None]


def svd(a) -> np.ndarray:
    """Singular values of ``a`` in descending order."""
    a = _as_matrix(a)
    if not np.all(np.isfinite(a)):
        raise ValidationError("matrix has non-finite entries")
    try:
        s = np.linalg.svd(a, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD did not converge: {exc}") from exc
    return s


def trace_norm(a) -> float:
    """Sum of singular values."""
    return float(np.sum(svd(a)))


def partial_trace(rho, dims: Sequence[int], keep) -> np.ndarray:
    """Reduced operator on the parties in ``keep`` (kept in original order)."""
    rho = _as_matrix(rho)
    dims = _check_dims(dims)
    n = len(dims)
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise ValidationError("keep set must not be empty")
    if keep[0] < 0 or keep[-1] >= n:
        raise ValidationError(f"party indices {keep} out of range for {n} parties")
    _check_square(rho, int(np.prod(dims)))

    t = rho.reshape(dims + dims)
    # trace out from the highest party down so axis numbers stay valid
    for p in reversed(range(n)):
        if p in keep:
            continue
        t = np.trace(t, axis1=p, axis2=p + t.ndim // 2)
    d = int(np.prod([dims[k] for k in keep]))
    return t.reshape(d, d)


def partial_transpose(rho, dims: Sequence[int], party: int = 1) -> np.ndarray:
    """Transpose the indices of a single party."""
    rho = _as_matrix(rho)
    dims = _check_dims(dims)
    n = len(dims)
    if not 0 <= party < n:
        raise ValidationError(f"party {party} out of range for {n} parties")
    size = int(np.prod(dims))
    _check_square(rho, size)
    axes = list(range(2 * n))
    axes[party], axes[n + party] = axes[n + party], axes[party]
    return rho.reshape(dims + dims).transpose(axes).reshape(size, size)


def realign(rho, dA: int, dB: int) -> np.ndarray:
    """Block realignment of a ``dA x dA`` block matrix with ``dB x dB`` blocks.

    Row ``a + dA*b`` of the ``dA^2 x dB^2`` result is ``vec(Z_ab)^T``, where
    ``Z_ab`` is block ``(a, b)``. For products this gives
    ``realign(s (x) t) = vec(s) vec(t)^T``.
    """
    rho = _as_matrix(rho)
    if dA < 1 or dB < 1:
        raise ValidationError(f"invalid dimensions {dA}, {dB}")
    _check_square(rho, dA * dB)
    # rho[a*dB + k, b*dB + l] -> R[a + dA*b, k + dB*l]
    t = rho.reshape(dA, dB, dA, dB)
    return t.transpose(2, 0, 3, 1).reshape(dA * dA, dB * dB)


def permute_subsystems(rho, dims: Sequence[int], perm: Sequence[int]) -> np.ndarray:
    """Move tensor factor ``j`` to position ``perm[j]``.

    For a product ``s0 (x) s1 (x) ...`` the result has ``s_j`` at position
    ``perm[j]``; with ``perm`` the concatenation of two sides of a
    bipartition this re-embeds ``rho_S (x) rho_S'`` in party order.
    """
    rho = _as_matrix(rho)
    dims = _check_dims(dims)
    n = len(dims)
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(n)):
        raise ValidationError(f"{perm} is not a permutation of {n} parties")
    size = int(np.prod(dims))
    _check_square(rho, size)
    inv = np.argsort(perm)
    axes = list(inv) + [n + i for i in inv]
    return rho.reshape(dims + dims).transpose(axes).reshape(size, size)


def _exchange(rho, dims: Sequence[int], pairs: Sequence[tuple[int, int]]) -> np.ndarray:
    n = len(dims)
    axes = list(range(2 * n))
    shape = list(dims) + list(dims)
    for m, n_ in pairs:
        # column slot of m trades places with row slot of n_
        axes[n_], axes[n + m] = axes[n + m], axes[n_]
    new_shape = [shape[a] for a in axes]
    rows = int(np.prod(new_shape[:n]))
    cols = int(np.prod(new_shape[n:]))
    return rho.reshape(shape).transpose(axes).reshape(rows, cols)


def pair_realign(rho, dims: Sequence[int], m: int, n: int) -> np.ndarray:
    """Realign parties ``m`` and ``n``, leaving the others untouched.

    In ``rho[i0..., j0...]`` the column slot ``j_m`` is exchanged with the row
    slot ``i_n``; rows are then all row slots and columns all column slots,
    each in party order. For two parties the singular values coincide with
    those of :func:`realign`.
    """
    rho = _as_matrix(rho)
    dims = _check_dims(dims)
    N = len(dims)
    if m == n:
        raise ValidationError("pair_realign needs two distinct parties")
    if not (0 <= m < N and 0 <= n < N):
        raise ValidationError(f"parties ({m}, {n}) out of range for {N} parties")
    _check_square(rho, int(np.prod(dims)))
    return _exchange(rho, dims, [(m, n)])


def multi_pair_realign(rho, dims: Sequence[int], pairing: Sequence[tuple[int, int]]) -> np.ndarray:
    """Apply the :func:`pair_realign` exchange for every pair of a perfect matching."""
    rho = _as_matrix(rho)
    dims = _check_dims(dims)
    N = len(dims)
    pairing = [(int(m), int(n)) for m, n in pairing]
    flat = [p for pair in pairing for p in pair]
    if N % 2 or sorted(flat) != list(range(N)):
        raise ValidationError(f"{pairing} is not a perfect matching of {N} parties")
    _check_square(rho, int(np.prod(dims)))
    return _exchange(rho, dims, pairing)
