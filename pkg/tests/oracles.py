"""Slow, explicit-loop reference implementations used only by the tests.

Nothing here imports from ``sepcrit``; each routine is written directly from
the index definitions so it can check the vectorized code paths.
"""
import itertools

import numpy as np


def singular_values(a):
    """Singular values from a Hermitian eigensolve.

    The dilation [[0, a], [a^H, 0]] has eigenvalues +-s_i (plus zeros), so
    the top min(m, n) eigenvalues are the singular values at full precision,
    unlike square roots of the spectrum of a^H a.
    """
    a = np.asarray(a, dtype=complex)
    m, n = a.shape
    h = np.zeros((m + n, m + n), dtype=complex)
    h[:m, m:] = a
    h[m:, :m] = a.conj().T
    ev = np.linalg.eigvalsh(h)[::-1]
    return np.clip(ev[:min(m, n)], 0, None)


def trace_norm(a):
    return float(np.sum(singular_values(a)))


def vec(a):
    a = np.asarray(a)
    m, n = a.shape
    out = np.zeros(m * n, dtype=a.dtype)
    for l in range(n):
        for k in range(m):
            out[k + m * l] = a[k, l]
    return out


def realign(z, m, n):
    """Stack vec(Z_ab)^T as rows, block-row index fastest."""
    z = np.asarray(z, dtype=complex)
    rows = []
    for b in range(m):
        for a in range(m):
            rows.append(vec(z[a * n:(a + 1) * n, b * n:(b + 1) * n]))
    return np.array(rows)


def ptrace_bipartite(rho, dA, dB):
    rho = np.asarray(rho, dtype=complex)
    ra = np.zeros((dA, dA), dtype=complex)
    rb = np.zeros((dB, dB), dtype=complex)
    for i in range(dA):
        for j in range(dA):
            for k in range(dB):
                ra[i, j] += rho[i * dB + k, j * dB + k]
    for i in range(dB):
        for j in range(dB):
            for k in range(dA):
                rb[i, j] += rho[k * dB + i, k * dB + j]
    return ra, rb


def ptranspose_b(x, dA, dB):
    y = np.zeros_like(np.asarray(x, dtype=complex))
    for a, b, c, d in itertools.product(range(dA), range(dB), range(dA), range(dB)):
        y[a * dB + b, c * dB + d] = x[a * dB + d, c * dB + b]
    return y


def thm1_sides(rho, dA, dB):
    ra, rb = ptrace_bipartite(rho, dA, dB)
    lhs = trace_norm(realign(rho - np.kron(ra, rb), dA, dB))
    pa, pb = np.trace(ra @ ra).real, np.trace(rb @ rb).real
    return lhs, np.sqrt(max((1 - pa) * (1 - pb), 0))


def prop3_sides(rho, dA, dB):
    ra, rb = ptrace_bipartite(rho, dA, dB)
    x = ptranspose_b(rho - np.kron(ra, rb), dA, dB)
    lhs = float(np.sum(np.abs(np.linalg.eigvalsh(x))))
    pa, pb = np.trace(ra @ ra).real, np.trace(rb @ rb).real
    return lhs, 2 * np.sqrt(max((1 - pa) * (1 - pb), 0))


def ccnr_sides(rho, dA, dB):
    return trace_norm(realign(rho, dA, dB)), 1.0


def opt_witness_sides(rho, dA, dB):
    ra, rb = ptrace_bipartite(rho, dA, dB)
    tau = trace_norm(realign(rho - np.kron(ra, rb), dA, dB))
    return tau + (np.trace(ra @ ra).real + np.trace(rb @ rb).real) / 2, 1.0


def noisy_singlet(p):
    psi = np.array([0, 1, -1, 0]) / np.sqrt(2)
    return p * np.outer(psi, psi) + (1 - p) * np.diag([2 / 3, 1 / 3, 0, 0])


def bisect(margin, lo, hi, steps=60):
    """Root of an increasing margin function on [lo, hi]."""
    for _ in range(steps):
        mid = (lo + hi) / 2
        if margin(mid) > 0:
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2


def pauli():
    return [
        np.array([[0, 1], [1, 0]], dtype=complex),
        np.array([[0, -1j], [1j, 0]]),
        np.array([[1, 0], [0, -1]], dtype=complex),
    ]
