"""Small dense complex linear algebra: LU with partial pivoting, Hermitian Jacobi."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

PIVOT_FLOOR = 1e-300
MAX_SWEEPS = 100


class SingularMatrixError(ArithmeticError):
    pass


class ConvergenceError(ArithmeticError):
    pass


@dataclass(frozen=True)
class LUFactorization:
    """Packed ``L`` (unit lower, below the diagonal) and ``U``; ``P @ A == L @ U``."""

    factors: np.ndarray
    pivots: np.ndarray
    parity: int

    @property
    def lower(self) -> np.ndarray:
        return np.tril(self.factors, -1) + np.eye(self.factors.shape[0])

    @property
    def upper(self) -> np.ndarray:
        return np.triu(self.factors)

    @property
    def permutation(self) -> np.ndarray:
        return np.eye(self.factors.shape[0])[self.pivots]

    def det(self) -> complex:
        return self.parity * complex(np.prod(np.diag(self.factors)))


def lu_factor(a: np.ndarray) -> LUFactorization:
    lu = np.array(a, dtype=complex, copy=True)
    if lu.ndim != 2 or lu.shape[0] != lu.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {lu.shape}")
    n = lu.shape[0]
    perm = np.arange(n)
    parity = 1
    for k in range(n):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if abs(lu[p, k]) < PIVOT_FLOOR:
            raise SingularMatrixError(f"pivot {k} has magnitude {abs(lu[p, k]):.3e}")
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            perm[[k, p]] = perm[[p, k]]
            parity = -parity
        lu[k + 1:, k] /= lu[k, k]
        lu[k + 1:, k + 1:] -= np.outer(lu[k + 1:, k], lu[k, k + 1:])
    return LUFactorization(lu, perm, parity)


def lu_solve(a: np.ndarray | LUFactorization, b: np.ndarray) -> np.ndarray:
    """Solve ``a @ x == b`` for a vector or a block of right-hand sides."""
    fac = a if isinstance(a, LUFactorization) else lu_factor(a)
    lu = fac.factors
    n = lu.shape[0]
    b = np.asarray(b, dtype=complex)
    vector = b.ndim == 1
    x = (b[:, None] if vector else b)[fac.pivots].copy()
    if x.shape[0] != n:
        raise ValueError(f"right-hand side has {x.shape[0]} rows, matrix has {n}")
    for i in range(1, n):
        x[i] -= lu[i, :i] @ x[:i]
    for i in range(n - 1, -1, -1):
        x[i] -= lu[i, i + 1:] @ x[i + 1:]
        x[i] /= lu[i, i]
    return x[:, 0] if vector else x


def vandermonde_matrix(nodes) -> np.ndarray:
    """Rows are descending powers: entry ``(j, k) = nodes[k] ** (m-1-j)``."""
    nodes = np.asarray(nodes, dtype=complex)
    m = len(nodes)
    v = np.ones((m, m), dtype=complex)
    for j in range(m - 2, -1, -1):
        v[j] = v[j + 1] * nodes
    return v


def vandermonde_det(nodes) -> complex:
    """``prod_{j<k} (x_j - x_k)``; equals ``det(vandermonde_matrix(nodes))``."""
    nodes = [complex(z) for z in nodes]
    if not nodes:
        raise ValueError("need at least one node")
    out = 1.0 + 0.0j
    for j in range(len(nodes)):
        for k in range(j + 1, len(nodes)):
            out *= nodes[j] - nodes[k]
    return out


def _symmetrize(h: np.ndarray) -> np.ndarray:
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    return 0.5 * (h + h.conj().T)


def hermitian_eigvals(h: np.ndarray, tol: float = 1e-13) -> np.ndarray:
    """Eigenvalues (ascending) of a Hermitian matrix by cyclic complex Jacobi."""
    a = _symmetrize(h)
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    if not np.any(a.imag):
        a = a.real.copy()
    n = a.shape[0]
    scale = float(np.linalg.norm(a))
    if scale == 0.0 or n == 1:
        return np.sort(np.diag(a).real)
    target = tol * scale
    for _ in range(MAX_SWEEPS):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= target:
            return np.sort(np.diag(a).real)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                # Rotate the phase out of a[p, q], then apply a real Givens rotation.
                if a.dtype.kind == "c":
                    phase = apq / mag
                    a[:, q] *= phase.conjugate()
                    a[q, :] *= phase
                elif apq < 0.0:
                    a[:, q] *= -1.0
                    a[q, :] *= -1.0
                app, aqq = a[p, p].real, a[q, q].real
                tau = (aqq - app) / (2.0 * mag)
                t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                col_p = a[:, p].copy()
                a[:, p] = c * col_p - s * a[:, q]
                a[:, q] = s * col_p + c * a[:, q]
                row_p = a[p, :].copy()
                a[p, :] = c * row_p - s * a[q, :]
                a[q, :] = s * row_p + c * a[q, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    raise ConvergenceError(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")


def hermitian_min_eig(h: np.ndarray) -> float:
    return float(hermitian_eigvals(h)[0])
