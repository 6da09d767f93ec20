"""Closed-form Weyl functions of the Friedrichs and Krein extensions.

Both matrices have the form ``diag(C) @ H @ diag(C)`` where ``H`` is a
Hankel matrix: ``H[j, k] = -w**(j+k+1) / sin((j+k+1)*alpha)`` with
``w`` the 2n-th root of ``-lambda`` (Friedrichs) or ``-1/w`` (Krein).
"""

from __future__ import annotations

import enum
import math

import numpy as np

from .core import (
    UpperHalfPoint,
    alpha,
    boundary_root_minus_lambda,
    c_constants,
    check_order,
    root_minus_lambda,
)


class ExtensionKind(str, enum.Enum):
    FRIEDRICHS = "friedrichs"
    KREIN = "krein"

    @classmethod
    def parse(cls, value: "ExtensionKind | str") -> "ExtensionKind":
        if isinstance(value, cls):
            return value
        text = str(value).strip().lower()
        for kind in cls:
            if text in (kind.value, kind.value[0]):
                return kind
        raise ValueError(f"unknown extension kind {value!r}")


class SingularBoundaryError(ValueError):
    """Krein boundary value requested at ``x = 0``."""


def hankel_core(n: int, kind: ExtensionKind, roots: np.ndarray) -> np.ndarray:
    """Anti-diagonal values ``-b**m / sin(m*alpha)``, ``m = 1..2n-1``.

    ``roots`` holds 2n-th roots of ``-lambda``; shape ``(N,)`` gives ``(N, 2n-1)``.
    Powers come from one complex multiply per anti-diagonal.
    """
    kind = ExtensionKind.parse(kind)
    a = alpha(n)
    roots = np.asarray(roots, dtype=complex)
    base = roots if kind is ExtensionKind.FRIEDRICHS else -1.0 / roots
    powers = np.empty(roots.shape + (2 * n - 1,), dtype=complex)
    powers[..., 0] = base
    for m in range(1, 2 * n - 1):
        powers[..., m] = powers[..., m - 1] * base
    inv_sin = np.array([-1.0 / math.sin(m * a) for m in range(1, 2 * n)])
    return powers * inv_sin


def _assemble(n: int, core_values: np.ndarray) -> np.ndarray:
    c = np.array(c_constants(n))
    idx = np.add.outer(np.arange(n), np.arange(n))
    return np.outer(c, c) * core_values[..., idx]


def weyl_from_roots(n: int, kind: ExtensionKind, roots: np.ndarray) -> np.ndarray:
    """Vectorised evaluation: ``(N,)`` roots of ``-lambda`` -> ``(N, n, n)`` matrices."""
    return _assemble(n, hankel_core(n, kind, roots))


def weyl_closed_form(n: int, kind: ExtensionKind | str, lam: UpperHalfPoint) -> np.ndarray:
    """``M_F(lambda)`` or ``M_K(lambda)`` for ``Im lambda > 0``."""
    check_order(n)
    if not isinstance(lam, UpperHalfPoint):
        lam = UpperHalfPoint.from_complex(lam)
    w = root_minus_lambda(n, lam)
    m = weyl_from_roots(n, ExtensionKind.parse(kind), np.array([w]))[0]
    if not np.all(np.isfinite(m)):
        raise FloatingPointError(f"non-finite Weyl matrix at n={n}, lambda={lam.value!r}")
    return m


def weyl_boundary(n: int, kind: ExtensionKind | str, x: float) -> np.ndarray:
    """Limit of the Weyl matrix at ``x + iy`` as ``y`` decreases to 0."""
    check_order(n)
    kind = ExtensionKind.parse(kind)
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"x must be finite, got {x!r}")
    if x == 0.0:
        if kind is ExtensionKind.KREIN:
            raise SingularBoundaryError("the Krein Weyl function is singular at x = 0")
        return np.zeros((n, n), dtype=complex)
    w = boundary_root_minus_lambda(n, x)
    m = weyl_from_roots(n, kind, np.array([w]))[0]
    if x < 0.0:
        m = m.real.astype(complex)
    return m


def imag_boundary(n: int, kind: ExtensionKind | str, x: float) -> np.ndarray:
    """Imaginary part of :func:`weyl_boundary`, from the explicit power laws."""
    check_order(n)
    kind = ExtensionKind.parse(kind)
    x = float(x)
    if kind is ExtensionKind.KREIN and x == 0.0:
        raise SingularBoundaryError("the Krein Weyl function is singular at x = 0")
    if x <= 0.0:
        return np.zeros((n, n))
    c = np.array(c_constants(n))
    jk = np.add.outer(np.arange(n), np.arange(n))
    if kind is ExtensionKind.FRIEDRICHS:
        return np.outer(c, c) * x ** ((jk + 1) / (2 * n))
    sign = np.where(jk % 2 == 0, 1.0, -1.0)
    return sign * np.outer(c, c) * x ** (-(jk + 1) / (2 * n))


def sharp_constants(n: int) -> list[float]:
    """Best constants ``A_{n,j}`` in ``|f^(j)(0)| <= A (||f||^2 + ||f^(n)||^2)^(1/2)``.

    ``A_{n,j}**2 = C_j**2 / sin((2j+1)*alpha)``, the diagonal of ``M_K(-1)``.
    """
    a = alpha(n)
    return [cj / math.sqrt(math.sin((2 * j + 1) * a)) for j, cj in enumerate(c_constants(n))]


def scaling_matrix(n: int, kind: ExtensionKind | str, s: float) -> np.ndarray:
    """Diagonal ``D`` with ``M(s**(2n) * lam) == D @ M(lam) @ D``."""
    kind = ExtensionKind.parse(kind)
    sign = 1.0 if kind is ExtensionKind.FRIEDRICHS else -1.0
    return np.diag([s ** (sign * (j + 0.5)) for j in range(n)])
