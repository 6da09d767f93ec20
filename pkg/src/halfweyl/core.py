"""Scalar building blocks for the operator (-1)^n y^(2n) on the half-line.

Every branch decision is made through the polar angle of the spectral
parameter, so callers never touch ``cmath.sqrt`` or principal powers.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

MAX_ORDER = 64


class OrderError(ValueError):
    """Order outside ``1 <= n <= MAX_ORDER``."""


def check_order(n: int, cap: int = MAX_ORDER) -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise OrderError(f"order must be an integer, got {n!r}")
    if n < 1:
        raise OrderError(f"order must be >= 1, got {n}")
    if n > cap:
        raise OrderError(f"order {n} exceeds the cap {cap}")
    return n


@dataclass(frozen=True)
class UpperHalfPoint:
    """A point ``r * exp(i*phi)`` with ``r > 0`` and ``0 < phi < pi``."""

    r: float
    phi: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.r) and self.r > 0.0):
            raise ValueError(f"modulus must be positive and finite, got {self.r!r}")
        if not (0.0 < self.phi < math.pi):
            raise ValueError(f"argument must lie in (0, pi), got {self.phi!r}")

    @classmethod
    def from_complex(cls, z: complex) -> "UpperHalfPoint":
        z = complex(z)
        if not z.imag > 0.0:
            raise ValueError(f"point must have positive imaginary part, got {z!r}")
        return cls(abs(z), math.atan2(z.imag, z.real))

    @property
    def value(self) -> complex:
        return cmath.rect(self.r, self.phi)

    def scaled(self, factor: float) -> "UpperHalfPoint":
        return UpperHalfPoint(self.r * factor, self.phi)


@dataclass(frozen=True)
class BranchValues:
    root_minus_lambda: complex
    rho: complex
    alpha: float
    epsilon: complex


def alpha(n: int) -> float:
    check_order(n)
    return math.pi / (2 * n)


def c_constants(n: int) -> list[float]:
    """``[C_0, ..., C_{n-1}]`` with ``C_k = prod_{p<=k} cot(p*alpha)``."""
    a = alpha(n)
    out = [1.0]
    for p in range(1, n):
        out.append(out[-1] / math.tan(p * a))
    return out


def omega(n: int, k: int) -> complex:
    """The root of unity ``exp(i*pi*k/n)``, ``0 <= k < 2n``."""
    check_order(n)
    if not 0 <= k < 2 * n:
        raise ValueError(f"k must lie in [0, {2 * n - 1}], got {k}")
    return cmath.exp(1j * math.pi * k / n)


def root_minus_lambda(n: int, lam: UpperHalfPoint) -> complex:
    check_order(n)
    return cmath.rect(lam.r ** (1.0 / (2 * n)), (lam.phi - math.pi) / (2 * n))


def branch_values(n: int, lam: UpperHalfPoint) -> BranchValues:
    a = alpha(n)
    mod = lam.r ** (1.0 / (2 * n))
    return BranchValues(
        root_minus_lambda=cmath.rect(mod, (lam.phi - math.pi) / (2 * n)),
        rho=cmath.rect(mod, (math.pi * n + lam.phi) / (2 * n)),
        alpha=a,
        epsilon=cmath.exp(1j * a),
    )


def boundary_root_minus_lambda(n: int, x: float) -> complex:
    """Limit of the 2n-th root of ``-(x + iy)`` as ``y`` decreases to 0."""
    check_order(n)
    if x >= 0.0:
        return cmath.rect(x ** (1.0 / (2 * n)), -alpha(n))
    return complex((-x) ** (1.0 / (2 * n)), 0.0)


def trig_identity_residual(n: int) -> float:
    """Worst deviation in ``prod cos * prod sin == prod_{p<n} cos == prod_{p<n} sin``."""
    a = alpha(n)
    cos_prefix = [1.0]
    sin_prefix = [1.0]
    for p in range(1, n):
        cos_prefix.append(cos_prefix[-1] * math.cos(p * a))
        sin_prefix.append(sin_prefix[-1] * math.sin(p * a))
    full_cos = cos_prefix[n - 1]
    worst = abs(full_cos - sin_prefix[n - 1])
    for j in range(n):
        worst = max(worst, abs(cos_prefix[j] * sin_prefix[n - 1 - j] - full_cos))
    return worst


def roots_minus_lambda(n: int, z: np.ndarray) -> np.ndarray:
    """Vectorised :func:`root_minus_lambda` for an array with ``Im z > 0``."""
    check_order(n)
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag <= 0.0):
        raise ValueError("all points must have positive imaginary part")
    r = np.abs(z)
    phi = np.arctan2(z.imag, z.real)
    return r ** (1.0 / (2 * n)) * np.exp(1j * (phi - math.pi) / (2 * n))
