"""Spectral functions and Stieltjes inversion of the Weyl matrices."""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .core import boundary_root_minus_lambda, c_constants, check_order, roots_minus_lambda
from .linalg import hermitian_min_eig
from .weyl import ExtensionKind, weyl_from_roots

PSD_TOL = 1e-10


@dataclass(frozen=True)
class QuadratureConfig:
    """Gauss-Legendre settings for :func:`stieltjes_invert`.

    ``finite_y`` switches to integrating ``Im M(x + i*finite_y)`` instead of
    the boundary limit; it exists to validate the limit/integral interchange.
    """

    node_count: int = 64
    finite_y: float | None = None

    def __post_init__(self) -> None:
        if self.node_count < 2:
            raise ValueError(f"node_count must be >= 2, got {self.node_count}")
        if self.finite_y is not None and not self.finite_y > 0.0:
            raise ValueError(f"finite_y must be positive, got {self.finite_y}")


@functools.lru_cache(maxsize=32)
def _gauss_legendre(count: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(count)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def _panel_rule(edges: np.ndarray, count: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = _gauss_legendre(count)
    lo, hi = edges[:-1, None], edges[1:, None]
    half = 0.5 * (hi - lo)
    return (lo + half * (nodes + 1.0)).ravel(), (half * weights).ravel()


def _sigma_power_law(n: int, kind: ExtensionKind) -> tuple[np.ndarray, np.ndarray]:
    """``(coeff, exponent)`` with ``sigma(t)[j, k] = coeff[j, k] * t**exponent[j, k]``."""
    c = np.array(c_constants(n))
    jk = np.add.outer(np.arange(n), np.arange(n))
    if kind is ExtensionKind.FRIEDRICHS:
        e = 2 * n + 1 + jk
        return (2 * n / math.pi) * np.outer(c, c) / e, e / (2 * n)
    e = 2 * n - 1 - jk
    sign = np.where(jk % 2 == 0, 1.0, -1.0)
    return (2 * n / math.pi) * sign * np.outer(c, c) / e, e / (2 * n)


def sigma_closed_form(n: int, kind: ExtensionKind | str, t: float) -> np.ndarray:
    check_order(n)
    kind = ExtensionKind.parse(kind)
    t = float(t)
    if t <= 0.0:
        return np.zeros((n, n))
    coeff, expo = _sigma_power_law(n, kind)
    return coeff * t**expo


def _boundary_integral(n: int, kind: ExtensionKind, t: float, count: int) -> np.ndarray:
    # x = u**(2n) turns both integrands into polynomials in u of degree <= 4n-2.
    count = max(count, 2 * n)
    upper = t ** (1.0 / (2 * n))
    u, w = _panel_rule(np.array([0.0, upper]), count)
    roots = np.array([boundary_root_minus_lambda(n, ui ** (2 * n)) for ui in u])
    im = weyl_from_roots(n, kind, roots).imag
    jac = 2 * n * u ** (2 * n - 1)
    return np.einsum("i,ijk->jk", w * jac, im) / math.pi


def _graded_edges(upper: float, feature: float) -> np.ndarray:
    start = min(feature * 1e-3, upper)
    edges = [0.0, start]
    while edges[-1] * 2.0 < upper:
        edges.append(edges[-1] * 2.0)
    if edges[-1] < upper:
        edges.append(upper)
    return np.array(edges)


def _finite_y_integral(n: int, kind: ExtensionKind, t: float, y: float, count: int) -> np.ndarray:
    # Integrate over [-t, t]: sigma vanishes below 0, and starting at 0 would
    # drop the mass the offset smears onto x < 0 (fatal for Krein near 0).
    feature = y ** (1.0 / (2 * n))
    edges = _graded_edges(t ** (1.0 / (2 * n)), feature)
    total = np.zeros((n, n))
    for side in (1.0, -1.0):
        u, w = _panel_rule(edges, count)
        x = side * u ** (2 * n)
        im = weyl_from_roots(n, kind, roots_minus_lambda(n, x + 1j * y)).imag
        jac = 2 * n * u ** (2 * n - 1)
        total += np.einsum("i,ijk->jk", w * jac, im)
    return total / math.pi


def stieltjes_invert(
    n: int,
    kind: ExtensionKind | str,
    t: float,
    cfg: QuadratureConfig | None = None,
) -> np.ndarray:
    """Recover ``sigma(t)`` by integrating ``Im M`` along the real axis.

    The boundary-limit path is exact up to rounding: after ``x = u**(2n)`` the
    integrand is a polynomial, and the node count is raised to ``2n`` if needed.
    """
    check_order(n)
    kind = ExtensionKind.parse(kind)
    cfg = cfg or QuadratureConfig()
    t = float(t)
    if t <= 0.0:
        return np.zeros((n, n))
    if cfg.finite_y is None:
        out = _boundary_integral(n, kind, t, cfg.node_count)
    else:
        out = _finite_y_integral(n, kind, t, cfg.finite_y, cfg.node_count)
    return 0.5 * (out + out.T)


class IncrementNotMonotoneError(ArithmeticError):
    pass


def sigma_increment(n: int, kind: ExtensionKind | str, t1: float, t2: float) -> np.ndarray:
    """``sigma(t2) - sigma(t1)``, checked positive semidefinite.

    For ``t1 < t2 <= 2*t1`` the power difference is formed as
    ``t1**e * expm1(e * log(t2/t1))`` so short intervals keep full relative accuracy.
    """
    check_order(n)
    kind = ExtensionKind.parse(kind)
    t1, t2 = float(t1), float(t2)
    if t1 > t2:
        raise ValueError(f"need t1 <= t2, got {t1} > {t2}")
    if t2 <= 0.0 or t1 == t2:
        return np.zeros((n, n))
    coeff, expo = _sigma_power_law(n, kind)
    if t1 <= 0.0:
        inc = coeff * t2**expo
    elif t2 > 2.0 * t1:
        inc = coeff * (t2**expo - t1**expo)
    else:
        inc = coeff * t1**expo * np.expm1(expo * math.log(t2 / t1))
    scale = float(np.linalg.norm(inc))
    if scale > 0.0 and hermitian_min_eig(inc) < -PSD_TOL * scale:
        raise IncrementNotMonotoneError(f"increment on [{t1}, {t2}] is not PSD")
    return inc
