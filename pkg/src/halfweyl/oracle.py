"""Weyl functions rebuilt from the deficiency basis and the boundary triplet.

The decaying solutions ``y_k(x) = exp(omega_k * rho * x)``, ``k < n``, are fed
through the trace maps

    Gamma_0 y = (y^(n-1)(0), ..., y'(0), y(0))
    Gamma_1 y = (y^(n)(0), -y^(n+1)(0), ..., (-1)^(n-1) y^(2n-1)(0))

giving ``N_0``, ``N_1``; then ``M_F = N_1 N_0^{-1}`` and ``M_K = -N_0 N_1^{-1}``.
Nothing here uses the closed-form constants.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .core import UpperHalfPoint, branch_values, check_order, omega
from .linalg import SingularMatrixError, lu_factor, lu_solve
from .weyl import ExtensionKind

RELIABLE_ORDER = 8


class ConditioningWarning(RuntimeWarning):
    pass


@dataclass(frozen=True)
class FundamentalMatrices:
    n0: np.ndarray
    n1: np.ndarray


def fundamental_matrices(n: int, lam: UpperHalfPoint) -> FundamentalMatrices:
    check_order(n)
    if not isinstance(lam, UpperHalfPoint):
        lam = UpperHalfPoint.from_complex(lam)
    rho = branch_values(n, lam).rho
    # derivs[d, k] = (rho * omega_k)**d for d = 0..2n-1
    z = np.array([rho * omega(n, k) for k in range(n)])
    derivs = np.ones((2 * n, n), dtype=complex)
    for d in range(1, 2 * n):
        derivs[d] = derivs[d - 1] * z
    n0 = derivs[n - 1::-1].copy()
    signs = np.array([(-1.0) ** j for j in range(n)])
    n1 = signs[:, None] * derivs[n:]
    return FundamentalMatrices(n0, n1)


def oracle_weyl(n: int, kind: ExtensionKind | str, lam: UpperHalfPoint) -> np.ndarray:
    """Weyl matrix from ``N_0``, ``N_1`` by LU solves (no explicit inverse)."""
    kind = ExtensionKind.parse(kind)
    if n > RELIABLE_ORDER:
        warnings.warn(
            f"boundary-triplet solve at n={n} > {RELIABLE_ORDER} may lose accuracy",
            ConditioningWarning,
            stacklevel=2,
        )
    fm = fundamental_matrices(n, lam)
    # X @ A = B  <=>  A.T @ X.T = B.T
    if kind is ExtensionKind.FRIEDRICHS:
        a, b, sign = fm.n0, fm.n1, 1.0
    else:
        a, b, sign = fm.n1, fm.n0, -1.0
    try:
        xt = lu_solve(lu_factor(a.T), b.T)
    except SingularMatrixError as exc:  # pragma: no cover - distinct nodes make this impossible
        raise AssertionError(f"fundamental matrix singular at n={n}") from exc
    return sign * xt.T
