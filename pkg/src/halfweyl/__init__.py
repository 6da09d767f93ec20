"""Weyl and spectral functions of the Friedrichs and Krein extensions of (-1)^n y^(2n) on [0, inf)."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    MAX_ORDER,
    BranchValues,
    OrderError,
    UpperHalfPoint,
    alpha,
    branch_values,
    c_constants,
    omega,
)
from .linalg import hermitian_min_eig, lu_factor, lu_solve, vandermonde_det  # noqa: E402
from .oracle import FundamentalMatrices, fundamental_matrices, oracle_weyl  # noqa: E402
from .spectral import (  # noqa: E402
    QuadratureConfig,
    sigma_closed_form,
    sigma_increment,
    stieltjes_invert,
)
from .weyl import (  # noqa: E402
    ExtensionKind,
    SingularBoundaryError,
    imag_boundary,
    sharp_constants,
    weyl_boundary,
    weyl_closed_form,
)

__all__ = [
    "MAX_ORDER",
    "BranchValues",
    "ExtensionKind",
    "FundamentalMatrices",
    "OrderError",
    "QuadratureConfig",
    "SingularBoundaryError",
    "UpperHalfPoint",
    "alpha",
    "branch_values",
    "c_constants",
    "fundamental_matrices",
    "hermitian_min_eig",
    "imag_boundary",
    "lu_factor",
    "lu_solve",
    "omega",
    "oracle_weyl",
    "sharp_constants",
    "sigma_closed_form",
    "sigma_increment",
    "stieltjes_invert",
    "vandermonde_det",
    "weyl_boundary",
    "weyl_closed_form",
]
