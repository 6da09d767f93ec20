"""Registry of numerical checks with worst-case residuals and witnesses.

Each check is a residual function of a JSON-friendly witness dict; a report
keeps the witness that attains the worst residual, so
``residual_at(report.check, report.witness)`` reproduces it exactly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

import mpmath
import numpy as np

from .core import MAX_ORDER, UpperHalfPoint, c_constants, check_order, trig_identity_residual
from .linalg import hermitian_min_eig
from .oracle import RELIABLE_ORDER, oracle_weyl
from .spectral import QuadratureConfig, sigma_closed_form, stieltjes_invert
from .weyl import (
    ExtensionKind,
    scaling_matrix,
    sharp_constants,
    weyl_boundary,
    weyl_closed_form,
)

STIELTJES_MAX_ORDER = 4
DEFAULT_T_GRID = (0.1, 0.5, 1.0, 2.0, 10.0)
SCALE_FACTORS = (0.5, 2.0, 10.0)
SCALING_MAX_ORDER = 6
FINITE_Y = 1e-4
FINITE_Y_TOL = 1e-3

Witness = dict[str, Any]


def default_lambda_grid() -> list[UpperHalfPoint]:
    """The fixed 12-point grid: ``r in {1/4, 1, 4}`` times four angles."""
    angles = (math.pi / 6, math.pi / 2, 3 * math.pi / 4, 0.9 * math.pi)
    return [UpperHalfPoint(r, phi) for r in (0.25, 1.0, 4.0) for phi in angles]


def fuzz_lambda_grid(seed: int, count: int = 8) -> list[UpperHalfPoint]:
    rng = np.random.default_rng(seed)
    r = 10.0 ** rng.uniform(-2.0, 2.0, size=count)
    phi = rng.uniform(0.01, math.pi - 0.01, size=count)
    return [UpperHalfPoint(float(a), float(b)) for a, b in zip(r, phi)]


@dataclass(frozen=True)
class CheckSpec:
    name: str
    n_range: tuple[int, int]
    grid: tuple = ()
    tolerance: float = 1e-9

    def __post_init__(self) -> None:
        lo, hi = self.n_range
        if not 1 <= lo <= hi <= MAX_ORDER:
            raise ValueError(f"n_range {self.n_range} outside [1, {MAX_ORDER}]")
        if not self.tolerance > 0.0:
            raise ValueError("tolerance must be positive")

    @property
    def orders(self) -> range:
        return range(self.n_range[0], self.n_range[1] + 1)


@dataclass
class VerificationReport:
    check: str
    passed: bool
    worst_residual: float
    witness: Witness | None
    evaluations: int
    tolerance: float
    normalization: str
    error: str | None = None
    extra: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        out = {
            "check": self.check,
            "passed": self.passed,
            "worst_residual": self.worst_residual,
            "tolerance": self.tolerance,
            "normalization": self.normalization,
            "evaluations": self.evaluations,
            "witness": self.witness,
        }
        if self.error is not None:
            out["error"] = self.error
        return out


def _lam_witness(lam: UpperHalfPoint) -> dict[str, float]:
    return {"r": lam.r, "phi": lam.phi}


def _lam(w: Witness) -> UpperHalfPoint:
    return UpperHalfPoint(w["lambda"]["r"], w["lambda"]["phi"])


def _rel(diff: np.ndarray, ref: np.ndarray) -> float:
    scale = float(np.linalg.norm(ref))
    d = float(np.linalg.norm(diff))
    return d / scale if scale > 0.0 else d


# -- residual functions -------------------------------------------------------


def _constants_and_trig(w: Witness) -> float:
    n = w["n"]
    c = c_constants(n)
    # C_j grows to ~1e15 at n = 64, so the symmetry part is relative
    symmetry = max(abs(c[j] - c[n - 1 - j]) / max(1.0, abs(c[j])) for j in range(n))
    return max(trig_identity_residual(n), symmetry)


def curious_identity_matrix(n: int) -> np.ndarray:
    """``sum_p (-1)^(p+k) C_j C_p^2 C_k / (sin((j+p+1)a) sin((p+k+1)a))`` in binary64.

    The terms grow like ``C_max**4`` and cancel, so this loses all accuracy
    past n ~ 10; :func:`curious_identity_residual` uses extended precision.
    """
    a = math.pi / (2 * n)
    c = np.array(c_constants(n))
    inv_sin = 1.0 / np.sin((np.add.outer(np.arange(n), np.arange(n)) + 1) * a)
    signs = np.array([(-1.0) ** p for p in range(n)])
    # left[j, p] = C_j C_p / sin((j+p+1)a); right[p, k] = (-1)^(p+k) C_p C_k / sin((p+k+1)a)
    left = np.outer(c, c) * inv_sin
    right = np.outer(signs, signs) * np.outer(c, c) * inv_sin
    return left @ right


def curious_identity_residual(n: int, dps: int | None = None) -> float:
    """``max_{j,k} |sum - delta_jk|`` evaluated with ``dps`` decimal digits.

    The default ``40 + n`` digits covers the cancellation up to the order cap.
    """
    check_order(n)
    dps = 40 + n if dps is None else dps
    with mpmath.workdps(dps):
        a = mpmath.pi / (2 * n)
        c = [mpmath.mpf(1)]
        for p in range(1, n):
            c.append(c[-1] * mpmath.cot(p * a))
        inv_sin = [1 / mpmath.sin((m + 1) * a) for m in range(2 * n - 1)]
        worst = mpmath.mpf(0)
        for j in range(n):
            for k in range(n):
                total = mpmath.fsum(
                    (-1) ** (p + k) * c[j] * c[p] ** 2 * c[k] * inv_sin[j + p] * inv_sin[p + k]
                    for p in range(n)
                )
                worst = max(worst, abs(total - (1 if j == k else 0)))
        return float(worst)


def _curious_identity(w: Witness) -> float:
    return curious_identity_residual(w["n"])


def _sharp_constants(w: Witness) -> float:
    n = w["n"]
    a2 = np.array(sharp_constants(n)) ** 2
    mk = np.diag(weyl_boundary(n, ExtensionKind.KREIN, -1.0)).real
    mf = np.diag(weyl_boundary(n, ExtensionKind.FRIEDRICHS, -1.0)).real
    c = np.array(c_constants(n))
    direct = c**2 / np.sin((2 * np.arange(n) + 1) * math.pi / (2 * n))
    return float(max(np.max(np.abs(mk - a2) / a2),
                     np.max(np.abs(-mf - a2) / a2),
                     np.max(np.abs(direct - a2) / a2)))


def _inverse_relation(w: Witness) -> float:
    n, lam = w["n"], _lam(w)
    mf = weyl_closed_form(n, ExtensionKind.FRIEDRICHS, lam)
    mk = weyl_closed_form(n, ExtensionKind.KREIN, lam)
    num = float(np.linalg.norm(mk @ mf + np.eye(n)))
    return num / (1.0 + float(np.linalg.norm(mf)) * float(np.linalg.norm(mk)))


def _nevanlinna(w: Witness) -> float:
    n, lam = w["n"], _lam(w)
    m = weyl_closed_form(n, w["kind"], lam)
    im_part = (m - m.conj().T) / 2j
    return max(0.0, -hermitian_min_eig(im_part)) / float(np.linalg.norm(m))


def _oracle_agreement(w: Witness) -> float:
    n, lam = w["n"], _lam(w)
    closed = weyl_closed_form(n, w["kind"], lam)
    return _rel(oracle_weyl(n, w["kind"], lam) - closed, closed)


def _stieltjes_roundtrip(w: Witness) -> float:
    n, t = w["n"], w["t"]
    exact = sigma_closed_form(n, w["kind"], t)
    return _rel(stieltjes_invert(n, w["kind"], t) - exact, exact)


def _finite_y(w: Witness) -> float:
    n, t = w["n"], w["t"]
    exact = sigma_closed_form(n, w["kind"], t)
    approx = stieltjes_invert(n, w["kind"], t, QuadratureConfig(finite_y=w["y"]))
    return _rel(approx - exact, exact)


def _scaling(w: Witness) -> float:
    n, lam, s = w["n"], _lam(w), w["s"]
    d = scaling_matrix(n, w["kind"], s)
    lhs = weyl_closed_form(n, w["kind"], lam.scaled(s ** (2 * n)))
    rhs = d @ weyl_closed_form(n, w["kind"], lam) @ d
    return float(np.max(np.abs(lhs - rhs) / np.abs(rhs)))


def _monotonicity(w: Witness) -> float:
    n, t1, t2 = w["n"], w["t1"], w["t2"]
    inc = sigma_closed_form(n, w["kind"], t2) - sigma_closed_form(n, w["kind"], t1)
    scale = float(np.linalg.norm(inc))
    if scale == 0.0:
        return 0.0
    return max(0.0, -hermitian_min_eig(inc)) / scale


def _left_tail(w: Witness) -> float:
    return float(np.max(np.abs(sigma_closed_form(w["n"], w["kind"], w["t"]))))


# Coefficient tables of the worked examples: entry = coeff * lambda**power
# (principal branch) and sigma entry = coeff / pi * t**power.
_S3 = math.sqrt(3.0)
GOLDEN_WEYL = {
    1: [[(1j, 1 / 2)]],
    2: [[(-1 + 1j, 1 / 4), (1j, 1 / 2)],
        [(1j, 1 / 2), (1 + 1j, 3 / 4)]],
    3: [[(-_S3 + 1j, 1 / 6), (-1 + 1j * _S3, 1 / 3), (1j, 1 / 2)],
        [(-1 + 1j * _S3, 1 / 3), (3j, 1 / 2), (1 + 1j * _S3, 2 / 3)],
        [(1j, 1 / 2), (1 + 1j * _S3, 2 / 3), (_S3 + 1j, 5 / 6)]],
}
GOLDEN_SIGMA = {
    1: [[(2 / 3, 3 / 2)]],
    2: [[(4 / 5, 5 / 4), (2 / 3, 3 / 2)],
        [(2 / 3, 3 / 2), (4 / 7, 7 / 4)]],
    3: [[(6 / 7, 7 / 6), (3 * _S3 / 4, 4 / 3), (2 / 3, 3 / 2)],
        [(3 * _S3 / 4, 4 / 3), (2.0, 3 / 2), (3 * _S3 / 5, 5 / 3)],
        [(2 / 3, 3 / 2), (3 * _S3 / 5, 5 / 3), (6 / 11, 11 / 6)]],
}
GOLDEN_LAMBDAS = {1: (1j, 1 + 1j, 4j), 2: (1j, 1 + 1j), 3: (1j, 1 + 1j)}
GOLDEN_TS = {1: (1.0, 2.0, 10.0), 2: (1.0, 2.0), 3: (1.0, 2.0)}


def golden_weyl(n: int, lam: complex) -> np.ndarray:
    log_lam = cmath.log(lam)
    return np.array([[c * cmath.exp(p * log_lam) for c, p in row] for row in GOLDEN_WEYL[n]])


def golden_sigma(n: int, t: float) -> np.ndarray:
    return np.array([[c / math.pi * t**p for c, p in row] for row in GOLDEN_SIGMA[n]])


def _golden(w: Witness) -> float:
    n = w["n"]
    if w["quantity"] == "weyl":
        z = complex(w["lambda"]["re"], w["lambda"]["im"])
        ref = golden_weyl(n, z)
        got = weyl_closed_form(n, ExtensionKind.FRIEDRICHS, UpperHalfPoint.from_complex(z))
    else:
        ref = golden_sigma(n, w["t"])
        got = sigma_closed_form(n, ExtensionKind.FRIEDRICHS, w["t"])
    return float(np.max(np.abs(got - ref) / np.abs(ref)))


RESIDUALS: dict[str, Callable[[Witness], float]] = {
    "constants_and_trig": _constants_and_trig,
    "curious_identity": _curious_identity,
    "sharp_constants": _sharp_constants,
    "golden_examples": _golden,
    "inverse_relation": _inverse_relation,
    "nevanlinna": _nevanlinna,
    "oracle_agreement": _oracle_agreement,
    "scaling_covariance": _scaling,
    "stieltjes_roundtrip": _stieltjes_roundtrip,
    "finite_y_validation": _finite_y,
    "monotonicity": _monotonicity,
    "left_tail": _left_tail,
}
CHECK_NAMES = tuple(RESIDUALS)


def base_name(check: str) -> str:
    return check.split("[", 1)[0]


def residual_at(check: str, witness: Witness) -> float:
    """Recompute one residual, e.g. to confirm a report's witness."""
    return RESIDUALS[base_name(check)](witness)


def _run(
    check: str,
    witnesses: Iterable[Witness],
    tolerance: float,
    normalization: str,
) -> VerificationReport:
    fn = RESIDUALS[base_name(check)]
    worst, worst_w, count = 0.0, None, 0
    try:
        for w in witnesses:
            res = fn(w)
            count += 1
            if not math.isfinite(res):
                return VerificationReport(check, False, math.inf, w, count, tolerance,
                                          normalization, error="non-finite residual")
            if worst_w is None or res > worst:
                worst, worst_w = res, w
    except Exception as exc:  # a failing check must not abort the whole run
        return VerificationReport(check, False, math.inf, worst_w, count, tolerance,
                                  normalization, error=f"{type(exc).__name__}: {exc}")
    return VerificationReport(check, worst <= tolerance, worst, worst_w, count,
                              tolerance, normalization)


def _kinds_label(check: str, kind: ExtensionKind) -> str:
    return f"{check}[{kind.value}]"


def _lambda_points(spec: CheckSpec) -> list[UpperHalfPoint]:
    pts = [p for p in spec.grid if isinstance(p, UpperHalfPoint)]
    return pts or default_lambda_grid()


def _t_points(spec: CheckSpec) -> list[float]:
    ts = [float(p) for p in spec.grid if not isinstance(p, UpperHalfPoint)]
    return ts or list(DEFAULT_T_GRID)


# -- public checks ------------------------------------------------------------


def check_constants_and_trig(n: int, tolerance: float = 1e-12) -> VerificationReport:
    check_order(n)
    return _run("constants_and_trig", [{"n": n}], tolerance, "absolute (trig), relative (symmetry)")


def check_curious_identity(n: int, tolerance: float = 1e-10) -> VerificationReport:
    check_order(n)
    return _run("curious_identity", [{"n": n}], tolerance, "absolute")


def check_sharp_constants(n: int, tolerance: float = 1e-12) -> VerificationReport:
    check_order(n)
    return _run("sharp_constants", [{"n": n}], tolerance, "relative")


def check_inverse_relation(spec: CheckSpec) -> VerificationReport:
    pts = _lambda_points(spec)
    ws = ({"n": n, "lambda": _lam_witness(p)} for n in spec.orders for p in pts)
    return _run(spec.name, ws, spec.tolerance, "relative to 1+|M_F||M_K|")


def check_nevanlinna(spec: CheckSpec, kind: ExtensionKind | str) -> VerificationReport:
    kind = ExtensionKind.parse(kind)
    pts = _lambda_points(spec)
    ws = ({"n": n, "kind": kind.value, "lambda": _lam_witness(p)} for n in spec.orders for p in pts)
    return _run(spec.name, ws, spec.tolerance, "relative to |M|")


def check_oracle_agreement(spec: CheckSpec, kind: ExtensionKind | str) -> VerificationReport:
    kind = ExtensionKind.parse(kind)
    if spec.n_range[1] > RELIABLE_ORDER:
        raise ValueError(f"oracle agreement is only meaningful for n <= {RELIABLE_ORDER}")
    pts = _lambda_points(spec)
    ws = ({"n": n, "kind": kind.value, "lambda": _lam_witness(p)} for n in spec.orders for p in pts)
    return _run(spec.name, ws, spec.tolerance, "relative")


def check_stieltjes_roundtrip(spec: CheckSpec, kind: ExtensionKind | str) -> VerificationReport:
    kind = ExtensionKind.parse(kind)
    ws = ({"n": n, "kind": kind.value, "t": t} for n in spec.orders for t in _t_points(spec))
    return _run(spec.name, ws, spec.tolerance, "relative (absolute where sigma = 0)")


def check_finite_y(spec: CheckSpec, kind: ExtensionKind | str, y: float = FINITE_Y) -> VerificationReport:
    kind = ExtensionKind.parse(kind)
    ws = ({"n": n, "kind": kind.value, "t": t, "y": y} for n in spec.orders for t in _t_points(spec))
    return _run(spec.name, ws, spec.tolerance, "relative")


def check_scaling(spec: CheckSpec, kind: ExtensionKind | str) -> VerificationReport:
    kind = ExtensionKind.parse(kind)
    pts = _lambda_points(spec)
    ws = ({"n": n, "kind": kind.value, "lambda": _lam_witness(p), "s": s}
          for n in spec.orders for p in pts for s in SCALE_FACTORS)
    return _run(spec.name, ws, spec.tolerance, "relative, entrywise")


def monotonicity_grid(count: int = 50) -> list[float]:
    return [float(t) for t in np.linspace(-1.0, 10.0, count)]


def check_monotonicity(spec: CheckSpec, kind: ExtensionKind | str) -> VerificationReport:
    kind = ExtensionKind.parse(kind)
    ts = _t_points(spec) if spec.grid else monotonicity_grid()
    ws = ({"n": n, "kind": kind.value, "t1": a, "t2": b}
          for n in spec.orders for a, b in zip(ts[:-1], ts[1:]))
    return _run(spec.name, ws, spec.tolerance, "relative to |increment|")


def check_left_tail(spec: CheckSpec, kind: ExtensionKind | str) -> VerificationReport:
    kind = ExtensionKind.parse(kind)
    ts = _t_points(spec) if spec.grid else [0.0, -1e-300, -1e-8, -0.5, -1.0, -10.0, -1e6]
    ws = ({"n": n, "kind": kind.value, "t": t} for n in spec.orders for t in ts)
    return _run(spec.name, ws, spec.tolerance, "absolute")


def check_golden(n_max: int, tolerance: float = 1e-12) -> VerificationReport:
    ws: list[Witness] = []
    for n in range(1, min(n_max, 3) + 1):
        for z in GOLDEN_LAMBDAS[n]:
            ws.append({"n": n, "quantity": "weyl", "lambda": {"re": z.real, "im": z.imag}})
        for t in GOLDEN_TS[n]:
            ws.append({"n": n, "quantity": "sigma", "t": t})
    return _run("golden_examples", ws, tolerance, "relative, entrywise")


def _per_order(name: str, n_max: int, fn: Callable[[int, float], VerificationReport],
               tolerance: float) -> VerificationReport:
    # Aggregate the single-n checks into one report over 1..n_max.
    ws = [{"n": n} for n in range(1, n_max + 1)]
    reports = [fn(n, tolerance) for n in range(1, n_max + 1)]
    failed = [r for r in reports if r.error]
    if failed:
        return failed[0]
    worst = max(reports, key=lambda r: r.worst_residual)
    return VerificationReport(name, worst.worst_residual <= tolerance, worst.worst_residual,
                              worst.witness, len(ws), tolerance, worst.normalization)


def run_all(
    n_max: int,
    checks: Iterable[str] | None = None,
    tol_scale: float = 1.0,
    seed: int | None = None,
) -> list[VerificationReport]:
    """Every registered check for ``n = 1..n_max`` in fixed registry order.

    Oracle agreement is capped at n = 8 and Stieltjes checks at n = 4.
    With ``seed``, grid-based checks are repeated on pseudo-random points
    and reported separately under a ``[fuzz]`` suffix.
    """
    check_order(n_max)
    selected = set(CHECK_NAMES if checks is None else checks)
    unknown = selected - set(CHECK_NAMES)
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(sorted(unknown))}")
    ts = tol_scale
    kinds = list(ExtensionKind)
    out: list[VerificationReport] = []

    def grid_checks(grid: tuple, suffix: str) -> None:
        def spec(name: str, hi: int, tol: float, kind: ExtensionKind | None = None) -> CheckSpec:
            label = name if kind is None else _kinds_label(name, kind)
            return CheckSpec(label + suffix, (1, hi), grid, tol * ts)

        if "inverse_relation" in selected:
            out.append(check_inverse_relation(spec("inverse_relation", n_max, 1e-9)))
        for kind in kinds:
            if "nevanlinna" in selected:
                out.append(check_nevanlinna(spec("nevanlinna", n_max, 1e-10, kind), kind))
        for kind in kinds:
            if "oracle_agreement" in selected:
                hi = min(n_max, RELIABLE_ORDER)
                out.append(check_oracle_agreement(spec("oracle_agreement", hi, 1e-9, kind), kind))
        for kind in kinds:
            if "scaling_covariance" in selected:
                hi = min(n_max, SCALING_MAX_ORDER)
                out.append(check_scaling(spec("scaling_covariance", hi, 1e-12, kind), kind))

    if "constants_and_trig" in selected:
        out.append(_per_order("constants_and_trig", n_max, check_constants_and_trig, 1e-12 * ts))
    if "curious_identity" in selected:
        out.append(_per_order("curious_identity", n_max, check_curious_identity, 1e-10 * ts))
    if "sharp_constants" in selected:
        out.append(_per_order("sharp_constants", n_max, check_sharp_constants, 1e-12 * ts))
    if "golden_examples" in selected:
        out.append(check_golden(n_max, 1e-12 * ts))
    grid_checks((), "")
    hi = min(n_max, STIELTJES_MAX_ORDER)
    for kind in kinds:
        if "stieltjes_roundtrip" in selected:
            s = CheckSpec(_kinds_label("stieltjes_roundtrip", kind), (1, hi), (), 1e-8 * ts)
            out.append(check_stieltjes_roundtrip(s, kind))
    for kind in kinds:
        if "finite_y_validation" in selected:
            s = CheckSpec(_kinds_label("finite_y_validation", kind), (1, hi), (1.0,), FINITE_Y_TOL * ts)
            out.append(check_finite_y(s, kind))
    for kind in kinds:
        if "monotonicity" in selected:
            s = CheckSpec(_kinds_label("monotonicity", kind), (1, n_max), (), 1e-10 * ts)
            out.append(check_monotonicity(s, kind))
    for kind in kinds:
        if "left_tail" in selected:
            s = CheckSpec(_kinds_label("left_tail", kind), (1, n_max), (), 1e-300)
            out.append(check_left_tail(s, kind))
    if seed is not None:
        grid_checks(tuple(fuzz_lambda_grid(seed)), "[fuzz]")
    return out
