"""Stable JSON-lines and CSV serialization for matrices and reports.

Floats are written with 17 significant digits so every binary64 value
round-trips; key order is fixed by construction.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Iterable

import numpy as np

from . import __version__

BRANCH_CONVENTION = "arg(-lambda) in (-pi, 0)"
CSV_HEADER = ("n", "extension", "input_kind", "input_re", "input_im", "j", "k", "value_re", "value_im")


def fmt_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x!r}")
    return format(x, ".17g")


def dumps(obj: Any) -> str:
    """Compact JSON with 17-digit floats."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ",".join(f"{json.dumps(str(k))}:{dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ",".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def meta() -> dict[str, str]:
    return {"tool_version": __version__, "branch_convention": BRANCH_CONVENTION}


def matrix_record(n: int, extension: str, inp: dict[str, Any], matrix: np.ndarray) -> dict[str, Any]:
    """``inp`` is ``{"lambda": {"re", "im"}}``, ``{"x": x}`` or ``{"t": t}``."""
    matrix = np.asarray(matrix)
    body: dict[str, Any] = {"re": matrix.real.tolist()}
    if np.iscomplexobj(matrix) and np.any(matrix.imag):
        body["im"] = matrix.imag.tolist()
    return {"n": n, "extension": extension, "input": inp, "matrix": body, "meta": meta()}


def input_kind(inp: dict[str, Any]) -> str:
    return next(iter(inp))


def record_matrix(record: dict[str, Any]) -> np.ndarray:
    re = np.array(record["matrix"]["re"], dtype=float)
    if "im" in record["matrix"]:
        return re + 1j * np.array(record["matrix"]["im"], dtype=float)
    return re


def matrix_csv_rows(record: dict[str, Any]) -> Iterable[list[str]]:
    inp = record["input"]
    kind = input_kind(inp)
    if kind == "lambda":
        in_re, in_im = fmt_float(inp["lambda"]["re"]), fmt_float(inp["lambda"]["im"])
    else:
        in_re, in_im = fmt_float(inp[kind]), fmt_float(0.0)
    m = record_matrix(record)
    n = m.shape[0]
    for j in range(n):
        for k in range(n):
            v = complex(m[j, k])
            yield [str(record["n"]), record["extension"], kind, in_re, in_im,
                   str(j), str(k), fmt_float(v.real), fmt_float(v.imag)]


def to_csv(header: Iterable[str], rows: Iterable[Iterable[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(header))
    writer.writerows(rows)
    return buf.getvalue()


REPORT_CSV_HEADER = ("check", "passed", "worst_residual", "tolerance", "normalization", "evaluations", "witness", "error")


def report_csv_row(report: dict[str, Any]) -> list[str]:
    res = report["worst_residual"]
    return [
        report["check"],
        "true" if report["passed"] else "false",
        fmt_float(res) if math.isfinite(res) else "inf",
        fmt_float(report["tolerance"]),
        report["normalization"],
        str(report["evaluations"]),
        dumps(report["witness"]),
        report.get("error") or "",
    ]


def report_json(report: dict[str, Any]) -> str:
    report = dict(report)
    if not math.isfinite(report["worst_residual"]):
        report["worst_residual"] = "inf"
    return dumps(report)
