"""Small shared helpers: least-squares fits, stable file emission."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np


class LabError(Exception):
    """Base class for all package errors."""


@dataclass(frozen=True)
class AffineFit:
    slope: float
    intercept: float
    r_squared: float

    def predict(self, x):
        return self.slope * np.asarray(x, dtype=float) + self.intercept


def affine_fit(x, y) -> AffineFit:
    """Ordinary least-squares line through (x, y) with its R^2."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size < 2:
        raise ValueError("need at least two points for a fit")
    A = np.vstack([x, np.ones_like(x)]).T
    (slope, intercept), *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - (slope * x + intercept)
    tot = y - y.mean()
    ss_tot = float(tot @ tot)
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - float(resid @ resid) / ss_tot
    return AffineFit(float(slope), float(intercept), float(r2))


def loglog_fit(x, y) -> AffineFit:
    """Least-squares fit of log(y) against log(x)."""
    return affine_fit(np.log(np.asarray(x, dtype=float)),
                      np.log(np.asarray(y, dtype=float)))


def fmt_float(v) -> str:
    """Render one float with 17 significant digits (round-trippable)."""
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v))
    return format(float(v), ".17g")


def write_csv(path, header: list[str], rows) -> None:
    """Emit a CSV table: stable column order, 17 significant digits,
    UTF-8, newline-terminated."""
    lines = [",".join(header)]
    for row in rows:
        cells = []
        for cell in row:
            if isinstance(cell, str):
                cells.append(cell)
            elif isinstance(cell, (int, np.integer)):
                cells.append(str(int(cell)))
            else:
                cells.append(fmt_float(cell))
        lines.append(",".join(cells))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _canonical(obj):
    if isinstance(obj, dict):
        return {k: _canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canonical(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return [_canonical(v) for v in obj.tolist()]
    return obj


def write_json(path, obj) -> None:
    """Emit deterministic JSON: sorted keys, UTF-8, newline-terminated."""
    text = json.dumps(_canonical(obj), indent=2, sort_keys=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text + "\n")
