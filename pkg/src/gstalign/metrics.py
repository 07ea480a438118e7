"""Alignment quality metrics and scaling-curve fits.

The multi-row edit cost is the standard unit-cost sum-of-pairs column
cost.  Reported timings exclude input reading and report generation.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, asdict

import numpy as np

from .msalign import AnchorChain, _gap_byte

CSV_HEADER = "algorithm,n,repeat,elapsed_ns,sp_edit_distance,overlap_chars,anchor_count,msw_count"


@dataclass(frozen=True)
class AlignmentReport:
    sp_edit_distance: int
    overlap_chars: int
    anchor_count: int
    msw_count: int
    elapsed_ns: int
    rows: int
    columns: int

    def to_json(self) -> str:
        return json.dumps(asdict(self))

    def csv_row(self, algorithm: str, n: int, repeat: int) -> str:
        return (f"{algorithm},{n},{repeat},{self.elapsed_ns},"
                f"{self.sp_edit_distance},{self.overlap_chars},"
                f"{self.anchor_count},{self.msw_count}")


def _matrix(rows: list[bytes]) -> np.ndarray:
    if len(rows) == 0:
        raise ValueError("no rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged row matrix")
    return np.frombuffer(b"".join(rows), dtype=np.uint8).reshape(len(rows), width)


def sp_edit_distance(rows: list[bytes], gap_symbol=b"*") -> int:
    """Sum over unordered row pairs and columns of the unit column cost.

    A column pair costs 0 when the symbols are equal or both are gaps,
    otherwise 1.  Computed per column from symbol counts: pairs(n) minus
    same-symbol pairs.
    """
    if len(rows) < 2:
        raise ValueError("need at least 2 rows")
    _gap_byte(gap_symbol)  # the cost only compares bytes, so gap-gap is "equal"
    mat = _matrix(rows)
    n = mat.shape[0]
    total_pairs = n * (n - 1) // 2
    cost = 0
    for col in range(mat.shape[1]):
        counts = np.bincount(mat[:, col], minlength=256)
        same = int((counts * (counts - 1) // 2).sum())
        cost += total_pairs - same
    return cost


def overlap_chars(chain: AnchorChain) -> int:
    """Total length of all anchors: the aligned-character count."""
    return sum(len(a.value) for a in chain)


def overlap_chars_matrix(rows: list[bytes], gap_symbol=b"*") -> int:
    """Columns where every row carries the same non-gap symbol."""
    gap = _gap_byte(gap_symbol)
    mat = _matrix(rows)
    if mat.shape[0] == 0:
        return 0
    same = (mat == mat[0]).all(axis=0)
    return int((same & (mat[0] != gap)).sum())


@dataclass(frozen=True)
class FitResult:
    model: str
    coefficients: tuple[float, ...]
    r_squared: float


def fit_scaling(points: list[tuple[int, float]], model: str = "quadratic") -> FitResult:
    """Least-squares fit of time against sequence count.

    linear fits t = a*n + b; quadratic fits t = a*n^2 + b*n + c.
    """
    if model not in ("linear", "quadratic"):
        raise ValueError(f"unknown model {model!r}")
    if len(points) < 3:
        raise ValueError("need at least 3 points")
    ns = np.asarray([p[0] for p in points], dtype=np.float64)
    ts = np.asarray([p[1] for p in points], dtype=np.float64)
    if len(np.unique(ns)) != len(ns):
        raise ValueError("sequence counts must be distinct")
    if model == "linear":
        design = np.column_stack([ns, np.ones_like(ns)])
    else:
        design = np.column_stack([ns * ns, ns, np.ones_like(ns)])
    if np.linalg.matrix_rank(design) < design.shape[1]:
        raise ValueError("degenerate design matrix")
    coeffs, *_ = np.linalg.lstsq(design, ts, rcond=None)
    fitted = design @ coeffs
    ss_res = float(((ts - fitted) ** 2).sum())
    ss_tot = float(((ts - ts.mean()) ** 2).sum())
    if ss_tot == 0.0:
        r2 = 1.0 if math.isclose(ss_res, 0.0, abs_tol=1e-12) else 0.0
    else:
        r2 = 1.0 - ss_res / ss_tot
    return FitResult(model, tuple(float(c) for c in coeffs), r2)
