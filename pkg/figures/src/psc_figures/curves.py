"""CSV loading and reference curves for the figure scripts.

Input schemas are the two CSV formats written by the psc-lab CLI:

bounds:  m,t,d,k,rate,k_proj,proj_rate
fer:     code_id,n,k,dmin,epsilon,trials,failures,fer,ci_low,ci_high,seed
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class CurveSpec:
    """What to plot: input CSV, axis columns, grouping, scales, references."""

    csv_path: str
    x_column: str
    y_column: str
    group_by: str
    log_y: bool = False
    references: tuple[str, ...] = ()
    extra_columns: tuple[str, ...] = field(default=())

    @property
    def required_columns(self) -> tuple[str, ...]:
        return (self.x_column, self.y_column, self.group_by) + self.extra_columns


def bounds_spec(csv_path: str, references: tuple[str, ...] = ("bec", "bsc")) -> CurveSpec:
    return CurveSpec(csv_path, "rate", "proj_rate", "t", references=references)


def fer_spec(csv_path: str) -> CurveSpec:
    return CurveSpec(
        csv_path,
        "epsilon",
        "fer",
        "code_id",
        log_y=True,
        extra_columns=("ci_low", "ci_high", "trials"),
    )


def load_rows(spec: CurveSpec) -> list[dict]:
    with open(spec.csv_path, "r", newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in spec.required_columns if c not in header]
        if missing:
            raise ValueError(f"{spec.csv_path}: missing columns {missing}")
        rows = list(reader)
    if not rows:
        raise ValueError(f"{spec.csv_path}: no data rows")
    return rows


def group_rows(spec: CurveSpec, rows: list[dict]) -> dict[str, list[dict]]:
    """Group by the configured column, preserving first-seen group order and
    sorting each group along the x axis."""
    groups: dict[str, list[dict]] = {}
    for row in rows:
        groups.setdefault(row[spec.group_by], []).append(row)
    for key in groups:
        groups[key].sort(key=lambda r: float(r[spec.x_column]))
    return groups


def binary_entropy(p: float) -> float:
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def bec_reference(samples: int = 257) -> tuple[list[float], list[float]]:
    """Projected rate over rate when both match BEC capacities: the channel
    R = 1 - eps degrades to R' = 1 - (2 eps - eps^2), i.e. R' = R^2."""
    rates = [i / (samples - 1) for i in range(samples)]
    return rates, [r * r for r in rates]


def bsc_reference(samples: int = 257) -> tuple[list[float], list[float]]:
    """BSC analogue: R = 1 - h(p), R' = 1 - h(2p(1-p)) for p in [0, 1/2]."""
    xs, ys = [], []
    for i in range(samples):
        p = 0.5 * i / (samples - 1)
        xs.append(1.0 - binary_entropy(p))
        ys.append(1.0 - binary_entropy(2.0 * p * (1.0 - p)))
    return xs, ys


REFERENCES = {"bec": bec_reference, "bsc": bsc_reference}
