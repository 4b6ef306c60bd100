"""Residual reports and their serialized forms."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .jets import Point4

SCHEMA = "qfc-report/1"


@dataclass(frozen=True)
class MaskedPoint:
    point: Point4
    reason: str


@dataclass(frozen=True)
class ResidualReport:
    """Residual magnitudes of one PDE system over a point sample.

    Each row pairs a point with the tuple of per-equation residual
    magnitudes at that point.  Masked points carry a reason instead of
    numbers, so serialized output never contains NaN.
    """

    system: str
    rows: list[tuple[Point4, tuple[float, ...]]] = field(default_factory=list)
    masked: list[MaskedPoint] = field(default_factory=list)

    def __post_init__(self):
        for _, values in self.rows:
            for v in values:
                if not math.isfinite(v) or v < 0.0:
                    raise ValueError(
                        f"residual magnitudes must be finite and non-negative, got {v}"
                    )

    @property
    def max_residual(self) -> float:
        return max((v for _, vs in self.rows for v in vs), default=0.0)

    @property
    def mean_residual(self) -> float:
        flat = [v for _, vs in self.rows for v in vs]
        return sum(flat) / len(flat) if flat else 0.0

    def to_dict(self) -> dict:
        return {
            "system": self.system,
            "max_residual": self.max_residual,
            "mean_residual": self.mean_residual,
            "points": [
                {"point": list(p.reals()), "residuals": list(vs)}
                for p, vs in self.rows
            ],
            "masked": [
                {"point": list(m.point.reals()), "reason": m.reason}
                for m in self.masked
            ],
        }


def dumps_json(obj: dict) -> str:
    """Deterministic JSON rendering used by all report writers."""
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def residual_csv_rows(
    reports: list[ResidualReport], prefix: tuple[str, ...] = ()
) -> list[list[str]]:
    """One row per point per equation; masked points carry the reason."""
    rows: list[list[str]] = []
    for rep in reports:
        for p, values in rep.rows:
            for k, v in enumerate(values):
                rows.append(
                    [*prefix, rep.system, *(repr(c) for c in p.reals()), str(k), repr(v), ""]
                )
        for m in rep.masked:
            rows.append(
                [*prefix, rep.system, *(repr(c) for c in m.point.reals()), "", "", m.reason]
            )
    return rows


CSV_HEADER = ["system", "x1", "y1", "x2", "y2", "equation", "residual", "note"]


def render_text_table(reports: list[ResidualReport]) -> str:
    """Aligned summary table, one line per system."""
    header = ("system", "points", "masked", "max residual", "mean residual")
    body = [
        (
            rep.system,
            str(len(rep.rows)),
            str(len(rep.masked)),
            f"{rep.max_residual:.3e}",
            f"{rep.mean_residual:.3e}",
        )
        for rep in reports
    ]
    widths = [
        max(len(header[k]), *(len(row[k]) for row in body)) if body else len(header[k])
        for k in range(len(header))
    ]
    lines = [
        "  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip(),
        "  ".join("-" * w for w in widths),
    ]
    for row in body:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"
