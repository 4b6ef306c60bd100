"""Evaluation domains and grid sampling."""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, Sequence, TypeVar

import numpy as np

from .jets import Point4

Interval = tuple[float, float]

DEFAULT_BOX: tuple[Interval, Interval, Interval, Interval] = (
    (-1.0, 1.0),
    (-1.0, 1.0),
    (-1.0, 1.0),
    (-1.0, 1.0),
)


@dataclass(frozen=True)
class Domain:
    """A product of four real intervals for (x1, y1, x2, y2).

    excluded_threshold masks grid points where the function under study
    has squared norm below the given value.
    """

    box: tuple[Interval, Interval, Interval, Interval] = DEFAULT_BOX
    excluded_threshold: float = 1e-6

    def __post_init__(self):
        if len(self.box) != 4:
            raise ValueError("box must have exactly four intervals")
        for lo, hi in self.box:
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise ValueError("box bounds must be finite")
            if lo > hi:
                raise ValueError(f"empty interval ({lo}, {hi})")
        if not (self.excluded_threshold > 0.0):
            raise ValueError("excluded_threshold must be positive")

    @classmethod
    def from_flat(
        cls, bounds: Sequence[float], excluded_threshold: float = 1e-6
    ) -> Domain:
        if len(bounds) != 8:
            raise ValueError("expected eight bounds: x1 lo, x1 hi, ..., y2 hi")
        box = tuple(
            (float(bounds[2 * k]), float(bounds[2 * k + 1])) for k in range(4)
        )
        return cls(box, excluded_threshold)


def grid_points(domain: Domain, grid_n: int) -> list[Point4]:
    """The grid_n**4 lattice of the box, x1 varying slowest, y2 fastest."""
    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")
    axes = [np.linspace(lo, hi, grid_n) for (lo, hi) in domain.box]
    return [
        Point4.from_reals(x1, y1, x2, y2)
        for x1, y1, x2, y2 in product(*(a.tolist() for a in axes))
    ]


T = TypeVar("T")
R = TypeVar("R")


def point_map(fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
    """Map fn over items, optionally threaded via QFC_THREADS.

    Unset: serial.  0: one thread per CPU.  N >= 1: that many threads.
    Result order always matches input order.
    """
    raw = os.environ.get("QFC_THREADS")
    items = list(items)
    if raw is None:
        return [fn(x) for x in items]
    try:
        n = int(raw)
    except ValueError as exc:
        raise ValueError(f"QFC_THREADS must be an integer, got {raw!r}") from exc
    if n < 0:
        raise ValueError("QFC_THREADS must be non-negative")
    if n == 0:
        n = os.cpu_count() or 1
    if n == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
