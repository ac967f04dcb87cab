"""Volume-weighted price moments over averaging windows.

For a window holding trades (C_i, V_i), the degree-n aggregates are

    cost_sum(n)   = sum_i C_i^n
    volume_sum(n) = sum_i V_i^n

and the degree-n price moment is their ratio

    p(n) = cost_sum(n) / volume_sum(n),

the n-th-power generalization of VWAP (p(1) is VWAP itself). All sums are
exact compensated sums in ascending index order, so results are
deterministic and independent of any parallel window schedule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DegreeOutOfRangeError, EmptyWindowError
from .sums import csum
from .trades import TradeSeries, WindowSpec, WindowView, select_window

# C^n overflows double range for large prices at high n; the default cap
# keeps desk-scale data safe and the hard limit is a sanity stop.
DEFAULT_DEGREE_CAP = 8
MAX_DEGREE = 16


def check_degree(n: int, degree_cap: int | None = None) -> None:
    """Raise DegreeOutOfRangeError unless 1 <= n <= cap (cap <= 16)."""
    cap = DEFAULT_DEGREE_CAP if degree_cap is None else degree_cap
    if not 1 <= cap <= MAX_DEGREE:
        raise DegreeOutOfRangeError(
            f"degree cap must be in [1, {MAX_DEGREE}], got {cap}"
        )
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise DegreeOutOfRangeError(f"degree must be an integer, got {n!r}")
    if not 1 <= n <= cap:
        raise DegreeOutOfRangeError(f"degree {n} outside [1, {cap}]")


@dataclass(frozen=True)
class DegreeAggregate:
    """Window sums of C^n and V^n for one degree n."""

    degree: int
    cost_sum: float
    volume_sum: float


@dataclass(frozen=True)
class PriceMoments:
    """Per-window price moments for a set of degrees.

    entries maps degree n to (cost_sum, volume_sum, moment); the moment is
    stored exactly as the division cost_sum/volume_sum. An empty window
    yields trade_count == 0 and no entries.
    """

    window: WindowSpec
    trade_count: int
    entries: dict[int, tuple[float, float, float]]

    @property
    def empty(self) -> bool:
        return self.trade_count == 0

    def moment(self, n: int) -> float:
        return self.entries[n][2]


def aggregate_degree(view: WindowView, n: int, *, degree_cap: int | None = None) -> DegreeAggregate:
    """Sums of n-th powers of cost and volume over a window.

    Raises EmptyWindowError on an empty view and DegreeOutOfRangeError when
    n exceeds the cap.
    """
    if len(view) == 0:
        raise EmptyWindowError(f"window at t={view.center} is empty")
    check_degree(n, degree_cap)
    if n == 1:
        return DegreeAggregate(1, csum(view.costs), csum(view.volumes))
    return DegreeAggregate(n, csum(view.costs ** n), csum(view.volumes ** n))


def price_moment(view: WindowView, n: int, *, degree_cap: int | None = None) -> float:
    """Degree-n price moment p(n) = sum(C^n) / sum(V^n)."""
    agg = aggregate_degree(view, n, degree_cap=degree_cap)
    return agg.cost_sum / agg.volume_sum


def vwap(view: WindowView) -> float:
    """Volume weighted average price, sum(C)/sum(V).

    Identical code path to price_moment(view, 1), so the two agree
    bit-for-bit.
    """
    return price_moment(view, 1)


def simple_average_price(view: WindowView) -> float:
    """Plain arithmetic mean of per-trade prices (the classical baseline).

    Weights every trade equally, unlike VWAP; the two coincide only when
    all volumes are equal.
    """
    if len(view) == 0:
        raise EmptyWindowError(f"window at t={view.center} is empty")
    return csum(view.prices) / len(view)


def collect_price_moments(
    view: WindowView,
    degrees: Iterable[int],
    *,
    degree_cap: int | None = None,
) -> PriceMoments:
    """PriceMoments record for one window; empty windows get no entries."""
    degs = sorted(set(int(n) for n in degrees))
    if len(view) == 0:
        return PriceMoments(view.spec, 0, {})
    entries: dict[int, tuple[float, float, float]] = {}
    for n in degs:
        agg = aggregate_degree(view, n, degree_cap=degree_cap)
        entries[n] = (agg.cost_sum, agg.volume_sum, agg.cost_sum / agg.volume_sum)
    return PriceMoments(view.spec, len(view), entries)


def window_centers(series: TradeSeries, width: float, stride: float) -> np.ndarray:
    """Rolling window centers over the series time span.

    Centers start at the first trade's timestamp plus width/2 and advance
    by stride while the window's left edge still lies at or before the
    last trade. Anchoring to the data keeps output independent of the
    absolute epoch.
    """
    if not width > 0:
        raise ValueError("width must be positive")
    if not stride > 0:
        raise ValueError("stride must be positive")
    if len(series) == 0:
        return np.empty(0)
    t0, t1 = series.span()
    span = t1 - t0
    k = int(math.floor(span / stride))
    # guard against float fuzz on the boundary step
    while (k + 1) * stride <= span:
        k += 1
    while k > 0 and k * stride > span:
        k -= 1
    return t0 + width / 2 + stride * np.arange(k + 1, dtype=np.float64)


def rolling_moments(
    series: TradeSeries,
    width: float,
    stride: float,
    degrees: Iterable[int],
    *,
    degree_cap: int | None = None,
) -> list[PriceMoments]:
    """Evaluate collect_price_moments on the rolling window grid.

    Empty windows yield records flagged empty (trade_count == 0, no
    entries) rather than being dropped, so the output grid is regular.
    """
    degs = sorted(set(int(n) for n in degrees))
    for n in degs:
        check_degree(n, degree_cap)
    out = []
    for center in window_centers(series, width, stride):
        view = select_window(series, WindowSpec(float(center), width))
        out.append(collect_price_moments(view, degs, degree_cap=degree_cap))
    return out
