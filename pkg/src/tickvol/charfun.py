"""Multi-time moments and truncated characteristic functionals.

Works on a PairSeries: an ordered stream of (timestamp, a, b) with a
cost-like numerator and volume-like denominator, so the same machinery
serves trade prices (a=cost, b=volume) and returns (a=cost ratio,
b=volume ratio).

Multi-time moment semantics. For time points (t_1..t_n) with equal-width
windows W_j = [t_j +- width/2], the combination set is only well defined
in two base regimes and their composition:

  * all times equal (diagonal): one trade drawn per combination, so
    a_sum = sum_i a_i^n over the single window — identical to the
    single-window degree-n aggregate;
  * distinct times with pairwise disjoint windows: combinations pick one
    trade per window independently, so the sums factorize into products
    of per-window sums.

In general the times are grouped by equality: each group is a diagonal
block of size m_g over its own window, and groups whose windows are
pairwise disjoint multiply. Two *distinct* times whose windows overlap
have no defensible combination set and raise
UnsupportedWindowOverlapError.

The truncated characteristic functional on a grid (t_1..t_G) with test
values x_g and step h is the Riemann discretization

    F = 1 + sum_{n=1}^{n_max} (i^n / n!) sum_{g_1..g_n}
            p(n; t_{g_1}..t_{g_n}) x_{g_1} .. x_{g_n} h^n

(the constant 1 makes F(0) = 1, as a characteristic functional must).
Because moments factorize over grid points, F is evaluated here as the
order-truncated product of per-point power series — one real polynomial
per grid point with coefficients p(m; t_g) (x_g h)^m / m! — rather than by
enumerating index tuples; the i^n factors are applied at the end from the
explicit cycle (i, -1, -i, 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DegreeOutOfRangeError,
    EmptyWindowError,
    TruncationOrderOutOfRangeError,
    UnsupportedWindowOverlapError,
)
from .moments import DEFAULT_DEGREE_CAP, check_degree
from .sums import csum
from .trades import TradeSeries

_I_POW = (1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j)  # i^n for n % 4 = 0,1,2,3


class PairSeries:
    """Time-ordered (timestamp, a, b) stream with strictly positive a, b."""

    __slots__ = ("timestamps", "a", "b")

    def __init__(self, timestamps, a, b):
        ts = np.array(timestamps, dtype=np.float64, copy=True)
        av = np.array(a, dtype=np.float64, copy=True)
        bv = np.array(b, dtype=np.float64, copy=True)
        if not (ts.ndim == av.ndim == bv.ndim == 1 and len(ts) == len(av) == len(bv)):
            raise ValueError("timestamps, a, b must be 1-d arrays of equal length")
        if len(ts) and np.any(np.diff(ts) < 0):
            raise ValueError("timestamps must be non-decreasing")
        for name, arr in (("a", av), ("b", bv)):
            if not np.all(np.isfinite(arr) & (arr > 0)):
                raise ValueError(f"{name} values must be finite and strictly positive")
        if not np.all(np.isfinite(ts)):
            raise ValueError("timestamps must be finite")
        for arr in (ts, av, bv):
            arr.setflags(write=False)
        self.timestamps = ts
        self.a = av
        self.b = bv

    def __len__(self) -> int:
        return len(self.timestamps)

    @classmethod
    def from_trades(cls, series: TradeSeries) -> "PairSeries":
        """Cost/volume pairs of a trade series."""
        return cls(series.timestamps, series.costs, series.volumes)

    @classmethod
    def from_returns(cls, records) -> "PairSeries":
        """Cost-ratio/volume-ratio pairs of a lag-m returns set."""
        return cls(records.timestamps, records.cost_ratio, records.volume_ratio)

    def _window_slice(self, center: float, width: float) -> tuple[int, int]:
        lo = int(np.searchsorted(self.timestamps, center - width / 2, side="left"))
        hi = int(np.searchsorted(self.timestamps, center + width / 2, side="right"))
        return lo, max(lo, hi)


@dataclass(frozen=True)
class MultiTimeMoment:
    """Moment over a tuple of window centers.

    a_sum and b_sum are the combination sums of products of a- and
    b-values; moment is stored exactly as their division. combo_count is
    the number of combinations (product of member counts over groups).
    """

    times: tuple[float, ...]
    width: float
    combo_count: int
    a_sum: float
    b_sum: float
    moment: float


def _grouped(times: Sequence[float]) -> list[tuple[float, int]]:
    """Distinct times in ascending order with their multiplicities."""
    groups: dict[float, int] = {}
    for t in times:
        t = float(t)
        groups[t] = groups.get(t, 0) + 1
    return sorted(groups.items())


def _check_disjoint(groups: list[tuple[float, int]], width: float) -> None:
    # sorted distinct centers: consecutive disjointness suffices; ends are
    # inclusive, so windows touch (and overlap) at spacing exactly == width
    for (t_prev, _), (t_next, _) in zip(groups, groups[1:]):
        if not (t_next - t_prev > width):
            raise UnsupportedWindowOverlapError(
                f"windows at t={t_prev} and t={t_next} (width {width}) are "
                "distinct but not disjoint; no combination set is defined there"
            )


def multi_time_moment(
    series: PairSeries,
    times: Sequence[float],
    width: float,
    *,
    degree_cap: int | None = None,
) -> MultiTimeMoment:
    """Moment p(n; t_1..t_n) with n = len(times); see module docstring.

    Raises UnsupportedWindowOverlapError for distinct-but-overlapping
    windows and EmptyWindowError when any involved window has no data.
    """
    if not width > 0:
        raise ValueError("width must be positive")
    n = len(times)
    if n == 0:
        raise DegreeOutOfRangeError("times tuple must not be empty")
    check_degree(n, degree_cap)
    groups = _grouped(times)
    _check_disjoint(groups, width)
    a_sum = 1.0
    b_sum = 1.0
    combos = 1
    for t, mult in groups:
        lo, hi = series._window_slice(t, width)
        if hi == lo:
            raise EmptyWindowError(f"window at t={t} (width {width}) is empty")
        a_w = series.a[lo:hi]
        b_w = series.b[lo:hi]
        a_sum *= csum(a_w ** mult) if mult > 1 else csum(a_w)
        b_sum *= csum(b_w ** mult) if mult > 1 else csum(b_w)
        combos *= hi - lo
    return MultiTimeMoment(
        times=tuple(float(t) for t in times),
        width=width,
        combo_count=combos,
        a_sum=a_sum,
        b_sum=b_sum,
        moment=a_sum / b_sum,
    )


class MomentProvider:
    """Callable source of multi-time moments for one series and width.

    provider(times) returns the moment value; diagonal power-sum profiles
    are cached per window, which is what the truncated-functional
    evaluation consumes.
    """

    def __init__(self, series: PairSeries, width: float,
                 degree_cap: int | None = None):
        if not width > 0:
            raise ValueError("width must be positive")
        self.series = series
        self.width = width
        self.degree_cap = DEFAULT_DEGREE_CAP if degree_cap is None else degree_cap
        self._profiles: dict[tuple[float, int], list[float]] = {}

    def __call__(self, times: Sequence[float]) -> float:
        return multi_time_moment(self.series, times, self.width,
                                 degree_cap=self.degree_cap).moment

    def diagonal_profile(self, t: float, n_max: int) -> list[float]:
        """[p(1;t), ..., p(n_max;t)] for the window at t."""
        key = (float(t), int(n_max))
        cached = self._profiles.get(key)
        if cached is not None:
            return cached
        lo, hi = self.series._window_slice(t, self.width)
        if hi == lo:
            raise EmptyWindowError(f"window at t={t} (width {self.width}) is empty")
        a_w = self.series.a[lo:hi]
        b_w = self.series.b[lo:hi]
        profile = [csum(a_w ** m) / csum(b_w ** m) for m in range(1, n_max + 1)]
        self._profiles[key] = profile
        return profile


def moment_provider(series: PairSeries, width: float,
                    degree_cap: int | None = None) -> MomentProvider:
    return MomentProvider(series, width, degree_cap)


@dataclass(frozen=True)
class CharFunResult:
    """Truncated characteristic functional on a grid.

    order_terms[k] is the order-(k+1) term i^n c_n; value is 1 plus their
    sum. At the zero test function the value is exactly 1.
    """

    grid: tuple[float, ...]
    step: float
    n_max: int
    value: complex
    order_terms: tuple[complex, ...]


def _truncated_convolve(acc: list[float], other: list[float], n_max: int) -> list[float]:
    out = [0.0] * (n_max + 1)
    for i, ai in enumerate(acc):
        if ai == 0.0:
            continue
        for j in range(min(n_max - i, len(other) - 1) + 1):
            out[i + j] += ai * other[j]
    return out


def charfun_truncated(
    provider: MomentProvider,
    grid: Sequence[float],
    x: Sequence[float],
    step: float,
    n_max: int,
) -> CharFunResult:
    """Order-n_max truncation of the characteristic functional.

    grid must be strictly increasing with consecutive spacing greater
    than the provider's window width (so every required multi-time moment
    is well defined); x holds the test-function values on the grid and
    step is the quadrature step h of the left-point Riemann rule.
    """
    grid = [float(t) for t in grid]
    xs = [float(v) for v in x]
    if len(grid) == 0:
        raise ValueError("grid must not be empty")
    if len(xs) != len(grid):
        raise ValueError(f"{len(xs)} test-function values for {len(grid)} grid points")
    if not step > 0:
        raise ValueError("step must be positive")
    if not isinstance(n_max, (int, np.integer)) or isinstance(n_max, bool) or n_max < 1:
        raise TruncationOrderOutOfRangeError(f"truncation order must be an integer >= 1, got {n_max!r}")
    if n_max > provider.degree_cap:
        raise TruncationOrderOutOfRangeError(
            f"truncation order {n_max} exceeds degree cap {provider.degree_cap}"
        )
    for t_prev, t_next in zip(grid, grid[1:]):
        if not t_next > t_prev:
            raise ValueError("grid must be strictly increasing")
    _check_disjoint([(t, 1) for t in grid], provider.width)

    # per-point series: coeff[m] = p(m;t_g) * (x_g h)^m / m!
    coeffs = [1.0] + [0.0] * n_max
    for t_g, x_g in zip(grid, xs):
        profile = provider.diagonal_profile(t_g, n_max)
        y = x_g * step
        point = [1.0]
        y_pow = 1.0
        for m in range(1, n_max + 1):
            y_pow *= y
            point.append(profile[m - 1] * y_pow / math.factorial(m))
        coeffs = _truncated_convolve(coeffs, point, n_max)

    terms = tuple(_I_POW[n % 4] * coeffs[n] for n in range(1, n_max + 1))
    value = 1.0 + 0.0j
    for term in terms:
        value += term
    return CharFunResult(
        grid=tuple(grid),
        step=float(step),
        n_max=int(n_max),
        value=value,
        order_terms=terms,
    )


def charfun_derivative_check(
    series: PairSeries,
    t: float,
    eps: float,
    step: float,
    *,
    width: float,
    n_max: int = 3,
) -> complex:
    """Centered finite difference of F along the grid indicator at t.

    [F(eps * d_t) - F(-eps * d_t)] / (2 eps h) approximates i * p(1;t)
    with O(eps^2) error — a self-consistency diagnostic tying the
    functional back to the first moment it encodes.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    if n_max < 2:
        raise TruncationOrderOutOfRangeError("derivative check needs n_max >= 2")
    provider = MomentProvider(series, width)
    f_plus = charfun_truncated(provider, [t], [eps], step, n_max).value
    f_minus = charfun_truncated(provider, [t], [-eps], step, n_max).value
    return (f_plus - f_minus) / (2.0 * eps * step)
