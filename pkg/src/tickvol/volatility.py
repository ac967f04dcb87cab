"""Price volatility in two algebraically equivalent forms.

Direct form, straight from the price moments:

    sigma_p^2 = p(2) - p(1)^2 = sum(C^2)/sum(V^2) - (sum(C)/sum(V))^2

Closed decomposition through per-trade dispersions, with
C1 = mean(C), C2 = mean(C^2), sigma_C^2 = C2 - C1^2, phi_C^2 = C2 + C1^2
(and the same for V):

    sigma_p^2 = 2 * (phi_V^2 sigma_C^2 - phi_C^2 sigma_V^2) / (phi_V^4 - sigma_V^4)

The identity follows from phi_V^4 - sigma_V^4 = 4 V1^2 V2 and
numerator = 4 (V1^2 C2 - V2 C1^2). Under these volume weightings
sigma_p^2 is a *signed* quantity; negative values are reported as-is and
flagged, never clamped, so the identity test cannot be silently gamed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateDenominatorError, EmptyWindowError
from .moments import aggregate_degree
from .sums import csum
from .trades import WindowSpec, WindowView

# absolute floor for clamping negative rounding residue in dispersions;
# mathematically sigma^2 >= 0, so only tiny negatives are touched
DISPERSION_CLAMP_REL = 1e-12


def clamp_dispersion(value: float, mean_sq: float) -> float:
    """Zero out negative rounding residue in a dispersion.

    Residue within 1e-12 * max(mean_sq, 1) of zero is floored to 0; larger
    negatives are left alone so real data corruption stays visible.
    """
    threshold = DISPERSION_CLAMP_REL * max(mean_sq, 1.0)
    if -threshold <= value < 0.0:
        return 0.0
    return value


@dataclass(frozen=True)
class TradeDispersionStats:
    """Per-trade means and dispersions of cost and volume in a window."""

    n_trades: int
    cost_mean: float        # C1 = mean(C)
    cost_sq_mean: float     # C2 = mean(C^2)
    volume_mean: float      # V1
    volume_sq_mean: float   # V2
    sigma_c2: float         # C2 - C1^2
    sigma_v2: float         # V2 - V1^2
    phi_c2: float           # C2 + C1^2
    phi_v2: float           # V2 + V1^2


@dataclass(frozen=True)
class PriceVolatilityReport:
    window: WindowSpec
    n_trades: int
    sigma_p2_direct: float
    sigma_p2_closed: float
    stats: TradeDispersionStats
    negative_flag: bool


def dispersion_stats(view: WindowView) -> TradeDispersionStats:
    """Cost/volume means and dispersions of the trades in a window.

    Dispersions use the uncentered identity mean(x^2) - mean(x)^2; tiny
    negative rounding residue is clamped to 0 (see clamp_dispersion).
    """
    n = len(view)
    if n == 0:
        raise EmptyWindowError(f"window at t={view.center} is empty")
    c1 = csum(view.costs) / n
    c2 = csum(view.costs ** 2) / n
    v1 = csum(view.volumes) / n
    v2 = csum(view.volumes ** 2) / n
    return TradeDispersionStats(
        n_trades=n,
        cost_mean=c1,
        cost_sq_mean=c2,
        volume_mean=v1,
        volume_sq_mean=v2,
        sigma_c2=clamp_dispersion(c2 - c1 * c1, c2),
        sigma_v2=clamp_dispersion(v2 - v1 * v1, v2),
        phi_c2=c2 + c1 * c1,
        phi_v2=v2 + v1 * v1,
    )


def price_volatility_direct(view: WindowView) -> float:
    """sigma_p^2 from the moments: p(2) - p(1)^2. May be negative.

    A one-trade window is an exact degeneracy (p(2) and p(1)^2 are the
    same real number), so it returns 0.0 rather than evaluation noise.
    """
    if len(view) == 0:
        raise EmptyWindowError(f"window at t={view.center} is empty")
    if len(view) == 1:
        return 0.0
    a1 = aggregate_degree(view, 1)
    a2 = aggregate_degree(view, 2)
    p1 = a1.cost_sum / a1.volume_sum
    p2 = a2.cost_sum / a2.volume_sum
    return p2 - p1 * p1


def price_volatility_closed(stats: TradeDispersionStats) -> float:
    """sigma_p^2 from the dispersion decomposition:

    2 * (phi_V^2 sigma_C^2 - phi_C^2 sigma_V^2) / (phi_V^4 - sigma_V^4)

    evaluated through the exact factorizations

        phi_V^4 - sigma_V^4                   = 2 V1^2 (phi_V^2 + sigma_V^2)
        phi_V^2 sigma_C^2 - phi_C^2 sigma_V^2 = 2 (sigma_C^2 V1^2 - sigma_V^2 C1^2)

    which hold identically in the defining means and avoid the needless
    cancellation the literal fourth powers suffer when volume dispersion
    dominates the volume mean. The denominator is strictly positive for
    stats from any non-empty window; a non-positive value means the stats
    are corrupted, not that the input was unusual.
    """
    denom = stats.volume_mean ** 2 * (stats.phi_v2 + stats.sigma_v2)
    if not denom > 0:
        raise DegenerateDenominatorError(
            f"phi_v^4 - sigma_v^4 = {2 * denom!r} is not positive; stats are corrupted"
        )
    num = stats.sigma_c2 * stats.volume_mean ** 2 - stats.sigma_v2 * stats.cost_mean ** 2
    return 2.0 * num / denom


def price_volatility_report(view: WindowView) -> PriceVolatilityReport:
    """Both volatility forms plus the dispersion stats for one window."""
    stats = dispersion_stats(view)
    direct = price_volatility_direct(view)
    closed = price_volatility_closed(stats)
    return PriceVolatilityReport(
        window=view.spec,
        n_trades=len(view),
        sigma_p2_direct=direct,
        sigma_p2_closed=closed,
        stats=stats,
        negative_flag=direct < 0,
    )
