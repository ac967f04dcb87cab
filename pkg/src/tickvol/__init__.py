"""Volume-weighted trade analytics over averaging windows.

Core objects: a validated, time-sorted TradeSeries; WindowView slices of
it; degree-n price moments p(n) = sum(C^n)/sum(V^n); price and returns
volatilities in algebraically equivalent direct and dispersion-decomposed
forms; and truncated characteristic functionals built from multi-time
moments.
"""

from .errors import (
    ConfigError,
    DegenerateDenominatorError,
    DegreeOutOfRangeError,
    EmptyWindowError,
    LagTooLargeError,
    ParseError,
    TickvolError,
    TruncationOrderOutOfRangeError,
    UnsupportedWindowOverlapError,
    ValidationError,
)
from .trades import (
    Trade,
    TradeSeries,
    WindowSpec,
    WindowView,
    price_of,
    select_window,
    trade_count,
    validate_series,
)
from .moments import (
    DEFAULT_DEGREE_CAP,
    MAX_DEGREE,
    DegreeAggregate,
    PriceMoments,
    aggregate_degree,
    collect_price_moments,
    price_moment,
    rolling_moments,
    simple_average_price,
    vwap,
    window_centers,
)
from .volatility import (
    PriceVolatilityReport,
    TradeDispersionStats,
    dispersion_stats,
    price_volatility_closed,
    price_volatility_direct,
    price_volatility_report,
)
from .returns import (
    ReturnsDispersionStats,
    ReturnsMoments,
    ReturnsRecord,
    ReturnsSet,
    ReturnsVolatilityReport,
    build_returns,
    collect_returns_moments,
    log_return,
    mean_return,
    records_in_window,
    returns_aggregate,
    returns_dispersion_stats,
    returns_moment,
    returns_volatility_closed,
    returns_volatility_direct,
    returns_volatility_report,
    returns_volatility_rform,
    rform_terms,
)
from .charfun import (
    CharFunResult,
    MomentProvider,
    MultiTimeMoment,
    PairSeries,
    charfun_derivative_check,
    charfun_truncated,
    moment_provider,
    multi_time_moment,
)
from .ingest import IngestSchema, load_trades, render_trades, write_trades
from .synth import SimConfig, simulate_trades

__version__ = "0.1.0"

__all__ = [
    "CharFunResult",
    "ConfigError",
    "DEFAULT_DEGREE_CAP",
    "DegenerateDenominatorError",
    "DegreeAggregate",
    "DegreeOutOfRangeError",
    "EmptyWindowError",
    "IngestSchema",
    "LagTooLargeError",
    "MAX_DEGREE",
    "MomentProvider",
    "MultiTimeMoment",
    "PairSeries",
    "ParseError",
    "PriceMoments",
    "PriceVolatilityReport",
    "ReturnsDispersionStats",
    "ReturnsMoments",
    "ReturnsRecord",
    "ReturnsSet",
    "ReturnsVolatilityReport",
    "SimConfig",
    "TickvolError",
    "Trade",
    "TradeDispersionStats",
    "TradeSeries",
    "TruncationOrderOutOfRangeError",
    "UnsupportedWindowOverlapError",
    "ValidationError",
    "WindowSpec",
    "WindowView",
    "aggregate_degree",
    "build_returns",
    "charfun_derivative_check",
    "charfun_truncated",
    "collect_price_moments",
    "collect_returns_moments",
    "dispersion_stats",
    "load_trades",
    "log_return",
    "mean_return",
    "moment_provider",
    "multi_time_moment",
    "price_moment",
    "price_of",
    "price_volatility_closed",
    "price_volatility_direct",
    "price_volatility_report",
    "records_in_window",
    "render_trades",
    "returns_aggregate",
    "returns_dispersion_stats",
    "returns_moment",
    "returns_volatility_closed",
    "returns_volatility_direct",
    "returns_volatility_report",
    "returns_volatility_rform",
    "rform_terms",
    "rolling_moments",
    "select_window",
    "simple_average_price",
    "simulate_trades",
    "trade_count",
    "validate_series",
    "vwap",
    "window_centers",
    "write_trades",
]
