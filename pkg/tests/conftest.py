import pytest

from tickvol import WindowSpec, select_window, validate_series

# the two workhorse fixtures used across modules:
# two trades (c=10,v=2), (c=6,v=3) in one window, and the three-trade
# lag-1 returns fixture (t,c,v) = (0,4,2), (1,6,2), (2,9,3)

TWO_TRADES = [(0.0, 10.0, 2.0), (1.0, 6.0, 3.0)]
THREE_TRADES = [(0.0, 4.0, 2.0), (1.0, 6.0, 2.0), (2.0, 9.0, 3.0)]


@pytest.fixture
def two_trade_series():
    return validate_series(TWO_TRADES)


@pytest.fixture
def two_trade_view(two_trade_series):
    return select_window(two_trade_series, WindowSpec(0.5, 2.0))


@pytest.fixture
def three_trade_series():
    return validate_series(THREE_TRADES)
