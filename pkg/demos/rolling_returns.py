# # Rolling inaccuracy of a return series
#
# Log returns are shifted by their global minimum so they are non-negative,
# then a 250-day window advances 100 days at a time.  A volatility burst shows
# up as a window whose curve sits above its neighbours.

import numpy as np
import pandas as pd

from wfgcri.chaos import beta_grid
from wfgcri.finance import (PriceSeries, RollingConfig, compare_series, log_returns,
                            rolling_wfgcri)

rng = np.random.default_rng(5)
vol = np.full(2000, 0.01)
vol[1000:1250] = 0.03  # a calm market with one turbulent year
dates = pd.bdate_range("2012-01-02", periods=2001).to_numpy()
closes = 100 * np.exp(np.concatenate([[0.0], np.cumsum(rng.normal(0, vol))]))
returns = log_returns(PriceSeries(dates, closes, "synthetic"))

cfg = RollingConfig(window=250, step=100, betas=tuple(beta_grid(0.1, 2.0, 0.1)),
                    alphas=(5.0, 10.0))
grid = rolling_wfgcri(returns, cfg)
at_one = grid[(grid.beta == 1.0) & (grid.alpha == 5.0)]
for row in at_one.itertuples():
    bar = "#" * int(row.value * 4000)
    print(f"{pd.Timestamp(row.window_start):%Y-%m-%d} {row.value:.5f} {bar}")

# ## Two series against each other

other = log_returns(PriceSeries(dates, 100 * np.exp(np.concatenate(
    [[0.0], np.cumsum(rng.normal(0, 0.02, 2000))])), "wider"))
for beta, value in compare_series(returns, other, [0.5, 1.0, 2.0, 5.0]):
    print(f"beta={beta}: {value:.6g}")
