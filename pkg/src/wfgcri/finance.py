"""Price series ingestion, shifted log returns and rolling inaccuracy grids."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
import pandas as pd

from .estimators import estimate_wfgcri_phr, estimate_wfgcri_two_sample
from .exceptions import DomainError

__all__ = [
    "PriceSeries",
    "ReturnSeries",
    "RollingConfig",
    "read_prices",
    "log_returns",
    "returns_from_values",
    "window_starts",
    "rolling_wfgcri",
    "compare_series",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PriceSeries:
    dates: np.ndarray
    closes: np.ndarray
    name: str = ""

    def __post_init__(self):
        dates = np.asarray(self.dates)
        closes = np.asarray(self.closes, dtype=float)
        if dates.shape != closes.shape:
            raise DomainError("dates and closes differ in length")
        if dates.size > 1 and not np.all(dates[1:] > dates[:-1]):
            raise DomainError("dates must be strictly increasing")
        object.__setattr__(self, "dates", dates)
        object.__setattr__(self, "closes", closes)

    def __len__(self):
        return int(self.closes.size)


@dataclass(frozen=True, eq=False)
class ReturnSeries:
    raw: np.ndarray
    shifted: np.ndarray
    shift: float
    dates: Optional[np.ndarray] = None
    name: str = ""

    def __len__(self):
        return int(self.raw.size)


@dataclass(frozen=True)
class RollingConfig:
    window: int = 250
    step: int = 100
    betas: Sequence[float] = field(
        default_factory=lambda: tuple(np.round(np.arange(1, 201) * 0.01, 2)))
    alphas: Sequence[float] = (5.0, 10.0)
    per_window_shift: bool = False

    def __post_init__(self):
        if self.window < 2 or self.step < 1:
            raise DomainError("need window >= 2 and step >= 1")
        if any(not b > 0 for b in self.betas) or any(not a > 0 for a in self.alphas):
            raise DomainError("betas and alphas must be positive")


def read_prices(path, name: Optional[str] = None) -> PriceSeries:
    """Read a ``date,close`` CSV (ISO dates; extra columns ignored).

    Rows with a missing or non-positive close are dropped and counted in the
    log.
    """
    frame = pd.read_csv(path)
    cols = {c.lower().strip(): c for c in frame.columns}
    if "date" not in cols or "close" not in cols:
        raise DomainError(f"{path}: CSV needs 'date' and 'close' columns")
    frame = frame[[cols["date"], cols["close"]]]
    frame.columns = ["date", "close"]
    frame["date"] = pd.to_datetime(frame["date"], format="ISO8601")
    frame["close"] = pd.to_numeric(frame["close"], errors="coerce")
    bad = frame["close"].isna() | ~(frame["close"] > 0)
    if bad.any():
        log.warning("%s: dropped %d rows with missing or non-positive close",
                    path, int(bad.sum()))
    frame = frame[~bad].sort_values("date")
    if frame["date"].duplicated().any():
        raise DomainError(f"{path}: duplicate dates")
    return PriceSeries(frame["date"].to_numpy(), frame["close"].to_numpy(),
                       name or str(path))


def returns_from_values(raw, dates=None, name: str = "") -> ReturnSeries:
    """Shift an arbitrary return series by its global minimum."""
    raw = np.asarray(raw, dtype=float)
    if raw.size == 0:
        raise DomainError("empty return series")
    shift = float(raw.min())
    return ReturnSeries(raw, raw - shift, shift, dates, name)


def log_returns(prices) -> ReturnSeries:
    """Daily log returns shifted by their global minimum so the smallest is 0."""
    if not isinstance(prices, PriceSeries):
        prices = PriceSeries(np.arange(len(prices)), prices)
    p = prices.closes
    if p.size < 2:
        raise DomainError("need at least two prices")
    bad = np.flatnonzero(~(p > 0))
    if bad.size:
        raise DomainError(f"non-positive price {p[bad[0]]!r} at row {int(bad[0])}")
    raw = np.diff(np.log(p))
    return returns_from_values(raw, prices.dates[1:], prices.name)


def window_starts(length: int, window: int, step: int) -> np.ndarray:
    if length < window:
        return np.array([], dtype=int)
    return np.arange(0, length - window + 1, step)


def rolling_wfgcri(returns: ReturnSeries, config: RollingConfig = RollingConfig()
                   ) -> pd.DataFrame:
    """Long-format grid ``window_start, beta, alpha, value, degenerate``.

    ``window_start`` is the date of the first return in the window when the
    series carries dates, otherwise its position.
    """
    if len(returns) < config.window:
        raise DomainError(
            f"series of length {len(returns)} is shorter than the window {config.window}")
    betas = [float(b) for b in config.betas]
    alphas = [float(a) for a in config.alphas]
    records = []
    for start in window_starts(len(returns), config.window, config.step):
        if config.per_window_shift:
            seg = returns.raw[start:start + config.window]
            seg = seg - seg.min()
        else:
            seg = returns.shifted[start:start + config.window]
        label = returns.dates[start] if returns.dates is not None else int(start)
        degenerate = np.unique(seg).size < 2
        for alpha in alphas:
            for beta in betas:
                value = 0.0 if degenerate else estimate_wfgcri_phr(seg, alpha, beta)
                records.append((label, beta, alpha, value, degenerate))
    return pd.DataFrame.from_records(
        records, columns=["window_start", "beta", "alpha", "value", "degenerate"])


def compare_series(true_series: ReturnSeries, ref_series: ReturnSeries,
                   betas: Sequence[float]) -> np.ndarray:
    """Two-sample inaccuracy of the full shifted series, one row ``(beta, value)`` per beta."""
    x, y = true_series.shifted, ref_series.shifted
    return np.array([(float(b), estimate_wfgcri_two_sample(x, y, b)) for b in betas])
