"""Plug-in estimators of the inaccuracy built from empirical survival functions.

Both estimators integrate the weight exactly over the cells on which the
empirical survival functions are constant, so they are finite sums with no
quadrature involved.  The empirical survival function uses the convention
``S(w) = #{x_i > w} / n``, which stays well defined when observations tie.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gamma as gamma_fn

from .exceptions import DomainError

__all__ = [
    "EmpiricalSample",
    "empirical_sf",
    "estimate_wfgcri_phr",
    "estimate_wfgcri_two_sample",
    "cell_weight_integral",
]


@dataclass(frozen=True, eq=False)
class EmpiricalSample:
    """Sorted non-negative observations."""

    values: np.ndarray

    def __post_init__(self):
        x = np.sort(np.asarray(self.values, dtype=float).ravel())
        if x.size == 0:
            raise DomainError("empty sample")
        if np.any(np.isnan(x)) or x[0] < 0:
            raise DomainError("observations must be non-negative numbers")
        x.setflags(write=False)
        object.__setattr__(self, "values", x)

    @property
    def n(self) -> int:
        return int(self.values.size)

    def sf(self, w):
        return empirical_sf(self, w)

    def __len__(self):
        return self.n


def _as_sample(data) -> EmpiricalSample:
    return data if isinstance(data, EmpiricalSample) else EmpiricalSample(data)


def empirical_sf(sample, w):
    """Right-continuous empirical survival function ``#{x_i > w} / n``."""
    sample = _as_sample(sample)
    arr = np.asarray(w, dtype=float)
    if np.any(arr < 0):
        raise DomainError("empirical survival function is evaluated at w >= 0")
    above = sample.n - np.searchsorted(sample.values, arr, side="right")
    out = above / sample.n
    return float(out) if np.ndim(w) == 0 else out


def cell_weight_integral(lo, hi, c: float = 1.0):
    """``int_lo^hi w**c dw`` evaluated exactly."""
    p = c + 1.0
    return (np.power(hi, p) - np.power(lo, p)) / p


def _info_power(s, beta):
    # s * (-ln s)**beta with 0**0 = 1 and s in (0, 1]
    with np.errstate(divide="ignore"):
        return s * np.power(-np.log(s), beta)


def estimate_wfgcri_phr(sample, alpha: float, beta: float,
                        weight_exp: float = 1.0) -> float:
    """Single-sample estimator under the proportional-hazards model.

    Estimates the inaccuracy between ``S`` and ``S**alpha`` by plugging in
    the empirical survival function; the ``alpha`` dependence factors out as
    ``alpha**beta``.  Sums over the cells ``[x_(j), x_(j+1))``, ``j = 1..n-1``.
    """
    sample = _as_sample(sample)
    if sample.n < 2:
        raise DomainError("the PHR estimator needs at least two observations")
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha!r}")
    if not beta >= 0:
        raise DomainError(f"beta must be non-negative, got {beta!r}")
    x = sample.values
    n = sample.n
    s = 1.0 - np.arange(1, n) / n
    cells = cell_weight_integral(x[:-1], x[1:], weight_exp)
    total = np.sum(cells * _info_power(s, beta))
    return float(alpha**beta * total / gamma_fn(beta + 1.0))


def estimate_wfgcri_two_sample(sample_x, sample_y, beta: float,
                               weight_exp: float = 1.0) -> float:
    """Two-sample plug-in estimator with true sample ``X`` and reference ``Y``.

    The grid is ``0`` followed by the distinct pooled observations.  Cells
    where the reference survival estimate is zero would contribute
    ``(-ln 0)**beta``; they are skipped, which truncates the integral at the
    largest ``Y`` observation.
    """
    sx_sample = _as_sample(sample_x)
    sy_sample = _as_sample(sample_y)
    if not beta >= 0:
        raise DomainError(f"beta must be non-negative, got {beta!r}")
    grid = np.unique(np.concatenate([[0.0], sx_sample.values, sy_sample.values]))
    left, right = grid[:-1], grid[1:]
    sx = empirical_sf(sx_sample, left)
    sy = empirical_sf(sy_sample, left)
    keep = (sx > 0) & (sy > 0)
    with np.errstate(divide="ignore"):
        info = np.power(-np.log(sy[keep]), beta)
    terms = sx[keep] * info * cell_weight_integral(left[keep], right[keep], weight_exp)
    return float(np.sum(terms) / gamma_fn(beta + 1.0))
