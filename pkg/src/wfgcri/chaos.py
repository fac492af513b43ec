"""Ricker and Tent map trajectories and their inaccuracy-versus-beta curves.

A trajectory is treated as a sample and fed to the single-sample PHR
estimator; chaotic regimes spread the states out and raise the curve.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .estimators import estimate_wfgcri_phr
from .exceptions import DomainError

__all__ = [
    "MapSpec",
    "ricker_step",
    "tent_step",
    "iterate",
    "bifurcation_data",
    "ChaosCurve",
    "wfgcri_curve",
    "beta_grid",
]

MAPS = ("ricker", "tent")


def ricker_step(x: float, r: float) -> float:
    return x * math.exp(r * (1.0 - x))


def tent_step(x: float, r: float) -> float:
    return r * x if x < 0.5 else r * (1.0 - x)


@dataclass(frozen=True)
class MapSpec:
    kind: str
    r: float
    x0: float = 0.01
    n: int = 10_000
    burn_in: int = 0

    def __post_init__(self):
        kind = self.kind.lower()
        object.__setattr__(self, "kind", kind)
        if kind not in MAPS:
            raise DomainError(f"unknown map {self.kind!r}; choose ricker or tent")
        if self.n < 2 or self.burn_in < 0:
            raise DomainError("need n >= 2 and burn_in >= 0")
        if kind == "ricker":
            if not self.r > 0:
                raise DomainError("Ricker map needs r > 0")
            if not self.x0 > 0:
                raise DomainError("Ricker map needs x0 > 0")
        else:
            if not 0 <= self.r <= 2:
                raise DomainError("Tent map needs r in [0, 2]")
            if not 0 <= self.x0 <= 1:
                raise DomainError("Tent map needs x0 in [0, 1]")


def iterate(spec: MapSpec) -> np.ndarray:
    """States ``x_burn_in, ..., x_(burn_in + n - 1)``, starting from ``x0``."""
    step = ricker_step if spec.kind == "ricker" else tent_step
    x = float(spec.x0)
    for _ in range(spec.burn_in):
        x = step(x, spec.r)
    out = np.empty(spec.n)
    for i in range(spec.n):
        out[i] = x
        x = step(x, spec.r)
    return out


def bifurcation_data(kind: str, r_range: tuple[float, float], r_steps: int,
                     x0: float = 0.01, transient: int = 500, keep: int = 100
                     ) -> np.ndarray:
    """``(r, x)`` pairs: for each ``r`` on the grid, drop ``transient`` states and keep ``keep``."""
    if r_steps < 2 or keep < 1 or transient < 0:
        raise DomainError("need r_steps >= 2, keep >= 1, transient >= 0")
    rs = np.linspace(r_range[0], r_range[1], r_steps)
    rows = []
    for r in rs:
        xs = iterate(MapSpec(kind, float(r), x0, keep, transient))
        rows.append(np.column_stack([np.full(keep, r), xs]))
    return np.vstack(rows)


def beta_grid(lo: float, hi: float, step: float) -> np.ndarray:
    """Grid ``lo, lo + step, ..., hi`` (inclusive, rounded to the step)."""
    count = int(round((hi - lo) / step)) + 1
    return np.round(lo + step * np.arange(count), 12)


@dataclass(frozen=True)
class ChaosCurve:
    kind: str
    r_values: np.ndarray
    betas: np.ndarray
    values: np.ndarray
    degenerate: np.ndarray

    def rows(self):
        for i, r in enumerate(self.r_values):
            for j, b in enumerate(self.betas):
                yield float(r), float(b), float(self.values[i, j]), bool(self.degenerate[i])


def wfgcri_curve(kind: str, r_values: Sequence[float], betas: Sequence[float],
                 alpha: float = 0.5, x0: float = 0.01, n: int = 10_000,
                 burn_in: int = 0) -> ChaosCurve:
    """Estimator values indexed by ``(r, beta)``.

    A trajectory with fewer than two distinct states carries no spread; its
    row is 0 and flagged degenerate.
    """
    r_values = np.asarray(r_values, dtype=float)
    betas = np.asarray(betas, dtype=float)
    values = np.zeros((r_values.size, betas.size))
    degenerate = np.zeros(r_values.size, dtype=bool)
    for i, r in enumerate(r_values):
        traj = iterate(MapSpec(kind, float(r), x0, n, burn_in))
        if np.unique(traj).size < 2:
            degenerate[i] = True
            continue
        values[i] = [estimate_wfgcri_phr(traj, alpha, b) for b in betas]
    return ChaosCurve(kind, r_values, betas, values, degenerate)
