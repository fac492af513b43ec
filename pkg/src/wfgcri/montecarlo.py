"""Replication studies of the plug-in estimators.

A study draws ``R`` independent samples for every sample size ``n`` and
evaluates the estimator for every ``beta`` on the same samples.  Each
replication gets its own PCG64 stream derived from ``(seed, n, r)``, so a
cell can be recomputed on its own and the result does not depend on how the
work is split across processes.
"""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .distributions import Exponential
from .estimators import estimate_wfgcri_phr, estimate_wfgcri_two_sample
from .exceptions import DomainError
from .measures import wfgcri_closed_form_exp

__all__ = [
    "PhrScenario",
    "TwoSampleScenario",
    "StudyConfig",
    "CellSummary",
    "StudyReport",
    "replication_seeds",
    "simulate_cell",
    "summarize",
    "run_study",
    "emit_table",
    "parse_table",
    "TABLE_COLUMNS",
]

TABLE_COLUMNS = ("beta", "n", "ab", "rmse", "ci_length", "mean_estimate", "true_value")
Z_975 = 1.959963984540054


@dataclass(frozen=True)
class PhrScenario:
    """Samples from ``Exp(rate)``; target is the inaccuracy between ``S`` and ``S**alpha``."""

    rate: float = 0.8
    alpha: float = 0.5

    def true_value(self, beta: float) -> float:
        return self.alpha**beta * (beta + 1.0) / self.rate**2

    def estimates(self, betas, n, seed_seq):
        x = Exponential(self.rate).sample(n, seed_seq)
        return [estimate_wfgcri_phr(x, self.alpha, b) for b in betas]


@dataclass(frozen=True)
class TwoSampleScenario:
    """``X ~ Exp(rate_true)`` against ``Y ~ Exp(rate_ref)``, both of size ``n``."""

    rate_true: float = 2.5
    rate_ref: float = 3.5

    def true_value(self, beta: float) -> float:
        return wfgcri_closed_form_exp(self.rate_true, self.rate_ref, beta, 1.0)

    def estimates(self, betas, n, seed_seq):
        sx, sy = seed_seq.spawn(2)
        x = Exponential(self.rate_true).sample(n, sx)
        y = Exponential(self.rate_ref).sample(n, sy)
        return [estimate_wfgcri_two_sample(x, y, b) for b in betas]


Scenario = Union[PhrScenario, TwoSampleScenario]


@dataclass(frozen=True)
class StudyConfig:
    scenario: Scenario
    betas: Sequence[float]
    sample_sizes: Sequence[int]
    replications: int
    seed: int = 0

    def __post_init__(self):
        if self.replications < 2:
            raise DomainError("a study needs at least two replications")
        if any(int(n) != n or n < 2 for n in self.sample_sizes):
            raise DomainError("sample sizes must be integers >= 2")
        if not self.betas or any(b < 0 for b in self.betas):
            raise DomainError("betas must be a non-empty list of non-negative values")


@dataclass(frozen=True)
class CellSummary:
    beta: float
    n: int
    ab: float
    rmse: float
    ci_length: float
    mean_estimate: float
    true_value: float
    variance: float = field(default=math.nan, compare=False)

    def row(self):
        return tuple(getattr(self, c) for c in TABLE_COLUMNS)


@dataclass(frozen=True)
class StudyReport:
    cells: tuple[CellSummary, ...]
    config: Optional[StudyConfig] = None

    def cell(self, beta, n) -> CellSummary:
        for c in self.cells:
            if c.beta == beta and c.n == n:
                return c
        raise KeyError((beta, n))

    def column(self, beta, name) -> list[float]:
        """Values of ``name`` for one ``beta`` ordered by increasing ``n``."""
        rows = sorted((c for c in self.cells if c.beta == beta), key=lambda c: c.n)
        return [getattr(c, name) for c in rows]


def replication_seeds(seed: int, n: int, replications: int) -> list[np.random.SeedSequence]:
    return [np.random.SeedSequence([int(seed), int(n), r]) for r in range(replications)]


def simulate_cell(scenario: Scenario, betas: Sequence[float], n: int,
                  seeds: Sequence) -> np.ndarray:
    """Estimates for every seed (rows) and beta (columns)."""
    seqs = [s if isinstance(s, np.random.SeedSequence) else np.random.SeedSequence(s)
            for s in seeds]
    return np.array([scenario.estimates(betas, n, s) for s in seqs], dtype=float)


def summarize(estimates, true_value: float, beta: float, n: int) -> CellSummary:
    """Bias, RMSE and normal-approximation 95% interval length of one cell."""
    est = np.asarray(estimates, dtype=float)
    r = est.size
    mean = math.fsum(est) / r
    dev = est - mean
    var_pop = math.fsum(dev * dev) / r
    sd = math.sqrt(math.fsum(dev * dev) / (r - 1)) if r > 1 else 0.0
    err = est - true_value
    rmse = math.sqrt(math.fsum(err * err) / r)
    return CellSummary(beta=float(beta), n=int(n), ab=abs(mean - true_value), rmse=rmse,
                       ci_length=2.0 * Z_975 * sd, mean_estimate=mean,
                       true_value=float(true_value), variance=var_pop)


def _run_n(args):
    scenario, betas, n, seed, reps = args
    return simulate_cell(scenario, betas, n, replication_seeds(seed, n, reps))


def run_study(config: StudyConfig, jobs: int = 1) -> StudyReport:
    """Run every ``(beta, n)`` cell; ``jobs > 1`` spreads sample sizes over processes."""
    betas = [float(b) for b in config.betas]
    sizes = [int(n) for n in config.sample_sizes]
    tasks = [(config.scenario, betas, n, config.seed, config.replications) for n in sizes]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            blocks = list(pool.map(_run_n, tasks))
    else:
        blocks = [_run_n(t) for t in tasks]
    cells = []
    for j, beta in enumerate(betas):
        true_value = config.scenario.true_value(beta)
        for n, block in zip(sizes, blocks):
            cells.append(summarize(block[:, j], true_value, beta, n))
    cells.sort(key=lambda c: (c.beta, c.n))
    return StudyReport(tuple(cells), config)


def _fmt(x, digits):
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), f".{digits}g")


def emit_table(report: StudyReport, fmt: str = "csv", digits: int = 17) -> str:
    """Render the report with one row per ``(beta, n)`` cell."""
    if not report.cells:
        raise DomainError("empty report")
    rows = [[_fmt(v, digits) for v in c.row()]
            for c in sorted(report.cells, key=lambda c: (c.beta, c.n))]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(TABLE_COLUMNS)
        writer.writerows(rows)
        return buf.getvalue()
    if fmt == "markdown":
        lines = ["| " + " | ".join(TABLE_COLUMNS) + " |",
                 "|" + "---|" * len(TABLE_COLUMNS)]
        lines += ["| " + " | ".join(r) + " |" for r in rows]
        return "\n".join(lines) + "\n"
    raise DomainError(f"unknown table format {fmt!r}")


def parse_table(text: str) -> StudyReport:
    """Inverse of :func:`emit_table` for the CSV format."""
    reader = csv.DictReader(io.StringIO(text))
    cells = []
    for row in reader:
        cells.append(CellSummary(
            beta=float(row["beta"]), n=int(row["n"]), ab=float(row["ab"]),
            rmse=float(row["rmse"]), ci_length=float(row["ci_length"]),
            mean_estimate=float(row["mean_estimate"]),
            true_value=float(row["true_value"])))
    return StudyReport(tuple(cells))
