"""Monte Carlo simulation of the urn, for checking the closed-form law.

Random numbers come from numpy's PCG64 generator.  A run with seed ``s`` is
split into fixed blocks of :data:`BLOCK` trials; block ``i`` draws from the
``i``-th child of ``SeedSequence(s)``.  Counts therefore do not depend on how
many workers process the blocks.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import stats

from .errors import InvalidInputError
from .scalar import DOUBLE, snap_zero
from .urn import Pmf, UrnParams

DEFAULT_SEED = 20240611
BLOCK = 1 << 16
CLAMP_LIMIT = 1e-15


@dataclass(frozen=True)
class SampleConfig:
    params: UrnParams
    trials: int
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if not isinstance(self.trials, int) or self.trials < 1:
            raise InvalidInputError("trials must be a positive integer")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2 ** 64:
            raise InvalidInputError("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class EmpiricalPmf:
    counts: tuple
    trials: int

    def __post_init__(self):
        if sum(self.counts) != self.trials:
            raise InvalidInputError("counts must sum to trials")

    @property
    def frequencies(self) -> np.ndarray:
        return np.asarray(self.counts, dtype=float) / self.trials


def mass_tables(params: UrnParams) -> tuple[np.ndarray, np.ndarray]:
    """White mass after ``j`` white draws and black mass after ``j`` black draws, ``j = 0..n``.

    Built in the parameters' own arithmetic so exact zeros survive; rounding
    noise below zero is clamped, anything larger is a bug.
    """
    n, a, b, c = params.n, params.a, params.b, params.c
    white, black = [], []
    for j in range(n + 1):
        w, k = a + j * c, b + j * c
        if params.mode == DOUBLE:
            w = snap_zero(w, abs(a) + j * abs(c))
            k = snap_zero(k, abs(b) + j * abs(c))
        white.append(float(w))
        black.append(float(k))
    white_arr, black_arr = np.array(white), np.array(black)
    # Only the first n draws matter; index n is never used to draw.
    for arr in (white_arr[:n], black_arr[:n]):
        neg = arr < 0
        if np.any(neg):
            assert -arr[neg].min() <= CLAMP_LIMIT, "negative urn mass beyond rounding"
            arr[neg] = 0.0
    return white_arr, black_arr


def draw_path(params: UrnParams, rng: np.random.Generator) -> int:
    """Run one ``n``-draw experiment and return the number of white draws."""
    white, black = mass_tables(params)
    whites = 0
    for step in range(params.n):
        w, bl = white[whites], black[step - whites]
        if rng.random() * (w + bl) < w:
            whites += 1
    return whites


def _simulate_block(white, black, n, size, seed_seq) -> np.ndarray:
    rng = np.random.default_rng(seed_seq)
    whites = np.zeros(size, dtype=np.int64)
    for step in range(n):
        w = white[whites]
        bl = black[step - whites]
        whites += rng.random(size) * (w + bl) < w
    return np.bincount(whites, minlength=n + 1)


def empirical_pmf(config: SampleConfig, workers: int = 1) -> EmpiricalPmf:
    """Histogram of white counts over ``config.trials`` independent runs."""
    params = config.params
    white, black = mass_tables(params)
    nblocks = -(-config.trials // BLOCK)
    children = np.random.SeedSequence(config.seed).spawn(nblocks)
    sizes = [BLOCK] * (nblocks - 1) + [config.trials - BLOCK * (nblocks - 1)]
    jobs = [(white, black, params.n, size, child) for size, child in zip(sizes, children)]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda job: _simulate_block(*job), jobs))
    else:
        parts = [_simulate_block(*job) for job in jobs]
    counts = np.sum(parts, axis=0)
    return EmpiricalPmf(tuple(int(c) for c in counts), config.trials)


class GofResult(NamedTuple):
    statistic: float
    dof: int
    quantile: float
    passed: bool


def gof_chi_square(emp: EmpiricalPmf, exact: Pmf, level: float = 0.999) -> GofResult:
    """Pearson chi-square goodness of fit of ``emp`` against ``exact``.

    Cells with exact probability zero are left out of the statistic and the
    degrees of freedom; any count landing in one fails the test outright.
    """
    if len(emp.counts) != len(exact.probs):
        raise InvalidInputError("empirical and exact supports differ")
    if not 0 < level < 1:
        raise InvalidInputError("level must lie in (0, 1)")
    live = [(c, float(p)) for c, p in zip(emp.counts, exact.probs) if p != 0]
    dead = sum(c for c, p in zip(emp.counts, exact.probs) if p == 0)
    dof = len(live) - 1
    stat = math.fsum((c - emp.trials * p) ** 2 / (emp.trials * p) for c, p in live)
    quantile = float(stats.chi2.ppf(level, dof)) if dof > 0 else 0.0
    passed = dead == 0 and (stat <= quantile if dof > 0 else True)
    return GofResult(stat, dof, quantile, passed)
