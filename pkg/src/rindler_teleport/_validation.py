"""Input checks shared by the estimators and the command line."""

from __future__ import annotations

import math

import numpy as np
from sklearn.utils import check_array

from .fock import Statistics
from .teleport import BellOutcome, LogicalQubit

FERMIONIC_R_MAX = math.pi / 4


def check_statistics(statistics) -> Statistics:
    try:
        return Statistics(statistics)
    except ValueError:
        raise ValueError(f"statistics must be 'bosonic' or 'fermionic', got {statistics!r}") from None


def check_r_column(X, statistics=Statistics.BOSONIC) -> np.ndarray:
    """Validate a single column of squeeze parameters and return it flat."""
    X = check_array(X, ensure_2d=False, dtype=float)
    if X.ndim == 2:
        if X.shape[1] != 1:
            raise ValueError(f"expected one column of r values, got {X.shape[1]}")
        X = X[:, 0]
    if np.any(X < 0):
        raise ValueError("squeeze parameters must be non-negative")
    if check_statistics(statistics) is Statistics.FERMIONIC and np.any(X > FERMIONIC_R_MAX + 1e-15):
        raise ValueError("fermionic squeeze parameters must lie in [0, pi/4]")
    return X


def check_n_max(n_max, minimum: int = 1) -> int:
    if isinstance(n_max, bool) or int(n_max) != n_max or n_max < minimum:
        raise ValueError(f"n_max must be an integer >= {minimum}, got {n_max!r}")
    return int(n_max)


def check_qubit(alpha, beta) -> LogicalQubit:
    return LogicalQubit.from_unnormalized(complex(alpha), complex(beta))


def check_outcome(outcome) -> BellOutcome:
    return BellOutcome.parse(outcome)


def r_grid(start: float, stop: float, step: float, statistics=Statistics.BOSONIC) -> np.ndarray:
    """Inclusive grid ``start, start + step, ...`` up to ``stop``; fermionic grids clip at pi/4."""
    if not step > 0:
        raise ValueError("step must be positive")
    if start > stop:
        raise ValueError("start must not exceed stop")
    if start < 0:
        raise ValueError("r must be non-negative")
    if check_statistics(statistics) is Statistics.FERMIONIC:
        stop = min(stop, FERMIONIC_R_MAX)
        start = min(start, stop)
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    grid = np.round(start + step * np.arange(count), 12)
    grid = grid[grid <= stop + 1e-12]
    grid = np.minimum(grid, stop)
    if stop - grid[-1] > 1e-12:
        grid = np.append(grid, stop)
    return grid
