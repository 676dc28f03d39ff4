"""Input validation helpers shared by the estimator and the CLI."""
from __future__ import annotations

import numpy as np
from sklearn.utils.validation import check_array

from .algebra import QuantumNumbers


def check_quantum_numbers(X) -> np.ndarray:
    """Validate an ``(n_samples, 2)`` array of ``(N, m)`` rows.

    Returns an integer array; raises ``ValueError`` on non-integer entries,
    ``|m| > N`` or odd ``N - |m|``.
    """
    X = check_array(X, dtype=float, ensure_min_samples=1)
    if X.shape[1] != 2:
        raise ValueError(f"expected columns (N, m), got {X.shape[1]} columns")
    if not np.all(X == np.round(X)):
        raise ValueError("quantum numbers must be integers")
    X = X.astype(int)
    N, m = X[:, 0], X[:, 1]
    bad = (N < 0) | (np.abs(m) > N) | ((N - np.abs(m)) % 2 != 0)
    if np.any(bad):
        row = int(np.flatnonzero(bad)[0])
        raise ValueError(f"row {row}: (N={N[row]}, m={m[row]}) is not a valid |N, m> label")
    return X


def as_quantum_numbers(X) -> list[QuantumNumbers]:
    return [QuantumNumbers(int(N), int(m)) for N, m in check_quantum_numbers(X)]


def grid_array(n_max: int) -> np.ndarray:
    """``(N, m)`` rows for ``N <= n_max``, ``N`` ascending and ``m`` descending."""
    return np.array([(N, m) for N in range(n_max + 1) for m in range(N, -N - 1, -2)], dtype=int)


def check_shadow(n_max: int, cutoff: int, margin: int = 8) -> None:
    if n_max < 0:
        raise ValueError(f"N_max must be non-negative, got {n_max}")
    if n_max > cutoff - margin:
        raise ValueError(f"N_max={n_max} too close to cutoff={cutoff}; need N_max <= cutoff - {margin}")
