"""Mandel Q and g2(0) for the tilted number states ``D(xi) D(chi)|N, m>``.

Three independent routes:

* :func:`mandel_q_general` -- any tilt, from the expectation table;
* :func:`mandel_q_weak` / :func:`g2_weak` -- the tilt fixed by the model;
* :func:`statistics_oracle` -- number-operator moments of the matrix-built state.

Undefined values (zero mean photon number) are returned as ``None``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import Optional

import numpy as np

from .algebra import QuantumNumbers, generator_table, nm_state
from .coherent import TiltParams
from .fock import Operator, State, TwoModeBasis
from .hamiltonian import LEAKAGE_TOL, ModelParams, eigenstate_transform

DEAD_BAND = 1e-9


@dataclass(frozen=True)
class ExpectationTable:
    K0: float
    J0: float
    KpKm: float
    KmKp: float
    JpJm: float
    JmJp: float
    KamKap: float
    KapKam: float
    KbmKbp: float
    KbpKbm: float

    def as_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


# operator products behind each table entry, as generator labels
TABLE_PRODUCTS = {
    "K0": ("K0",), "J0": ("J0",),
    "KpKm": ("K+", "K-"), "KmKp": ("K-", "K+"),
    "JpJm": ("J+", "J-"), "JmJp": ("J-", "J+"),
    "KamKap": ("Ka-", "Ka+"), "KapKam": ("Ka+", "Ka-"),
    "KbmKbp": ("Kb-", "Kb+"), "KbpKbm": ("Kb+", "Kb-"),
}


def expectation_table(q: QuantumNumbers) -> ExpectationTable:
    N, m = q.N, q.m
    d = (N * N - m * m) / 4
    s = (N * N + m * m) / 16
    return ExpectationTable(
        K0=(N + 1) / 2,
        J0=m / 2,
        KpKm=d,
        KmKp=d + N + 1,
        JpJm=d + (N + m) / 2,
        JmJp=d + (N - m) / 2,
        KamKap=s + N * m / 8 + 3 * (N + m) / 8 + 0.5,
        KapKam=s + (N * m - N - m) / 8,
        KbmKbp=s - N * m / 8 + 3 * (N - m) / 8 + 0.5,
        KbpKbm=s - (N * m + N - m) / 8,
    )


def expectation_table_matrix(basis: TwoModeBasis, q: QuantumNumbers) -> ExpectationTable:
    """The same table from explicit matrix products on the Fock vector."""
    g = generator_table(basis)
    psi = nm_state(basis, q).amplitudes
    values = {}
    for name, labels in TABLE_PRODUCTS.items():
        vec = psi
        for label in reversed(labels):
            vec = g[label].data @ vec
        values[name] = float(np.vdot(psi, vec).real)
    return ExpectationTable(**values)


def classify_q(q_value: Optional[float]) -> str:
    if q_value is None:
        return "undefined"
    if abs(q_value + 1) <= DEAD_BAND:
        return "number-state"
    if abs(q_value) <= DEAD_BAND:
        return "Poissonian"
    return "super-Poissonian" if q_value > 0 else "sub-Poissonian"


def classify_g2(g2: Optional[float]) -> str:
    if g2 is None:
        return "undefined"
    if abs(g2 - 1) <= DEAD_BAND:
        return "coherent"
    return "bunching" if g2 > 1 else "anti-bunching"


@dataclass(frozen=True)
class StatisticsReport:
    mean_n: float
    mean_n2: float
    Q: Optional[float]
    g2: Optional[float]
    q_class: str
    g2_class: str
    reliable: bool = True
    edge_weight: float = 0.0

    @classmethod
    def from_moments(cls, mean_n: float, mean_n2: float, **extra) -> StatisticsReport:
        if mean_n <= DEAD_BAND:
            q_value = g2 = None
        else:
            q_value = (mean_n2 - mean_n**2) / mean_n - 1
            g2 = (mean_n2 - mean_n) / mean_n**2
        return cls(mean_n, mean_n2, q_value, g2, classify_q(q_value), classify_g2(g2), **extra)


def _sign(mode: str) -> int:
    if mode not in ("a", "b"):
        raise ValueError(f"mode must be 'a' or 'b', got {mode!r}")
    return 1 if mode == "a" else -1


def mean_photons_general(tilt: TiltParams, q: QuantumNumbers, mode: str = "a") -> float:
    t = expectation_table(q)
    cos_theta = 2 * tilt.beta_chi + 1
    # cosh(tau) <K0> - 1/2 = 2 beta_xi <K0> + N/2
    return 2 * tilt.beta_xi * t.K0 + q.N / 2 + _sign(mode) * cos_theta * t.J0


def mandel_q_general(tilt: TiltParams, q: QuantumNumbers, mode: str = "a") -> Optional[float]:
    """Q of ``n_a`` (or ``n_b``) in ``D(xi) D(chi)|N, m>`` for an arbitrary tilt."""
    t = expectation_table(q)
    mean = mean_photons_general(tilt, q, mode)
    if abs(mean) <= DEAD_BAND:
        return None
    sin2 = tilt.alpha_chi**2
    cos2 = (2 * tilt.beta_chi + 1) ** 2
    sinh2 = tilt.alpha_xi**2
    spread = (sin2 * (t.JmJp + t.JpJm)
              + cos2 * sinh2 * (t.KmKp + t.KpKm)
              + sin2 * sinh2 * (t.KamKap + t.KapKam)
              + sin2 * sinh2 * (t.KbmKbp + t.KbpKbm))
    return spread / (4 * mean) - 1


def _gap(params: ModelParams, N: int) -> float:
    """``w(N+1) - sqrt(w^2 - lam^2)``, free of the cancellation at small ``lam``."""
    w, lam = params.omega, params.lam
    return w * N + lam**2 / (w + params.reduced_frequency)


def mean_photons_weak(params: ModelParams, q: QuantumNumbers) -> float:
    """``<n_a> = <n_b> = cosh(tau)(N+1)/2 - 1/2`` at the model tilt."""
    return _gap(params, q.N) / (2 * params.reduced_frequency)


def mandel_q_weak(params: ModelParams, q: QuantumNumbers) -> Optional[float]:
    """Q for either mode (they coincide) at the model tilt."""
    w, lam, s = params.omega, params.lam, params.reduced_frequency
    N, m = q.N, q.m
    denom = _gap(params, N)
    if denom <= DEAD_BAND * w:
        return None
    num = w**2 * (2 * (N * N - m * m) + 4 * N) - lam**2 * (N * (N + 2) - 3 * m * m - 4)
    return num / (8 * s * denom) - 1


def g2_weak(params: ModelParams, q: QuantumNumbers) -> Optional[float]:
    w, lam = params.omega, params.lam
    N, m = q.N, q.m
    denom = _gap(params, N)
    if denom <= DEAD_BAND * w:
        return None
    # 2w^2(3N(N+2) - m^2 + 8) - lam^2(N(N+2) - 3m^2 + 8) - 16w(N+1)s with
    # s = w - lam^2/(w + s) substituted, so the w^2 terms cancel exactly
    delta = lam**2 / (w + params.reduced_frequency)
    num = (2 * w**2 * (3 * N * N - 2 * N - m * m)
           + 16 * w * (N + 1) * delta
           - lam**2 * (N * (N + 2) - 3 * m * m + 8))
    return num / (4 * denom**2)


def weak_report(params: ModelParams, q: QuantumNumbers) -> StatisticsReport:
    """Closed-form statistics at the model tilt."""
    mean = mean_photons_weak(params, q)
    q_value = mandel_q_weak(params, q)
    g2 = g2_weak(params, q)
    mean_n2 = mean**2 + mean * (q_value + 1) if q_value is not None else mean**2
    return StatisticsReport(mean, mean_n2, q_value, g2, classify_q(q_value), classify_g2(g2))


def state_statistics(state: State, mode: str = "a") -> StatisticsReport:
    """Photon statistics of one mode of an arbitrary two-mode state."""
    _sign(mode)
    n_a, n_b = state.basis.occupations
    n = (n_a if mode == "a" else n_b).astype(float)
    prob = np.abs(state.amplitudes) ** 2
    leak = state.edge_weight()
    return StatisticsReport.from_moments(float(prob @ n), float(prob @ n**2),
                                         reliable=leak <= LEAKAGE_TOL, edge_weight=leak)


def statistics_oracle(params: ModelParams, q: QuantumNumbers, mode: str = "a",
                      transform: Operator | None = None) -> StatisticsReport:
    """Photon statistics of the matrix-built state ``D(xi) D(chi)|N, m>``."""
    if transform is None:
        transform = eigenstate_transform(params)
    return state_statistics(transform @ nm_state(params.basis, q), mode)


def g2_from_q(q_value: Optional[float], mean: float) -> Optional[float]:
    if q_value is None or mean <= DEAD_BAND:
        return None
    return q_value / mean + 1
