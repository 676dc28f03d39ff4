"""Estimator-style front end.

:class:`TiltDiagonalizer` follows the scikit-learn conventions: hyper-
parameters in ``__init__``, learned state with a trailing underscore after
``fit``, and ``predict``/``transform`` acting on rows of quantum numbers
``(N, m)``.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .fock import DEFAULT_CUTOFF
from .hamiltonian import (ModelParams, build_hamiltonian, eigenstate_transform, energy, full_eigenstate,
                          tilt_hyperbolics, tilt_parameters, tilted_hamiltonian_weak)
from .statistics import mean_photons_weak, mandel_q_weak, g2_weak, statistics_oracle
from .validation import as_quantum_numbers


class TiltDiagonalizer(TransformerMixin, BaseEstimator):
    """Weak-coupling diagonalization of two coupled identical oscillators.

    Parameters
    ----------
    omega : float, default=4.0
        Free frequency of both modes.
    lam : float, default=0.5
        Coupling magnitude, ``0 <= lam < omega``.
    psi : float, default=0.0
        Coupling phase in ``[0, 2 pi]``.
    cutoff : int, default=24
        Per-mode Fock truncation used by the matrix routes.

    Attributes
    ----------
    params_ : ModelParams
    tilt_ : TiltParams
        Displacement parameters that remove the ``K+-`` and ``J+-`` terms.
    cosh_tau_, sinh_tau_ : float
    ground_energy_ : float
    """

    def __init__(self, omega=4.0, lam=0.5, psi=0.0, cutoff=DEFAULT_CUTOFF):
        self.omega = omega
        self.lam = lam
        self.psi = psi
        self.cutoff = cutoff

    def fit(self, X=None, y=None):
        """Derive the tilt; ``X`` and ``y`` are ignored."""
        self.params_ = ModelParams(float(self.omega), float(self.lam), float(self.psi), int(self.cutoff))
        self.tilt_ = tilt_parameters(self.params_)
        self.cosh_tau_, self.sinh_tau_ = tilt_hyperbolics(self.params_)
        self.ground_energy_ = self.params_.reduced_frequency
        return self

    def predict(self, X) -> np.ndarray:
        """Weak-coupling energies of the ``(N, m)`` rows."""
        check_is_fitted(self)
        return np.array([energy(self.params_, q) for q in as_quantum_numbers(X)])

    def transform(self, X) -> np.ndarray:
        """Columns ``[<n>, Q, g2]`` per row; undefined values are NaN."""
        check_is_fitted(self)
        rows = []
        for q in as_quantum_numbers(X):
            q_value = mandel_q_weak(self.params_, q)
            g2 = g2_weak(self.params_, q)
            rows.append((mean_photons_weak(self.params_, q),
                         np.nan if q_value is None else q_value,
                         np.nan if g2 is None else g2))
        return np.array(rows, dtype=float).reshape(-1, 3)

    def oracle_transform(self, X, mode: str = "a") -> np.ndarray:
        """Same columns as :meth:`transform`, from the matrix-built states."""
        check_is_fitted(self)
        qs = as_quantum_numbers(X)
        transform = eigenstate_transform(self.params_)
        rows = []
        for q in qs:
            rep = statistics_oracle(self.params_, q, mode, transform)
            rows.append((rep.mean_n,
                         np.nan if rep.Q is None else rep.Q,
                         np.nan if rep.g2 is None else rep.g2))
        return np.array(rows, dtype=float).reshape(-1, 3)

    def eigenstates(self, X) -> np.ndarray:
        """Fock amplitudes of ``D(xi) D(chi)|N, m>``, one row per input row."""
        check_is_fitted(self)
        qs = as_quantum_numbers(X)
        transform = eigenstate_transform(self.params_)
        return np.array([full_eigenstate(self.params_, q, transform).amplitudes for q in qs])

    def hamiltonian(self) -> np.ndarray:
        check_is_fitted(self)
        return build_hamiltonian(self.params_).data

    def weak_hamiltonian(self) -> np.ndarray:
        check_is_fitted(self)
        return tilted_hamiltonian_weak(self.params_).data
