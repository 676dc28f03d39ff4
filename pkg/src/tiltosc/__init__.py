"""Tilting diagonalization of two weakly coupled oscillators and the photon
statistics of its eigenstates, with truncated-Fock-space matrix oracles."""

from .algebra import QuantumNumbers, nm_state, quantum_number_grid
from .coherent import TiltParams, displacement_su11, displacement_su2
from .estimator import TiltDiagonalizer
from .fock import TwoModeBasis, build_basis
from .hamiltonian import ModelParams, build_hamiltonian, energy, tilt_parameters
from .statistics import g2_weak, mandel_q_weak, statistics_oracle

__all__ = [
    "QuantumNumbers", "nm_state", "quantum_number_grid",
    "TiltParams", "displacement_su11", "displacement_su2",
    "TiltDiagonalizer", "TwoModeBasis", "build_basis",
    "ModelParams", "build_hamiltonian", "energy", "tilt_parameters",
    "g2_weak", "mandel_q_weak", "statistics_oracle",
]

__version__ = "0.1.0"
