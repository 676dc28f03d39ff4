"""Two identical oscillators with a complex bilinear coupling.

``H = w (n_a + n_b + 1) + lam e^{-i psi} (a^dag b^dag + a^dag b) + h.c.``
is diagonalized approximately by an su(1,1) tilt followed by an su(2) tilt.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .algebra import QuantumNumbers, generator_table, nm_state, quantum_number_grid
from .coherent import TWO_PI, TiltParams, displacement_su11, displacement_su2
from .fock import DEFAULT_CUTOFF, Operator, State, TwoModeBasis, boson_operators, identity

LEAKAGE_TOL = 1e-8


class TruncationWarning(UserWarning):
    """A state carries non-negligible weight at the truncation boundary."""


@dataclass(frozen=True)
class ModelParams:
    omega: float
    lam: float
    psi: float = 0.0
    cutoff: int = DEFAULT_CUTOFF

    def __post_init__(self):
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise ValueError(f"omega must be positive, got {self.omega!r}")
        if not (math.isfinite(self.lam) and 0 <= self.lam < self.omega):
            raise ValueError(f"need 0 <= lambda < omega, got lambda={self.lam!r}, omega={self.omega!r}")
        if not (math.isfinite(self.psi) and 0 <= self.psi <= TWO_PI):
            raise ValueError(f"psi must lie in [0, 2pi], got {self.psi!r}")
        if int(self.cutoff) != self.cutoff or self.cutoff < 1:
            raise ValueError(f"cutoff must be an integer >= 1, got {self.cutoff!r}")

    @property
    def basis(self) -> TwoModeBasis:
        return TwoModeBasis(int(self.cutoff))

    @property
    def reduced_frequency(self) -> float:
        """``sqrt(omega^2 - lambda^2)``."""
        return math.sqrt(self.omega**2 - self.lam**2)


@dataclass(frozen=True)
class PositionCouplingParams:
    """``p^2/2M + M w^2 (x^2 + y^2)/2 + 2 kappa M w x y``."""

    mass: float
    omega: float
    kappa: float


def from_position_coupling(p: PositionCouplingParams, cutoff: int = DEFAULT_CUTOFF) -> ModelParams:
    """Map the position-space coupling onto ``(omega, lambda, psi)``.

    ``kappa (a^dag + a)(b^dag + b)`` is the boson form with ``lambda = |kappa|``
    and ``e^{i psi} = sign(kappa)``; the mass drops out.
    """
    if p.mass <= 0:
        raise ValueError(f"mass must be positive, got {p.mass}")
    if abs(p.kappa) >= p.omega:
        raise ValueError(f"need |kappa| < omega, got kappa={p.kappa}, omega={p.omega}")
    psi = math.pi if p.kappa < 0 else 0.0
    return ModelParams(p.omega, abs(p.kappa), psi, cutoff)


def position_coupling_hamiltonian(p: PositionCouplingParams, basis: TwoModeBasis) -> Operator:
    a, ad, b, bd = boson_operators(basis)
    return p.omega * (ad @ a + bd @ b + identity(basis)) + p.kappa * ((ad + a) @ (bd + b))


def build_hamiltonian(params: ModelParams) -> Operator:
    basis = params.basis
    a, ad, b, bd = boson_operators(basis)
    w, lam = params.omega, params.lam
    ph = complex(math.cos(params.psi), -math.sin(params.psi))  # e^{-i psi}
    return (w * (ad @ a + bd @ b + identity(basis))
            + lam * ph * (ad @ bd + ad @ b)
            + lam * ph.conjugate() * (bd @ a + b @ a))


def hamiltonian_group_form(params: ModelParams) -> Operator:
    """``2 w K0 + lam e^{-i psi}(K+ + J+) + lam e^{i psi}(K- + J-)``."""
    g = generator_table(params.basis)
    ph = complex(math.cos(params.psi), -math.sin(params.psi))
    return (2 * params.omega * g["K0"]
            + params.lam * ph * (g["K+"] + g["J+"])
            + params.lam * ph.conjugate() * (g["K-"] + g["J-"]))


def tilt_parameters(params: ModelParams) -> TiltParams:
    """Tilt that removes ``K+-`` (``tau = atanh(lam/w)``) and then ``J+-`` (``theta = pi/2``)."""
    tau = math.atanh(params.lam / params.omega)
    return TiltParams(tau=tau, phi_xi=params.psi, theta=math.pi / 2, phi_theta=params.psi)


def tilt_hyperbolics(params: ModelParams) -> tuple[float, float]:
    """``(cosh tau, sinh tau) = (w, lam) / sqrt(w^2 - lam^2)``."""
    s = params.reduced_frequency
    return params.omega / s, params.lam / s


def tilted_hamiltonian_exact(params: ModelParams) -> Operator:
    g = generator_table(params.basis)
    w, lam, s = params.omega, params.lam, params.reduced_frequency
    e2 = complex(math.cos(2 * params.psi), -math.sin(2 * params.psi))  # e^{-2i psi}
    squeeze = lam**2 / s
    return (2 * s * g["K0"] + (2 * w * lam / s) * g["J0"]
            - squeeze * (g["Kb+"] + g["Kb-"])
            - squeeze * (e2 * g["Ka+"] + e2.conjugate() * g["Ka-"]))


def tilted_hamiltonian_weak(params: ModelParams) -> Operator:
    g = generator_table(params.basis)
    s = params.reduced_frequency
    return 2 * s * g["K0"] + (2 * params.omega * params.lam / s) * g["J0"]


def energy(params: ModelParams, q: QuantumNumbers) -> float:
    """Weak-coupling level ``sqrt(w^2-lam^2)(N+1) + w lam m / sqrt(w^2-lam^2)``.

    The sign of ``m`` matters: the ``J0`` term splits ``m`` and ``-m``.
    """
    s = params.reduced_frequency
    return s * (q.N + 1) + params.omega * params.lam * q.m / s


def assoc_laguerre(n: int, alpha: float, x):
    """``L_n^alpha(x)`` by the three-term recurrence."""
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev
    cur = 1.0 + alpha - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur


def eigenfunction(q: QuantumNumbers, r, phi):
    """Normalized polar eigenfunction of the isotropic 2D oscillator.

    ``(-1)^{n_r} sqrt(n_r! / (pi (n_r+|m|)!)) r^{|m|} L_{n_r}^{|m|}(r^2) e^{-r^2/2} e^{i m phi}``
    """
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("r must be non-negative")
    n, am = q.n_r, abs(q.m)
    norm = math.exp(0.5 * (gammaln(n + 1) - gammaln(n + am + 1))) / math.sqrt(math.pi)
    radial = (-1) ** n * norm * r**am * assoc_laguerre(n, am, r**2) * np.exp(-0.5 * r**2)
    return radial * np.exp(1j * q.m * np.asarray(phi, dtype=float))


def eigenstate_transform(params: ModelParams) -> Operator:
    """``D(xi) D(chi)``, mapping ``|N, m>`` onto approximate eigenstates of ``H``."""
    tilt = tilt_parameters(params)
    basis = params.basis
    return displacement_su11(basis, tilt) @ displacement_su2(basis, tilt)


def full_eigenstate(params: ModelParams, q: QuantumNumbers, transform: Operator | None = None) -> State:
    """``D(xi) D(chi)|N, m>`` in the truncated Fock basis.

    Warns with :class:`TruncationWarning` if more than ``1e-8`` of the
    probability sits in the truncation boundary layer.
    """
    if transform is None:
        transform = eigenstate_transform(params)
    state = transform @ nm_state(params.basis, q)
    leak = state.edge_weight()
    if leak > LEAKAGE_TOL:
        warnings.warn(f"|N={q.N}, m={q.m}> leaks {leak:.2e} into the cutoff boundary "
                      f"(cutoff {params.cutoff})", TruncationWarning, stacklevel=2)
    return state


def numerical_spectrum(params: ModelParams, count: int | None = None) -> np.ndarray:
    evals = np.linalg.eigvalsh(build_hamiltonian(params).data)
    return evals if count is None else evals[:count]


def paired_spectrum(params: ModelParams, n_max: int) -> list[tuple[QuantumNumbers, float, float]]:
    """Pair closed-form levels with the lowest eigenvalues of ``H``.

    Both lists are sorted ascending (closed-form ties broken by ``|m|``,
    then ``m``) and matched in order.  Output follows the grid order of
    :func:`quantum_number_grid`.
    """
    grid = quantum_number_grid(n_max)
    closed = [energy(params, q) for q in grid]
    order = sorted(range(len(grid)), key=lambda i: (closed[i], abs(grid[i].m), grid[i].m))
    numeric = numerical_spectrum(params, len(grid))
    paired = {i: float(numeric[rank]) for rank, i in enumerate(order)}
    return [(q, closed[i], paired[i]) for i, q in enumerate(grid)]


def weak_coupling_error(omega: float, lam: float, n_max: int = 4, cutoff: int = DEFAULT_CUTOFF) -> float:
    """Largest ``|eig(H) - energy|`` over ``N <= n_max``."""
    params = ModelParams(omega, lam, 0.0, cutoff)
    return max(abs(c - n) for _, c, n in paired_spectrum(params, n_max))


def error_exponent(omega: float, lam_hi: float, lam_lo: float, n_max: int = 4,
                   cutoff: int = DEFAULT_CUTOFF) -> float:
    """Fitted ``p`` in ``error ~ lam^p`` from two coupling strengths."""
    e_hi = weak_coupling_error(omega, lam_hi, n_max, cutoff)
    e_lo = weak_coupling_error(omega, lam_lo, n_max, cutoff)
    return math.log(e_hi / e_lo) / math.log(lam_hi / lam_lo)
