"""SU(1,1) and SU(2) displacement operators and number coherent states.

The matrix route (``displacement_*``) exponentiates the truncated generator;
the series route (``perelomov_*``) evaluates the disentangled expansion in
closed form.  Each is the other's check.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
import mpmath
from scipy.special import gammaln

from .algebra import su11_one_boson, su11_two_boson, su2_generators
from .fock import Operator, TwoModeBasis, identity, matrix_exponential

TWO_PI = 2.0 * math.pi
SERIES_TAIL_TOL = 1e-14
# largest log|term| summed in double precision before switching to mpmath
CANCELLATION_LOG = math.log(10.0)


class ConvergenceError(RuntimeError):
    """Truncated series tail above tolerance."""


@dataclass(frozen=True)
class TiltParams:
    """Displacement parameters ``xi = -(tau/2) e^{-i phi_xi}``, ``chi = -(theta/2) e^{-i phi_theta}``."""

    tau: float = 0.0
    phi_xi: float = 0.0
    theta: float = 0.0
    phi_theta: float = 0.0

    def __post_init__(self):
        for name in ("tau", "phi_xi", "theta", "phi_theta"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, float(value))
        for name in ("phi_xi", "phi_theta"):
            if not 0.0 <= getattr(self, name) <= TWO_PI:
                raise ValueError(f"{name} must lie in [0, 2pi], got {getattr(self, name)}")

    @property
    def xi(self) -> complex:
        return -0.5 * self.tau * cmath.exp(-1j * self.phi_xi)

    @property
    def chi(self) -> complex:
        return -0.5 * self.theta * cmath.exp(-1j * self.phi_theta)

    @property
    def alpha_xi(self) -> float:
        return math.sinh(2 * abs(self.xi))

    @property
    def beta_xi(self) -> float:
        # (cosh(2|xi|) - 1)/2 without the cancellation at small tau
        return math.sinh(abs(self.xi)) ** 2

    @property
    def alpha_chi(self) -> float:
        return math.sin(2 * abs(self.chi))

    @property
    def beta_chi(self) -> float:
        return -math.sin(abs(self.chi)) ** 2

    @property
    def zeta_xi(self) -> complex:
        return -math.tanh(self.tau / 2) * cmath.exp(-1j * self.phi_xi)

    @property
    def eta_xi(self) -> float:
        return math.log1p(-abs(self.zeta_xi) ** 2)

    @property
    def zeta_chi(self) -> complex:
        if abs(math.cos(self.theta / 2)) < 1e-12:
            raise ValueError("zeta_chi diverges at theta = pi (mod 2pi)")
        return -math.tan(self.theta / 2) * cmath.exp(-1j * self.phi_theta)

    @property
    def eta_chi(self) -> float:
        return math.log1p(abs(self.zeta_chi) ** 2)


def displacement_su11(basis: TwoModeBasis, tilt: TiltParams) -> Operator:
    """``exp(xi K+ - xi^* K-)`` in the two-boson realization."""
    if tilt.tau == 0.0:
        return identity(basis)
    g = su11_two_boson(basis)
    xi = tilt.xi
    return matrix_exponential(xi * g.raising - xi.conjugate() * g.lowering)


def displacement_su11_one_boson(basis: TwoModeBasis, tilt: TiltParams, mode: str = "a") -> Operator:
    """``exp(xi K+^(c) - xi^* K-^(c))`` for a single mode ``c``."""
    g = su11_one_boson(basis, mode)
    xi = tilt.xi
    return matrix_exponential(xi * g.raising - xi.conjugate() * g.lowering)


def displacement_su2(basis: TwoModeBasis, tilt: TiltParams) -> Operator:
    """``exp(chi J+ - chi^* J-)``; block diagonal in the shells of fixed ``N``."""
    if tilt.theta == 0.0:
        return identity(basis)
    g = su2_generators(basis)
    chi = tilt.chi
    return matrix_exponential(chi * g.raising - chi.conjugate() * g.lowering)


def _log_rgamma(x: float) -> float:
    # log(1/Gamma(x)); 1/Gamma vanishes at the poles x = 0, -1, -2, ...
    if x <= 0 and float(x).is_integer():
        return -math.inf
    return -float(gammaln(x))


def default_max_s(tilt: TiltParams) -> int:
    return 8 * (1 + math.ceil(abs(tilt.zeta_xi) * 20))


def perelomov_su11_coefficients(k: float, n: int, tilt: TiltParams, max_s: int | None = None,
                                tol: float = SERIES_TAIL_TOL) -> np.ndarray:
    """Amplitudes of ``D(xi)|k, n>`` on ``|k, t>`` for ``t = 0 .. max_s``.

    Every entry with ``t <= max_s`` is complete; the discarded weight
    ``1 - sum |c_t|^2`` must stay below ``tol``.
    """
    if k <= 0:
        raise ValueError(f"Bargmann index must be positive, got {k}")
    if n < 0 or int(n) != n:
        raise ValueError(f"n must be a non-negative integer, got {n}")
    n = int(n)
    if max_s is None:
        max_s = default_max_s(tilt)
    if max_s < n:
        raise ValueError(f"max_s={max_s} must be at least n={n}")
    coeffs = np.zeros(max_s + 1, dtype=complex)
    zeta = tilt.zeta_xi
    if zeta == 0:
        coeffs[n] = 1.0
        return coeffs
    eta = tilt.eta_xi
    log_abs_z = math.log(abs(zeta))
    phase = zeta / abs(zeta)
    two_k = 2 * k
    for j in range(n + 1):
        for s in range(max_s + 1):
            t = n - j + s
            if t > max_s:
                break
            log_mag = (
                (s + j) * log_abs_z
                - gammaln(s + 1) - gammaln(j + 1)
                + eta * (k + n - j)
                + 0.5 * (gammaln(two_k + n) + gammaln(two_k + t))
                + _log_rgamma(two_k + n - j)
                + 0.5 * (gammaln(n + 1) + gammaln(t + 1))
                + _log_rgamma(n - j + 1)
            )
            # (-zeta^*)^j zeta^s
            coeffs[t] += (-1) ** j * phase**s * phase.conjugate() ** j * math.exp(log_mag)
    tail = 1.0 - float(np.sum(np.abs(coeffs) ** 2))
    if tail > tol:
        raise ConvergenceError(f"series tail {tail:.3e} exceeds {tol:.1e}; raise max_s above {max_s}")
    return coeffs


def _half_integer(x: float, name: str) -> int:
    twice = round(2 * x)
    if abs(2 * x - twice) > 1e-12:
        raise ValueError(f"{name} must be a half-integer, got {x}")
    return twice


def perelomov_su2_coefficients(j: float, mu: float, tilt: TiltParams) -> np.ndarray:
    """Amplitudes of ``D(chi)|j, mu>`` on ``|j, mu'>``, indexed by ``mu' + j``.

    The outer sum runs over ``n = 0 .. mu + j`` and the inner one over
    ``s = 0 .. j - mu + n``; every target stays inside ``[-j, j]``.
    """
    two_j = _half_integer(j, "j")
    two_mu = _half_integer(mu, "mu")
    if two_j < 0 or abs(two_mu) > two_j or (two_j - two_mu) % 2:
        raise ValueError(f"invalid su(2) labels j={j}, mu={mu}")
    j, mu = two_j / 2, two_mu / 2
    coeffs = np.zeros(two_j + 1, dtype=complex)
    if tilt.theta == 0.0:
        coeffs[int(mu + j)] = 1.0
        return coeffs
    # The disentangled product reproduces D(chi) only up to the centre of
    # SU(2); for cos(theta/2) < 0 the spin-j image picks up (-1)^{2j}.
    centre = (-1) ** two_j if math.cos(tilt.theta / 2) < 0 else 1
    zeta = tilt.zeta_chi
    if zeta == 0:
        coeffs[int(mu + j)] = centre
        return coeffs
    terms = list(_su2_terms(j, mu, math.log(abs(zeta)), tilt.eta_chi, _log_rgamma, math.lgamma))
    peak = max(t[3] for t in terms)
    phase = zeta / abs(zeta)
    if peak <= CANCELLATION_LOG:
        for target, n, s, log_mag in terms:
            coeffs[target] += centre * (-1) ** n * phase**s * phase.conjugate() ** n * math.exp(log_mag)
        return coeffs
    # Near theta = pi the terms grow like tan(theta/2)^(2j) and cancel down
    # to O(1); resum with enough digits to absorb the cancellation.
    with mpmath.workdps(20 + int(peak / math.log(10))):
        x = mpmath.tan(mpmath.mpf(tilt.theta) / 2)
        ph = mpmath.expjpi(-mpmath.mpf(tilt.phi_theta) / mpmath.pi)
        terms = _su2_terms(j, mu, mpmath.log(x), mpmath.log1p(x * x), _mp_log_rgamma, mpmath.loggamma)
        acc = [mpmath.mpc(0)] * len(coeffs)
        for target, n, s, log_mag in terms:
            acc[target] += (-1) ** n * (-ph) ** s * mpmath.conj(-ph) ** n * mpmath.exp(log_mag)
        for i, value in enumerate(acc):
            coeffs[i] = centre * complex(value)
    return coeffs


def _mp_log_rgamma(x):
    if x <= 0 and float(x).is_integer():
        return -mpmath.inf
    return -mpmath.loggamma(x)


def _su2_terms(j, mu, log_abs_z, eta, log_rgamma, lgamma):
    """``(target index, n, s, log|term|)`` of the double sum, zero terms skipped."""
    upper_n = int(round(mu + j))
    for n in range(upper_n + 1):
        upper_s = int(round(j - mu + n))
        for s in range(upper_s + 1):
            log_r = log_rgamma(j + mu - n + 1)
            log_r2 = log_rgamma(j - mu + n - s + 1)
            if log_r == -math.inf or log_r2 == -math.inf:
                continue
            log_mag = (
                (s + n) * log_abs_z
                - lgamma(s + 1) - lgamma(n + 1)
                + eta * (mu - n)
                + lgamma(j - mu + n + 1) + log_r
                + 0.5 * (lgamma(j + mu + 1) + lgamma(j + mu - n + s + 1) - lgamma(j - mu + 1))
                + 0.5 * log_r2
            )
            yield int(round(mu - n + s + j)), n, s, log_mag
