"""Closed-form conjugation of generators by the displacement operators.

A conjugated generator is returned as an :class:`OperatorCombo`, a finite
table ``label -> coefficient`` over :data:`tiltosc.algebra.LABELS`.
``materialize`` turns a table into a matrix so it can be compared against
the brute-force product ``D^dag X D``.
"""
from __future__ import annotations

import cmath
import math
from collections.abc import Mapping
from typing import Iterator, Union

import numpy as np

from .algebra import LABELS, generator_table
from .coherent import TiltParams
from .fock import Operator, TwoModeBasis

SU11_DOMAIN = ("K0", "K+", "K-", "J0", "J+", "J-", "I")
SU2_DOMAIN = LABELS


class OperatorCombo(Mapping):
    """Immutable linear combination of generator labels."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[str, complex] | None = None):
        clean = {}
        for label, coef in (terms or {}).items():
            if label not in LABELS:
                raise KeyError(f"unknown generator label {label!r}")
            clean[label] = clean.get(label, 0) + complex(coef)
        self._terms = clean

    @classmethod
    def of(cls, label: str) -> OperatorCombo:
        return cls({label: 1.0})

    def __getitem__(self, label):
        return self._terms[label]

    def __iter__(self) -> Iterator[str]:
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def coefficient(self, label: str) -> complex:
        return self._terms.get(label, 0j)

    def __add__(self, other):
        if not isinstance(other, OperatorCombo):
            return NotImplemented
        out = dict(self._terms)
        for label, coef in other.items():
            out[label] = out.get(label, 0) + coef
        return OperatorCombo(out)

    def __sub__(self, other):
        return self + (-1) * other

    def __mul__(self, scalar):
        if not np.isscalar(scalar):
            return NotImplemented
        return OperatorCombo({k: scalar * v for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return (-1) * self

    def pruned(self, atol: float = 0.0) -> OperatorCombo:
        return OperatorCombo({k: v for k, v in self._terms.items() if abs(v) > atol})

    def isclose(self, other: OperatorCombo, atol: float = 1e-12) -> bool:
        labels = set(self) | set(other)
        return all(abs(self.coefficient(k) - other.coefficient(k)) <= atol for k in labels)

    def materialize(self, basis: TwoModeBasis) -> Operator:
        table = generator_table(basis)
        data = np.zeros((basis.dim, basis.dim), dtype=complex)
        for label, coef in self._terms.items():
            data += coef * table[label].data
        return Operator(basis, data)

    def __repr__(self):
        body = ", ".join(f"{k}: {v:.6g}" for k, v in self._terms.items())
        return f"OperatorCombo({{{body}}})"


ComboLike = Union[str, OperatorCombo]


def _as_combo(x: ComboLike) -> OperatorCombo:
    return OperatorCombo.of(x) if isinstance(x, str) else x


def conjugate_su11(label: str, tilt: TiltParams) -> OperatorCombo:
    """``D^dag(xi) X D(xi)`` for ``X`` in :data:`SU11_DOMAIN`."""
    if label not in SU11_DOMAIN:
        raise ValueError(f"no su(1,1) conjugation rule for {label!r}")
    if tilt.tau == 0.0 or label in ("J0", "I"):
        return OperatorCombo.of(label)
    # xi/|xi| without dividing, so tiny tau cannot underflow to 0/0
    u = -math.copysign(1.0, tilt.tau) * cmath.exp(-1j * tilt.phi_xi)
    uc = u.conjugate()
    al, be = tilt.alpha_xi, tilt.beta_xi
    rules = {
        "K0": {"K0": 2 * be + 1, "K+": al * u / 2, "K-": al * uc / 2},
        "K+": {"K0": uc * al, "K+": be + 1, "K-": be * uc / u},
        "K-": {"K0": u * al, "K-": be + 1, "K+": be * u / uc},
        "J+": {"Kb-": uc * al, "Ka+": u * al, "J+": 2 * be + 1},
        "J-": {"Ka-": uc * al, "Kb+": u * al, "J-": 2 * be + 1},
    }
    return OperatorCombo(rules[label])


def conjugate_su2(label: str, tilt: TiltParams) -> OperatorCombo:
    """``D^dag(chi) X D(chi)`` for any generator label."""
    if label not in SU2_DOMAIN:
        raise ValueError(f"no su(2) conjugation rule for {label!r}")
    if tilt.theta == 0.0 or label in ("K0", "I"):
        return OperatorCombo.of(label)
    v = -math.copysign(1.0, tilt.theta) * cmath.exp(-1j * tilt.phi_theta)
    vc = v.conjugate()
    al, be = tilt.alpha_chi, tilt.beta_chi
    rules = {
        "J0": {"J0": 2 * be + 1, "J+": v * al / 2, "J-": vc * al / 2},
        "J+": {"J0": -vc * al, "J+": be + 1, "J-": be * vc / v},
        "J-": {"J0": -v * al, "J-": be + 1, "J+": be * v / vc},
        "K+": {"K+": 2 * be + 1, "Ka+": -v * al, "Kb+": vc * al},
        "K-": {"K-": 2 * be + 1, "Ka-": -vc * al, "Kb-": v * al},
        "Ka+": {"Ka+": be + 1, "K+": vc * al / 2, "Kb+": -(vc / v) * be},
        "Ka-": {"Ka-": be + 1, "K-": v * al / 2, "Kb-": -(v / vc) * be},
        "Kb+": {"Kb+": be + 1, "K+": -v * al / 2, "Ka+": -(v / vc) * be},
        "Kb-": {"Kb-": be + 1, "K-": -vc * al / 2, "Ka-": -(vc / v) * be},
    }
    return OperatorCombo(rules[label])


def _apply(rule, combo: OperatorCombo, tilt: TiltParams) -> OperatorCombo:
    out = OperatorCombo()
    for label, coef in combo.items():
        out = out + coef * rule(label, tilt)
    return out


def conjugate_chain(x: ComboLike, tilt: TiltParams) -> OperatorCombo:
    """``D^dag(chi) D^dag(xi) X D(xi) D(chi)``, extended by linearity."""
    combo = _as_combo(x)
    for label in combo:
        if label not in SU11_DOMAIN:
            raise ValueError(f"{label!r} has no su(1,1) conjugation rule")
    return _apply(conjugate_su2, _apply(conjugate_su11, combo, tilt), tilt)


def number_operator(mode: str) -> OperatorCombo:
    """``a^dag a = K0 + J0 - 1/2`` and ``b^dag b = K0 - J0 - 1/2``."""
    if mode == "a":
        return OperatorCombo({"K0": 1, "J0": 1, "I": -0.5})
    if mode == "b":
        return OperatorCombo({"K0": 1, "J0": -1, "I": -0.5})
    raise ValueError(f"mode must be 'a' or 'b', got {mode!r}")


def printed_number_combo(tilt: TiltParams, gamma: float, sigma: float) -> OperatorCombo:
    """Ten-term display of the doubly tilted ``a^dag a`` with free phases ``gamma``, ``sigma``.

    Written in ``sin/cos(theta)`` and ``sinh/cosh(tau)``, so it describes the
    chain only for ``tau, theta >= 0``.
    """
    ch, sh = math.cosh(tilt.tau), math.sinh(tilt.tau)
    c, s = math.cos(tilt.theta), math.sin(tilt.theta)
    e = lambda angle: complex(math.cos(angle), math.sin(angle))  # noqa: E731
    return OperatorCombo({
        "K0": ch,
        "K+": -e(-gamma) / 2 * sh * c,
        "K-": -e(gamma) / 2 * sh * c,
        "J0": c,
        "Ka+": -e(-(sigma + gamma)) / 2 * s * sh,
        "Kb+": e(sigma - gamma) / 2 * s * sh,
        "J-": -e(sigma) / 2 * s,
        "Kb-": e(gamma - sigma) / 2 * s * sh,
        "Ka-": -e(sigma + gamma) / 2 * s * sh,
        "J+": -e(-sigma) / 2 * s,
        "I": -0.5,
    })


def conjugate_matrix(op: Operator, d: Operator, buffer: int | None = None) -> np.ndarray:
    """``D^dag op D``; with ``buffer`` only the interior block is formed."""
    if buffer is None:
        return d.data.conj().T @ op.data @ d.data
    cols = d.data[:, op.basis.interior(buffer)]
    return cols.conj().T @ op.data @ cols
