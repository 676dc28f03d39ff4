"""Schwinger realizations of su(2) and su(1,1) on two boson modes.

Generators are built from the boson matrices of :mod:`tiltosc.fock`; Casimir
operators are assembled as polynomials in the generators, so their closed
forms are something to check rather than something assumed.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .fock import Operator, State, TwoModeBasis, boson_operators, fock_state, identity

REALIZATIONS = ("su2", "su11-two-boson", "su11-one-boson-a", "su11-one-boson-b")

# Generator labels shared with the similarity module.
LABELS = ("K0", "K+", "K-", "J0", "J+", "J-", "Ka+", "Ka-", "Kb+", "Kb-", "I")


@dataclass(frozen=True)
class QuantumNumbers:
    """Principal number ``N`` and angular number ``m`` of ``|N, m>``.

    ``|N, m>`` is the Fock state ``|(N+m)/2, (N-m)/2>``.
    """

    N: int
    m: int

    def __post_init__(self):
        N, m = self.N, self.m
        if int(N) != N or int(m) != m:
            raise ValueError(f"quantum numbers must be integers, got N={N!r}, m={m!r}")
        object.__setattr__(self, "N", int(N))
        object.__setattr__(self, "m", int(m))
        if self.N < 0 or abs(self.m) > self.N:
            raise ValueError(f"need |m| <= N, got N={N}, m={m}")
        if (self.N - abs(self.m)) % 2:
            raise ValueError(f"N - |m| must be even, got N={N}, m={m}")

    @property
    def n_r(self) -> int:
        return (self.N - abs(self.m)) // 2

    @property
    def n_a(self) -> int:
        return (self.N + self.m) // 2

    @property
    def n_b(self) -> int:
        return (self.N - self.m) // 2

    @classmethod
    def from_occupation(cls, n_a: int, n_b: int) -> QuantumNumbers:
        return cls(n_a + n_b, n_a - n_b)


def quantum_number_grid(n_max: int) -> list[QuantumNumbers]:
    """All ``(N, m)`` with ``N <= n_max``, ``N`` ascending, ``m`` descending."""
    return [QuantumNumbers(N, m) for N in range(n_max + 1) for m in range(N, -N - 1, -2)]


@dataclass(frozen=True, eq=False)
class GeneratorSet:
    realization: str
    raising: Operator
    lowering: Operator
    diagonal: Operator
    casimir: Operator


def _su11_casimir(k0, kp, km):
    return k0 @ k0 - 0.5 * (kp @ km + km @ kp)


@functools.lru_cache(maxsize=8)
def su2_generators(basis: TwoModeBasis) -> GeneratorSet:
    """``J+ = a^dag b``, ``J- = b^dag a``, ``J0 = (n_a - n_b)/2``."""
    a, ad, b, bd = boson_operators(basis)
    jp = ad @ b
    jm = bd @ a
    j0 = 0.5 * (ad @ a - bd @ b)
    casimir = j0 @ j0 + 0.5 * (jp @ jm + jm @ jp)
    return GeneratorSet("su2", jp, jm, j0, casimir)


@functools.lru_cache(maxsize=8)
def su11_two_boson(basis: TwoModeBasis) -> GeneratorSet:
    """``K+ = a^dag b^dag``, ``K- = b a``, ``K0 = (n_a + n_b + 1)/2``."""
    a, ad, b, bd = boson_operators(basis)
    kp = ad @ bd
    km = b @ a
    k0 = 0.5 * (ad @ a + bd @ b + identity(basis))
    return GeneratorSet("su11-two-boson", kp, km, k0, _su11_casimir(k0, kp, km))


@functools.lru_cache(maxsize=16)
def su11_one_boson(basis: TwoModeBasis, mode: str = "a") -> GeneratorSet:
    """``K+ = c^dag^2 / 2``, ``K- = c^2 / 2``, ``K0 = (c^dag c + 1/2)/2`` for ``c`` = a or b."""
    ops = boson_operators(basis)
    if mode == "a":
        c, cd = ops.a, ops.a_dag
    elif mode == "b":
        c, cd = ops.b, ops.b_dag
    else:
        raise ValueError(f"mode must be 'a' or 'b', got {mode!r}")
    kp = 0.5 * (cd @ cd)
    km = 0.5 * (c @ c)
    k0 = 0.5 * (cd @ c + 0.5 * identity(basis))
    return GeneratorSet(f"su11-one-boson-{mode}", kp, km, k0, _su11_casimir(k0, kp, km))


@functools.lru_cache(maxsize=8)
def generator_table(basis: TwoModeBasis) -> dict[str, Operator]:
    """Every generator label of :data:`LABELS` mapped to its matrix."""
    su2 = su2_generators(basis)
    k = su11_two_boson(basis)
    ka = su11_one_boson(basis, "a")
    kb = su11_one_boson(basis, "b")
    return {
        "K0": k.diagonal, "K+": k.raising, "K-": k.lowering,
        "J0": su2.diagonal, "J+": su2.raising, "J-": su2.lowering,
        "Ka+": ka.raising, "Ka-": ka.lowering,
        "Kb+": kb.raising, "Kb-": kb.lowering,
        "I": identity(basis),
    }


def nm_state(basis: TwoModeBasis, q: QuantumNumbers) -> State:
    if q.n_a > basis.cutoff or q.n_b > basis.cutoff:
        raise ValueError(f"|N={q.N}, m={q.m}> lies outside cutoff {basis.cutoff}")
    return fock_state(basis, q.n_a, q.n_b)


def discrete_rep_action(kind: str, weight: float, label: float, op: str) -> float:
    """Matrix element of a discrete-series generator.

    Parameters
    ----------
    kind : {"su11", "su2"}
    weight : float
        Bargmann index ``k > 0`` for su(1,1), spin ``j`` for su(2).
    label : float
        ``n >= 0`` for su(1,1), ``mu`` with ``|mu| <= j`` for su(2).
    op : {"raise", "lower", "diag", "casimir"}

    Returns
    -------
    float
        The coefficient ``c`` in ``X |w, label> = c |w, label'>``.
    """
    if kind == "su11":
        k, n = weight, label
        if k <= 0 or n < 0 or int(n) != n:
            raise ValueError(f"invalid su(1,1) labels k={k}, n={n}")
        if op == "raise":
            return math.sqrt((n + 1) * (2 * k + n))
        if op == "lower":
            return math.sqrt(n * (2 * k + n - 1))
        if op == "diag":
            return k + n
        if op == "casimir":
            return k * (k - 1)
    elif kind == "su2":
        j, mu = weight, label
        if j < 0 or abs(mu) > j or (2 * j) % 1 or (j - mu) % 1:
            raise ValueError(f"invalid su(2) labels j={j}, mu={mu}")
        if op == "raise":
            return math.sqrt((j - mu) * (j + mu + 1))
        if op == "lower":
            return math.sqrt((j + mu) * (j - mu + 1))
        if op == "diag":
            return mu
        if op == "casimir":
            return j * (j + 1)
    else:
        raise ValueError(f"kind must be 'su11' or 'su2', got {kind!r}")
    raise ValueError(f"unknown operation {op!r}")


def bargmann_index(q: QuantumNumbers) -> float:
    """Two-boson su(1,1) tower of ``|N, m>``: ``k = (|m|+1)/2``, ``n = n_r``."""
    return (abs(q.m) + 1) / 2


def tower_state(m: int, n: int) -> QuantumNumbers:
    """``|k, n>`` of the two-boson tower with fixed ``m`` as ``|N, m>``."""
    return QuantumNumbers(2 * n + abs(m), m)


def schwinger_matrix_element(gen: Operator, q_out: QuantumNumbers, q_in: QuantumNumbers) -> complex:
    basis = gen.basis
    return complex(gen.data[basis.index(q_out.n_a, q_out.n_b), basis.index(q_in.n_a, q_in.n_b)])


def casimir_closed_forms(basis: TwoModeBasis) -> dict[str, np.ndarray]:
    """Diagonal closed forms of the three Casimirs on the Fock basis."""
    n_a, n_b = basis.occupations
    j0 = 0.5 * (n_a - n_b)
    total = n_a + n_b
    return {
        "su2": 0.25 * total * (total + 2),
        "su11-two-boson": j0**2 - 0.25,
        "su11-one-boson": np.full(basis.dim, -3.0 / 16.0),
    }
