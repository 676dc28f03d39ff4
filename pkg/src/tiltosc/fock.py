"""Truncated two-mode Fock space.

Basis states ``|n_a, n_b>`` with ``0 <= n_a, n_b <= cutoff`` are ordered
lexicographically (``n_a`` major).  Operators are dense complex matrices.

Truncation makes every algebraic identity fail near the boundary of the box,
so identities are compared only on an *interior* block, see
:meth:`TwoModeBasis.interior`.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
import scipy.linalg
from scipy.sparse.csgraph import connected_components

DEFAULT_CUTOFF = 24


class BasisMismatchError(ValueError):
    """Raised when operators or states over different bases are combined."""


@dataclass(frozen=True)
class TwoModeBasis:
    cutoff: int

    def __post_init__(self):
        if int(self.cutoff) != self.cutoff or self.cutoff < 1:
            raise ValueError(f"cutoff must be an integer >= 1, got {self.cutoff!r}")

    @property
    def dim(self) -> int:
        return (self.cutoff + 1) ** 2

    def index(self, n_a: int, n_b: int) -> int:
        c = self.cutoff
        if not (0 <= n_a <= c and 0 <= n_b <= c):
            raise IndexError(f"occupation ({n_a}, {n_b}) outside cutoff {c}")
        return n_a * (c + 1) + n_b

    def occupation(self, i: int) -> tuple[int, int]:
        if not 0 <= i < self.dim:
            raise IndexError(f"index {i} outside basis of dimension {self.dim}")
        return divmod(i, self.cutoff + 1)

    @functools.cached_property
    def occupations(self) -> tuple[np.ndarray, np.ndarray]:
        """Arrays ``(n_a, n_b)`` of length ``dim``."""
        n_a, n_b = np.divmod(np.arange(self.dim), self.cutoff + 1)
        n_a.setflags(write=False)
        n_b.setflags(write=False)
        return n_a, n_b

    def interior(self, buffer: int = 4) -> np.ndarray:
        """Indices of states with ``n_a + n_b <= cutoff - buffer``.

        The total-occupation shape matters: ``J+ = a^dag b`` maps a state of
        the square box with ``n_a = cutoff`` out of the box, so su(2)
        rotations are exact only on complete shells ``N <= cutoff``.
        """
        n_a, n_b = self.occupations
        top = self.cutoff - buffer
        if top < 0:
            raise ValueError(f"buffer {buffer} leaves an empty interior at cutoff {self.cutoff}")
        return np.flatnonzero(n_a + n_b <= top)

    def edge(self, width: int = 2) -> np.ndarray:
        """Indices of the boundary layer where truncation errors live."""
        n_a, n_b = self.occupations
        c = self.cutoff
        return np.flatnonzero((n_a > c - width) | (n_b > c - width) | (n_a + n_b > c))


def build_basis(cutoff: int) -> TwoModeBasis:
    return TwoModeBasis(cutoff)


def _check_same(x, y):
    if x.basis != y.basis:
        raise BasisMismatchError(f"cutoff {x.basis.cutoff} vs cutoff {y.basis.cutoff}")


@dataclass(frozen=True, eq=False)
class Operator:
    """Dense operator on a :class:`TwoModeBasis`.

    Supports ``+``, ``-``, scalar ``*``, and ``@`` with operators or states.
    """

    basis: TwoModeBasis
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        data = np.array(self.data, dtype=complex)
        if data.shape != (self.basis.dim, self.basis.dim):
            raise ValueError(f"matrix shape {data.shape} does not match dim {self.basis.dim}")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @property
    def dag(self) -> Operator:
        return Operator(self.basis, self.data.conj().T)

    def __add__(self, other):
        if isinstance(other, Operator):
            _check_same(self, other)
            return Operator(self.basis, self.data + other.data)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, Operator):
            _check_same(self, other)
            return Operator(self.basis, self.data - other.data)
        return NotImplemented

    def __neg__(self):
        return Operator(self.basis, -self.data)

    def __mul__(self, scalar):
        if np.isscalar(scalar):
            return Operator(self.basis, scalar * self.data)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1.0 / scalar)

    def __matmul__(self, other):
        if isinstance(other, Operator):
            _check_same(self, other)
            return Operator(self.basis, self.data @ other.data)
        if isinstance(other, State):
            _check_same(self, other)
            return State(self.basis, self.data @ other.amplitudes)
        return NotImplemented

    def interior_block(self, buffer: int = 4) -> np.ndarray:
        idx = self.basis.interior(buffer)
        return self.data[np.ix_(idx, idx)]

    def is_hermitian(self, atol: float = 1e-12) -> bool:
        return bool(np.allclose(self.data, self.data.conj().T, rtol=0.0, atol=atol))


@dataclass(frozen=True, eq=False)
class State:
    basis: TwoModeBasis
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).ravel()
        if amps.shape != (self.basis.dim,):
            raise ValueError(f"state length {amps.shape[0]} does not match dim {self.basis.dim}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, atol: float = 1e-12) -> bool:
        return abs(self.norm**2 - 1.0) <= atol

    def amplitude(self, n_a: int, n_b: int) -> complex:
        return complex(self.amplitudes[self.basis.index(n_a, n_b)])

    def edge_weight(self, width: int = 2) -> float:
        """Probability carried by the truncation boundary layer."""
        return float(np.sum(np.abs(self.amplitudes[self.basis.edge(width)]) ** 2))


def fock_state(basis: TwoModeBasis, n_a: int, n_b: int) -> State:
    amps = np.zeros(basis.dim, dtype=complex)
    amps[basis.index(n_a, n_b)] = 1.0
    return State(basis, amps)


class BosonOperators(NamedTuple):
    a: Operator
    a_dag: Operator
    b: Operator
    b_dag: Operator


@functools.lru_cache(maxsize=8)
def boson_operators(basis: TwoModeBasis) -> BosonOperators:
    """Annihilation and creation operators of both modes."""
    single = np.diag(np.sqrt(np.arange(1, basis.cutoff + 1, dtype=float)), 1)
    eye = np.eye(basis.cutoff + 1)
    a = Operator(basis, np.kron(single, eye))
    b = Operator(basis, np.kron(eye, single))
    return BosonOperators(a, a.dag, b, b.dag)


def identity(basis: TwoModeBasis) -> Operator:
    return Operator(basis, np.eye(basis.dim))


def number_operators(basis: TwoModeBasis) -> tuple[Operator, Operator]:
    n_a, n_b = basis.occupations
    return Operator(basis, np.diag(n_a.astype(float))), Operator(basis, np.diag(n_b.astype(float)))


def commutator(x: Operator, y: Operator) -> Operator:
    return x @ y - y @ x


def matrix_exponential(m: Operator) -> Operator:
    """``exp(m)`` by scaling and squaring (Pade).

    The ladder combinations used here are block diagonal up to a permutation
    (they conserve ``n_a - n_b`` or ``n_a + n_b``), so each connected block
    of the sparsity graph is exponentiated on its own.
    """
    data = m.data
    if not np.all(np.isfinite(data)):
        raise ValueError("matrix_exponential: non-finite entries")
    n_blocks, labels = connected_components(data != 0, directed=False)
    if n_blocks == 1:
        return Operator(m.basis, scipy.linalg.expm(data))
    out = np.zeros_like(data)
    for block in range(n_blocks):
        idx = np.flatnonzero(labels == block)
        sub = np.ix_(idx, idx)
        out[sub] = scipy.linalg.expm(data[sub])
    return Operator(m.basis, out)


def expectation(state: State, m: Operator) -> complex:
    _check_same(state, m)
    psi = state.amplitudes
    return complex(np.vdot(psi, m.data @ psi))


def interior_distance(x: Operator | np.ndarray, y: Operator | np.ndarray, buffer: int = 4,
                      basis: TwoModeBasis | None = None) -> float:
    """Max-abs entry of ``x - y`` restricted to the interior block."""
    if isinstance(x, Operator):
        basis = x.basis
        x = x.data
    if isinstance(y, Operator):
        basis = y.basis
        y = y.data
    if basis is None:
        raise ValueError("basis is required when comparing raw arrays")
    idx = basis.interior(buffer)
    return float(np.max(np.abs((x - y)[np.ix_(idx, idx)])))
