"""Invariant families behind the ``verify`` command.

Every family returns a :class:`FamilyResult` with the largest residual it
observed.  A family that raises is reported as failed with the exception
text, so one broken family never hides the others.
"""
from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import algebra, coherent, fock, hamiltonian, similarity, statistics
from .algebra import QuantumNumbers, generator_table, quantum_number_grid
from .coherent import TiltParams
from .fock import TwoModeBasis, commutator, interior_distance
from .hamiltonian import ModelParams

ALGEBRA_TOL = 1e-10
SERIES_TOL = 1e-9
ORACLE_TOL = 1e-6
EXACT_TOL = 1e-12
# Measured exponent of the weak-coupling error: the dropped squeezing terms
# shift levels only at second order in lambda^2.
ERROR_LAW_WINDOW = (3.6, 4.4)

SIMILARITY_TAUS = (0.0, 0.05, 0.1254, 0.3)
SIMILARITY_THETAS = (0.0, math.pi / 2, 3 * math.pi / 2)
SIMILARITY_PHASES = (0.0, math.pi / 3, math.pi)
COHERENT_TAUS = (0.05, 0.1254)
COHERENT_PHASES = (0.0, math.pi / 3)


@dataclass(frozen=True)
class FamilyResult:
    name: str
    passed: bool
    max_residual: float
    tolerance: float
    detail: str = ""


@dataclass(frozen=True)
class VerifyConfig:
    omega: float = 4.0
    lam: float = 0.5
    psi: float = 0.0
    n_max: int = 6
    cutoff: int = fock.DEFAULT_CUTOFF


def _result(name, residual, tol, detail=""):
    return FamilyResult(name, bool(residual <= tol), float(residual), tol, detail)


def boson_commutators(cfg: VerifyConfig) -> FamilyResult:
    basis = TwoModeBasis(cfg.cutoff)
    a, ad, b, bd = fock.boson_operators(basis)
    one = fock.identity(basis)
    zero = 0 * one
    checks = [(commutator(a, ad), one), (commutator(b, bd), one)]
    checks += [(commutator(x, y), zero) for x, y in [(a, b), (ad, bd), (ad, b), (a, bd)]]
    res = max(interior_distance(lhs, rhs, 4) for lhs, rhs in checks)
    return _result("boson-commutators", res, ALGEBRA_TOL)


def lie_commutators(cfg: VerifyConfig) -> FamilyResult:
    basis = TwoModeBasis(cfg.cutoff)
    res = 0.0
    sets = [algebra.su11_two_boson(basis), algebra.su11_one_boson(basis, "a"),
            algebra.su11_one_boson(basis, "b")]
    for g in sets:
        res = max(res,
                  interior_distance(commutator(g.diagonal, g.raising), g.raising, 4),
                  interior_distance(commutator(g.diagonal, g.lowering), -g.lowering, 4),
                  interior_distance(commutator(g.lowering, g.raising), 2 * g.diagonal, 4))
    j = algebra.su2_generators(basis)
    res = max(res,
              interior_distance(commutator(j.diagonal, j.raising), j.raising, 4),
              interior_distance(commutator(j.diagonal, j.lowering), -j.lowering, 4),
              interior_distance(commutator(j.raising, j.lowering), 2 * j.diagonal, 4))
    for g in sets + [j]:
        for gen in (g.raising, g.lowering, g.diagonal):
            res = max(res, interior_distance(commutator(g.casimir, gen), 0 * gen, 6))
    # a mixed commutator closes on the boson calculus: [J+, Kb+] = K+
    t = generator_table(basis)
    res = max(res, interior_distance(commutator(t["J+"], t["Kb+"]), t["K+"], 4))
    return _result("lie-commutators", res, ALGEBRA_TOL)


def casimirs(cfg: VerifyConfig) -> FamilyResult:
    basis = TwoModeBasis(cfg.cutoff)
    closed = algebra.casimir_closed_forms(basis)
    g = generator_table(basis)
    res = max(
        interior_distance(algebra.su2_generators(basis).casimir.data, np.diag(closed["su2"]), 4, basis),
        interior_distance(algebra.su11_two_boson(basis).casimir.data, np.diag(closed["su11-two-boson"]), 4, basis),
        interior_distance(algebra.su11_two_boson(basis).casimir, g["J0"] @ g["J0"] - 0.25 * g["I"], 4),
        interior_distance(algebra.su11_one_boson(basis, "a").casimir.data, np.diag(closed["su11-one-boson"]), 4, basis),
        interior_distance(algebra.su11_one_boson(basis, "b").casimir.data, np.diag(closed["su11-one-boson"]), 4, basis),
    )
    return _result("casimirs", res, ALGEBRA_TOL, "K^2_(a) = -3/16 included")


def discrete_representations(cfg: VerifyConfig) -> FamilyResult:
    basis = TwoModeBasis(cfg.cutoff)
    su2 = algebra.su2_generators(basis)
    k = algebra.su11_two_boson(basis)
    res = 0.0
    top = cfg.cutoff - 4
    for q in quantum_number_grid(top):
        j, mu = q.N / 2, q.m / 2
        kk, n = algebra.bargmann_index(q), q.n_r
        # su(2) within the shell
        if q.m < q.N:
            up = QuantumNumbers(q.N, q.m + 2)
            res = max(res, abs(algebra.schwinger_matrix_element(su2.raising, up, q)
                               - algebra.discrete_rep_action("su2", j, mu, "raise")))
        if q.m > -q.N:
            down = QuantumNumbers(q.N, q.m - 2)
            res = max(res, abs(algebra.schwinger_matrix_element(su2.lowering, down, q)
                               - algebra.discrete_rep_action("su2", j, mu, "lower")))
        res = max(res, abs(algebra.schwinger_matrix_element(su2.diagonal, q, q) - mu))
        # su(1,1) along the tower of fixed m
        if q.N + 2 <= top:
            up = algebra.tower_state(q.m, n + 1)
            res = max(res, abs(algebra.schwinger_matrix_element(k.raising, up, q)
                               - algebra.discrete_rep_action("su11", kk, n, "raise")))
        if n > 0:
            down = algebra.tower_state(q.m, n - 1)
            res = max(res, abs(algebra.schwinger_matrix_element(k.lowering, down, q)
                               - algebra.discrete_rep_action("su11", kk, n, "lower")))
        res = max(res, abs(algebra.schwinger_matrix_element(k.diagonal, q, q)
                           - algebra.discrete_rep_action("su11", kk, n, "diag")))
    return _result("discrete-representations", res, EXACT_TOL)


def _coherent_tilts():
    for tau, ph in itertools.product(COHERENT_TAUS, COHERENT_PHASES):
        yield TiltParams(tau, ph, math.pi / 2, ph)
    # asymmetric phases pin the sign of xi and chi
    yield TiltParams(0.1254, math.pi / 3, math.pi / 2, 0.0)


def unitarity(cfg: VerifyConfig) -> FamilyResult:
    basis = TwoModeBasis(cfg.cutoff)
    eye = np.eye(basis.dim)
    res = 0.0
    for tilt in _coherent_tilts():
        for d in (coherent.displacement_su11(basis, tilt), coherent.displacement_su2(basis, tilt)):
            res = max(res,
                      interior_distance(d.data @ d.data.conj().T, eye, 10, basis),
                      interior_distance(d.data.conj().T @ d.data, eye, 10, basis))
    return _result("unitarity", res, ALGEBRA_TOL)


def perelomov(cfg: VerifyConfig) -> FamilyResult:
    basis = TwoModeBasis(cfg.cutoff)
    res = 0.0
    for tilt in _coherent_tilts():
        dx = coherent.displacement_su11(basis, tilt)
        dc = coherent.displacement_su2(basis, tilt)
        for q in quantum_number_grid(6):
            vx = dx @ algebra.nm_state(basis, q)
            coeffs = coherent.perelomov_su11_coefficients(algebra.bargmann_index(q), q.n_r, tilt)
            for t, c in enumerate(coeffs):
                target = algebra.tower_state(q.m, t)
                if target.n_a <= cfg.cutoff - 8 and target.n_b <= cfg.cutoff - 8:
                    res = max(res, abs(vx.amplitude(target.n_a, target.n_b) - c))
            vc = dc @ algebra.nm_state(basis, q)
            coeffs = coherent.perelomov_su2_coefficients(q.N / 2, q.m / 2, tilt)
            for i, c in enumerate(coeffs):
                target = QuantumNumbers(q.N, 2 * i - q.N)
                res = max(res, abs(vc.amplitude(target.n_a, target.n_b) - c))
    return _result("perelomov", res, SERIES_TOL)


def similarity_grid():
    for tau, theta, ph in itertools.product(SIMILARITY_TAUS, SIMILARITY_THETAS, SIMILARITY_PHASES):
        yield TiltParams(tau, ph, theta, ph)


def similarity_certification(cfg: VerifyConfig, buffer: int = 10) -> FamilyResult:
    """Every closed-form conjugation against ``D^dag X D`` on the grid."""
    basis = TwoModeBasis(cfg.cutoff)
    table = generator_table(basis)
    idx = basis.interior(buffer)
    block = np.ix_(idx, idx)
    res = 0.0
    count = 0
    for tilt in similarity_grid():
        dx = coherent.displacement_su11(basis, tilt)
        dc = coherent.displacement_su2(basis, tilt)
        u = dx @ dc
        for label in similarity.SU2_DOMAIN:
            lhs = similarity.conjugate_matrix(table[label], dc, buffer)
            res = max(res, np.max(np.abs(lhs - similarity.conjugate_su2(label, tilt).materialize(basis).data[block])))
            count += 1
        for label in similarity.SU11_DOMAIN:
            lhs = similarity.conjugate_matrix(table[label], dx, buffer)
            res = max(res, np.max(np.abs(lhs - similarity.conjugate_su11(label, tilt).materialize(basis).data[block])))
            lhs = similarity.conjugate_matrix(table[label], u, buffer)
            res = max(res, np.max(np.abs(lhs - similarity.conjugate_chain(label, tilt).materialize(basis).data[block])))
            count += 2
    return _result("similarity", res, SERIES_TOL, f"{count} label/tilt combinations")


def tilt_identity(cfg: VerifyConfig) -> FamilyResult:
    res = 0.0
    for psi in sorted({cfg.psi, math.pi / 3}):
        params = ModelParams(cfg.omega, cfg.lam, psi, cfg.cutoff)
        u = hamiltonian.eigenstate_transform(params)
        lhs = similarity.conjugate_matrix(hamiltonian.build_hamiltonian(params), u, 8)
        idx = params.basis.interior(8)
        rhs = hamiltonian.tilted_hamiltonian_exact(params).data[np.ix_(idx, idx)]
        res = max(res, float(np.max(np.abs(lhs - rhs))))
        res = max(res, interior_distance(hamiltonian.build_hamiltonian(params),
                                         hamiltonian.hamiltonian_group_form(params), 0))
    return _result("tilt-identity", res, SERIES_TOL)


def spectrum(cfg: VerifyConfig) -> FamilyResult:
    params = ModelParams(cfg.omega, cfg.lam, cfg.psi, cfg.cutoff)
    full = np.linalg.eigvalsh(hamiltonian.build_hamiltonian(params).data)[:6]
    tilted = np.linalg.eigvalsh(hamiltonian.tilted_hamiltonian_exact(params).data)[:6]
    return _result("spectrum", float(np.max(np.abs(full - tilted))), 1e-6, "lowest 6 eigenvalues")


def error_law(cfg: VerifyConfig) -> FamilyResult:
    p = hamiltonian.error_exponent(1.0, 0.02, 0.01, 4, cfg.cutoff)
    lo, hi = ERROR_LAW_WINDOW
    dist = max(lo - p, p - hi, 0.0)
    return FamilyResult("error-law", lo <= p <= hi, dist, 0.0, f"fitted exponent p={p:.4f}, window [{lo}, {hi}]")


def gram_matrix(n_max: int = 4, radial_points: int = 100, angular_points: int = 64) -> np.ndarray:
    """Overlaps of the polar eigenfunctions under ``r dr dphi``."""
    u, w = np.polynomial.laguerre.laggauss(radial_points)
    phi = np.linspace(0, 2 * np.pi, angular_points, endpoint=False)
    r = np.sqrt(u)
    grid = quantum_number_grid(n_max)
    # r dr = du/2; the Gauss-Laguerre weight absorbs e^{-u}
    vals = np.array([hamiltonian.eigenfunction(q, r[:, None], phi[None, :]) * np.exp(u / 2)[:, None]
                     for q in grid])
    weights = (w / 2)[:, None] * (2 * np.pi / angular_points)
    return np.einsum("irp,jrp,rp->ij", vals.conj(), vals, np.broadcast_to(weights, vals.shape[1:]))


def eigenfunction_gram(cfg: VerifyConfig) -> FamilyResult:
    g = gram_matrix(4)
    return _result("eigenfunction-gram", float(np.max(np.abs(g - np.eye(len(g))))), 1e-7)


def expectation_tables(cfg: VerifyConfig) -> FamilyResult:
    basis = TwoModeBasis(cfg.cutoff)
    res = 0.0
    for q in quantum_number_grid(6):
        closed = statistics.expectation_table(q).as_dict()
        matrix = statistics.expectation_table_matrix(basis, q).as_dict()
        res = max(res, max(abs(closed[k] - matrix[k]) for k in closed))
    return _result("expectation-table", res, EXACT_TOL)


def _oracle_reports(cfg: VerifyConfig, psi: float):
    params = ModelParams(cfg.omega, cfg.lam, psi, cfg.cutoff)
    u = hamiltonian.eigenstate_transform(params)
    out = []
    for q in quantum_number_grid(cfg.n_max):
        out.append((params, q, statistics.statistics_oracle(params, q, "a", u),
                    statistics.statistics_oracle(params, q, "b", u)))
    return out


def photon_statistics(cfg: VerifyConfig) -> FamilyResult:
    """Closed forms against the oracle, both modes, two coupling phases."""
    res = 0.0
    undefined = 0
    for psi in sorted({cfg.psi, math.pi / 3}):
        for params, q, rep_a, rep_b in _oracle_reports(cfg, psi):
            closed = statistics.mandel_q_weak(params, q)
            if closed is None or rep_a.Q is None or rep_b.Q is None:
                undefined += 1
                if not (closed is None and rep_a.Q is None and rep_b.Q is None):
                    res = math.inf
                continue
            res = max(res, abs(closed - rep_a.Q), abs(closed - rep_b.Q))
    return _result("photon-statistics", res, ORACLE_TOL, f"{undefined} undefined cells" if undefined else "")


def mode_symmetry(cfg: VerifyConfig) -> FamilyResult:
    """Q_a = Q_b and g2_a = g2_b in the oracle; Q invariant under psi."""
    res = 0.0
    by_psi = {}
    for psi in sorted({0.0, math.pi / 3}):
        reports = _oracle_reports(cfg, psi)
        by_psi[psi] = reports
        for _, _, rep_a, rep_b in reports:
            if rep_a.Q is None:
                continue
            res = max(res, abs(rep_a.Q - rep_b.Q), abs(rep_a.g2 - rep_b.g2))
    first, second = by_psi.values()
    for (_, _, x, _), (_, _, y, _) in zip(first, second):
        if x.Q is not None:
            res = max(res, abs(x.Q - y.Q))
    return _result("mode-symmetry", res, SERIES_TOL)


def g2_consistency(cfg: VerifyConfig) -> FamilyResult:
    params = ModelParams(cfg.omega, cfg.lam, cfg.psi, cfg.cutoff)
    res = 0.0
    for q in quantum_number_grid(cfg.n_max):
        g2 = statistics.g2_weak(params, q)
        via_q = statistics.g2_from_q(statistics.mandel_q_weak(params, q), statistics.mean_photons_weak(params, q))
        if g2 is None:
            continue
        res = max(res, abs(g2 - via_q))
        general = statistics.mandel_q_general(hamiltonian.tilt_parameters(params), q)
        res = max(res, abs(general - statistics.mandel_q_weak(params, q)))
    for _, _, rep, _ in _oracle_reports(cfg, cfg.psi):
        if rep.Q is not None:
            res = max(res, abs(rep.g2 - (rep.Q / rep.mean_n + 1)))
    return _result("g2-consistency", res, 1e-10)


def sign_structure(cfg: VerifyConfig) -> FamilyResult:
    """Q < 0 exactly on |m| = N >= 1, Q > 0 inside; g2 < 1 exactly where Q < 0."""
    params = ModelParams(cfg.omega, cfg.lam, cfg.psi, cfg.cutoff)
    bad = []
    for q in quantum_number_grid(cfg.n_max):
        if q.N == 0:
            continue
        q_value = statistics.mandel_q_weak(params, q)
        g2 = statistics.g2_weak(params, q)
        edge = abs(q.m) == q.N
        if (q_value < 0) != edge or (q_value > 0) == edge or (g2 < 1) != (q_value < 0):
            bad.append(f"({q.N},{q.m})")
    return FamilyResult("sign-structure", not bad, float(len(bad)), 0.0,
                        "mismatched cells: " + " ".join(bad) if bad else "")


def leakage(cfg: VerifyConfig) -> FamilyResult:
    params = ModelParams(cfg.omega, cfg.lam, cfg.psi, cfg.cutoff)
    u = hamiltonian.eigenstate_transform(params)
    worst, where = 0.0, None
    for q in quantum_number_grid(cfg.n_max):
        weight = (u @ algebra.nm_state(params.basis, q)).edge_weight()
        if weight > worst:
            worst, where = weight, q
    detail = ""
    if worst > hamiltonian.LEAKAGE_TOL:
        detail = (f"state |N={where.N}, m={where.m}> puts {worst:.2e} of its weight on the "
                  f"cutoff boundary; raise --cutoff above {cfg.cutoff}")
        warnings.warn(detail, hamiltonian.TruncationWarning, stacklevel=2)
    return _result("leakage", worst, hamiltonian.LEAKAGE_TOL, detail)


FAMILIES: dict[str, Callable[[VerifyConfig], FamilyResult]] = {
    "boson-commutators": boson_commutators,
    "lie-commutators": lie_commutators,
    "casimirs": casimirs,
    "discrete-representations": discrete_representations,
    "unitarity": unitarity,
    "perelomov": perelomov,
    "similarity": similarity_certification,
    "tilt-identity": tilt_identity,
    "spectrum": spectrum,
    "error-law": error_law,
    "eigenfunction-gram": eigenfunction_gram,
    "expectation-table": expectation_tables,
    "photon-statistics": photon_statistics,
    "mode-symmetry": mode_symmetry,
    "g2-consistency": g2_consistency,
    "sign-structure": sign_structure,
    "leakage": leakage,
}


def run_families(cfg: VerifyConfig, names=None) -> list[FamilyResult]:
    results = []
    for name in names or FAMILIES:
        try:
            results.append(FAMILIES[name](cfg))
        except Exception as exc:  # reported, not raised: the report must stay complete
            results.append(FamilyResult(name, False, math.inf, math.nan, f"{type(exc).__name__}: {exc}"))
    return results
