import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tiltosc.algebra import QuantumNumbers, nm_state, quantum_number_grid
from tiltosc.coherent import TWO_PI, TiltParams, displacement_su2, displacement_su11
from tiltosc.fock import TwoModeBasis, fock_state
from tiltosc.hamiltonian import ModelParams, eigenstate_transform, tilt_parameters
from tiltosc.statistics import (StatisticsReport, classify_g2, classify_q, expectation_table,
                                expectation_table_matrix, g2_from_q, g2_weak, mandel_q_general,
                                mandel_q_weak, mean_photons_general, mean_photons_weak,
                                state_statistics, statistics_oracle, weak_report)

QUOTED_Q00 = 0.00395263
# at N = m = 0 the closed form reduces to (w - s) / (2 s), s = sqrt(w^2 - lam^2);
# evaluated at 30 digits
with mpmath.workdps(30):
    _s = mpmath.sqrt(mpmath.mpf("15.75"))
    FROZEN_Q00 = float((4 - _s) / (2 * _s))


@pytest.fixture(scope="module")
def default_params():
    return ModelParams(4.0, 0.5)


@pytest.fixture(scope="module")
def default_transform(default_params):
    return eigenstate_transform(default_params)


@st.composite
def quantum_numbers(draw, n_max=12):
    N = draw(st.integers(0, n_max))
    return QuantumNumbers(N, draw(st.sampled_from(range(-N, N + 1, 2))))


def test_table_examples():
    t = expectation_table(QuantumNumbers(0, 0))
    assert (t.K0, t.KmKp, t.KamKap) == (0.5, 1, 0.5)
    t = expectation_table(QuantumNumbers(2, 0))
    assert (t.JpJm, t.JmJp) == (2, 2)


@given(quantum_numbers())
def test_table_invariants(q):
    t = expectation_table(q)
    assert t.KmKp - t.KpKm == pytest.approx(2 * t.K0) == q.N + 1
    assert t.JpJm - t.JmJp == pytest.approx(2 * t.J0) == q.m
    # commutators of the one-boson algebras: <[K-, K+]> = 2 <K0^(a)> = n_a + 1/2
    assert t.KamKap - t.KapKam == pytest.approx(q.n_a + 0.5)
    assert t.KbmKbp - t.KbpKbm == pytest.approx(q.n_b + 0.5)
    assert all(v >= 0 for k, v in t.as_dict().items() if k != "J0")


def test_table_against_matrices(basis12):
    for q in quantum_number_grid(6):
        closed = expectation_table(q).as_dict()
        matrix = expectation_table_matrix(basis12, q).as_dict()
        for key in closed:
            assert abs(closed[key] - matrix[key]) <= 1e-12, (q, key)


@pytest.mark.parametrize("value,label", [
    (None, "undefined"), (-1.0, "number-state"), (-1 + 5e-10, "number-state"), (0.0, "Poissonian"),
    (-5e-10, "Poissonian"), (0.2, "super-Poissonian"), (-0.3, "sub-Poissonian"),
])
def test_classify_q(value, label):
    assert classify_q(value) == label


@pytest.mark.parametrize("value,label", [(None, "undefined"), (1 + 1e-10, "coherent"), (2.0, "bunching"),
                                         (0.4, "anti-bunching")])
def test_classify_g2(value, label):
    assert classify_g2(value) == label


@given(st.floats(1e-6, 50), st.floats(0, 100))
def test_report_invariants(mean, spread):
    mean_n2 = mean**2 + spread
    rep = StatisticsReport.from_moments(mean, mean_n2)
    assert rep.g2 == pytest.approx(rep.Q / mean + 1, rel=1e-9, abs=1e-9)
    assert rep.mean_n2 - rep.mean_n**2 >= 0


def test_report_undefined_for_empty_mode():
    rep = StatisticsReport.from_moments(0.0, 0.0)
    assert rep.Q is None and rep.g2 is None
    assert (rep.q_class, rep.g2_class) == ("undefined", "undefined")
    assert g2_from_q(None, 0.0) is None


def test_general_q_untransformed_number_state():
    for q in quantum_number_grid(5):
        if q.n_a > 0:
            assert mandel_q_general(TiltParams(), q) == pytest.approx(-1.0, abs=1e-12)
        if q.n_b > 0:
            assert mandel_q_general(TiltParams(), q, "b") == pytest.approx(-1.0, abs=1e-12)
    assert mandel_q_general(TiltParams(), QuantumNumbers(2, -2)) is None


def test_general_q_quarter_turn(basis12):
    tilt = TiltParams(0, 0, math.pi / 2, 0)
    q = QuantumNumbers(2, 2)
    assert mandel_q_general(tilt, q) == pytest.approx(-0.5, abs=1e-12)
    assert mandel_q_general(tilt, q) == pytest.approx((q.N**2 - q.m**2) / (4 * q.N) - 0.5, abs=1e-12)
    state = displacement_su2(basis12, tilt) @ nm_state(basis12, q)
    assert state_statistics(state).Q == pytest.approx(-0.5, abs=1e-12)


def test_general_q_specializes_to_weak(default_params):
    tilt = tilt_parameters(default_params)
    for q in quantum_number_grid(6):
        for mode in "ab":
            assert mandel_q_general(tilt, q, mode) == pytest.approx(mandel_q_weak(default_params, q), abs=1e-12)
        assert mean_photons_general(tilt, q) == pytest.approx(mean_photons_weak(default_params, q), abs=1e-14)


@pytest.mark.parametrize("seed", range(4))
def test_general_q_matches_matrix_state(basis24, seed):
    rng = np.random.default_rng(seed)
    tilt = TiltParams(rng.uniform(0, 0.3), rng.uniform(0, TWO_PI), rng.uniform(0, TWO_PI), rng.uniform(0, TWO_PI))
    u = displacement_su11(basis24, tilt) @ displacement_su2(basis24, tilt)
    for q in quantum_number_grid(5):
        state = u @ nm_state(basis24, q)
        for mode in "ab":
            closed = mandel_q_general(tilt, q, mode)
            oracle = state_statistics(state, mode)
            assert mean_photons_general(tilt, q, mode) == pytest.approx(oracle.mean_n, abs=1e-9)
            if closed is None:
                assert oracle.mean_n <= 1e-9
            else:
                assert closed == pytest.approx(oracle.Q, abs=1e-8)


def test_quoted_q_value(default_params):
    q = mandel_q_weak(default_params, QuantumNumbers(0, 0))
    assert q == pytest.approx(QUOTED_Q00, abs=1e-6)
    assert q == pytest.approx(FROZEN_Q00, abs=1e-15)


def test_weak_sign_examples(default_params):
    for m in (6, -6):
        assert mandel_q_weak(default_params, QuantumNumbers(6, m)) < 0
        assert g2_weak(default_params, QuantumNumbers(6, m)) < 1
    assert mandel_q_weak(default_params, QuantumNumbers(4, 0)) > 0
    assert g2_weak(default_params, QuantumNumbers(4, 0)) > 1


def test_weak_undefined_at_zero_coupling():
    params = ModelParams(4.0, 0.0)
    assert mandel_q_weak(params, QuantumNumbers(0, 0)) is None
    assert g2_weak(params, QuantumNumbers(0, 0)) is None
    assert weak_report(params, QuantumNumbers(0, 0)).q_class == "undefined"
    assert mandel_q_weak(params, QuantumNumbers(2, 0)) is not None


def test_g2_two_routes(default_params):
    q00 = QuantumNumbers(0, 0)
    assert g2_weak(default_params, q00) == pytest.approx(2.0, abs=1e-4)
    for q in quantum_number_grid(6):
        via_q = mandel_q_weak(default_params, q) / mean_photons_weak(default_params, q) + 1
        assert g2_weak(default_params, q) == pytest.approx(via_q, abs=1e-10)
        assert g2_from_q(mandel_q_weak(default_params, q), mean_photons_weak(default_params, q)) == \
            pytest.approx(via_q, abs=1e-12)


@given(st.floats(0.5, 10), st.floats(0.01, 0.9), quantum_numbers(8))
def test_g2_identity_property(omega, ratio, q):
    params = ModelParams(omega, ratio * omega)
    qv = mandel_q_weak(params, q)
    g2 = g2_weak(params, q)
    assert g2 == pytest.approx(qv / mean_photons_weak(params, q) + 1, rel=1e-9, abs=1e-9)


def test_oracle_number_state():
    rep = state_statistics(fock_state(TwoModeBasis(6), 1, 0))
    assert rep.Q == pytest.approx(-1.0)
    assert rep.q_class == "number-state"
    assert rep.g2 == 0


def test_oracle_quoted_value(default_params, default_transform):
    rep = statistics_oracle(default_params, QuantumNumbers(0, 0), "a", default_transform)
    assert rep.Q == pytest.approx(QUOTED_Q00, abs=1e-6)
    assert rep.reliable


def test_oracle_modes_agree(default_params, default_transform):
    q = QuantumNumbers(3, 1)
    qa = statistics_oracle(default_params, q, "a", default_transform)
    qb = statistics_oracle(default_params, q, "b", default_transform)
    assert abs(qa.Q - qb.Q) <= 1e-9
    assert abs(qa.g2 - qb.g2) <= 1e-9


@pytest.mark.parametrize("psi", [0.0, math.pi / 3])
def test_oracle_grid(psi):
    params = ModelParams(4.0, 0.5, psi)
    u = eigenstate_transform(params)
    for q in quantum_number_grid(6):
        closed = mandel_q_weak(params, q)
        for mode in "ab":
            rep = statistics_oracle(params, q, mode, u)
            assert rep.reliable
            assert abs(rep.Q - closed) <= 1e-6
            assert abs(rep.g2 - (rep.Q / rep.mean_n + 1)) <= 1e-10


def test_weak_q_has_no_psi():
    for q in quantum_number_grid(4):
        values = {round(mandel_q_weak(ModelParams(4.0, 0.5, psi), q), 15) for psi in (0.0, 1.0, math.pi)}
        assert len(values) == 1


def test_mode_argument_checked(default_params):
    with pytest.raises(ValueError):
        mandel_q_general(TiltParams(), QuantumNumbers(1, 1), "c")
