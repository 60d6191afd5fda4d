"""JC unitary structure and the dense measurement oracle."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qubit_guidance import dynamics, fock
from qubit_guidance.dynamics import (
    ALL_OUTCOMES,
    BOTH_CLICK,
    BOTH_NO_CLICK,
    OutcomeLabel,
)
from qubit_guidance.errors import ParameterDomainError

DTAU_GRID = [0.0, 1.0, 3.3, 4.5, 6.0]
ANCILLA = fock.pss_state(0.3)


def test_outcome_label_round_trip():
    for char in "PNAB":
        assert OutcomeLabel.from_char(char).char == char
    with pytest.raises(ParameterDomainError):
        OutcomeLabel.from_char("x")


def test_jc_identity_at_zero_interval():
    u = dynamics.jc_unitary(0.0, 5)
    assert np.allclose(u.matrix, np.eye(2 * u.mode_dim), atol=1e-15)


@pytest.mark.parametrize("dtau", DTAU_GRID)
def test_jc_unitarity(dtau):
    u = dynamics.jc_unitary(dtau, 13).matrix
    assert np.max(np.abs(u.conj().T @ u - np.eye(len(u)))) < 1e-12


@pytest.mark.parametrize("dtau", DTAU_GRID)
def test_jc_excitation_conservation(dtau):
    u = dynamics.jc_unitary(dtau, 13)
    dim = u.mode_dim
    # total excitation q + l labels each basis state
    excitation = np.array([q + l for q in range(2) for l in range(dim)])
    mask = excitation[:, None] != excitation[None, :]
    assert np.max(np.abs(u.matrix[mask])) < 1e-14


@pytest.mark.parametrize("dtau", DTAU_GRID)
def test_jc_diagonal_is_q_l(dtau):
    u = dynamics.jc_unitary(dtau, 13)
    dim = u.mode_dim
    for l in range(dim):
        assert u.matrix[l, l] == pytest.approx(np.cos(dtau * np.sqrt(l)), abs=1e-12)
    # <g,4|U|g,4> = cos(2 dtau)
    assert u.matrix[4, 4] == pytest.approx(np.cos(2 * dtau), abs=1e-12)


def test_jc_full_swap_at_half_pi():
    u = dynamics.jc_unitary(np.pi / 2, 3)
    dim = u.mode_dim
    # |g,1> -> -i |e,0>
    col = u.matrix[:, 1]
    expected = np.zeros(2 * dim, dtype=complex)
    expected[dim + 0] = -1j
    assert np.allclose(col, expected, atol=1e-12)


def test_oracle_zero_interval_click_click():
    rho = np.diag([1.0, 0, 0, 0]).astype(complex)
    out, prob = dynamics.oracle_step(rho, ANCILLA, 0.0, 1.0, BOTH_CLICK)
    # only the l=0 ancilla component is removed by the click projectors
    assert prob == pytest.approx(1.0 - ANCILLA.weights[0] ** 2, abs=1e-10)
    assert np.allclose(out / prob, rho, atol=1e-12)


def test_oracle_zero_interval_no_click():
    rho = np.diag([1.0, 0, 0, 0]).astype(complex)
    out, prob = dynamics.oracle_step(rho, ANCILLA, 0.0, 1.0, BOTH_NO_CLICK)
    assert prob == pytest.approx(ANCILLA.weights[0] ** 2, abs=1e-10)
    assert prob == pytest.approx(0.70650, abs=5e-5)
    assert np.allclose(out / prob, rho, atol=1e-12)


@settings(deadline=None, max_examples=20)
@given(st.floats(min_value=0.0, max_value=6.0),
       st.floats(min_value=0.1, max_value=1.0),
       st.integers(min_value=0, max_value=10**6))
def test_outcome_completeness(dtau, eta, seed):
    rng = np.random.default_rng(seed)
    m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = m @ m.conj().T
    rho /= np.trace(rho).real
    probs = dynamics.outcome_probabilities(rho, ANCILLA, dtau, eta)
    assert sum(probs.values()) == pytest.approx(1.0, abs=1e-12 + ANCILLA.tail_mass)


@pytest.mark.parametrize("dtau", DTAU_GRID)
def test_trapped_form_is_invariant_under_click_click(dtau):
    rho = np.diag([0.6, 0.05, 0.05, 0.3]).astype(complex)
    rho[0, 3] = rho[3, 0] = 0.25
    out, prob = dynamics.oracle_step(rho, ANCILLA, dtau, 1.0, BOTH_CLICK)
    if prob < 1e-12:
        pytest.skip("dead branch at this interval")
    r = out / prob
    assert abs(r[1, 1] - r[2, 2]) < 1e-12
    assert abs(r[1, 2]) < 1e-12
    assert abs(np.imag(r[0, 3])) < 1e-12
    assert np.max(np.abs(r - r.conj().T)) < 1e-12


def test_oracle_rejects_wrong_shape():
    with pytest.raises(ParameterDomainError):
        dynamics.oracle_step(np.eye(3), ANCILLA, 1.0, 1.0, BOTH_CLICK)


def test_detector_sqrt_factors():
    f_click = dynamics.detector_sqrt_factors(0.7, True, 4)
    f_none = dynamics.detector_sqrt_factors(0.7, False, 4)
    n = np.arange(4)
    assert np.allclose(f_click**2, 1 - 0.3**n, atol=1e-15)
    assert np.allclose(f_none**2, 0.3**n, atol=1e-15)
    assert np.allclose(f_click**2 + f_none**2, 1.0, atol=1e-15)
    for o in ALL_OUTCOMES:
        assert o.char in "PNAB"
