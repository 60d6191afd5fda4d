"""Effective post-measurement operator, its spectrum, and ideal iteration."""

import numpy as np
import pytest

from qubit_guidance import dynamics, fock, ideal
from qubit_guidance.errors import DeadBranchError

GG = np.diag([1.0, 0.0, 0.0, 0.0])


def _dense_effective_operator(s, dtau):
    """<chi| U1a x U2b |chi> contracted directly from the dense unitary."""
    state = fock.pss_state(s)
    dim = state.lmax + 2
    u = dynamics.jc_unitary(dtau, state.lmax).matrix.reshape(2, dim, 2, dim)
    chi = np.zeros((dim, dim))
    l = np.arange(state.lmax + 1)
    chi[l, l] = state.weights
    # O_{(pq),(rs)} = sum_{m,n,a,b} chi[m,n] chi[a,b] U[p,m,r,a] U[q,n,s,b]
    op = np.einsum("mn,ab,pmra,qnsb->pqrs", chi, chi, u, u).reshape(4, 4)
    assert np.max(np.abs(op.imag)) < 1e-12
    return op.real


def test_zero_interval_operator_is_identity():
    op = ideal.effective_operator(0.3, 0.0)
    assert np.allclose(op.matrix, np.eye(4), atol=1e-12)
    sp = ideal.operator_spectrum(op)
    assert (sp.e_plus, sp.e_minus, sp.e_zero) == pytest.approx((1, 1, 1), abs=1e-12)


@pytest.mark.parametrize("dtau", [1.0, 3.3, 4.5, 6.0])
def test_series_matches_dense_contraction(dtau):
    op = ideal.effective_operator(0.3, dtau)
    dense = _dense_effective_operator(0.3, dtau)
    assert np.max(np.abs(op.matrix - dense)) < 1e-10


def test_operator_structure():
    op = ideal.effective_operator(0.3, 4.5)
    m = op.matrix
    assert np.allclose(m, m.T, atol=1e-12)
    assert m[1, 1] == m[2, 2] == op.o12
    assert m[0, 3] == op.o14
    for v in (op.o11, op.o44, op.o12):
        assert -1.0 <= v <= 1.0


def test_spectrum_frozen_values_at_reference_point():
    # frozen from numeric diagonalization at s=0.3, dtau=4.5
    sp = ideal.operator_spectrum(ideal.effective_operator(0.3, 4.5))
    assert sp.e_plus == pytest.approx(0.998708525244, abs=1e-9)
    assert sp.e_minus == pytest.approx(0.040886056379, abs=1e-9)
    assert sp.e_zero == pytest.approx(-0.196283527032, abs=1e-9)
    assert abs(sp.e_plus) >= abs(sp.e_minus)
    assert abs(sp.e_plus) >= abs(sp.e_zero)


def test_eigenvector_residuals():
    op = ideal.effective_operator(0.3, 4.5)
    sp = ideal.operator_spectrum(op)
    block = np.array([[op.o11, op.o14], [op.o14, op.o44]])
    for val, vec in ((sp.e_plus, sp.v_plus), (sp.e_minus, sp.v_minus)):
        assert np.linalg.norm(block @ vec - val * vec) < 1e-10


def test_dominant_eigenvector_overlaps_target_bell_state():
    sp = ideal.operator_spectrum(ideal.effective_operator(0.3, 4.5))
    vec = np.array([sp.v_plus[0], 0.0, 0.0, sp.v_plus[1]])
    vec /= np.linalg.norm(vec)
    phi_minus = np.array([1, 0, 0, -1]) / np.sqrt(2)
    assert abs(phi_minus @ vec) ** 2 > 0.9


def test_iteration_frozen_entanglement_trajectory():
    op = ideal.effective_operator(0.3, 4.5)
    trace = ideal.ideal_iterate(GG, op, 5)
    en = trace.negativities
    assert en[0] == pytest.approx(0.836200065182, abs=1e-9)
    assert en[4] == pytest.approx(0.860895638066, abs=1e-9)
    assert all(en[i + 1] > en[i] for i in range(4))
    assert trace.cumulative_probability == pytest.approx(
        np.prod([r.success_probability for r in trace]), rel=1e-12)


def test_power_iteration_converges_to_dominant_projector():
    op = ideal.effective_operator(0.3, 4.5)
    trace = ideal.ideal_iterate(GG, op, 200)
    sp = ideal.operator_spectrum(op)
    vec = np.array([sp.v_plus[0], 0.0, 0.0, sp.v_plus[1]])
    vec /= np.linalg.norm(vec)
    fid = np.real(vec @ trace.steps[-1].rho @ vec)
    assert fid == pytest.approx(1.0, abs=1e-8)


def test_geometric_convergence_rate():
    op = ideal.effective_operator(0.3, 4.5)
    sp = ideal.operator_spectrum(op)
    trace = ideal.ideal_iterate(GG, op, 8)
    vec = np.array([sp.v_plus[0], 0.0, 0.0, sp.v_plus[1]])
    vec /= np.linalg.norm(vec)
    proj = np.outer(vec, vec)
    dist = [np.linalg.norm(r.rho - proj) for r in trace]
    # the leading error term is the |v+><v-| cross coherence, which
    # contracts by e_minus/e_plus per step
    ratio = sp.e_minus / sp.e_plus
    for i in range(2, 6):
        assert dist[i + 1] / dist[i] == pytest.approx(ratio, rel=0.2)


def test_dead_branch_raises():
    op = ideal.effective_operator(0.3, 4.5)
    dead = ideal.EffectiveOperator(o11=0, o44=0, o12=0, o14=0,
                                   matrix=np.zeros((4, 4)), lmax=op.lmax)
    with pytest.raises(DeadBranchError):
        ideal.ideal_iterate(GG, dead, 1)


def test_truncation_stability_of_spectrum():
    loose = ideal.operator_spectrum(ideal.effective_operator(0.3, 4.5, 1e-12))
    tight = ideal.operator_spectrum(ideal.effective_operator(0.3, 4.5, 1e-26))
    assert tight.e_plus == pytest.approx(loose.e_plus, abs=1e-10)
    assert tight.e_minus == pytest.approx(loose.e_minus, abs=1e-10)
    assert tight.e_zero == pytest.approx(loose.e_zero, abs=1e-10)
