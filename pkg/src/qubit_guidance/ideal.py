"""Idealized projective protocol: effective operator, spectrum, iteration.

The effective operator acts on the two qubits after the ancilla is
projected back onto its initial state.  Its four independent entries are
series over the ancilla photon ladder in Q_l = cos(dtau sqrt(l)); the
gg<->ee entry's sign follows the physical JC phase convention, which is
validated against the dense oracle (the published form of that entry has
an inconsistent sign/power and is kept only for comparison logging).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DeadBranchError
from .fock import DEFAULT_TAIL_TOL, pss_state
from .metrics import TwoQubitState, fidelity_phi_minus, linear_entropy, negativity
from .trace import ProtocolTrace, StepRecord

_DEAD_BRANCH_EPS = 1e-15


@dataclass(frozen=True)
class EffectiveOperator:
    """4x4 real symmetric post-measurement operator on the qubit pair."""

    o11: float
    o44: float
    o12: float
    o14: float  # gg<->ee matrix element, JC phase convention
    matrix: np.ndarray
    lmax: int


@dataclass(frozen=True)
class OperatorSpectrum:
    """Numerically diagonalized spectrum plus the published closed form.

    e_zero is the double-degenerate ge/eg eigenvalue.  printed_e_plus and
    printed_e_minus evaluate the published (o11-o44 +/- sqrt(...))/(2 o14)
    expression, which is recorded for comparison only and is not used as
    ground truth.
    """

    e_plus: float
    e_minus: float
    e_zero: float
    v_plus: np.ndarray
    v_minus: np.ndarray
    printed_e_plus: float
    printed_e_minus: float


def effective_operator(
    s: float, dtau: float, tail_tol: float = DEFAULT_TAIL_TOL
) -> EffectiveOperator:
    """Series evaluation of the effective operator for a PSS ancilla."""
    state = pss_state(s, tail_tol)
    w = state.weights
    l = np.arange(len(w))
    q_l = np.cos(dtau * np.sqrt(l))
    q_lp = np.cos(dtau * np.sqrt(l + 1))
    s2_lp = np.sin(dtau * np.sqrt(l + 1)) ** 2
    w_next = np.append(w[1:], 0.0)
    o11 = float(np.sum(w**2 * q_l**2))
    o44 = float(np.sum(w**2 * q_lp**2))
    o12 = float(np.sum(w**2 * q_l * q_lp))
    o14 = float(-np.sum(w * w_next * s2_lp))
    matrix = np.diag([o11, o12, o12, o44]).astype(float)
    matrix[0, 3] = matrix[3, 0] = o14
    return EffectiveOperator(o11=o11, o44=o44, o12=o12, o14=o14,
                             matrix=matrix, lmax=state.lmax)


def operator_spectrum(op: EffectiveOperator) -> OperatorSpectrum:
    """Eigendecomposition of the effective operator.

    e_plus / e_minus come from direct diagonalization of the gg/ee block;
    e_plus is the eigenvalue of largest magnitude.
    """
    block = np.array([[op.o11, op.o14], [op.o14, op.o44]])
    vals, vecs = np.linalg.eigh(block)
    order = np.argsort(-np.abs(vals))
    e_plus, e_minus = float(vals[order[0]]), float(vals[order[1]])
    v_plus, v_minus = vecs[:, order[0]], vecs[:, order[1]]
    if op.o14 != 0.0:
        diff = op.o11 - op.o44
        root = np.sqrt(diff**2 + 4.0 * op.o14**2)
        printed_plus = (diff + root) / (2.0 * op.o14)
        printed_minus = (diff - root) / (2.0 * op.o14)
    else:
        printed_plus = printed_minus = float("nan")
    return OperatorSpectrum(
        e_plus=e_plus,
        e_minus=e_minus,
        e_zero=op.o12,
        v_plus=v_plus,
        v_minus=v_minus,
        printed_e_plus=float(printed_plus),
        printed_e_minus=float(printed_minus),
    )


def ideal_iterate(rho0, op: EffectiveOperator, n: int) -> ProtocolTrace:
    """n rounds of rho -> O rho O^T / Tr, with per-step metrics.

    The per-step success weight Tr[O rho O^T] is recorded in the
    success_probability slot; a numerically dead branch raises rather
    than silently renormalizing.
    """
    if n < 1:
        raise ValueError(f"iteration count must be >= 1, got {n}")
    rho = rho0.matrix if isinstance(rho0, TwoQubitState) else TwoQubitState(rho0).matrix
    o = op.matrix
    trace = ProtocolTrace()
    cumulative = 1.0
    for k in range(1, n + 1):
        sigma = o @ rho @ o.T
        weight = float(np.real(np.trace(sigma)))
        if weight < _DEAD_BRANCH_EPS:
            raise DeadBranchError(
                f"zero-probability branch at iteration {k}", step=k
            )
        rho = sigma / weight
        cumulative *= weight
        trace.append(StepRecord(
            step=k,
            rho=rho.copy(),
            success_probability=weight,
            cumulative_probability=cumulative,
            linear_entropy=linear_entropy(rho),
            negativity=negativity(rho),
            fidelity=fidelity_phi_minus(rho),
        ))
    return trace
