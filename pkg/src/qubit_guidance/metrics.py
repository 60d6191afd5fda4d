"""Two-qubit density-matrix validation and figures of merit.

Basis order throughout is (gg, ge, eg, ee).  The entanglement measure is
the negativity of partial transposition E = max{0, -2 eps_min}; mixedness
is the linearized entropy (4/3)(1 - Tr rho^2); the target Bell state is
|phi-> = (|gg> - |ee>)/sqrt(2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import StateValidationError

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
POSITIVITY_TOL = 1e-10
NEGATIVITY_SNAP = 1e-10

PHI_PLUS = np.array([1, 0, 0, 1]) / np.sqrt(2)
PHI_MINUS = np.array([1, 0, 0, -1]) / np.sqrt(2)
PSI_PLUS = np.array([0, 1, 1, 0]) / np.sqrt(2)
PSI_MINUS = np.array([0, 1, -1, 0]) / np.sqrt(2)

# columns: phi+, phi-, psi+, psi-
_BELL_BASIS = np.column_stack([PHI_PLUS, PHI_MINUS, PSI_PLUS, PSI_MINUS])


@dataclass(frozen=True)
class TwoQubitState:
    """Validated 4x4 density matrix in the (gg, ge, eg, ee) basis."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (4, 4):
            raise StateValidationError(f"expected a 4x4 matrix, got shape {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > HERMITICITY_TOL:
            raise StateValidationError("density matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > TRACE_TOL or abs(np.trace(m).imag) > TRACE_TOL:
            raise StateValidationError(f"trace must be 1, got {np.trace(m)}")
        if np.linalg.eigvalsh((m + m.conj().T) / 2).min() < -POSITIVITY_TOL:
            raise StateValidationError("density matrix has a negative eigenvalue")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def pure(cls, ket: np.ndarray) -> "TwoQubitState":
        ket = np.asarray(ket, dtype=complex)
        ket = ket / np.linalg.norm(ket)
        return cls(np.outer(ket, ket.conj()))


@dataclass(frozen=True)
class BellWeights:
    """Diagonal of rho in the Bell basis plus the residual coherence norm.

    alpha is the mean of the psi+ and psi- diagonals; residual is the
    Frobenius norm of the strictly-upper-triangular off-diagonal part of
    rho in the Bell basis (0 exactly when rho is a Bell-diagonal mixture).
    """

    alpha: float
    beta: float
    gamma: float
    residual: float


def _as_matrix(rho) -> np.ndarray:
    if isinstance(rho, TwoQubitState):
        return rho.matrix
    return TwoQubitState(np.asarray(rho)).matrix


def partial_transpose(rho, qubit: int = 2) -> np.ndarray:
    """Partial transpose of a two-qubit matrix over qubit 1 or 2.

    Performs no state validation so it can be applied to unnormalized or
    non-positive matrices (e.g. approximate closed forms).
    """
    m = rho.matrix if isinstance(rho, TwoQubitState) else np.asarray(rho, dtype=complex)
    m = m.reshape(2, 2, 2, 2)
    if qubit == 2:
        return m.transpose(0, 3, 2, 1).reshape(4, 4)
    if qubit == 1:
        return m.transpose(2, 1, 0, 3).reshape(4, 4)
    raise ValueError("qubit must be 1 or 2")


def negativity(rho) -> float:
    """NPT entanglement max{0, -2 eps_min} of the partial transpose."""
    eps_min = np.linalg.eigvalsh(partial_transpose(_as_matrix(rho), qubit=2)).min()
    value = -2.0 * eps_min
    if abs(value) < NEGATIVITY_SNAP:
        return 0.0
    return max(0.0, float(value))


def linear_entropy(rho) -> float:
    """Linearized entropy (4/3)(1 - Tr rho^2): 0 pure, 1 maximally mixed."""
    m = _as_matrix(rho)
    return float((4.0 / 3.0) * (1.0 - np.real(np.trace(m @ m))))


def fidelity_phi_minus(rho) -> float:
    """Overlap <phi-|rho|phi-> with the target Bell state."""
    m = _as_matrix(rho)
    return float(np.real(PHI_MINUS @ m @ PHI_MINUS))


def unchecked_metrics(matrix: np.ndarray) -> tuple[float, float, float]:
    """(S_L, E_NPT, fidelity) without state validation.

    For matrices that deliberately break the density-matrix invariants,
    such as the renormalized closed-form asymptotic state.
    """
    m = np.asarray(matrix, dtype=complex)
    s_l = float((4.0 / 3.0) * (1.0 - np.real(np.trace(m @ m))))
    eps_min = np.linalg.eigvalsh(partial_transpose(m, qubit=2)).min()
    e_npt = max(0.0, float(-2.0 * eps_min))
    fid = float(np.real(PHI_MINUS @ m @ PHI_MINUS))
    return s_l, e_npt, fid


def bell_decomposition(rho) -> BellWeights:
    """Weights of rho on the Bell-projector mixture, with exactness residual."""
    m = _as_matrix(rho)
    b = _BELL_BASIS.conj().T @ m @ _BELL_BASIS
    diag = np.real(np.diag(b))
    off = np.triu(b, k=1)
    return BellWeights(
        alpha=float((diag[2] + diag[3]) / 2.0),
        beta=float(diag[0]),
        gamma=float(diag[1]),
        residual=float(np.linalg.norm(off)),
    )
