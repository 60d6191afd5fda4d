"""Resonant Jaynes-Cummings dynamics and the dense measurement oracle.

The oracle implements one round of the protocol literally: tensor the
two-qubit state with the ancilla, evolve each qubit-mode pair with the
resonant JC unitary, apply the on/off detector POVM for a prescribed
outcome (via the measurement operators sqrt(Pi), which reduce to the
projectors at eta = 1), and trace out the modes.  Everything downstream
(coefficient tables, recurrences, fixed points) is validated against it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterDomainError
from .fock import AncillaState

UNITARITY_TOL = 1e-12


@dataclass(frozen=True)
class OutcomeLabel:
    """Per-detector click / no-click outcome for detectors a and b."""

    click_a: bool
    click_b: bool

    @property
    def char(self) -> str:
        return {(True, True): "P", (False, False): "N",
                (True, False): "A", (False, True): "B"}[(self.click_a, self.click_b)]

    @classmethod
    def from_char(cls, c: str) -> "OutcomeLabel":
        try:
            a, b = {"P": (True, True), "N": (False, False),
                    "A": (True, False), "B": (False, True)}[c.upper()]
        except KeyError:
            raise ParameterDomainError(
                f"outcome character must be one of P, N, A, B, got {c!r}"
            ) from None
        return cls(a, b)


BOTH_CLICK = OutcomeLabel(True, True)
BOTH_NO_CLICK = OutcomeLabel(False, False)
CLICK_A_ONLY = OutcomeLabel(True, False)
CLICK_B_ONLY = OutcomeLabel(False, True)
ALL_OUTCOMES = (BOTH_CLICK, BOTH_NO_CLICK, CLICK_A_ONLY, CLICK_B_ONLY)


@dataclass(frozen=True)
class JCUnitary:
    """Resonant JC propagator on one qubit-mode pair.

    The mode space has dimension lmax + 2 (one padding level keeps the
    |e, lmax> <-> |g, lmax+1> exchange unitary).  Basis index is
    q * (lmax + 2) + l for qubit level q in {g=0, e=1} and photon number l.
    """

    dtau: float
    lmax: int
    matrix: np.ndarray

    @property
    def mode_dim(self) -> int:
        return self.lmax + 2


def jc_unitary(dtau: float, lmax: int) -> JCUnitary:
    """Block rotation of each {|g,l>, |e,l-1>} doublet by angle dtau*sqrt(l).

    Phase convention of the generator g(sigma+ a + sigma- a+): the
    off-diagonal amplitude is -i sin(dtau sqrt(l)), and
    <g,l|U|g,l> = cos(dtau sqrt(l)).
    """
    if lmax < 0:
        raise ParameterDomainError(f"lmax must be >= 0, got {lmax}")
    dim = lmax + 2
    u = np.eye(2 * dim, dtype=complex)
    for l in range(1, dim):
        theta = dtau * np.sqrt(l)
        g_idx = l
        e_idx = dim + (l - 1)
        c, s = np.cos(theta), np.sin(theta)
        u[g_idx, g_idx] = c
        u[e_idx, e_idx] = c
        u[e_idx, g_idx] = -1j * s
        u[g_idx, e_idx] = -1j * s
    return JCUnitary(dtau=dtau, lmax=lmax, matrix=u)


def detector_sqrt_factors(eta: float, click: bool, dim: int) -> np.ndarray:
    """Diagonal of sqrt(Pi_c(eta)) or sqrt(Pi_nc(eta)) in the number basis."""
    if not (0 <= eta <= 1):
        raise ParameterDomainError(f"detector efficiency must lie in [0, 1], got {eta}")
    n = np.arange(dim)
    no_click = (1.0 - eta) ** n
    return np.sqrt(1.0 - no_click) if click else np.sqrt(no_click)


def _measured_branch_vectors(
    ancilla: AncillaState, dtau: float, eta: float, outcome: OutcomeLabel
) -> np.ndarray:
    """sqrt(Pi) U (|q1 q2> x |chi>) for the four qubit basis states.

    Returns an array of shape (4, 2, 2, dim, dim) indexed by
    (source basis state, q1, q2, mode a, mode b).
    """
    dim = ancilla.lmax + 2
    u = jc_unitary(dtau, ancilla.lmax).matrix.reshape(2, dim, 2, dim)
    chi = np.zeros((dim, dim))
    l = np.arange(ancilla.lmax + 1)
    chi[l, l] = ancilla.weights
    fa = detector_sqrt_factors(eta, outcome.click_a, dim)
    fb = detector_sqrt_factors(eta, outcome.click_b, dim)
    out = np.zeros((4, 2, 2, dim, dim), dtype=complex)
    for idx in range(4):
        q1, q2 = idx >> 1, idx & 1
        # U_{1a} acts on (q1, a), U_{2b} on (q2, b); chi carries (a, b)
        va = u[:, :, q1, :]                    # (p, m, a)
        vb = u[:, :, q2, :]                    # (r, n, b)
        branch = np.einsum("pma,rnb,ab->prmn", va, vb, chi)
        branch *= fa[None, None, :, None]
        branch *= fb[None, None, None, :]
        out[idx] = branch
    return out


def oracle_step(
    rho: np.ndarray,
    ancilla: AncillaState,
    dtau: float,
    eta: float,
    outcome: OutcomeLabel = BOTH_CLICK,
) -> tuple[np.ndarray, float]:
    """One interaction-and-detection round, conditioned on `outcome`.

    Returns the *unnormalized* conditional two-qubit matrix and its trace,
    which is the outcome probability.  rho may be any 4x4 matrix (it need
    not be Hermitian; matrix units are pushed through here to build the
    coefficient tables).
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ParameterDomainError(f"expected a 4x4 qubit matrix, got {rho.shape}")
    w = _measured_branch_vectors(ancilla, dtau, eta, outcome)
    out = np.einsum("upqmn,vrsmn,uv->pqrs", w, w.conj(), rho).reshape(4, 4)
    return out, float(np.real(np.trace(out)))


def outcome_probabilities(
    rho: np.ndarray, ancilla: AncillaState, dtau: float, eta: float
) -> dict[str, float]:
    """Probability of each of the four detector outcomes (sums to 1)."""
    return {
        o.char: oracle_step(rho, ancilla, dtau, eta, o)[1] for o in ALL_OUTCOMES
    }
