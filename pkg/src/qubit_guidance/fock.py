"""Truncated two-mode photon-number-correlated ancilla states.

Both resource states considered here live on the correlated subspace
spanned by |l,l> of the two modes, so a single real weight vector c(l)
fully describes them.  The photon-subtracted state (PSS) has amplitudes
proportional to (tanh s)^l (l+1); the two-mode squeezed vacuum (TMSV)
has amplitudes (tanh s)^l / cosh s.  Weights carry the *exact* infinite-sum
normalization, so the truncated vector sums to 1 - tail_mass.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterDomainError

DEFAULT_TAIL_TOL = 1e-12


@dataclass(frozen=True)
class AncillaState:
    """Truncated correlated two-mode state sum_l c(l) |l,l>.

    weights holds c(l) for l = 0..lmax; tail_mass is the exact probability
    discarded by the truncation.
    """

    squeezing: float
    lmax: int
    weights: np.ndarray
    tail_mass: float

    def __post_init__(self):
        object.__setattr__(self, "weights", np.asarray(self.weights, dtype=float))
        if len(self.weights) != self.lmax + 1:
            raise ValueError("weight vector length must be lmax + 1")


def _check_params(s: float, tail_tol: float) -> None:
    if s < 0:
        raise ParameterDomainError(f"squeezing must be >= 0, got {s}")
    if not (0 < tail_tol < 1):
        raise ParameterDomainError(f"tail tolerance must lie in (0, 1), got {tail_tol}")


def _pss_tail_sum(y: float, m: int) -> float:
    """Closed form of sum_{l >= m} y^l (l+1)^2 (exact, no cancellation)."""
    return y**m * (
        y * (1 + y) / (1 - y) ** 3
        + 2 * (m + 1) * y / (1 - y) ** 2
        + (m + 1) ** 2 / (1 - y)
    )


def pss_state(s: float, tail_tol: float = DEFAULT_TAIL_TOL) -> AncillaState:
    """Photon-subtracted state with weights N (tanh s)^l (l+1).

    The truncation point is chosen adaptively from the closed-form tail of
    sum_l x^l (l+1)^2 = (1+x)/(1-x)^3 at x = tanh^2 s, so the discarded
    probability is below tail_tol.
    """
    _check_params(s, tail_tol)
    x = np.tanh(s)
    y = x * x
    if y == 0.0:
        return AncillaState(squeezing=s, lmax=0, weights=np.array([1.0]), tail_mass=0.0)
    norm2 = (1 - y) ** 3 / (1 + y)
    lmax = 0
    while True:
        tail = norm2 * _pss_tail_sum(y, lmax + 1)
        if tail < tail_tol:
            break
        lmax += 1
    l = np.arange(lmax + 1)
    weights = np.sqrt(norm2) * x**l * (l + 1)
    return AncillaState(squeezing=s, lmax=lmax, weights=weights, tail_mass=max(tail, 0.0))


def tmsv_state(s: float, tail_tol: float = DEFAULT_TAIL_TOL) -> AncillaState:
    """Two-mode squeezed vacuum with weights (tanh s)^l / cosh s."""
    _check_params(s, tail_tol)
    x = np.tanh(s)
    y = x * x
    if y == 0.0:
        return AncillaState(squeezing=s, lmax=0, weights=np.array([1.0]), tail_mass=0.0)
    sech2 = 1.0 / np.cosh(s) ** 2
    lmax = 0
    while sech2 * y ** (lmax + 1) / (1 - y) >= tail_tol:
        lmax += 1
    l = np.arange(lmax + 1)
    weights = x**l / np.cosh(s)
    tail = sech2 * y ** (lmax + 1) / (1 - y)
    return AncillaState(squeezing=s, lmax=lmax, weights=weights, tail_mass=tail)


def damped_weights(state: AncillaState, eta: float) -> np.ndarray:
    """Weight vector with each c(l) scaled by the click factor 1-(1-eta)^l.

    Deliberately *not* renormalized: with inefficient detectors the missing
    norm is physical (it lowers the success probability downstream).
    """
    if not (0 <= eta <= 1):
        raise ParameterDomainError(f"detector efficiency must lie in [0, 1], got {eta}")
    l = np.arange(state.lmax + 1)
    return state.weights * (1.0 - (1.0 - eta) ** l)


def photon_distribution(state: AncillaState) -> np.ndarray:
    """Joint photon-number probabilities p(l) = c(l)^2."""
    return state.weights**2


def mean_photon_number(state: AncillaState) -> float:
    """Mean photon number per mode of the truncated state."""
    p = photon_distribution(state)
    return float(np.sum(p * np.arange(len(p))))


def schmidt_entropy(state: AncillaState) -> float:
    """Von Neumann entropy (nats) of one reduced mode."""
    p = photon_distribution(state)
    p = p[p > 0]
    return float(-np.sum(p * np.log(p)))
