"""Realistic feedback-free protocol: trapped family, recurrence, fixed point.

Conditioned on a double click, the protocol maps the four-parameter
trapped density-matrix family (populations a, b, b, f and a real gg<->ee
coherence g) onto itself.  One round is a linear map on (a, b, f, g)
whose 4x6 transfer-coefficient table is built once per parameter point:
the gg-source column from the photon-ladder series, the remaining columns
by pushing basis matrix units through the dense oracle.  Iterating the
normalized map gives the trajectories and the asymptotic fixed point.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass, field

import numpy as np

from . import dynamics
from .dynamics import BOTH_CLICK, BOTH_NO_CLICK, OutcomeLabel
from .errors import ConvergenceError, DeadBranchError, ParameterDomainError
from .fock import DEFAULT_TAIL_TOL, AncillaState, pss_state
from .metrics import fidelity_phi_minus, linear_entropy, negativity
from .trace import ProtocolTrace, StepRecord

_DEAD_BRANCH_EPS = 1e-15
FIXED_POINT_TOL = 1e-12
FIXED_POINT_MAX_ITER = 10_000

COLUMN_ORDER = ("gggg", "egeg", "gege", "eeee", "eegg", "ggee")

# matrix-unit source |i><j| for each column, basis order (gg, ge, eg, ee)
_SOURCES = {
    "gggg": (0, 0),
    "egeg": (2, 2),
    "gege": (1, 1),
    "eeee": (3, 3),
    "eegg": (3, 0),
    "ggee": (0, 3),
}


@dataclass(frozen=True)
class TrappedState:
    """Normalized member of the protocol's invariant density-matrix family."""

    a: float  # <gg|rho|gg>
    b: float  # <ge|rho|ge> = <eg|rho|eg>
    f: float  # <ee|rho|ee>
    g: float  # <gg|rho|ee> (real)
    check: InitVar[bool] = True

    def __post_init__(self, check: bool):
        if not check:
            return
        if abs(self.a + 2 * self.b + self.f - 1.0) > 1e-12:
            raise ParameterDomainError(
                f"trapped state not normalized: a+2b+f = {self.a + 2 * self.b + self.f}"
            )
        if min(self.a, self.b, self.f) < -1e-12:
            raise ParameterDomainError("trapped state has a negative population")
        if self.g**2 > self.a * self.f + 1e-12:
            raise ParameterDomainError("gg/ee block of trapped state is not PSD")

    @classmethod
    def ground(cls) -> "TrappedState":
        return cls(a=1.0, b=0.0, f=0.0, g=0.0)

    @classmethod
    def from_density_matrix(cls, rho: np.ndarray, tol: float = 1e-10) -> "TrappedState":
        rho = np.asarray(rho)
        if abs(rho[1, 1] - rho[2, 2]) > tol or abs(rho[1, 2]) > tol \
                or abs(np.imag(rho[0, 3])) > tol:
            raise ParameterDomainError("matrix is not of the trapped form")
        return cls(a=float(np.real(rho[0, 0])),
                   b=float(np.real(rho[1, 1] + rho[2, 2]) / 2.0),
                   f=float(np.real(rho[3, 3])),
                   g=float(np.real(rho[0, 3])))

    def to_density_matrix(self) -> np.ndarray:
        rho = np.diag([self.a, self.b, self.b, self.f]).astype(complex)
        rho[0, 3] = rho[3, 0] = self.g
        return rho

    def as_vector(self) -> np.ndarray:
        return np.array([self.a, self.b, self.f, self.g])


@dataclass(frozen=True)
class StepCoefficientTable:
    """Transfer weights of one double-click round on the trapped family.

    columns maps each source name to the (a, b, f, g) coordinates of the
    unnormalized conditional output of that basis matrix unit; the b
    coordinate is the mean of the ge and eg populations (they differ for
    a single asymmetric matrix unit but the paired sums entering the
    recurrence are exchange-symmetric).
    """

    s: float
    dtau: float
    eta: float
    lmax: int
    columns: dict[str, np.ndarray] = field(repr=False)

    def as_matrix(self) -> np.ndarray:
        """4x6 array, rows (A, B, F, G), columns in COLUMN_ORDER."""
        return np.column_stack([self.columns[c] for c in COLUMN_ORDER])


def _trapped_coordinates(rho: np.ndarray) -> np.ndarray:
    return np.array([
        np.real(rho[0, 0]),
        np.real(rho[1, 1] + rho[2, 2]) / 2.0,
        np.real(rho[3, 3]),
        np.real(rho[0, 3]),
    ])


def _gg_column_series(state: AncillaState, dtau: float, eta: float) -> np.ndarray:
    """Photon-ladder series for the gg-source column, with detector damping.

    Each term carries the click factor 1-(1-eta)^n at the photon number
    the detector actually sees (l when the qubit stays in g, l-1 when it
    absorbs the excitation); at eta = 1 all factors are 1 for l >= 1 and
    the sums reduce to the ideal-detector series.
    """
    w = state.weights
    l = np.arange(len(w))
    q2 = np.cos(dtau * np.sqrt(l)) ** 2
    s2 = np.sin(dtau * np.sqrt(l)) ** 2
    s2_next = np.sin(dtau * np.sqrt(l + 1)) ** 2
    f_l = 1.0 - (1.0 - eta) ** l
    f_prev = np.concatenate([[0.0], f_l[:-1]])
    w_next = np.append(w[1:], 0.0)
    a = np.sum(w**2 * q2**2 * f_l**2)
    b = np.sum(w**2 * q2 * s2 * f_l * f_prev)
    f = np.sum(w**2 * s2**2 * f_prev**2)
    g = -np.sum(w * w_next * q2 * s2_next * f_l**2)
    return np.array([a, b, f, g])


def step_coefficients(
    s: float,
    dtau: float,
    eta: float = 1.0,
    tail_tol: float = DEFAULT_TAIL_TOL,
    ancilla: AncillaState | None = None,
) -> StepCoefficientTable:
    """Build the 4x6 transfer table for one double-click round."""
    if not (0 <= eta <= 1):
        raise ParameterDomainError(f"detector efficiency must lie in [0, 1], got {eta}")
    state = ancilla if ancilla is not None else pss_state(s, tail_tol)
    columns: dict[str, np.ndarray] = {"gggg": _gg_column_series(state, dtau, eta)}
    for name in COLUMN_ORDER[1:]:
        i, j = _SOURCES[name]
        unit = np.zeros((4, 4), dtype=complex)
        unit[i, j] = 1.0
        out, _ = dynamics.oracle_step(unit, state, dtau, eta, BOTH_CLICK)
        columns[name] = _trapped_coordinates(out)
    return StepCoefficientTable(s=s, dtau=dtau, eta=eta, lmax=state.lmax,
                                columns=columns)


def apply_step(
    state: TrappedState, table: StepCoefficientTable
) -> tuple[TrappedState, float]:
    """One recurrence step: unnormalized transfer, then renormalization.

    The success probability is the trace a' + 2b' + f' of the unnormalized
    output.
    """
    c = table.columns
    u = (state.a * c["gggg"]
         + state.b * (c["egeg"] + c["gege"])
         + state.f * c["eeee"]
         + state.g * (c["eegg"] + c["ggee"]))
    prob = float(u[0] + 2 * u[1] + u[2])
    if prob < _DEAD_BRANCH_EPS:
        raise DeadBranchError(f"double-click probability vanished ({prob})")
    v = u / prob
    return TrappedState(a=v[0], b=v[1], f=v[2], g=v[3]), prob


def _record(step: int, state: TrappedState, prob: float, cumulative: float,
            outcome: str = "P") -> StepRecord:
    rho = state.to_density_matrix()
    return StepRecord(
        step=step,
        rho=rho,
        success_probability=prob,
        cumulative_probability=cumulative,
        linear_entropy=linear_entropy(rho),
        negativity=negativity(rho),
        fidelity=fidelity_phi_minus(rho),
        outcome=outcome,
    )


def guided_evolution(
    rho0: TrappedState,
    n: int,
    s: float,
    dtau: float,
    eta: float = 1.0,
    tail_tol: float = DEFAULT_TAIL_TOL,
) -> ProtocolTrace:
    """n double-click rounds with a fresh, identical ancilla each round."""
    if n < 1:
        raise ValueError(f"iteration count must be >= 1, got {n}")
    table = step_coefficients(s, dtau, eta, tail_tol)
    trace = ProtocolTrace()
    state = rho0
    cumulative = 1.0
    for k in range(1, n + 1):
        try:
            state, prob = apply_step(state, table)
        except DeadBranchError as err:
            raise DeadBranchError(str(err), step=k) from None
        cumulative *= prob
        trace.append(_record(k, state, prob, cumulative))
    return trace


@dataclass(frozen=True)
class DominantEigenpair:
    """Largest density-matrix eigenvalue with its gg/ee-plane eigenvector.

    printed_formula evaluates the published closed form
    ((a-f) + sqrt((a-f)^2 + 4 g^2)) / (2 g), recorded for comparison only.
    """

    beta_plus: float
    eigvec: np.ndarray
    printed_formula: float


def dominant_eigenpair(state: TrappedState) -> DominantEigenpair:
    """Numerically diagonalize the trapped state's gg/ee block."""
    block = np.array([[state.a, state.g], [state.g, state.f]])
    vals, vecs = np.linalg.eigh(block)
    order = np.argsort(-vals)
    beta_plus = float(vals[order[0]])
    eigvec = vecs[:, order[0]]
    if state.g != 0.0:
        diff = state.a - state.f
        printed = (diff + np.sqrt(diff**2 + 4 * state.g**2)) / (2 * state.g)
    else:
        printed = float("nan")
    return DominantEigenpair(beta_plus=beta_plus, eigvec=eigvec,
                             printed_formula=float(printed))


def negative_event_step(
    state: TrappedState,
    s: float,
    dtau: float,
    eta: float = 1.0,
    tail_tol: float = DEFAULT_TAIL_TOL,
) -> tuple[TrappedState, float]:
    """One round conditioned on neither detector firing."""
    ancilla = pss_state(s, tail_tol)
    out, prob = dynamics.oracle_step(
        state.to_density_matrix(), ancilla, dtau, eta, BOTH_NO_CLICK
    )
    if prob < _DEAD_BRANCH_EPS:
        raise DeadBranchError(f"no-signal probability vanished ({prob})")
    v = _trapped_coordinates(out / prob)
    return TrappedState(a=v[0], b=v[1], f=v[2], g=v[3]), prob


def outcome_sequence(
    rho0: TrappedState,
    sequence: list[OutcomeLabel] | str,
    s: float,
    dtau: float,
    eta: float = 1.0,
    tail_tol: float = DEFAULT_TAIL_TOL,
) -> ProtocolTrace:
    """Apply a prescribed string of detector outcomes in order.

    Mixed outcomes (one click, one not) break the qubit-exchange symmetry
    and can leave the trapped family, so the evolution runs on the full
    4x4 matrix through the oracle.
    """
    if isinstance(sequence, str):
        sequence = [OutcomeLabel.from_char(c) for c in sequence]
    if not sequence:
        raise ParameterDomainError("outcome sequence must be nonempty")
    ancilla = pss_state(s, tail_tol)
    rho = rho0.to_density_matrix()
    trace = ProtocolTrace()
    cumulative = 1.0
    for k, outcome in enumerate(sequence, start=1):
        out, prob = dynamics.oracle_step(rho, ancilla, dtau, eta, outcome)
        if prob < _DEAD_BRANCH_EPS:
            raise DeadBranchError(
                f"outcome {outcome.char} at step {k} has zero probability", step=k
            )
        rho = out / prob
        cumulative *= prob
        trace.append(StepRecord(
            step=k,
            rho=rho.copy(),
            success_probability=prob,
            cumulative_probability=cumulative,
            linear_entropy=linear_entropy(rho),
            negativity=negativity(rho),
            fidelity=fidelity_phi_minus(rho),
            outcome=outcome.char,
        ))
    return trace


@dataclass(frozen=True)
class FixedPointResult:
    """Asymptotic state: published closed form vs direct iteration."""

    closed_form: TrappedState
    iterated: TrappedState
    iterations_used: int


def closed_form_fixed_point(table: StepCoefficientTable) -> TrappedState:
    """Published approximate asymptotic state, renormalized to unit trace.

    Built from the gg- and ee-source columns only; the published matrix
    has trace F_eeee and is divided by it here.
    """
    a_gg, _, _, g_gg = table.columns["gggg"]
    a_ee, _, f_ee, g_ee = table.columns["eeee"]
    # degenerate parameter points (e.g. dtau = 0) make the published
    # expression 0/0; the nan propagates to the caller unnormalized
    with np.errstate(invalid="ignore", divide="ignore"):
        den = f_ee + a_ee - a_gg
        rho_gg = a_ee * f_ee / den
        rho_ee = f_ee * (f_ee - a_gg) / den
        rho_coh = a_ee * g_gg / f_ee + (f_ee - a_gg) * g_ee / f_ee
        trace = rho_gg + rho_ee
        # the published approximation need not be PSD, so skip the invariants
        return TrappedState(a=float(rho_gg / trace), b=0.0,
                            f=float(rho_ee / trace),
                            g=float(rho_coh / trace), check=False)


def fixed_point(
    s: float,
    dtau: float,
    eta: float = 1.0,
    tail_tol: float = DEFAULT_TAIL_TOL,
) -> FixedPointResult:
    """Asymptotic state of the double-click map.

    The iterated branch runs the recurrence from |gg> until the
    max-norm change of (a, b, f, g) drops below FIXED_POINT_TOL.
    """
    table = step_coefficients(s, dtau, eta, tail_tol)
    state = TrappedState.ground()
    v = state.as_vector()
    for k in range(1, FIXED_POINT_MAX_ITER + 1):
        state, _ = apply_step(state, table)
        v_new = state.as_vector()
        residual = float(np.max(np.abs(v_new - v)))
        if residual < FIXED_POINT_TOL:
            return FixedPointResult(
                closed_form=closed_form_fixed_point(table),
                iterated=state,
                iterations_used=k,
            )
        v = v_new
    raise ConvergenceError(
        f"fixed-point iteration did not converge in {FIXED_POINT_MAX_ITER} steps",
        residual=residual,
    )
