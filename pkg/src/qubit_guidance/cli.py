"""Command-line front end emitting deterministic CSV/JSON tables.

Subcommands: ancilla, spectrum, ideal, evolve, sweep, fixed-point,
sequence.  Defaults mirror the reference parameter point (s = 0.3,
eta = 1, initial state |gg>).  CSV uses 12 significant digits and LF
line endings so identical configurations produce byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import fock, guidance, ideal, metrics
from .errors import DeadBranchError, GuidanceError, ParameterDomainError

DEFAULT_S = 0.3
DEFAULT_ETA = 1.0
DEFAULT_TAIL_TOL = 1e-12


@dataclass
class Table:
    columns: list[str]
    rows: list[list]

    def to_csv(self) -> str:
        lines = [",".join(self.columns)]
        for row in self.rows:
            lines.append(",".join(_format_cell(v) for v in row))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps({"columns": self.columns, "rows": self.rows})


def _format_cell(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.12g}"
    return str(value)


def _parse_grid(spec: str) -> np.ndarray:
    try:
        lo, hi, points = spec.split(":")
        lo, hi, points = float(lo), float(hi), int(points)
    except ValueError:
        raise ParameterDomainError(
            f"range must be MIN:MAX:POINTS, got {spec!r}"
        ) from None
    if points < 2:
        raise ParameterDomainError(f"grid needs at least 2 points, got {points}")
    return np.linspace(lo, hi, points)


def _dtau_values(args) -> np.ndarray:
    if args.dtau_range is not None:
        return _parse_grid(args.dtau_range)
    if args.dtau is not None:
        return np.array([args.dtau])
    raise ParameterDomainError("either --dtau or --dtau-range is required")


def cmd_ancilla(args) -> Table:
    builder = fock.pss_state if args.state == "pss" else fock.tmsv_state
    state = builder(args.s, args.tail_tol)
    probs = fock.photon_distribution(state)
    rows = [[int(l), float(state.weights[l]), float(probs[l])]
            for l in range(state.lmax + 1)]
    return Table(columns=["l", "weight", "probability"], rows=rows)


def cmd_spectrum(args) -> Table:
    rows = []
    if args.kind == "operator":
        for dt in _dtau_values(args):
            sp = ideal.operator_spectrum(
                ideal.effective_operator(args.s, dt, args.tail_tol))
            rows.append([float(dt), sp.e_plus, sp.e_minus, sp.e_zero])
        return Table(columns=["dtau", "e_plus", "e_minus", "e_zero"], rows=rows)
    # n = 1 density-matrix spectrum from |gg>
    for dt in _dtau_values(args):
        table = guidance.step_coefficients(args.s, dt, args.eta, args.tail_tol)
        try:
            state, _ = guidance.apply_step(guidance.TrappedState.ground(), table)
        except DeadBranchError:
            rows.append([float(dt), float("nan"), float("nan"), float("nan")])
            continue
        block = np.linalg.eigvalsh(
            np.array([[state.a, state.g], [state.g, state.f]]))
        rows.append([float(dt), float(block[1]), float(block[0]), float(state.b)])
    return Table(columns=["dtau", "beta_plus", "beta_2", "beta_3_degenerate"],
                 rows=rows)


def _trajectory_rows(args, runner) -> list[list]:
    rows = []
    for dt in _dtau_values(args):
        try:
            trace = runner(float(dt))
        except DeadBranchError as err:
            rows.append([err.step or 0, float(dt)] + [float("nan")] * 5
                        + ["dead-branch"])
            continue
        for rec in trace:
            rows.append([rec.step, float(dt), rec.linear_entropy, rec.negativity,
                         rec.fidelity, rec.success_probability,
                         rec.cumulative_probability, "ok"])
    return rows


_TRAJECTORY_COLUMNS = ["n", "dtau", "S_L", "E_NPT", "fidelity",
                       "step_probability", "cumulative_probability", "status"]


def cmd_evolve(args) -> Table:
    def run(dt: float):
        return guidance.guided_evolution(
            guidance.TrappedState.ground(), args.n, args.s, dt, args.eta,
            args.tail_tol)
    return Table(columns=_TRAJECTORY_COLUMNS, rows=_trajectory_rows(args, run))


def cmd_ideal(args) -> Table:
    rho0 = np.diag([1.0, 0.0, 0.0, 0.0])

    def run(dt: float):
        op = ideal.effective_operator(args.s, dt, args.tail_tol)
        return ideal.ideal_iterate(rho0, op, args.n)
    return Table(columns=_TRAJECTORY_COLUMNS, rows=_trajectory_rows(args, run))


def cmd_fixed_point(args) -> Table:
    rows = []
    for dt in _dtau_values(args):
        result = guidance.fixed_point(args.s, float(dt), args.eta, args.tail_tol)
        for variant, state in (("closed_form", result.closed_form),
                               ("iterated", result.iterated)):
            s_l, e_npt, fid = metrics.unchecked_metrics(state.to_density_matrix())
            rows.append([float(dt), variant, s_l, e_npt, fid,
                         state.a, state.b, state.f, state.g,
                         result.iterations_used])
    return Table(
        columns=["dtau", "variant", "S_L", "E_NPT", "fidelity",
                 "a", "b", "f", "g", "iterations"],
        rows=rows)


def cmd_sequence(args) -> Table:
    if not args.sequence:
        raise ParameterDomainError("--sequence is required (e.g. PPNP)")
    rows = []
    for dt in _dtau_values(args):
        try:
            trace = guidance.outcome_sequence(
                guidance.TrappedState.ground(), args.sequence, args.s,
                float(dt), args.eta, args.tail_tol)
        except DeadBranchError as err:
            rows.append([err.step or 0, float(dt), "?"] + [float("nan")] * 5
                        + ["dead-branch"])
            continue
        for rec in trace:
            rows.append([rec.step, float(dt), rec.outcome, rec.linear_entropy,
                         rec.negativity, rec.fidelity, rec.success_probability,
                         rec.cumulative_probability, "ok"])
    return Table(
        columns=["step", "dtau", "outcome", "S_L", "E_NPT", "fidelity",
                 "step_probability", "cumulative_probability", "status"],
        rows=rows)


_COMMANDS = {
    "ancilla": cmd_ancilla,
    "spectrum": cmd_spectrum,
    "ideal": cmd_ideal,
    "evolve": cmd_evolve,
    "sweep": cmd_evolve,
    "fixed-point": cmd_fixed_point,
    "sequence": cmd_sequence,
}


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--s", type=float, default=DEFAULT_S,
                        help="ancilla squeezing parameter")
    parser.add_argument("--eta", type=float, default=DEFAULT_ETA,
                        help="detector quantum efficiency")
    parser.add_argument("--tail-tol", type=float, default=DEFAULT_TAIL_TOL,
                        help="Fock truncation tail tolerance")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--out", default=None, help="output path (default stdout)")


def _add_dtau(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--dtau", type=float, default=None,
                        help="single interaction interval")
    parser.add_argument("--dtau-range", default=None, metavar="MIN:MAX:POINTS",
                        help="interaction-interval grid")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qubit-guidance",
        description="Feedback-free two-qubit guidance simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ancilla", help="ancilla photon-number table")
    p.add_argument("--state", choices=("pss", "tmsv"), default="pss")
    _add_common(p)

    p = sub.add_parser("spectrum", help="effective-operator or state spectrum")
    p.add_argument("--kind", choices=("operator", "state"), default="operator")
    _add_dtau(p)
    _add_common(p)

    for name, help_text in (("ideal", "idealized projective iteration"),
                            ("evolve", "double-click guidance trajectory"),
                            ("sweep", "guidance trajectory over a dtau grid")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--n", type=int, default=3, help="number of iterations")
        _add_dtau(p)
        _add_common(p)

    p = sub.add_parser("fixed-point", help="asymptotic state (closed form vs iterated)")
    _add_dtau(p)
    _add_common(p)

    p = sub.add_parser("sequence", help="prescribed detector-outcome sequence")
    p.add_argument("--sequence", default=None,
                   help="outcome string, e.g. PPNP (P=both click, N=none, "
                        "A/B=single detector)")
    _add_dtau(p)
    _add_common(p)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        table = _COMMANDS[args.command](args)
    except GuidanceError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    text = table.to_csv() if args.format == "csv" else table.to_json()
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
