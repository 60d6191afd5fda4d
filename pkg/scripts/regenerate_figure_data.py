#!/usr/bin/env python3
"""Regenerate every figure-backing data table into an output directory.

Each table is produced through the CLI entry point so the files are
byte-identical to what `qubit-guidance ... --out` would write:

  ancilla_pss.csv / ancilla_tmsv.csv  photon-number distributions
  operator_spectrum.csv               ideal-operator eigenvalues vs dtau
  state_spectrum.csv                  n=1 density-matrix eigenvalues vs dtau
  trajectories.csv                    S_L / E_NPT / fidelity over a dtau grid
  ideal_benchmark.csv                 idealized projective iteration
  eta_comparison.csv                  eta = 0.7 vs the perfect-detector run
  fixed_point.csv                     asymptotic state, both variants
  event_order.csv                     PN vs NP two-event sequences
"""

import argparse
import pathlib
import sys

from qubit_guidance import cli

GRID = "0.0:7.0:701"
WINDOW = "3.0:6.0:301"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="figure_data",
                        help="directory for the generated CSV files")
    parser.add_argument("--s", default="0.3")
    args = parser.parse_args()
    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    jobs = {
        "ancilla_pss.csv": ["ancilla", "--state", "pss"],
        "ancilla_tmsv.csv": ["ancilla", "--state", "tmsv"],
        "operator_spectrum.csv": ["spectrum", "--kind", "operator",
                                  "--dtau-range", GRID],
        "state_spectrum.csv": ["spectrum", "--kind", "state",
                               "--dtau-range", GRID],
        "trajectories.csv": ["sweep", "--dtau-range", WINDOW, "--n", "3"],
        "ideal_benchmark.csv": ["ideal", "--dtau", "4.5", "--n", "5"],
        "eta_comparison.csv": ["sweep", "--dtau-range", WINDOW, "--n", "2",
                               "--eta", "0.7"],
        "fixed_point.csv": ["fixed-point", "--dtau", "4.5"],
        "event_order_pn.csv": ["sequence", "--dtau", "4.5",
                               "--sequence", "PN"],
        "event_order_np.csv": ["sequence", "--dtau", "4.5",
                               "--sequence", "NP"],
    }
    for filename, argv in jobs.items():
        path = outdir / filename
        code = cli.main(argv + ["--s", args.s, "--out", str(path)])
        if code != 0:
            print(f"failed: {filename}", file=sys.stderr)
            return code
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
