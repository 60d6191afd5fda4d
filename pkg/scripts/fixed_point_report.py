#!/usr/bin/env python3
"""Print a convergence report for the double-click fixed point.

Shows the per-iteration trapped coordinates, the converged state and its
metrics, and the published closed-form approximation side by side.
"""

import argparse

from qubit_guidance import guidance, metrics


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--s", type=float, default=0.3)
    parser.add_argument("--dtau", type=float, default=4.5)
    parser.add_argument("--eta", type=float, default=1.0)
    parser.add_argument("--show-first", type=int, default=8,
                        help="number of leading iterations to print")
    args = parser.parse_args()

    table = guidance.step_coefficients(args.s, args.dtau, args.eta)
    state = guidance.TrappedState.ground()
    print(f"s={args.s} dtau={args.dtau} eta={args.eta}")
    print(f"{'n':>3} {'a':>14} {'b':>14} {'f':>14} {'g':>14} {'prob':>12}")
    for n in range(1, args.show_first + 1):
        state, prob = guidance.apply_step(state, table)
        print(f"{n:>3} {state.a:14.10f} {state.b:14.10f} "
              f"{state.f:14.10f} {state.g:14.10f} {prob:12.8f}")

    result = guidance.fixed_point(args.s, args.dtau, args.eta)
    print(f"\nconverged after {result.iterations_used} iterations")
    for label, st in (("iterated", result.iterated),
                      ("closed form", result.closed_form)):
        s_l, e_npt, fid = metrics.unchecked_metrics(st.to_density_matrix())
        print(f"{label:>12}: a={st.a:.6f} b={st.b:.6f} f={st.f:.6f} "
              f"g={st.g:.6f} | S_L={s_l:.6f} E_NPT={e_npt:.6f} F={fid:.6f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
