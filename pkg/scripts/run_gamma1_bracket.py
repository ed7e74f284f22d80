#!/usr/bin/env python3
"""Bracket the coupling value where the synchronized branch stops beating
the cheaper single-mode level, and compare it with the attainment threshold.

For each strength ratio mu2/mu1 the script traces (k(gamma), l(gamma)) from
the decoupled point, records where the ordering certificate k + l >
min(mu1^-p, mu2^-p) first fails, and prints that bracket next to the
attainment threshold.  A bracket strictly below the threshold is numerical
evidence that the two coupling scales differ.
"""

from critsys.asymptotics import continuation_branch
from critsys.params import make_params
from critsys.regimes import gamma_threshold_B


def run() -> None:
    print(f"{'mu2/mu1':>8} {'threshold':>10} {'certificate bracket':>22} "
          f"{'branch end':>12}")
    for ratio in (1.0, 1.5, 2.0, 4.0):
        p = make_params(3, 0.5, 1.5, 1.0, ratio, 0.1)
        thr = gamma_threshold_B(p)
        path = continuation_branch(p, gamma_max=0.999 * thr)
        end = path.samples[-1].gamma
        if path.gamma1_bracket is None:
            bracket = f"none below {end:.4f}"
        else:
            lo, hi = path.gamma1_bracket
            bracket = f"({lo:.4f}, {hi:.4f})"
        print(f"{ratio:8.2f} {thr:10.4f} {bracket:>22} {end:12.4f}  "
              f"[{len(path.samples)} samples, {path.termination}]")


if __name__ == "__main__":
    run()
