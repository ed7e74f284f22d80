#!/usr/bin/env python3
"""Convergence study of the pseudospectral PDE residual for the normalized
ground-state profile: refine the grid at fixed box, then widen the box at
fixed spacing, and print the core-window residuals.
"""

from critsys.bubbles import (BubbleSpec, normalized_bubble_field,
                             residual_study, sobolev_constant_closed_form)
from critsys.params import make_params
from critsys.spectral import pde_residual_single


def run() -> None:
    p = make_params(3, 0.5, 1.5, 1.0, 1.0, 1.0)
    S = sobolev_constant_closed_form(p).value
    spec = BubbleSpec(epsilon=1.0, center=(0.0, 0.0, 0.0))

    print("refinement at fixed box L = 30:")
    for N in (32, 64, 128):
        U = normalized_bubble_field(p, spec, S, N, 30.0)
        rep = pde_residual_single(p, U)
        print(f"  N = {N:4d}  rel L2 core = {rep.rel_l2_core:.3e}  "
              f"rel sup core = {rep.rel_sup_core:.3e}")

    print("box doubling at fixed spacing (truncation flag set while the")
    print("next level still moves the residual by more than half):")
    for L, N, rep in residual_study(p, L=7.5, N=32, eps=1.0, doublings=2):
        print(f"  L = {L:5.1f}  N = {N:4d}  rel L2 core = "
              f"{rep.rel_l2_core:.3e}  truncation_flag = {rep.truncation_flag}")


if __name__ == "__main__":
    run()
