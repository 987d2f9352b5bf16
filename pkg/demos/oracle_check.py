"""
Cross-checking against an implicit L1 finite-difference scheme
===============================================================

The finite-difference solver shares nothing with the spectral one except
the PDE.  Each halving of dx and dt roughly halves the distance at t = 1.
"""

import numpy as np

from fracspec import BoundarySpec, fd_solve, solve_spectral

u0 = lambda x: np.sin(np.pi * x)
bc = BoundarySpec.robin(100.0)
sol = solve_spectral(0.8, bc, u0, N=64)

prev = None
for level in range(3):
    nx, nt = 128 * 2**level - 1, 512 * 2**level
    grid = fd_solve(0.8, bc, u0, nx, nt, 1.0)
    err = np.abs(grid.values[-1] - sol.evaluate_grid(grid.xs, [1.0])[:, 0]).max()
    ratio = "" if prev is None else f"  ratio {prev / err:.2f}"
    print(f"nx={nx:4d} nt={nt:5d}  sup error {err:.3e}{ratio}")
    prev = err
