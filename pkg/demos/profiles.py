"""
Subdiffusion with a large Newton coefficient
============================================

Solve D_t^a u = u_xx with u0 = sin(pi x) for several Robin coefficients and
compare with the Dirichlet solution at t = 1.  A plot is written to
profiles.png when matplotlib is available.
"""

import numpy as np

from fracspec import BoundarySpec, solve_spectral

u0 = lambda x: np.sin(np.pi * x)
xs = np.linspace(0.0, 1.0, 101)
betas = [1e1, 1e2, 1e3, 1e4, 1e5]

u_d = solve_spectral(0.8, BoundarySpec.dirichlet(), u0, N=16).evaluate_grid(xs, [1.0])[:, 0]
profiles = {}
for b in betas:
    sol = solve_spectral(0.8, BoundarySpec.robin(b), u0, N=16)
    profiles[b] = sol.evaluate_grid(xs, [1.0])[:, 0]
    print(f"beta={b:8.0e}  sup|u_beta - u_D| = {np.abs(profiles[b] - u_d).max():.3e}"
          f"  tail bound {sol.truncation_bound(1.0):.1e}")

# sub-diffusive decay is much slower than the classical heat equation
classical = solve_spectral(1.0, BoundarySpec.dirichlet(), u0, N=1).evaluate(0.5, 1.0)
print("u_D(0.5, 1) for a=0.8:", u_d[50], " for a=1:", classical)

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots()
    for b, p in profiles.items():
        ax.plot(xs, p, label=f"beta={b:.0e}")
    ax.plot(xs, u_d, "k--", label="Dirichlet")
    ax.set_xlabel("x")
    ax.set_ylabel("u(x, 1)")
    ax.legend()
    fig.savefig("profiles.png", dpi=120)
    print("wrote profiles.png")
