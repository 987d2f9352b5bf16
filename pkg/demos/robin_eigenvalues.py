"""
Robin eigenvalues approaching the Dirichlet spectrum
====================================================

For -u'' = lam u on [0, 1] with -u'(0) + beta u(0) = 0 and
u'(1) + beta u(1) = 0, the k-th eigenvalue sits in ((k-1)^2 pi^2, k^2 pi^2)
and climbs to k^2 pi^2 as beta grows.  The gap shrinks like 1/beta.
"""

import math

from fracspec import check_gap_bound, eigen_gap_table, robin_eigs

betas = [1e2, 1e3, 1e4, 1e5, 1e6]
report = eigen_gap_table(betas, 5)

print(" k " + "".join(f"{b:>22.0e}" for b in betas) + "           k^2 pi^2")
for k in range(1, 6):
    row = [r for r in report.eigen_rows if r.k == k]
    print(f"{k:2d} " + "".join(f"{r.lam_robin:22.15f}" for r in row)
          + f"{(k * math.pi) ** 2:22.15f}")

# gap * sqrt(beta) / lam_D^2 stays bounded
check = check_gap_bound(report)
print("gaps positive:", check.passes, " decreasing:", check.gaps_decreasing,
      " C1 estimate:", check.c1_hat)

# eigenfunctions are normalized and satisfy the boundary condition
psi = robin_eigs(10.0, 2)[1]
print("psi_2(0) =", psi(0.0), " psi_2'(0)/beta =", psi.derivative(0.0) / 10.0)
