"""Spectral solutions of the time-fractional diffusion equation on [0, 1].

Dirichlet and Robin boundary conditions, with tools to check how Robin
eigenvalues, eigenfunctions and solutions approach their Dirichlet limits
as the Robin coefficient grows.
"""

from .convergence import (ConvergenceReport, check_gap_bound, eigen_gap_table,
                          eigenfunction_l2_convergence, solution_convergence)
from .eigen import (BoundaryKind, BoundarySpec, EigenPair, dirichlet_eigs,
                    eigenfunction_deriv, eigenfunction_eval, eigenpairs, robin_char,
                    robin_eigs)
from .errors import (BracketFailure, NonConvergence, NumericalError, QuadratureFailure,
                     SingularSystem, ToleranceNotReached)
from .mlf import MLQuery, ml, ml_integral, ml_series
from .oracle import GridSolution, caputo_l1, fd_solve
from .quadrature import Integrand, bilinear_a, bilinear_a_beta, inner_product, project
from .solver import SpectralSolution, evaluate, evaluate_grid, solve_spectral, truncation_bound

__version__ = "0.1.0"
