"""Matrix-free Runge-Kutta time integration benchmarks.

Thin wrapper over the compiled extension: named tableaus (explicit,
singly-diagonally-implicit, Rosenbrock, Rosenbrock-W, Rosenbrock-Krylov),
adaptive and fixed-step drivers, and Arnoldi Ritz-value estimation, all
driven through problem presets (lorenz96, burgers).
"""

import json as _json

from ._rkbench import eigs, integrate, method_names, problem_names, tableau_json

__version__ = "0.1.0"

__all__ = [
    "eigs",
    "integrate",
    "method_names",
    "problem_names",
    "tableau",
    "tableau_json",
]


def tableau(name):
    """Coefficient dump of a registered tableau as a dict.

    Includes the order-condition residual at the claimed order, so callers
    can re-check the coefficients without trusting this package.
    """
    return _json.loads(tableau_json(name))
