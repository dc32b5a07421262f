"""Bessel-function series for the reduced confluent Heun equation.

    z(z - z0) U'' + (B1 + B2 z) U' + [B3 + q(z - z0)] U = 0

Submodules:

- ``specfun``: Bessel, Hankel, Jacobi and Legendre functions
- ``che``: parameters, the eight solution sets, recurrences, evaluation
- ``spectral``: continued fractions, truncated matrices, Bender-Dunne polynomials
- ``convergence``: tail ratios and convergence domains
- ``inverted``, ``dipole``, ``mathieu``: worked problems
- ``cli``: command-line front end
"""

from .che import CheParams, RecurrenceForm, SolutionSet, coefficients, evaluate_solution, transform, validity
from .errors import (
    BranchError,
    ConvergenceError,
    DomainWarning,
    HeunBesselError,
    SymmetrizationWarning,
    ToleranceError,
    ValidityError,
)
from .specfun import BesselKind

__version__ = "0.1.0"

__all__ = [
    "BesselKind",
    "BranchError",
    "CheParams",
    "ConvergenceError",
    "DomainWarning",
    "HeunBesselError",
    "RecurrenceForm",
    "SolutionSet",
    "SymmetrizationWarning",
    "ToleranceError",
    "ValidityError",
    "coefficients",
    "evaluate_solution",
    "transform",
    "validity",
]
