"""Exception and warning types shared across the package."""


class HeunBesselError(Exception):
    """Base class for errors raised by this package."""


class ValidityError(HeunBesselError, ValueError):
    """Parameters violate a solution set's restriction."""


class BranchError(HeunBesselError, ValueError):
    """A prefactor needs a non-integer power of a negative real and no branch was chosen."""


class ConvergenceError(HeunBesselError, RuntimeError):
    """An iterative evaluation did not settle within its budget."""


class ToleranceError(HeunBesselError, RuntimeError):
    """A computed quantity failed a self-consistency check."""


class DomainWarning(UserWarning):
    """A series was evaluated outside its classified convergence domain."""


class SymmetrizationWarning(UserWarning):
    """A tridiagonal problem could not be symmetrized; realness is not guaranteed."""
