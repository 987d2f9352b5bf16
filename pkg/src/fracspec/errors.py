"""Exception hierarchy.

Every numerical failure raised by the library derives from
:class:`NumericalError`, so callers (the CLI in particular) can tell them
apart from plain argument validation errors, which are ``ValueError``.
"""


class NumericalError(RuntimeError):
    """Base class for failures of a numerical procedure."""


class NonConvergence(NumericalError):
    """A series did not meet its stopping rule within the term cap."""


class QuadratureFailure(NumericalError):
    """Adaptive quadrature exhausted its refinement budget."""


class BracketFailure(NumericalError):
    """No sign change was found in a root bracket."""


class ToleranceNotReached(NumericalError):
    """A root iteration ran out of steps before meeting its tolerance."""


class SingularSystem(NumericalError):
    """A linear solve broke down."""
