"""Exception types shared across the package."""


class ConvergenceError(RuntimeError):
    """A numerical routine failed to reach its requested tolerance."""


class TruncationError(ConvergenceError):
    """The Fock-space truncation is too small for the requested tolerance."""


class ResourceLimitError(ConvergenceError):
    """Refinement hit the configured size ceiling before converging."""


class NegativeMomentError(ConvergenceError):
    """The moment recurrence produced negative values.

    Signals a truncation that is far too small or a parameter regime where
    the closed recurrence is not a valid description of the steady state.
    """


class SingularSystemError(ConvergenceError):
    """The constrained steady-state linear system could not be solved."""


class MomentInversionError(ConvergenceError):
    """Factorial-moment inversion lost too many digits to cancellation."""
