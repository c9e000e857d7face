"""Exception and warning types shared across the package."""


class EggbeaterError(Exception):
    """Base class for all package-specific errors."""


class WordSyntaxError(EggbeaterError, ValueError):
    """A word literal failed to parse; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NoRootError(EggbeaterError, ValueError):
    """The profile equation r*rho(|r|) = c has no root for this c."""


class IllConditionedWarning(UserWarning):
    """Requested value sits close to the branch merge of the profile."""


class SingularJacobianError(EggbeaterError, RuntimeError):
    """Newton linearization was numerically singular."""


class EscapedBoxError(EggbeaterError, RuntimeError):
    """A solver iterate left the doubled localization box."""


class NonConvergenceError(EggbeaterError, RuntimeError):
    """Iteration budget exhausted before the residual tolerance was met."""


class NonRegularCrossingError(EggbeaterError, RuntimeError):
    """Crossing form is degenerate on the kernel (or the kernel is not
    isolated), so the crossing-number recipe does not apply."""


class SignConditionError(EggbeaterError, RuntimeError):
    """A signature condition required by a concatenation step failed.

    Carries the observed signature so callers can report it.
    """

    def __init__(self, message: str, observed: int):
        super().__init__(f"{message}; observed signature {observed}")
        self.observed = observed


class ConcatPreconditionError(EggbeaterError, ValueError):
    """An endpoint matrix violated a concatenation precondition."""


class ConfigError(EggbeaterError, ValueError):
    """Run configuration is malformed or inconsistent."""
