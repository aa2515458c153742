"""Exception hierarchy shared by every module of the package."""


class PdemError(Exception):
    """Base class for all errors raised by pdem_scatter."""


# special functions
class DomainError(PdemError, ValueError):
    """Argument outside the supported evaluation regime."""


class DegenerateParameter(DomainError):
    """Lower series parameter is zero or a negative integer."""


class DegenerateC(DegenerateParameter):
    pass


class DegenerateB(DegenerateParameter):
    pass


class BranchError(DomainError):
    """Evaluation at the branch point of a multivalued prefactor."""


class NoConvergence(PdemError, ArithmeticError):
    """A series did not reach its tolerance within the term budget."""


# physics preconditions
class EvanescentChannel(PdemError, ValueError):
    """Energy at or below an asymptotic potential level."""


class NotScattering(PdemError, ValueError):
    """Energy outside the scattering regime of the analytic solution."""


class ImaginaryLambda1(PdemError, ValueError):
    """Barrier with 2 m0 V0 <= 1; only the numerical oracle applies."""


class SingularSystem(PdemError, ArithmeticError):
    """Matching system too ill-conditioned to trust."""


class StepTooCoarse(PdemError, ArithmeticError):
    """RK4 half-step comparison exceeded its tolerance."""


# configuration
class ConfigError(PdemError, ValueError):
    def __init__(self, key, message, line=None):
        self.key = key
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{key}: {message}{where}")


class UnknownKey(ConfigError):
    pass


class MissingRequired(ConfigError):
    def __init__(self, key, message="required value missing", line=None):
        super().__init__(key, message, line)


class ParseError(ConfigError):
    pass
