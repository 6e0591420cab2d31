"""Exception hierarchy shared by the numeric modules and the CLI."""


class CosmoEntropyError(Exception):
    """Base class for every error raised by this package."""


class DomainError(CosmoEntropyError, ValueError):
    """An argument lies outside the domain of the operation."""


class DegenerateInputError(DomainError):
    """The inputs make the requested quantity undefined (e.g. k = m = 0)."""


class SpecFunError(CosmoEntropyError):
    """Failure inside the special-function kernel."""


class PoleError(SpecFunError, DomainError):
    """Gamma evaluated at a non-positive integer."""


class ConvergenceError(SpecFunError):
    """A series did not converge within the configured number of terms."""


class GammaOverflowError(SpecFunError, OverflowError):
    """Result magnitude exceeds the double-precision range."""


class NumericalError(CosmoEntropyError):
    """A computed value violates an invariant beyond round-off."""


class OracleError(CosmoEntropyError):
    """Base class for mode-equation integration failures."""


class StepLimitExceeded(OracleError):
    pass


class StiffnessError(OracleError):
    """The adaptive step collapsed below the resolvable size."""


class SingularSystem(OracleError):
    pass


class NotUnimodal(CosmoEntropyError):
    """Maximum of the scanned quantity sits at an end of the search range."""
