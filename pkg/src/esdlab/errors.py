"""Exception types shared across the package."""


class EsdlabError(Exception):
    """Base class for all esdlab errors."""


class DimensionError(EsdlabError, ValueError):
    """Matrix shape or dimension is unsupported for the operation."""


class UnsupportedSizeError(DimensionError):
    """Dimension exceeds the validated size limit of a kernel."""


class DomainError(EsdlabError, ValueError):
    """Input is outside the mathematical or validated domain."""


class DegenerateRootError(DomainError):
    """Parameter choice produces a degenerate (double) root with no limit formula."""


class NoDecayError(DomainError):
    """Channel has no decaying direction, so no ESD time exists."""


class SingularParameterError(DomainError):
    """Parameter combination makes a model coefficient singular."""
