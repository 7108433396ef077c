"""Exception and warning types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class ValidityError(ValueError):
    """Inputs are outside the validity region of a method or parametrization
    (asymptotic expansion requested where it diverges, fugacity path with
    beta = 0 and alpha <= -1, and so on)."""


class SizeError(ValueError):
    """A computation was requested beyond its supported size budget."""


class GridError(ValueError):
    """An evaluation grid is empty, unordered, or otherwise degenerate."""


class PrecisionWarning(UserWarning):
    """Estimated truncation error of an asymptotic evaluation exceeds the
    advertised target.  Results are still returned."""
