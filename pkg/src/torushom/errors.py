"""Exception types shared across the package."""


class TorushomError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(TorushomError):
    """Structural data (poset, corner complex, fixture file) is malformed."""


class StarConditionError(TorushomError):
    """A characteristic matrix fails the minor condition required for a
    well-defined quotient manifold."""


class CoefficientError(TorushomError):
    """An operation was asked to run over a coefficient system it does not
    support (for example field-only linear algebra over the integers)."""


class UnresolvableError(TorushomError):
    """An intersection product could not be resolved with the supplied
    geometric data; carries a human-readable reason."""

    def __init__(self, reason):
        super().__init__(reason)
        self.reason = reason


class DegreeOverflowError(TorushomError):
    """A product of face classes was requested whose combined corank exceeds
    the dimension of the quotient, so the result has no grading slot."""


class MismatchedDatumError(TorushomError):
    """A bordism datum was applied to a term it does not describe (wrong
    source class, or a torus word the datum has no row for)."""
