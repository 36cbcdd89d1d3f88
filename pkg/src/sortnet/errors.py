"""Exception hierarchy shared by all modules."""


class SortnetError(Exception):
    """Base class for package errors."""


class DomainError(SortnetError, ValueError):
    """An argument lies outside the domain of the operation."""


class TableauError(SortnetError, ValueError):
    """A tableau, network or point configuration violates its invariants."""


class AdmissibilityError(TableauError):
    """A tableau is not (graded) EG-admissible at the requested level."""


class WindowError(SortnetError, ValueError):
    """No empty bounding columns could be found for a local window."""


class ContourError(SortnetError, ValueError):
    """Contour parameters violate the configuration invariants."""


class NumericalError(SortnetError, ArithmeticError):
    """A numerical routine failed its own accuracy check."""
