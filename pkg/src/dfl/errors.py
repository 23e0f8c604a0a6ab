"""Exception hierarchy shared by every module."""


class DflError(Exception):
    """Base class for all library errors."""


class InputError(DflError, ValueError):
    """Malformed or unusable input (CLI exit code 2)."""


class DimensionMismatch(InputError):
    pass


class DuplicateSite(InputError):
    pass


class TooFewSites(InputError):
    pass


class AllCollinear(InputError):
    """Sites do not affinely span their ambient space."""


class TooManySites(InputError):
    pass


class HeightFieldMismatch(InputError):
    pass


class BadExponent(InputError):
    pass


class BadParams(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message, path=None, line=None, column=None):
        where = ":".join(str(x) for x in (path, line, column) if x is not None)
        super().__init__(f"{where}: {message}" if where else message)
        self.path = path
        self.line = line
        self.column = column


class DegenerateSimplex(DflError, ValueError):
    pass


class DegenerateTriangle(DegenerateSimplex):
    pass


class DegenerateTetrahedron(DegenerateSimplex):
    pass


class Degenerate(DflError, ValueError):
    """Configuration violates the general-position hypothesis."""


class DegenerateConfiguration(Degenerate):
    pass


class SelfIntersecting(DflError, ValueError):
    pass


class ZeroArea(DflError, ValueError):
    pass


class InvalidTriangulation(DflError, ValueError):
    pass


class NotInterior(DflError, ValueError):
    pass


class NotConvex(DflError, ValueError):
    pass


class SingleTriangulation(DflError, ValueError):
    pass


class LemmaViolation(DflError):
    """No radius ordering of the five admissible ones holds."""


class InvariantViolation(DflError, AssertionError):
    """An internal self-check failed; indicates a bug, never bad input."""
