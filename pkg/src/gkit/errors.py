"""Exception hierarchy.

Validation problems are reported as data (see :class:`gkit.common.ValidationReport`);
exceptions are reserved for malformed inputs and violated preconditions.
"""


class GkitError(Exception):
    """Base class for every error raised by gkit."""


class MalformedParams(GkitError, ValueError):
    pass


class UnknownObject(GkitError, KeyError):
    pass


class UnknownElement(GkitError, KeyError):
    pass


class InvalidAction(GkitError, ValueError):
    pass


class InvalidBiset(GkitError, ValueError):
    pass


class InvalidMorphism(GkitError, ValueError):
    pass


class InvalidSubgroupoid(GkitError, ValueError):
    pass


class NotBijective(GkitError, ValueError):
    pass


class NotInvariantSubset(GkitError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotProductGroupoid(GkitError, ValueError):
    pass


class NotInCarrier(GkitError, KeyError):
    pass


class MiddleGroupoidMismatch(GkitError, ValueError):
    pass


class DoesNotCoequalize(GkitError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class MiddleNotOneObject(GkitError, ValueError):
    pass


class EndpointMismatch(GkitError, ValueError):
    pass


class NotWide(GkitError, ValueError):
    pass


class GroupoidMismatch(GkitError, ValueError):
    pass


class UnsupportedFormat(GkitError, ValueError):
    pass


class ParseError(GkitError):
    """Problem in instance-file text; carries a 1-based line/column."""

    def __init__(self, message, line=0, column=0, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        where = f"{line}:{column}: " if line else ""
        if expected:
            message = f"{message} (expected {', '.join(expected)})"
        super().__init__(where + message)


class DSLSyntaxError(ParseError):
    pass


class DuplicateName(ParseError):
    pass


class UnresolvedReference(ParseError):
    pass


class ArityError(ParseError):
    pass
