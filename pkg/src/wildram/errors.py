"""Exception hierarchy.

The three base classes map onto the CLI exit codes: ``ParseError`` (2),
``PreconditionError`` (3) and ``InvariantError`` (4).
"""


class WildramError(Exception):
    pass


class ParseError(WildramError, ValueError):
    pass


class PreconditionError(WildramError, ValueError):
    pass


class InvariantError(WildramError, RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""


class CharacteristicMismatch(PreconditionError):
    pass


class UnregisteredUnit(PreconditionError):
    pass


class TameInput(PreconditionError):
    pass


class DegenerateForm(PreconditionError):
    pass


class TruncationInstability(PreconditionError):
    pass


class NonStratifiable(PreconditionError):
    pass


class InvalidGroupoid(PreconditionError):
    pass


class NotMultiplicative(PreconditionError):
    pass


class NonLinearForm(InvariantError):
    pass


class IntegralityViolation(InvariantError):
    pass
