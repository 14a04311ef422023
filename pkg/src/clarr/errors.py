"""Exception hierarchy.

The CLI maps these onto exit codes, so every failure a user can trigger has its
own class.
"""


class ClarrError(Exception):
    """Base class for all library errors."""


class MixedExtension(ClarrError, ArithmeticError):
    """Arithmetic between elements of two different quadratic fields."""


class RangeError(ClarrError, ValueError):
    pass


class SchemaError(ClarrError, ValueError):
    """Malformed scene file or inline component."""


class ParseError(SchemaError):
    pass


class NotReduced(ClarrError, ValueError):
    pass


class SingularConic(ClarrError, ValueError):
    pass


class EmptyCurve(ClarrError, ValueError):
    pass


class UnknownId(ClarrError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its message otherwise
        return str(self.args[0]) if self.args else ""


class LastComponent(ClarrError, ValueError):
    pass


class NotALine(ClarrError, ValueError):
    pass


class NotAConic(ClarrError, ValueError):
    pass


class UnrepresentablePoint(ClarrError):
    """An intersection point needs more than one quadratic extension of Q."""


class MissingSingularData(ClarrError, ValueError):
    pass


class NotFiniteColength(ClarrError):
    pass


class ParityError(ClarrError, ValueError):
    pass


class StabilizationFailure(ClarrError):
    pass


class IdentityViolated(ClarrError, AssertionError):
    """An exact identity that must hold on every curve failed."""


class NotFree(ClarrError, ValueError):
    pass
