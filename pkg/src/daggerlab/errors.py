"""Exception hierarchy shared by every daggerlab module."""


class DaggerLabError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(DaggerLabError, ValueError):
    pass


class BackendMismatch(DaggerLabError, ValueError):
    pass


class NotInverse(DaggerLabError):
    pass


class InvalidGroupoid(DaggerLabError, ValueError):
    pass


class NotGroupoidForm(DaggerLabError):
    pass


class TooLarge(DaggerLabError):
    pass


class NotUnitary(DaggerLabError, ValueError):
    pass


class NotFrobenius(DaggerLabError):
    pass


class NotFEM(DaggerLabError):
    pass


class NotUnitaryRep(DaggerLabError, ValueError):
    pass


class NotCommutative(DaggerLabError):
    pass


class TrivialGroup(DaggerLabError, ValueError):
    pass


class ParseError(DaggerLabError, ValueError):
    pass


class SchemaError(DaggerLabError, ValueError):
    pass


class BadParams(DaggerLabError, ValueError):
    pass
