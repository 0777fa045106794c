"""Exception hierarchy shared by all srk modules."""


class SrkError(Exception):
    """Base class for every error raised by srk."""


class QuaternionZeroDivision(SrkError, ZeroDivisionError):
    pass


class OutOfDomain(SrkError):
    pass


class SingularPoint(SrkError):
    pass


class SingularExpansion(SrkError):
    pass


class NotOrthogonal(SrkError):
    pass


class InvalidParameter(SrkError, ValueError):
    pass


class PoleAtMinusOne(SrkError):
    pass


class Diverging(SrkError):
    """A boundary quotient grew past the divergence threshold (alpha = infinity)."""


class Inconsistent(SrkError):
    """Independent limit estimates disagree by more than the configured tolerance."""


class PreconditionFailed(SrkError):
    pass


class NotBoundaryUnimodular(SrkError):
    pass


class AllZero(SrkError):
    pass


class ParseError(SrkError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")


class ValidationError(SrkError, ValueError):
    pass
