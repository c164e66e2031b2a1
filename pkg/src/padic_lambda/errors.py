"""Exception hierarchy shared by all modules.

Each class carries an ``exit_code`` used by the command line front end.
"""


class PadicError(Exception):
    exit_code = 1


class BadParameter(PadicError, ValueError):
    exit_code = 2


class NotPrime(BadParameter):
    pass


class OutOfDomain(BadParameter):
    pass


class NotARoot(BadParameter):
    pass


class NotSimpleRoot(BadParameter):
    pass


class PadicZeroDivision(PadicError, ZeroDivisionError):
    exit_code = 2


class PoleHit(PadicZeroDivision):
    """A rational map was evaluated where its denominator vanishes."""


class NotFixed(BadParameter):
    pass


class IdenticalPrefix(BadParameter):
    pass


class RegimeViolation(PadicError):
    exit_code = 3

    def __init__(self, failed):
        if isinstance(failed, str):
            failed = [failed]
        self.failed = list(failed)
        super().__init__("regime hypotheses failed: " + "; ".join(self.failed))


class ZeroPartition(PadicError):
    exit_code = 4


class BadField(ZeroPartition):
    pass


class PrecisionExhausted(PadicError, ArithmeticError):
    exit_code = 5


class EnumerationGuard(PadicError):
    exit_code = 6


class RegimeWarning(UserWarning):
    """Issued when a map is built outside the parameter range it was studied in."""
