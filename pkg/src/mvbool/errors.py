"""Exception hierarchy for mvbool."""


class MvboolError(Exception):
    """Base class for all errors raised by this package."""


class StateOutOfRange(MvboolError, ValueError):
    """A state has the wrong length or a coordinate outside its range."""


class BudgetExceeded(MvboolError):
    """A state space or pair scan is larger than the configured budget."""


class SpaceMismatch(MvboolError, ValueError):
    """Two objects that must share a state space do not."""


class NonAdmissibleState(MvboolError, ValueError):
    """A Boolean state outside the admissible region was used where one is required."""


class PartialMapNotSupported(MvboolError, TypeError):
    """An operation needs a total map but received an admissible-only conversion."""


class EmptySet(MvboolError, ValueError):
    pass


class IdenticalStates(MvboolError, ValueError):
    pass


class CycleBudgetExceeded(MvboolError):
    """Elementary cycle enumeration produced more cycles than allowed."""


class UnknownExample(MvboolError, KeyError):
    pass


class UnknownStatement(MvboolError, KeyError):
    pass


class NetworkParseError(MvboolError, ValueError):
    """Syntax or validation error in a network document.

    ``line`` and ``column`` are 1-based; ``column`` may be ``None`` when the
    error concerns a whole line or the whole document.
    """

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
