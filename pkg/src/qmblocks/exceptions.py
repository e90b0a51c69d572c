class QMBlocksError(Exception):
    """Base class for all errors raised by this package."""


class StructuralError(QMBlocksError, ValueError):
    """Malformed partition, ground set or system."""


class PreconditionError(QMBlocksError, ValueError):
    pass


class DuplicatePartitionError(QMBlocksError, ValueError):
    pass


class AlignmentParseError(QMBlocksError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class BudgetExceededError(QMBlocksError, RuntimeError):
    """The explicit quasi-median graph would exceed the vertex budget."""


class InternalInvariantError(QMBlocksError, AssertionError):
    """A state that the decomposition theory rules out was reached."""
