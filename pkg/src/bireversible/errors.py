"""Exception hierarchy shared by every module of the package."""


class BireversibleError(ValueError):
    """Base class for all errors raised by this package."""


class OutOfRangeEntry(BireversibleError):
    def __init__(self, cell, table, value):
        self.cell = cell
        self.table = table
        self.value = value
        super().__init__(f"{table}{cell} = {value!r} is out of range")


class MissingEntry(BireversibleError):
    def __init__(self, cell, table):
        self.cell = cell
        self.table = table
        super().__init__(f"{table}{cell} is missing")


class NotInvertible(BireversibleError):
    pass


class NotReversible(BireversibleError):
    pass


class NotBireversible(BireversibleError):
    pass


class SizeMismatch(BireversibleError):
    pass


class NotReduced(BireversibleError):
    pass


class NotDirected(BireversibleError):
    pass


class NotVHT(BireversibleError):
    pass


class MinimalLinkViolated(BireversibleError):
    def __init__(self, pair, count):
        self.pair = pair
        self.count = count
        super().__init__(f"germ pair {pair} lies on {count} squares, expected exactly 1")


class MalformedSquare(BireversibleError):
    pass


class BadPrime(BireversibleError):
    pass


class NoSolution(BireversibleError):
    pass


class MultipleSolutions(BireversibleError):
    def __init__(self, cell, solutions):
        self.cell = cell
        self.solutions = solutions
        super().__init__(f"cell {cell} has {len(solutions)} solutions")


class PairingInvalid(BireversibleError):
    pass


class ResourceLimit(BireversibleError):
    pass


class FormatError(BireversibleError):
    """Syntax error in a text file, with 1-based line and column."""

    def __init__(self, message, line, column, source="<input>"):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        super().__init__(f"{source}:{line}:{column}: {message}")
