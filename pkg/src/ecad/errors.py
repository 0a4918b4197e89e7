class ECADError(Exception):
    pass


class ParseError(ECADError, ValueError):
    def __init__(self, message, text=None, pos=None):
        self.text = text
        self.pos = pos
        if pos is not None:
            message = f"{message} at position {pos}"
            if text is not None:
                message += f"\n  {text}\n  {' ' * pos}^"
        super().__init__(message)


class UnknownVariableError(ParseError):
    """A name outside the variable order (position set when parsing)."""


class NotDivisibleError(ECADError, ArithmeticError):
    pass


class InvalidDesignationError(ECADError, ValueError):
    pass


class DegenerateTowerError(ECADError):
    """A norm computation hit a conjugate that nullifies the polynomial at a
    level the splitting strategy cannot repair."""


class Nullified(ECADError):
    """A lifting polynomial vanishes identically over a lifting cell."""

    def __init__(self, level, poly, cell_index):
        self.level = level
        self.poly = poly
        self.cell_index = tuple(cell_index)
        super().__init__(
            f"{poly} nullified over cell {list(self.cell_index)} (lifting to level {level})")
