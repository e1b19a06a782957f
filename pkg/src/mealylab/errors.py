"""Exception types shared across the library."""


class MealyError(Exception):
    """Base class for every error raised by mealylab."""


class TableError(MealyError):
    """An automaton's output/transition tables are malformed (missing cell,
    duplicate cell, or a symbol outside the declared alphabet/state set)."""


class PropertyError(MealyError):
    """A required automaton property (invertible, reversible, bireversible)
    does not hold.  The message cites a concrete witness."""


class ConstructionError(MealyError):
    """The inputs of an automaton construction do not fit together."""


class ParseError(MealyError):
    """A text-format input is malformed."""

    def __init__(self, message, line=None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
        self.line = line


class CapError(MealyError):
    """A hard size cap (as opposed to a search budget) was exceeded."""


class CompatibilityError(MealyError):
    """An automaton/marked-group pair fails the compatibility check."""


class TorsionError(MealyError):
    """A distortion operation received a torsion element."""

    def __init__(self, message, order):
        super().__init__(message)
        self.order = order
