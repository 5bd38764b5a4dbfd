"""Exception types shared across the package."""


class FanoperiodsError(Exception):
    """Base class for computation failures."""


class DimensionMismatchError(FanoperiodsError, ValueError):
    pass


class NonzeroConstantTermError(FanoperiodsError, ValueError):
    """The classical period is only stored for polynomials normalized to
    have zero constant term; inputs violating this are rejected rather
    than silently reparametrized."""


class ParseError(FanoperiodsError, ValueError):
    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where += str(path)
        if line is not None:
            where += ":%d" % line
        super().__init__(f"{where}: {message}" if where else message)


class NoOperatorFoundError(FanoperiodsError):
    """No annihilating operator exists within the configured bounds."""

    def __init__(self, message, frontier=()):
        super().__init__(message)
        self.frontier = tuple(frontier)


class AmbiguousFitError(FanoperiodsError):
    """More than one independent operator fits: the sequence is too short
    to pin down the minimal annihilator."""


class IrregularSingularityError(FanoperiodsError):
    """A local analysis hit an irregular singular point."""


class StabilizationError(FanoperiodsError):
    """Local solution-space dimensions did not agree between truncation
    margins."""


class AnsatzConflictError(FanoperiodsError):
    """Facet terms assign inconsistent coefficients to a shared lattice
    point."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point
