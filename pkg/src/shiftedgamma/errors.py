"""Exception hierarchy shared by all modules."""


class ShiftedGammaError(Exception):
    """Base class for all library errors."""


class PoleError(ShiftedGammaError):
    """A gamma factor was evaluated at (or too close to) a nonpositive integer."""


class NoContourError(ShiftedGammaError):
    """No vertical line separates the left and right pole families."""


class DivergenceError(ShiftedGammaError):
    """Contour integrand failed to decay; tail truncation cannot converge."""


class StripError(ShiftedGammaError):
    """Transform evaluated outside its strip of analyticity."""


class BranchCutError(ShiftedGammaError):
    """A complex power hit the principal branch cut."""


class ParameterError(ShiftedGammaError):
    """Structurally invalid parameters for a special-function constructor."""


class DomainError(ShiftedGammaError):
    """Argument outside the mathematical domain of the operation."""


class InversionQualityError(ShiftedGammaError):
    """Numerical inversion produced values inconsistent with a density."""


class ConfigError(ShiftedGammaError):
    """Invalid CLI/job configuration; carries a field diagnostic."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"config field '{field}': {message}")
