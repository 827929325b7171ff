"""Exception hierarchy shared by the evaluators and the CLI."""


class BesselIntError(Exception):
    """Base class for all package errors."""


class DomainError(BesselIntError, ValueError):
    """An argument lies outside the domain of the requested function."""


class FormulaInapplicable(BesselIntError):
    """The closed form exists only for a weighted quantity that vanishes here."""


class NoAdmissibleReduction(FormulaInapplicable):
    """No pairing/bridge order lets a four-function integral be split."""


class DivergenceError(BesselIntError, ArithmeticError):
    """Panel contributions do not decay: divergent or non-oscillatory tail."""


class EvaluationError(BesselIntError, ArithmeticError):
    """The integrand produced a non-finite value."""

    def __init__(self, message, where=None):
        super().__init__(message)
        self.where = where
