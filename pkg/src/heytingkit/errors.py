"""Exception hierarchy shared by every module."""


class HeytingError(Exception):
    """Base class for all errors raised by heytingkit."""


class NotAPartialOrder(HeytingError):
    pass


class NotALattice(HeytingError):
    pass


class NotDistributive(HeytingError):
    def __init__(self, message, triple=None):
        super().__init__(message)
        self.triple = triple


class NoRelativePseudoComplement(HeytingError):
    pass


class InvalidEmbedding(HeytingError):
    pass


class PreconditionViolated(HeytingError):
    pass


class IdentityViolation(HeytingError):
    """An identity that must hold by construction failed; indicates a bug."""


class InvalidEPair(HeytingError):
    pass


class InvalidTilde(HeytingError):
    pass


class IncompatibleTau(HeytingError):
    pass


class NotPacked(HeytingError):
    pass


class NotEPair(HeytingError):
    pass


class UnboundVariable(HeytingError):
    pass


class MissingInterpretation(HeytingError):
    pass


class BudgetExceeded(HeytingError):
    def __init__(self, message, attempted=None, budget=None):
        super().__init__(message)
        self.attempted = attempted
        self.budget = budget


class NoEligibleGamma(HeytingError):
    pass


class FormulaSyntaxError(HeytingError, ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class FormatError(HeytingError):
    def __init__(self, message, line=None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class DerivationError(HeytingError):
    """A derivation failed to check; ``diagnostics`` lists the bad steps."""

    def __init__(self, message, diagnostics=()):
        super().__init__(message)
        self.diagnostics = list(diagnostics)
