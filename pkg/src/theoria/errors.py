"""Exception hierarchy shared across the kernel."""


class TheoriaError(Exception):
    """Base class for all kernel errors."""


class IncompatibleFactories(TheoriaError):
    """Two factories disagree on the signature of a shared extension name."""

    def __init__(self, name):
        super().__init__(f"incompatible factories: conflicting extension {name!r}")
        self.name = name


class DuplicateExtension(TheoriaError):
    def __init__(self, name):
        super().__init__(f"duplicate extension name {name!r}")
        self.name = name


class ArityMismatch(TheoriaError):
    pass


class KindMismatch(TheoriaError):
    """Predicate supplied where an expression was expected, or vice versa."""


class InvalidSignature(TheoriaError):
    pass


class FormulaSyntaxError(TheoriaError):
    def __init__(self, message, span=None):
        super().__init__(message if span is None else f"{message} at {span}")
        self.span = span


class UnknownOperator(FormulaSyntaxError):
    def __init__(self, name, span=None):
        super().__init__(f"unknown operator {name!r}", span)
        self.name = name


class TypingError(TheoriaError):
    def __init__(self, message, expected=None, found=None, span=None):
        super().__init__(message)
        self.expected = expected
        self.found = found
        self.span = span


class UnresolvedTypeParam(TypingError):
    pass


class InconsistentSpecialisation(TheoriaError):
    def __init__(self, var):
        super().__init__(f"specialisation inconsistent at variable {var!r}")
        self.var = var


class NotExpandable(TheoriaError):
    pass


class RuleNotApplicable(TheoriaError):
    pass


class InvalidPosition(TheoriaError):
    pass


class DirectionNotAllowed(TheoriaError):
    pass


class UnknownNode(TheoriaError):
    pass


class BudgetExceeded(TheoriaError):
    """Tactic step budget exhausted; partial progress is retained."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class CorruptProof(TheoriaError):
    pass
