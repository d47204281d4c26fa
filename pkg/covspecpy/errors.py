class CovspecError(ValueError):
    pass


class InvalidGraph(CovspecError):
    pass


class UnknownVertex(CovspecError):
    pass


class EnumerationCapExceeded(CovspecError):
    pass


class CosetBudgetExceeded(CovspecError):
    pass


class UnresolvedQuotient(CovspecError):
    pass


class LoopOutsideBall(CovspecError):
    pass


class MalformedGrid(CovspecError):
    pass


class InvalidHomotopy(CovspecError):
    pass


class DeckTransformationError(CovspecError):
    pass


class ParameterError(CovspecError):
    pass


class PreconditionError(CovspecError):
    pass


class VerificationError(CovspecError):
    def __init__(self, message, transcript=None):
        super().__init__(message)
        self.transcript = list(transcript or [])


class MalformedFile(CovspecError):
    pass
