"""Exception types raised by the package."""


class PuBoundsError(Exception):
    """Base class for all errors raised by pubounds."""


class EmptyInput(PuBoundsError):
    """No examples were supplied."""


class InvalidScore(PuBoundsError):
    """A score is NaN or infinite."""

    def __init__(self, index: int, value: float):
        self.index = index
        self.value = value
        super().__init__(f"non-finite score {value!r} at source index {index}")


class EmptySet(PuBoundsError):
    """A selector matched no examples."""


class RankOutOfRange(PuBoundsError):
    """Rank outside 0..n."""


class NoNegatives(PuBoundsError):
    """The positive set covers the whole ranking, so FPR is undefined."""


class InsufficientPositives(PuBoundsError):
    """Too few known positives for the requested operation."""


class InsufficientNegatives(PuBoundsError):
    """Too few known negatives for the requested operation."""


class InvalidLevel(PuBoundsError):
    """Confidence level outside (0, 1)."""


class InfeasibleBeta(PuBoundsError):
    """The implied surrogate-positive count exceeds the unlabeled set."""


class InternalInconsistency(PuBoundsError):
    """A contingency-table entry came out negative; a precondition was violated."""


class DegenerateCurve(PuBoundsError):
    """Curve or AUC undefined (no positives or no negatives)."""


class OracleTooLarge(PuBoundsError):
    """Instance exceeds the brute-force enumeration guard."""


class InvalidConfig(PuBoundsError):
    """Bad synthetic-data configuration."""


class IncomparableModels(PuBoundsError):
    """Model rankings are not over the same example set."""


class MalformedInput(PuBoundsError):
    """A score file could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
