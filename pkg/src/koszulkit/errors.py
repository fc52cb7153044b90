"""Exception hierarchy shared by every module."""


class KoszulkitError(Exception):
    """Base class for all library errors."""


class ParseError(KoszulkitError, ValueError):
    """Malformed input text. ``pos`` is the 0-based offset of the problem, if known."""

    def __init__(self, message, pos=None, text=None):
        self.pos = pos
        self.text = text
        self.message = message
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)


class ConstructionError(KoszulkitError, ValueError):
    """A value violates the invariants of its type (composite modulus, bad shape, ...)."""


class HypothesisError(KoszulkitError):
    """An input violates a hypothesis needed by an analysis step.

    ``hypothesis`` names the mathematical condition that failed so reports can cite it.
    """

    def __init__(self, message, hypothesis=None):
        self.hypothesis = hypothesis
        if hypothesis:
            message = f"{message} [hypothesis: {hypothesis}]"
        super().__init__(message)
