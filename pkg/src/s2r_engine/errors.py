"""Exception types shared across the engine."""


class S2REngineError(Exception):
    """Base class for all engine errors."""


class AppSpecError(S2REngineError):
    """Malformed or inconsistent app specification document."""


class UnknownScreenError(S2REngineError):
    """A screen reference does not resolve in the GUI model."""


class TraceFormatError(S2REngineError):
    """A trace file line cannot be parsed."""


class ExplorationBudgetError(S2REngineError):
    """Dynamic exploration exceeded its step cap."""


class ModelFormatError(S2REngineError):
    """A persisted model artifact has the wrong format or version."""


class SelectionError(S2REngineError):
    """Model selection could not find any config with a correct suggestion."""


class VectorFormatError(S2REngineError):
    """A word-vector file is empty or dimensionally inconsistent."""


class UndecodableTokenError(S2REngineError):
    """A prediction-model token does not resolve to a GUI model entry."""
