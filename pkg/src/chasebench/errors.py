"""Exception types shared across the package."""


class GameFormatError(ValueError):
    """Raised when scgame text cannot be parsed."""


class StreamFormatError(ValueError):
    """Raised when graphstream text cannot be parsed."""


class InfeasibleParametersError(ValueError):
    """Raised when a reduction parameter schedule admits no valid width."""


class ProtocolError(RuntimeError):
    """Raised on malformed schedules or malformed strategy messages."""
