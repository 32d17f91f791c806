"""Exception types shared across the engine."""


class SchemaError(ValueError):
    """Input file header/shape does not match the expected schema."""


class ConfigurationError(LookupError):
    """A referenced configuration entry (e.g. fare schedule) is missing."""


class RoutingError(RuntimeError):
    """A router failed to produce a leg; carries which leg failed."""

    def __init__(self, leg: str, message: str = ""):
        self.leg = leg
        super().__init__(message or f"routing failed on {leg} leg")
