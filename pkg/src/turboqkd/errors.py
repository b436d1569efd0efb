class ConfigError(ValueError):
    """Invalid code or sweep configuration."""


class ProtocolError(RuntimeError):
    """The protocol cannot proceed with the data at hand (key too short, channel unusable)."""
