"""Error types shared across the package.

The CLI maps these onto exit codes: ConfigError -> 2, DataError -> 3,
anything else -> 4.
"""


class ConfigError(ValueError):
    """Invalid configuration value (flags, parameters, scene specs)."""


class DataError(ValueError):
    """Invalid input data (frame shapes, on-disk sequences, value ranges)."""


class SequenceFormatError(DataError):
    """An on-disk sequence violates the layout contract; names the file."""
