"""Exception types shared across the package."""

from __future__ import annotations


class BorderlineError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(BorderlineError):
    """Invalid run configuration. `field` names the offending key path."""

    def __init__(self, message: str, field: str | None = None):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


class CompressorError(BorderlineError):
    """The NCD compressor backend failed or is unknown."""


class EmptySetError(BorderlineError):
    """A set operation received an empty test set where members are required."""


class MissingRowError(BorderlineError):
    """A verdict was requested from a report lacking the mvs_vs_mis comparison."""


class GenerationStall(BorderlineError):
    """Step 1 kept selecting candidates already present in the test set."""


class GeneratorValidityError(BorderlineError):
    """A generator emitted a string its paired oracle rejects."""


class SerializationError(BorderlineError):
    """A structured value contains something the target syntax cannot represent."""


class ReplayError(BorderlineError):
    """A recorded choice trace does not match the generator's choice sequence."""


class OracleError(BorderlineError):
    """A validity oracle could not evaluate at all (e.g. command failed to launch)."""


class NoSwitchFound(BorderlineError):
    """A boundary walk ran out of budget before the next validity flip.

    Carries the partial pair collected so far; callers may keep or discard it.
    """

    def __init__(self, message: str, partial_pair=None):
        self.partial_pair = partial_pair
        super().__init__(message)
