"""Exception hierarchy shared by all pipeclimber modules.

Three families matter for the CLI exit codes: configuration problems
(bad scenario files, unknown pipe sizes), simulation problems (physical
limits or solver failures hit while running), and plain I/O failures.
"""


class PipeClimberError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(PipeClimberError):
    """Scenario/definition problems detectable before a simulation runs."""


class ParseError(ConfigError):
    """Scenario file is not well-formed (carries a line number when known)."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"{message} (line {line})"
        super().__init__(message)
        self.line = line


class ValidationError(ConfigError):
    """A scenario value violates an invariant; names the offending key path."""

    def __init__(self, message, path=None):
        if path is not None:
            message = f"{path}: {message}"
        super().__init__(message)
        self.path = path


class UnknownSize(ConfigError):
    """Pipe designator/schedule pair not present in the dimension table."""


class EmptyNetwork(ConfigError):
    """A pipe network needs at least one segment."""


class BadSegment(ConfigError):
    """A segment specification violates its invariants."""

    def __init__(self, message, index=None):
        if index is not None:
            message = f"segment {index}: {message}"
        super().__init__(message)
        self.index = index


class SimulationError(PipeClimberError):
    """Physical limit or solver failure encountered while simulating."""


class NonMonotoneLoad(SimulationError):
    """Load curve is not strictly increasing; its inverse is undefined."""


class NoBracket(SimulationError):
    """Root finder could not bracket the common torque."""


class InconsistentOutputs(SimulationError):
    """Output speeds violate the speed-averaging constraint of the gear train."""


class DegenerateBend(SimulationError):
    """Bend radius does not exceed the track contact radius."""


class CompressionLimit(SimulationError):
    """Required spring compression exceeds the per-module maximum."""


class AsymmetryLimit(SimulationError):
    """Module tilt from uneven compression exceeds the allowed angle."""


class OutOfRange(SimulationError):
    """Arc-length query outside the network."""


class ZeroReference(SimulationError):
    """Percentage error against a zero reference value is undefined."""


class EmptySweep(SimulationError):
    """An orientation sweep needs at least one orientation."""


class MaxTimeExceeded(SimulationError):
    """Run hit the time budget before the robot left the network.

    Carries the partial results so callers can still inspect them.
    """

    def __init__(self, message, records=None, summary=None):
        super().__init__(message)
        self.records = records if records is not None else []
        self.summary = summary


class IoError(PipeClimberError):
    """Failed to read or write an artifact (records, summaries, scenarios)."""


class EndOfNetwork(Exception):
    """Signal, not an error: the robot has traversed the whole network."""
