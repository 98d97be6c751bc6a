"""Exception hierarchy for the toolkit.

Two branches matter for the CLI exit codes: DataError means the input files
are missing or malformed (exit 2), AnalysisError means an analysis operation
was called outside its preconditions (exit 3).
"""

from __future__ import annotations


class KvstreamError(Exception):
    """Base class for every toolkit error."""


class DataError(KvstreamError):
    """Input files are missing, unreadable or malformed."""


class MissingFile(DataError):
    def __init__(self, path: object) -> None:
        super().__init__(f"required input file is missing: {path}")
        self.path = path


class ParseError(DataError):
    def __init__(self, file: object, line: int | None, message: str) -> None:
        where = f"{file}:{line}" if line is not None else str(file)
        super().__init__(f"{where}: {message}")
        self.file = file
        self.line = line


class IoError(DataError):
    """Writing an output file failed."""


class AnalysisError(KvstreamError):
    """An operation was invoked outside its stated preconditions."""


class InsufficientActors(AnalysisError):
    """Fewer than two person actors; density is undefined."""


class NoPersonTies(AnalysisError):
    """No person-to-person ties; reciprocity is undefined."""


class NoTies(AnalysisError):
    """No ties at all; the tacit/explicit split is undefined."""


class NoDecisions(AnalysisError):
    """Zero decisions; knowledge flux is undefined."""


class NoRecordedOutcomes(AnalysisError):
    """No decision carries a recorded learning cycle consequence."""


class MissingCodebookEntry(AnalysisError):
    def __init__(self, attribute: str, value: str) -> None:
        super().__init__(f"codebook has no ordinal for {attribute!r} value {value!r}")
        self.attribute = attribute
        self.value = value


class HeterogeneousAttributes(AnalysisError):
    """Decisions do not share a common attribute-name set."""


class DegenerateData(AnalysisError):
    """Covariance is all-zero; no principal direction exists."""


class EmptyDimension(AnalysisError):
    """A scorecard dimension has no rated items."""


class OutOfRange(AnalysisError):
    """A score fell outside [0, 100]."""


class UnknownLevel(AnalysisError):
    """An uncertainty level is not declared in the scale."""


class InvalidPoset(AnalysisError):
    """The uncertainty ordering contains a cycle."""


class UndefinedScenario(AnalysisError):
    """The flag combination does not map to any enumerated scenario."""


class UnsupportedFormat(AnalysisError):
    def __init__(self, fmt: object) -> None:
        super().__init__(f"unsupported output format: {fmt!r}")
        self.format = fmt
