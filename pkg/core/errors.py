"""
Exception hierarchy for the replicator verification toolkit.

Every error carries the process exit code the command-line front end
returns when it escapes a run.
"""


class ReplicatorError(Exception):
    """Base exception for all toolkit errors."""

    exit_code = 1


class ValidationError(ReplicatorError, ValueError):
    """A domain value violates one of its constraints."""

    exit_code = 2


class UsageError(ReplicatorError, ValueError):
    """An operation was called with incompatible arguments."""

    exit_code = 2


class ResourceError(ReplicatorError):
    """Dimension cap, blank reservoir or output destination exhausted."""

    exit_code = 3


class ReportWriteError(ResourceError):
    """The report could not be written to its destination."""


class VerificationFailure(ReplicatorError):
    """A no-go assertion did not hold at the configured tolerance."""

    exit_code = 1
