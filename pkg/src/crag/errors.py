"""Exception types shared across the package.

Precondition violations on in-process calls raise plain ValueError; the
classes here cover configuration, I/O, wire-protocol, and numeric failures
that callers may want to handle distinctly (the CLI maps ConfigError to
exit code 2 and everything else to 1).
"""


class CragError(Exception):
    """Base class for all crag-specific errors."""


class ConfigError(CragError):
    """Bad or missing configuration: unknown keys, invalid values, missing files."""


class EncodingError(CragError):
    """An input file is not valid UTF-8."""


class TransportError(CragError):
    """A remote embedding or generation call failed after its retries.

    When raised from the query pipeline the offending PromptBundle is
    attached as ``bundle`` for post-mortem inspection.
    """

    def __init__(self, message, bundle=None):
        super().__init__(message)
        self.bundle = bundle


class ContractViolationError(CragError):
    """A provider returned data violating its wire contract (wrong dim, zero row)."""


class IntegrityError(CragError):
    """Store build inputs are mutually inconsistent."""


class StoreFormatError(CragError):
    """A store or router file is not a valid container (bad magic, truncated)."""


class NotFoundError(CragError):
    """A requested chunk id does not exist in the store."""


class NumericError(CragError):
    """A non-finite value appeared in a numeric computation; names the stage."""


class TrainingError(CragError):
    """Router training diverged (non-finite loss)."""
