"""Exceptions for Laver tables."""


class LaverError(Exception):
    """Base exception for Laver tables."""


class DomainError(LaverError):
    """Raised when an argument is outside an operation's domain."""


class BoundError(LaverError):
    """Raised when an element does not fit the 62-bit bound."""


class InsufficientStoreError(LaverError):
    """Raised when a threshold store does not cover the request."""


class StoreFormatError(LaverError):
    """Raised when a threshold file cannot be decoded."""


class MagicMismatchError(StoreFormatError):
    """Raised when a threshold file does not start with the LVRT magic."""


class VersionMismatchError(StoreFormatError):
    """Raised when a threshold file has an unsupported version."""


class TruncatedStoreError(StoreFormatError):
    """Raised when a threshold file is shorter than its header announces."""


class ChecksumMismatchError(StoreFormatError):
    """Raised when the CRC-32 trailer does not match the payload."""


class StoreLockedError(LaverError):
    """Raised when another writer holds the store lock."""


class NotMaximalError(LaverError):
    """Raised when an operation requires a maximal element."""


class StructuralError(LaverError):
    """Raised when a bit word admits no insertion split."""


class TermSyntaxError(LaverError):
    """Raised when a term cannot be parsed."""

    def __init__(self, message: str, position: int) -> None:
        """Initialize with the offending character position."""
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownSuiteError(LaverError):
    """Raised when a verification suite name is not registered."""


class ConfigError(LaverError):
    """Raised when CLI configuration fails validation."""
