"""
Errors - exception hierarchy shared by every module

The CLI maps these to process exit codes (see ``EXIT_CODES``).
"""

from typing import Optional


class OrderabilityError(Exception):
    """Base class for all errors raised by this package"""

    kind = "error"


class PresentationParseError(OrderabilityError, ValueError):
    """Presentation text that violates the grammar"""

    kind = "parse_error"

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(str(self))

    def __str__(self) -> str:
        if self.line:
            return f"line {self.line}, column {self.column}: {self.message}"
        return self.message


class NonConfluentError(OrderabilityError):
    """A rewriting system that did not complete was used where confluence is required"""

    kind = "non_confluent"


class ResourceExceeded(OrderabilityError):
    """A configured cap (ball size, cosets, search nodes, time) was hit"""

    kind = "resource_exceeded"

    def __init__(self, message: str, cap: Optional[int] = None):
        self.cap = cap
        super().__init__(message)


class CosetOverflow(ResourceExceeded):
    """Coset enumeration defined more cosets than allowed"""

    kind = "coset_overflow"


class IncompleteTableError(OrderabilityError, ValueError):
    """An operation needing a complete coset table received a partial one"""

    kind = "incomplete_table"


class CertificateFormatError(OrderabilityError, ValueError):
    """Certificate JSON that does not follow the certificate schema"""

    kind = "certificate_format"


class ConfigError(OrderabilityError, ValueError):
    """Invalid run configuration"""

    kind = "config_error"


# Process exit codes
EXIT_OK = 0
EXIT_PARSE_ERROR = 2
EXIT_NON_CONFLUENT = 3
EXIT_RESOURCE_CAP = 4
EXIT_INVALID_CERTIFICATE = 5

EXIT_CODES = {
    PresentationParseError: EXIT_PARSE_ERROR,
    ConfigError: EXIT_PARSE_ERROR,
    NonConfluentError: EXIT_NON_CONFLUENT,
    ResourceExceeded: EXIT_RESOURCE_CAP,
    IncompleteTableError: EXIT_RESOURCE_CAP,
    CertificateFormatError: EXIT_INVALID_CERTIFICATE,
}


def exit_code_for(error: BaseException) -> int:
    """Exit code for an exception raised by the package"""
    for error_type, code in EXIT_CODES.items():
        if isinstance(error, error_type):
            return code
    return 1
