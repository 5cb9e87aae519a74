"""Exception hierarchy shared by the library and the CLI.

The CLI maps these onto process exit codes: UsageError -> 64,
DomainError -> 1, ResourceError -> 2, IntegrityError -> 3.
"""


class FqError(Exception):
    """Base class for all fqtotient errors."""


class UsageError(FqError, ValueError):
    """Caller mixed incompatible objects (e.g. polynomials over different fields)."""


class DomainError(FqError, ValueError):
    """Input is outside the mathematical domain of the operation."""


class ParseError(DomainError):
    """Polynomial text does not conform to the grammar."""


class ResourceError(FqError, RuntimeError):
    """Request exceeds the configured memory/enumeration budget."""


class IntegrityError(FqError, RuntimeError):
    """An internal consistency check failed (a certificate or a structural invariant)."""


class DecompositionError(DomainError):
    """An integer is not a product of the required a^n - 1 form."""

    def __init__(self, message: str, stuck_cofactor: int | None = None):
        super().__init__(message)
        self.stuck_cofactor = stuck_cofactor
