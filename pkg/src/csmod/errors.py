"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: parse failures exit 2, domain errors
exit 3, resource-cap refusals exit 4.
"""


class CsmodError(Exception):
    """Base class for all errors raised by this package."""


class ParseInputError(CsmodError):
    """Malformed textual input (ring element, quaternion, matrix, config)."""


class DomainError(CsmodError):
    """Input outside the mathematical domain of an operation."""


class ResourceCapError(CsmodError):
    """Request exceeds a configured enumeration bound."""
