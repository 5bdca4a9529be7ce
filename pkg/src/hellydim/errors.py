"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: ``DomainError`` (including failed
preconditions) -> 1, ``InputError`` -> 2, ``ResourceError`` -> 3.
"""


class HellyError(Exception):
    pass


class InputError(HellyError, ValueError):
    """Malformed or shape-incompatible input."""


class DomainError(HellyError, ValueError):
    """Input is well formed but outside the operation's domain."""


class PreconditionError(DomainError):
    """A documented precondition of the operation does not hold."""


class ResourceError(HellyError, RuntimeError):
    """A configured brute-force bound was exceeded."""
