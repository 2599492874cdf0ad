"""Exception types shared across the package."""


class DomainError(ValueError):
    """A precondition on mathematical input was violated.

    The CLI maps this to exit code 2 with a machine-readable payload;
    malformed (unparseable) input is a plain ValueError/InputError and
    maps to exit code 1.
    """


class InputError(ValueError):
    """Malformed or schema-invalid input (CLI exit code 1)."""
