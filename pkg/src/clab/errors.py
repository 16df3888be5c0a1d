"""Exception hierarchy.

Each class carries the process exit code the command-line front end maps it
to, so library callers and the CLI agree on what went wrong.
"""


class ClabError(Exception):
    exit_code = 1


class InvalidArgumentError(ClabError, ValueError):
    """An argument is outside the documented range."""

    exit_code = 1


class ResourceLimitError(ClabError):
    """A size guard (sieve limit, enumeration count, matrix size) was exceeded."""

    exit_code = 3


class DomainError(ClabError, ValueError):
    """Evaluation requested outside the region where the method is valid."""

    exit_code = 4


class PoleError(DomainError):
    pass


class SingularProductError(DomainError):
    pass


class InsufficientCutError(DomainError):
    """A truncation is too short for the certified tail to be useful."""


class TableRangeError(DomainError):
    pass


class OracleDisagreementError(ClabError):
    exit_code = 2
