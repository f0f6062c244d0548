"""Exception hierarchy; ``exit_code`` is what the CLI reports on failure."""

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_UNSUPPORTED = 3
EXIT_DISAGREEMENT = 4


class BigpolyError(Exception):
    exit_code = EXIT_INPUT


class InvalidInputError(BigpolyError):
    """Malformed argument: bad vector, rank mismatch, bad subset code."""


class GenericityError(BigpolyError):
    """A subset sum ties its complement; long/short is undefined there."""


class InvalidFamilyError(BigpolyError):
    """Candidate family is not monotone or not self-dual."""


class ResourceLimitError(BigpolyError):
    """Request exceeds a hard size cap (override where documented)."""


class UnsupportedConfigError(BigpolyError):
    """Configuration outside the supported parameter range."""

    exit_code = EXIT_UNSUPPORTED


class DisagreementError(BigpolyError):
    """Algebraic syzygy order disagreed with the combinatorial invariant."""

    exit_code = EXIT_DISAGREEMENT
