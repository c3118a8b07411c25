"""Typed errors shared across the toolkit.

Every error the command layer can surface carries a process exit code, so
the CLI never pattern-matches on message strings.
"""


class HeckeLabError(Exception):
    exit_code = 1


class MalformedInputError(HeckeLabError):
    """Bad user data: unreadable files, inconsistent tables, invalid ideals."""

    exit_code = 2


class FieldMismatchError(MalformedInputError):
    """Operands belong to different coefficient fields."""


class IdealError(MalformedInputError):
    """Left ideal is not proper, not closed, or not maximal."""


class InconsistentCharacterError(MalformedInputError):
    """Evaluation character does not come from a point of the variety."""


class ResourceCapError(HeckeLabError):
    """A configured resource cap was exceeded; never a silent truncation."""

    exit_code = 3


class DegreeCapError(ResourceCapError):
    pass


class GroupOrderCapError(ResourceCapError):
    pass


class WeylOrderCapError(ResourceCapError):
    pass


class OracleMismatchError(HeckeLabError):
    """Fast path disagrees with a brute-force oracle: an implementation bug."""

    exit_code = 4


class NonCommutativeCommutantError(HeckeLabError):
    """Genuine division-algebra commutant: beyond desk scale by design."""

    exit_code = 5


class CoefficientFieldError(HeckeLabError):
    """Coefficient-field constraint violated (base must contain sqrt(q))."""

    exit_code = 6


class IsolationError(HeckeLabError):
    """Certified root isolation could not be completed on the given data."""


class UnsupportedRootDatumError(HeckeLabError):
    """Operation not implemented for this root datum."""
