"""Exception types shared across the package."""


class SuperrepError(Exception):
    """Base class for all package errors."""


class StructureError(SuperrepError):
    """Malformed input data: dimension mismatches, non-group tables, etc."""


class MismatchError(SuperrepError):
    """Operands built over different algebras, groups or function classes."""


class UnsupportedInstanceError(SuperrepError):
    """Instance outside the implemented fragment (e.g. a line group whose
    adjoint action on the algebra is nontrivial)."""


class DslError(SuperrepError):
    """Parse or semantic error in a definition file, with source location."""

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"{line}:{col}: {message}"
        super().__init__(message)
