"""异常定义"""

from typing import Optional


class SetGradError(Exception):
    """Root of every error raised by the package."""


class FieldMismatchError(SetGradError, ValueError):
    """Scalars, vectors or subspaces over different fields were combined."""


class DimensionMismatchError(SetGradError, ValueError):
    """Vectors or subspaces with different ambient dimensions were combined."""


class NotContainedError(SetGradError, ValueError):
    """complement_in(A, B) called with A not inside B."""


class AlgebraStructureError(SetGradError, ValueError):
    """The structure-constant table is malformed (bad index, name, parity...)."""


class AlgebraFileError(SetGradError):
    """An algebra file could not be parsed; `location` points at the offending entry."""

    def __init__(self, message: str, location: Optional[str] = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class NonHomogeneousError(SetGradError, ValueError):
    """A generator does not lie in a single (label, parity) piece."""


class PreconditionError(SetGradError):
    """An operation was called on an input outside its domain."""


class NotMaximalLengthError(PreconditionError):
    """A maximal-length-only operation received an algebra with a piece of dim > 1."""


class EndpointMismatchError(PreconditionError):
    """The endpoints of a ¬𝕴-connection lie in different parts of the 𝕴 partition."""


class InternalInconsistencyError(SetGradError):
    """A postcondition that the theory guarantees failed; points at a bug or a finding."""


class GenerationError(SetGradError):
    """A corpus generator produced (or would produce) an invalid algebra."""
