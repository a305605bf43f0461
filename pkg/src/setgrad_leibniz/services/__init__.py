"""服务层包"""

from .algebra import Algebra, GradedSubspace, ValidationReport, validate
from .exactlin import Field, Subspace
from .fileformat import dump_algebra, load_algebra

__all__ = [
    "Algebra",
    "GradedSubspace",
    "ValidationReport",
    "validate",
    "Field",
    "Subspace",
    "dump_algebra",
    "load_algebra",
]
