"""工具包"""

from .config import get_settings, reset_settings, Settings
from .validators import (
    is_prime,
    validate_prime,
    validate_parity,
    validate_rational_literal,
    validate_integer_literal,
)

__all__ = [
    "get_settings",
    "reset_settings",
    "Settings",
    "is_prime",
    "validate_prime",
    "validate_parity",
    "validate_rational_literal",
    "validate_integer_literal",
]
