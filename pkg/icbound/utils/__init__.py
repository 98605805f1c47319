# icbound/utils/__init__.py
"""
Utility functions
"""

from icbound.utils.helpers import format_rational, parse_rational, to_labels
from icbound.utils.validators import is_prime, prime_power

__all__ = [
    "format_rational",
    "parse_rational",
    "to_labels",
    "is_prime",
    "prime_power",
]
