"""
Finite Field Service
Construction of GF(p^ell) with a canonical default modulus, and field extensions
"""

import logging
from functools import lru_cache
from typing import Optional, Sequence

from icbound.core.exceptions import FieldTooSmall, NonPrime, ReduciblePolynomial
from icbound.models.field import FieldSpec
from icbound.utils.validators import is_irreducible, is_prime, parse_field_spec

logger = logging.getLogger(__name__)


def default_modulus(p: int, ell: int) -> tuple:
    """
    Smallest monic irreducible polynomial of degree ell over GF(p)

    Candidates x^ell + c(x) are scanned by the integer encoding of c, so for GF(4)
    this is x^2+x+1 and for GF(8) it is x^3+x+1.

    Args:
        p: Prime
        ell: Degree

    Returns:
        Coefficients low-to-high
    """
    for code in range(p**ell):
        poly = [(code // p**k) % p for k in range(ell)] + [1]
        if is_irreducible(poly, p):
            return tuple(poly)
    raise ReduciblePolynomial(f"No irreducible polynomial of degree {ell} over GF({p})")  # pragma: no cover


@lru_cache(maxsize=64)
def _cached_field(p: int, ell: int, modulus: tuple) -> FieldSpec:
    return FieldSpec(p, ell, modulus)


def field_make(p: int, ell: int = 1, modulus: Optional[Sequence[int]] = None) -> FieldSpec:
    """
    Build GF(p^ell)

    Args:
        p: Characteristic
        ell: Extension degree
        modulus: Optional monic irreducible polynomial, coefficients low-to-high

    Returns:
        FieldSpec with verified modulus

    Raises:
        NonPrime: If p is not prime
        ReduciblePolynomial: If the modulus is reducible or has the wrong degree
    """
    if not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if ell < 1:
        raise ReduciblePolynomial(f"Extension degree must be positive, got {ell}")
    if modulus is None:
        modulus = default_modulus(p, ell)
    return _cached_field(p, ell, tuple(int(c) for c in modulus))


def field_from_spec(text: str) -> FieldSpec:
    """Field from a "p", "q" or "p^ell" string"""
    return field_make(*parse_field_spec(text))


def extension_field(field: FieldSpec, min_size: int) -> FieldSpec:
    """
    Smallest GF(p^e) with p^e >= min_size that contains the prime field `field`

    Elements 0..p-1 are the constant polynomials in every GF(p^e), so matrices over the
    prime field can be read in the extension without re-encoding.

    Args:
        field: Prime field to extend
        min_size: Required number of elements

    Returns:
        `field` itself when already large enough, else the extension

    Raises:
        FieldTooSmall: If `field` is not a prime field and is too small
    """
    if field.q >= min_size:
        return field
    if not field.is_prime_field:
        raise FieldTooSmall(
            f"{field} has fewer than {min_size} elements and only prime fields are extended"
        )
    e = 1
    while field.p**e < min_size:
        e += 1
    extended = field_make(field.p, e)
    logger.debug(f"Extending {field} to {extended} for {min_size} evaluation points")
    return extended
