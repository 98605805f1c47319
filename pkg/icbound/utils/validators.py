"""
Input Validators
Number-theoretic checks and parsing of field specifications
"""

from typing import Optional, Sequence, Tuple

from icbound.core.exceptions import NonPrime, NotPrimePower


def is_prime(n: int) -> bool:
    """
    Deterministic primality test by trial division

    Args:
        n: Integer to test

    Returns:
        True if n is prime
    """
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    divisor = 3
    while divisor * divisor <= n:
        if n % divisor == 0:
            return False
        divisor += 2
    return True


def prime_power(q: int) -> Optional[Tuple[int, int]]:
    """
    Decompose q = p^e

    Args:
        q: Candidate prime power

    Returns:
        (p, e) or None if q is not a prime power
    """
    if q < 2:
        return None
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    return (p, e) if rest == 1 else None


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending"""
    factors = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            factors.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        factors.append(n)
    return factors


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a modulo monic-normalisable b over GF(p), low-to-high coefficients"""
    a = list(a)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        factor = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, coeff in enumerate(b):
            a[shift + i] = (a[shift + i] - factor * coeff) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """
    Irreducibility over GF(p) by trial division with all monic polynomials up to half degree

    Args:
        poly: Coefficients low-to-high, nonzero leading coefficient
        p: Prime characteristic

    Returns:
        True if poly has no factor of degree 1..deg/2
    """
    degree = len(poly) - 1
    if degree < 1 or poly[-1] % p == 0:
        return False
    if degree == 1:
        return True
    for d in range(1, degree // 2 + 1):
        for code in range(p**d):
            divisor = [(code // p**i) % p for i in range(d)] + [1]
            if not _poly_mod(list(poly), divisor, p):
                return False
    return True


def parse_field_spec(text: str) -> Tuple[int, int]:
    """
    Parse "p", "p^ell" or a prime power q

    Args:
        text: Field specification from the command line or a file

    Returns:
        (p, ell)

    Raises:
        NonPrime: If the base of "p^ell" is not prime
        NotPrimePower: If a bare integer is not a prime power
        ValueError: If the text is not numeric
    """
    text = text.strip()
    if "^" in text:
        base, exponent = text.split("^", 1)
        p, ell = int(base), int(exponent)
        if not is_prime(p):
            raise NonPrime(f"{p} is not prime")
        if ell < 1:
            raise ValueError(f"Exponent must be positive: {ell}")
        return p, ell
    q = int(text)
    decomposition = prime_power(q)
    if decomposition is None:
        raise NotPrimePower(f"{q} is not a prime power")
    return decomposition
