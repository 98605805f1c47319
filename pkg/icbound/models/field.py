"""
Finite Field Model
GF(p^ell) with elements encoded as integers 0..q-1 (base-p packed polynomial coefficients)
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Tuple, Union

import numpy as np

from icbound.core.exceptions import NonPrime, ReduciblePolynomial
from icbound.utils.validators import is_irreducible, is_prime, prime_factors

ArrayLike = Union[int, np.ndarray]

# add tables are materialised up to this order; larger fields add digit-wise
ADD_TABLE_MAX_ORDER = 1024


@dataclass(frozen=True)
class FieldSpec:
    """
    Finite field GF(p^ell) with a fixed irreducible modulus

    Element a encodes the polynomial sum_k d_k x^k where d_k is the k-th base-p digit of a,
    so for GF(4) with modulus x^2+x+1 the element 2 is alpha and alpha*alpha = 3 = alpha+1.
    All arithmetic methods accept Python ints or numpy integer arrays and broadcast.
    """

    p: int
    ell: int
    modulus: Tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise NonPrime(f"{self.p} is not prime")
        if self.ell < 1:
            raise ReduciblePolynomial(f"Extension degree must be positive, got {self.ell}")
        modulus = tuple(int(c) % self.p for c in self.modulus)
        object.__setattr__(self, "modulus", modulus)
        if len(modulus) != self.ell + 1 or modulus[-1] != 1:
            raise ReduciblePolynomial(
                f"Modulus must be monic of degree {self.ell}: {list(modulus)}"
            )
        if not is_irreducible(modulus, self.p):
            raise ReduciblePolynomial(f"Modulus {list(modulus)} is reducible over GF({self.p})")

    @property
    def q(self) -> int:
        return self.p**self.ell

    @property
    def is_prime_field(self) -> bool:
        return self.ell == 1

    def __str__(self) -> str:
        if self.is_prime_field:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.ell})"

    # ---- polynomial encoding ----

    def digits(self, a: int) -> list[int]:
        """Coefficients (low-to-high, length ell) of element a"""
        return [(a // self.p**k) % self.p for k in range(self.ell)]

    def from_digits(self, coeffs: Sequence[int]) -> int:
        """Element with the given low-to-high coefficients"""
        return sum((int(c) % self.p) * self.p**k for k, c in enumerate(coeffs))

    def _mulmod(self, a: int, b: int) -> int:
        """Polynomial product of two encoded elements reduced by the modulus"""
        p, ell = self.p, self.ell
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * ell - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for k in range(len(prod) - 1, ell - 1, -1):
            c = prod[k]
            if c:
                for i in range(ell + 1):
                    prod[k - ell + i] = (prod[k - ell + i] - c * self.modulus[i]) % p
        return self.from_digits(prod[:ell])

    def _power(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._mulmod(result, a)
            a = self._mulmod(a, a)
            e >>= 1
        return result

    # ---- tables ----

    @cached_property
    def generator(self) -> int:
        """Smallest primitive element (in integer order)"""
        order = self.q - 1
        if order == 1:
            return 1
        factors = prime_factors(order)
        for g in range(2, self.q):
            if all(self._power(g, order // r) != 1 for r in factors):
                return g
        raise ReduciblePolynomial(f"No primitive element found in {self}")  # pragma: no cover

    @cached_property
    def _exp_log(self) -> Tuple[np.ndarray, np.ndarray]:
        order = self.q - 1
        exp = np.zeros(order, dtype=np.int64)
        log = np.zeros(self.q, dtype=np.int64)
        value = 1
        for i in range(order):
            exp[i] = value
            log[value] = i
            value = self._mulmod(value, self.generator)
        return exp, log

    @cached_property
    def _inv_table(self) -> np.ndarray:
        exp, log = self._exp_log
        order = self.q - 1
        inv = np.zeros(self.q, dtype=np.int64)
        inv[1:] = exp[(order - log[1:]) % order]
        return inv

    @cached_property
    def _neg_table(self) -> np.ndarray:
        elements = np.arange(self.q, dtype=np.int64)
        neg = np.zeros(self.q, dtype=np.int64)
        for k in range(self.ell):
            place = self.p**k
            neg += ((-(elements // place)) % self.p) * place
        return neg

    @cached_property
    def _add_table(self) -> np.ndarray:
        elements = np.arange(self.q, dtype=np.int64)
        return self._add_digitwise(elements[:, None], elements[None, :])

    def _add_digitwise(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        result = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for k in range(self.ell):
            place = self.p**k
            result += (((a // place) + (b // place)) % self.p) * place
        return result

    # ---- arithmetic ----

    def add(self, a: ArrayLike, b: ArrayLike) -> ArrayLike:
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.is_prime_field:
            return np.mod(np.add(a, b), self.p)
        if self.q <= ADD_TABLE_MAX_ORDER:
            return self._add_table[a, b]
        return self._add_digitwise(np.asarray(a), np.asarray(b))

    def neg(self, a: ArrayLike) -> ArrayLike:
        if self.p == 2:
            return a
        if self.is_prime_field:
            return np.mod(np.negative(a), self.p)
        return self._neg_table[a]

    def sub(self, a: ArrayLike, b: ArrayLike) -> ArrayLike:
        return self.add(a, self.neg(b))

    def mul(self, a: ArrayLike, b: ArrayLike) -> ArrayLike:
        if self.is_prime_field:
            return np.mod(np.multiply(a, b), self.p)
        exp, log = self._exp_log
        a_arr, b_arr = np.asarray(a), np.asarray(b)
        product = exp[(log[a_arr] + log[b_arr]) % (self.q - 1)]
        return np.where((a_arr == 0) | (b_arr == 0), 0, product)

    def inv(self, a: ArrayLike) -> ArrayLike:
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError(f"Zero has no inverse in {self}")
        return self._inv_table[a]

    def div(self, a: ArrayLike, b: ArrayLike) -> ArrayLike:
        return self.mul(a, self.inv(b))

    def power(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e else 1
        exp, log = self._exp_log
        return int(exp[(int(log[a]) * e) % (self.q - 1)])

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """Matrix product over the field of two 2-D integer arrays"""
        A, B = np.asarray(A, dtype=np.int64), np.asarray(B, dtype=np.int64)
        if self.is_prime_field:
            return (A @ B) % self.p
        result = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        for k in range(A.shape[1]):
            result = self.add(result, self.mul(A[:, k, None], B[None, k, :]))
        return result

    def element_sum(self, values: np.ndarray, axis: int = 0) -> np.ndarray:
        """Field sum along an axis"""
        values = np.asarray(values, dtype=np.int64)
        if self.is_prime_field:
            return values.sum(axis=axis) % self.p
        values = np.moveaxis(values, axis, 0)
        result = np.zeros(values.shape[1:], dtype=np.int64)
        for row in values:
            result = self.add(result, row)
        return result

    def normalize(self, v: np.ndarray) -> np.ndarray:
        """Scale a nonzero vector so its first nonzero coordinate is 1"""
        nonzero = np.nonzero(v)[0]
        if nonzero.size == 0:
            return v
        return self.mul(v, self.inv(int(v[nonzero[0]])))
