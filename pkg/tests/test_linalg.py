"""
Finite Field and Linear Algebra Tests
Field construction, vectorised arithmetic, elimination and subspace operations
"""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from icbound.core.exceptions import (
    DimensionMismatch,
    FieldTooSmall,
    NonPrime,
    NotPrimePower,
    ReduciblePolynomial,
)
from icbound.models.matrix import FqMatrix
from icbound.services import linalg
from icbound.services.finite_field import default_modulus, extension_field, field_from_spec, field_make
from icbound.utils.helpers import (
    bell_number,
    common_denominator,
    format_rational,
    nonempty_subsets,
    parse_rational,
    set_partitions,
)
from icbound.utils.validators import is_irreducible, is_prime, parse_field_spec, prime_power

from tests.conftest import matrix

FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2)]


class TestNumberTheory:
    """Test primality, prime powers and irreducibility"""

    def test_is_prime(self):
        """Test small primes and composites"""
        assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]

    def test_prime_power(self):
        """Test decomposition of prime powers"""
        assert prime_power(8) == (2, 3)
        assert prime_power(9) == (3, 2)
        assert prime_power(7) == (7, 1)
        assert prime_power(12) is None
        assert prime_power(1) is None

    def test_irreducible(self):
        """Test x^2+x+1 is irreducible over GF(2) and x^2+1 is not"""
        assert is_irreducible([1, 1, 1], 2)
        assert not is_irreducible([1, 0, 1], 2)
        assert is_irreducible([1, 0, 1], 3)

    def test_parse_field_spec(self):
        """Test "p", "q" and "p^ell" forms"""
        assert parse_field_spec("5") == (5, 1)
        assert parse_field_spec("4") == (2, 2)
        assert parse_field_spec("2^3") == (2, 3)
        with pytest.raises(NotPrimePower):
            parse_field_spec("6")
        with pytest.raises(NonPrime):
            parse_field_spec("4^2")


class TestFieldConstruction:
    """Test GF(p^ell) construction"""

    def test_default_modulus(self):
        """Test the smallest irreducible modulus is chosen"""
        assert default_modulus(2, 2) == (1, 1, 1)
        assert default_modulus(2, 3) == (1, 1, 0, 1)

    def test_non_prime_characteristic(self):
        """Test a composite characteristic is rejected"""
        with pytest.raises(NonPrime):
            field_make(6)

    def test_reducible_modulus(self):
        """Test a reducible modulus is rejected"""
        with pytest.raises(ReduciblePolynomial):
            field_make(2, 2, [1, 0, 1])

    def test_field_equality_and_str(self, gf4):
        """Test fields built twice compare equal and render as GF(p^ell)"""
        assert field_make(2, 2) == gf4
        assert str(gf4) == "GF(2^2)"
        assert str(field_from_spec("3")) == "GF(3)"
        assert gf4.q == 4

    def test_extension_field(self, gf2, gf4):
        """Test prime fields extend to the smallest large enough power"""
        assert extension_field(gf2, 2) == gf2
        assert extension_field(gf2, 3) == gf4
        assert extension_field(gf2, 5).q == 8
        with pytest.raises(FieldTooSmall):
            extension_field(gf4, 5)


class TestFieldArithmetic:
    """Test element arithmetic"""

    def test_gf4_alpha_squared(self, gf4):
        """Test alpha^2 = alpha + 1 with alpha encoded as 2"""
        assert gf4.mul(2, 2) == 3
        assert gf4.add(2, 1) == 3
        assert gf4.inv(2) == 3

    def test_gf3_negation(self, gf3):
        """Test -1 = 2 in GF(3)"""
        assert gf3.neg(1) == 2
        assert gf3.sub(0, 2) == 1

    def test_zero_has_no_inverse(self, gf5):
        """Test inverting zero raises"""
        with pytest.raises(ZeroDivisionError):
            gf5.inv(0)

    @pytest.mark.parametrize("p, ell", FIELDS)
    def test_field_axioms(self, p, ell):
        """Test inverses, distributivity and additive inverses on every element"""
        field = field_make(p, ell)
        a = np.arange(field.q, dtype=np.int64)
        nonzero = a[1:]
        assert (field.mul(nonzero, field.inv(nonzero)) == 1).all()
        assert (field.add(a, field.neg(a)) == 0).all()
        b, c = a[:, None], a[None, :]
        left = field.mul(b, field.add(c, 1))
        right = field.add(field.mul(b, c), b)
        assert (left == right).all()

    @settings(max_examples=50, deadline=None)
    @given(st.sampled_from(FIELDS), st.integers(0, 10**6), st.integers(0, 10**6), st.integers(0, 10**6))
    def test_associativity(self, spec, x, y, z):
        """Test (ab)c = a(bc) and (a+b)+c = a+(b+c)"""
        field = field_make(*spec)
        a, b, c = x % field.q, y % field.q, z % field.q
        assert field.mul(field.mul(a, b), c) == field.mul(a, field.mul(b, c))
        assert field.add(field.add(a, b), c) == field.add(a, field.add(b, c))

    def test_power_and_generator(self, gf4):
        """Test the generator has full multiplicative order"""
        g = gf4.generator
        assert sorted(gf4.power(g, e) for e in range(3)) == [1, 2, 3]
        assert gf4.power(0, 0) == 1


class TestMatrix:
    """Test FqMatrix basics"""

    def test_entries_must_be_elements(self, gf2):
        """Test out-of-range entries are rejected"""
        with pytest.raises(ValueError):
            FqMatrix(gf2, [[0, 2]])

    def test_immutable(self, gf2):
        """Test matrices cannot be modified"""
        M = FqMatrix.identity(gf2, 2)
        with pytest.raises(AttributeError):
            M.field = gf2
        with pytest.raises(ValueError):
            M.data[0, 0] = 0

    def test_product_over_gf4(self, gf4):
        """Test the matrix product uses field arithmetic"""
        A = matrix(gf4, [[2, 1]])
        B = matrix(gf4, [[2], [1]])
        assert (A @ B).tolist() == [[2]]  # alpha^2 + 1 = alpha

    def test_empty_rows_need_columns(self, gf2):
        """Test an empty row list needs an explicit column count"""
        with pytest.raises(DimensionMismatch):
            FqMatrix.from_rows(gf2, [])
        assert FqMatrix.from_rows(gf2, [], cols=3).shape == (0, 3)


class TestElimination:
    """Test rank, kernel and solving"""

    def test_rank(self, gf2, gf3):
        """Test a matrix of rank 2 over GF(2) but 3 over GF(3)"""
        rows = [[1, 1, 0], [0, 1, 1], [1, 0, 1]]
        assert linalg.rank(matrix(gf2, rows)) == 2
        assert linalg.rank(matrix(gf3, rows)) == 3

    def test_rref(self, gf3):
        """Test RREF drops zero rows and normalises pivots"""
        R = linalg.rref(matrix(gf3, [[2, 1], [1, 2]]))
        assert R.tolist() == [[1, 2]]

    def test_kernel(self, gf2):
        """Test A k = 0 for every kernel row"""
        A = matrix(gf2, [[1, 1, 0], [0, 1, 1]])
        K = linalg.kernel(A)
        assert K.tolist() == [[1, 1, 1]]
        assert (A @ K.T).is_zero()

    def test_solve_and_solve_left(self, gf5):
        """Test right and left solving"""
        A = matrix(gf5, [[1, 2], [3, 4]])
        solution = linalg.solve(A, [1, 0])
        assert solution is not None
        assert (gf5.matmul(A.data, solution.particular[:, None]).ravel() == [1, 0]).all()
        x = linalg.solve_left(A, [4, 1])
        assert (gf5.matmul(x[None, :], A.data)[0] == [4, 1]).all()

    def test_infeasible_system(self, gf2):
        """Test an inconsistent system returns None"""
        assert linalg.solve(matrix(gf2, [[1, 1], [1, 1]]), [1, 0]) is None
        assert linalg.solve_left(matrix(gf2, [[1, 1]]), [1, 0]) is None

    def test_solve_dimension_check(self, gf2):
        """Test the right-hand side length is checked"""
        with pytest.raises(DimensionMismatch):
            linalg.solve(matrix(gf2, [[1, 0]]), [1, 0])

    def test_in_rowspace(self, gf4):
        """Test membership in a row space over GF(4)"""
        M = matrix(gf4, [[1, 2, 0]])
        assert linalg.in_rowspace([2, 3, 0], M)
        assert not linalg.in_rowspace([1, 1, 0], M)
        assert linalg.in_rowspace([0, 0, 0], M)


class TestSubspaces:
    """Test span, sum, intersection and membership"""

    def test_span_is_canonical(self, gf2):
        """Test equal spaces have equal bases"""
        U = linalg.span(gf2, 3, [[1, 1, 0], [0, 1, 1]])
        W = linalg.span(gf2, 3, [[1, 0, 1], [1, 1, 0]])
        assert U == W
        assert hash(U) == hash(W)

    def test_intersection(self, gf2):
        """Test two planes in GF(2)^3 meet in a line"""
        U = linalg.span(gf2, 3, [[1, 0, 0], [0, 1, 0]])
        W = linalg.span(gf2, 3, [[0, 1, 0], [0, 0, 1]])
        I = linalg.subspace_intersect(U, W)
        assert I.basis.tolist() == [[0, 1, 0]]
        assert linalg.subspace_sum(U, W).dim == 3

    def test_intersection_with_zero(self, gf3):
        """Test the zero space absorbs intersections"""
        U = linalg.zero_space(gf3, 2)
        assert linalg.subspace_intersect(U, linalg.full_space(gf3, 2)).dim == 0

    def test_incompatible_spaces(self, gf2, gf3):
        """Test spaces over different fields cannot be combined"""
        with pytest.raises(DimensionMismatch):
            linalg.subspace_sum(linalg.full_space(gf2, 2), linalg.full_space(gf3, 2))

    def test_contains_many_and_coordinates(self, gf3):
        """Test vectorised membership and coordinates in the RREF basis"""
        U = linalg.span(gf3, 3, [[1, 0, 2], [0, 1, 1]])
        vectors = np.array([[1, 1, 0], [1, 1, 1], [2, 0, 1]])
        assert linalg.contains_many(U, vectors).tolist() == [True, False, True]
        assert linalg.coordinates(U, [2, 0, 1]).tolist() == [2, 0]
        assert linalg.coordinates(U, [1, 1, 1]) is None

    def test_is_subspace(self, gf2):
        """Test containment of subspaces"""
        line = linalg.span(gf2, 3, [[1, 1, 0]])
        plane = linalg.span(gf2, 3, [[1, 0, 0], [0, 1, 0]])
        assert linalg.is_subspace(line, plane)
        assert not linalg.is_subspace(plane, line)

    @settings(max_examples=40, deadline=None)
    @given(
        st.sampled_from([(2, 1), (3, 1), (2, 2)]),
        st.integers(1, 5),
        st.integers(0, 2**32 - 1),
    )
    def test_dimension_formula(self, spec, n, seed):
        """Test dim(U+W) + dim(U cap W) = dim U + dim W"""
        field = field_make(*spec)
        rng = np.random.default_rng(seed)
        U = linalg.span(field, n, rng.integers(0, field.q, size=(rng.integers(0, n + 1), n)))
        W = linalg.span(field, n, rng.integers(0, field.q, size=(rng.integers(0, n + 1), n)))
        total = linalg.subspace_sum(U, W).dim + linalg.subspace_intersect(U, W).dim
        assert total == U.dim + W.dim


class TestEchelonBasis:
    """Test the incremental echelon basis"""

    def test_extend_and_contains(self, gf3):
        """Test extending skips dependent rows and never mutates"""
        basis = linalg.EchelonBasis(gf3, 3)
        one = basis.extend(np.array([1, 2, 0]))
        two = one.extend(np.array([2, 1, 0]))
        assert basis.rank == 0
        assert one.rank == 1
        assert two is one
        assert one.contains(np.array([2, 1, 0]))
        assert not one.contains(np.array([0, 0, 1]))

    def test_from_rows_matches_rank(self, gf2, rng):
        """Test from_rows agrees with rank on random matrices"""
        for _ in range(20):
            data = rng.integers(0, 2, size=(4, 5))
            basis = linalg.EchelonBasis.from_rows(gf2, 5, data)
            assert basis.rank == linalg.rank(FqMatrix(gf2, data))


class TestHelpers:
    """Test rational formatting and combinatorial enumeration"""

    def test_format_rational(self):
        """Test exact rendering of rationals"""
        assert format_rational(Fraction(5, 2)) == "5/2"
        assert format_rational(Fraction(4, 2)) == "2"
        assert format_rational(3) == "3"

    def test_parse_rational_inverse(self):
        """Test rendered values parse back to the same rational"""
        for value in (Fraction(5, 2), Fraction(-7, 3), Fraction(0)):
            assert parse_rational(format_rational(value)) == value

    def test_common_denominator(self):
        """Test the least common denominator"""
        assert common_denominator([Fraction(1, 2), Fraction(1, 3)]) == 6
        assert common_denominator([]) == 1

    def test_nonempty_subsets(self):
        """Test subsets are ordered by size"""
        subsets = nonempty_subsets(3)
        assert len(subsets) == 7
        assert subsets[0] == frozenset({0})
        assert subsets[-1] == frozenset({0, 1, 2})

    def test_set_partitions_counts(self):
        """Test the number of partitions is the Bell number"""
        for n in range(6):
            partitions = list(set_partitions(list(range(n))))
            assert len(partitions) == bell_number(n)
            for partition in partitions:
                assert sorted(x for block in partition for x in block) == list(range(n))
