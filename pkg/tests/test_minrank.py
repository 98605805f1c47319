"""
Min-rank Tests
Fitting patterns, exact min-rank and kappa, rank distributions, multicast codes and MDS generators
"""

import pytest

from icbound.core.exceptions import BudgetExceeded, FieldTooSmall, NotDecodable
from icbound.models.graph import Digraph
from icbound.models.instance import IcsiInstance
from icbound.services import linalg
from icbound.services import minrank_service as mr
from icbound.services.instance_service import (
    digraph_instance,
    embed_iccsi,
    is_valid_code,
    to_digraph,
    to_hypergraph,
)
from icbound.services.mds_service import is_mds, mds_field, mds_generator, rs_generator

from tests.conftest import matrix


class TestFittingPattern:
    """Test the fitting pattern of digraphs and hypergraphs"""

    def test_fig4_pattern(self, fig4):
        """Test ones on the diagonal and free entries on the out-neighbourhoods"""
        pattern = mr.fitting_pattern(to_digraph(fig4))
        assert pattern.fixed_one == {(0, 0), (1, 1), (2, 2), (3, 3)}
        assert pattern.free == ((0, 1), (1, 2), (1, 3), (2, 0), (2, 3), (3, 0), (3, 2))
        assert pattern.free_in_row(1) == (2, 3)

    def test_hypergraph_pattern(self):
        """Test a repeated demand gives two rows with a one in the same column"""
        instance = IcsiInstance(2, (1, 1), (frozenset({2}), frozenset()))
        pattern = mr.fitting_pattern(to_hypergraph(instance))
        assert pattern.fixed_one == {(0, 0), (1, 0)}
        assert pattern.free == ((0, 1),)

    def test_fits(self, fig4, gf2):
        """Test fits checks the ones, zeros and shape"""
        pattern = mr.fitting_pattern(to_digraph(fig4))
        good = matrix(gf2, [[1, 1, 0, 0], [0, 1, 1, 1], [1, 0, 1, 1], [1, 0, 1, 1]])
        assert mr.fits(good, pattern)
        assert not mr.fits(matrix(gf2, [[1, 1, 1, 0], [0, 1, 1, 1], [1, 0, 1, 1], [1, 0, 1, 1]]), pattern)
        assert not mr.fits(matrix(gf2, [[1, 1, 0, 0]]), pattern)


class TestMinrank:
    """Test the exact min-rank search"""

    def test_fano(self, fano, gf2):
        """Test the Fano instance has binary min-rank 4"""
        result = mr.minrank(to_digraph(fano), gf2)
        assert result.value == 4
        assert linalg.rank(result.certificate) == 4
        assert mr.fits(result.certificate, mr.fitting_pattern(to_digraph(fano)))

    def test_fig4(self, fig4, gf2):
        """Test the four-receiver example has min-rank 2"""
        assert mr.minrank(to_digraph(fig4), gf2).value == 2

    def test_extremes(self, gf3):
        """Test the empty digraph needs n and the complete digraph needs 1"""
        assert mr.minrank(Digraph(3, frozenset()), gf3).value == 3
        assert mr.minrank(Digraph.complete(3), gf3).value == 1

    def test_hypergraph(self, gf2):
        """Test two receivers demanding the same message share one transmission"""
        instance = IcsiInstance(2, (1, 1), (frozenset({2}), frozenset()))
        assert mr.minrank(to_hypergraph(instance), gf2).value == 1

    def test_certificate_is_lexicographically_first(self, gf2):
        """Test the reported matrix is the first optimal one in search order"""
        result = mr.minrank(Digraph.complete(2), gf2)
        assert result.certificate.tolist() == [[1, 1], [1, 1]]

    def test_budget(self, fano, gf2):
        """Test the node budget stops the search"""
        with pytest.raises(BudgetExceeded):
            mr.minrank(to_digraph(fano), gf2, budget=10)


class TestRankDistribution:
    """Test the rank histogram over every fitting matrix"""

    def test_fano_distribution(self, fano, gf2):
        """Test the binary Fano histogram over all 2^14 fitting matrices"""
        distribution = mr.rank_distribution(to_digraph(fano), gf2)
        assert distribution == {4: 1, 5: 238, 6: 6575, 7: 9570}
        assert sum(distribution.values()) == 2**14

    def test_empty_digraph(self, gf2):
        """Test the only fitting matrix of an empty digraph is the identity"""
        assert mr.rank_distribution(Digraph(3, frozenset()), gf2) == {3: 1}

    def test_minimum_matches_minrank(self, fig4, gf3):
        """Test the smallest rank in the histogram is the min-rank"""
        graph = to_digraph(fig4)
        assert min(mr.rank_distribution(graph, gf3)) == mr.minrank(graph, gf3).value

    def test_budget(self, fano, gf2):
        """Test the enumeration refuses more matrices than the budget"""
        with pytest.raises(BudgetExceeded):
            mr.rank_distribution(to_digraph(fano), gf2, budget=100)


class TestKappa:
    """Test the optimal scalar linear length of coded instances"""

    def test_embedded_matches_minrank(self, fig4, gf2):
        """Test kappa of an embedded instance equals the min-rank"""
        assert mr.kappa(embed_iccsi(fig4, gf2)).value == 2

    def test_coded_examples(self, remark_comp, remark_comp1):
        """Test the two small coded examples"""
        assert mr.kappa(remark_comp).value == 1
        result = mr.kappa(remark_comp1)
        assert result.value == 2
        assert is_valid_code(result.encoder, remark_comp1).valid

    def test_offsets_lie_in_known_spaces(self, remark_comp1):
        """Test every row of A lies in the receiver's known sender space"""
        result = mr.kappa(remark_comp1)
        for i, space in enumerate(remark_comp1.known_sender_spaces):
            assert linalg.contains(space, result.A.row(i))

    def test_receiver_without_side_information(self, gf2):
        """Test a receiver with no side information still gets a coset search"""
        coded = embed_iccsi(digraph_instance(Digraph.from_arcs(3, [(1, 2), (2, 1)])), gf2)
        assert coded.V[2].rows == 0
        result = mr.kappa(coded)
        assert result.value == 2
        assert is_valid_code(result.encoder, coded).valid


class TestMulticast:
    """Test multicast codes of length max(dim S - dim(S and X^(i)))"""

    def test_length(self, remark_comp1, fig4, gf5):
        """Test the multicast length of both examples"""
        assert mr.multicast_length(remark_comp1) == 2
        assert mr.multicast_length(embed_iccsi(fig4, gf5)) == 3

    def test_mds_code(self, fig4, gf5):
        """Test the parity code serves every receiver of the example"""
        coded = embed_iccsi(fig4, gf5)
        L = mr.multicast_matrix(coded)
        assert L.rows == 3
        assert is_valid_code(L, coded).valid

    def test_exhaustive_fallback(self, remark_comp1):
        """Test a non-coordinate side space falls back to the exhaustive search"""
        L = mr.multicast_matrix(remark_comp1)
        assert L.tolist() == [[0, 0, 1], [1, 0, 0]]
        assert is_valid_code(L, remark_comp1).valid

    def test_strict_field_size(self, remark_comp1):
        """Test strict mode needs more field elements than distinct side spaces"""
        with pytest.raises(FieldTooSmall):
            mr.multicast_matrix(remark_comp1, strict=True)


class TestFittingMatrixFromCode:
    """Test reading a fitting matrix off a valid linear code"""

    def test_length_two_code(self, fig4, gf2):
        """Test a length-2 code yields a rank-2 fitting matrix"""
        graph = to_digraph(fig4)
        M = mr.fitting_matrix_from_code(matrix(gf2, [[1, 1, 0, 0], [0, 1, 1, 1]]), graph)
        assert mr.fits(M, mr.fitting_pattern(graph))
        assert linalg.rank(M) == 2

    def test_invalid_code(self, fig4, gf2):
        """Test a code some vertex cannot decode is refused"""
        with pytest.raises(NotDecodable):
            mr.fitting_matrix_from_code(matrix(gf2, [[1, 1, 0, 0]]), to_digraph(fig4))


class TestMDS:
    """Test MDS generator families and the exhaustive check"""

    @pytest.mark.parametrize("k", [0, 1, 4, 5])
    def test_families_over_gf2(self, gf2, k):
        """Test trivial, repetition, parity and identity codes exist over GF(2)"""
        G = rs_generator(5, k, gf2)
        assert G.shape == (k, 5)
        assert is_mds(G)

    @pytest.mark.parametrize("s,k", [(5, 2), (5, 3), (4, 2)])
    def test_vandermonde(self, gf5, s, k):
        """Test Vandermonde generators are MDS when q >= s"""
        assert is_mds(rs_generator(s, k, gf5))

    def test_gf4_vandermonde(self, gf4):
        """Test the Vandermonde construction over GF(4)"""
        assert is_mds(rs_generator(4, 2, gf4))

    def test_field_too_small(self, gf3):
        """Test a [5, 2] Vandermonde code needs five points"""
        with pytest.raises(FieldTooSmall):
            rs_generator(5, 2, gf3)

    def test_dimension_range(self, gf5):
        """Test dimensions above the length are rejected"""
        with pytest.raises(ValueError):
            rs_generator(3, 4, gf5)

    def test_not_mds(self, gf2):
        """Test a zero column breaks the MDS property"""
        assert not is_mds(matrix(gf2, [[1, 1, 0]]))
        assert not is_mds(matrix(gf2, [[1, 0], [0, 1], [1, 1]]))

    def test_extension(self, gf2):
        """Test a [5, 3] code over GF(2) is built in GF(8)"""
        field = mds_field(gf2, 5, 3)
        assert (field.p, field.ell) == (2, 3)
        G, used = mds_generator(5, 3, gf2)
        assert used == field
        assert is_mds(G)
