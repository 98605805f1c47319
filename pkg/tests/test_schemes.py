"""
Scheme Tests
Plans built from bound certificates, their decoders and seeded simulation
"""

from fractions import Fraction

import numpy as np
import pytest

from icbound.core.exceptions import PreconditionViolated, SchemeFailure
from icbound.models.graph import Digraph
from icbound.models.scheme import SchemeKind
from icbound.services import scheme_service as ss
from icbound.services.clique_service import compute_bounds
from icbound.services.design_service import design_bound
from icbound.services.finite_field import field_make
from icbound.services.instance_service import digraph_instance

from tests.conftest import matrix, random_iccsi

GF4_COVER = [[0, 1], [2, 3], [4, 5]]
GF4_BASE = [(1, 1, 0, 0, 0, 0), (0, 0, 1, 1, 0, 0)]
FIG4_GROUPS = [[0, 1, 2], [0, 1, 3], [2, 3]]
HALF = Fraction(1, 2)


@pytest.fixture
def c5():
    arcs = [a for i in range(1, 6) for a in ((i, i % 5 + 1), (i % 5 + 1, i))]
    return digraph_instance(Digraph.from_arcs(5, arcs))


class TestPlansMatchBounds:
    """Test every scheme family sends exactly its bound"""

    @pytest.mark.parametrize("kind", ["clique", "local", "multicast", "partitioned-local"])
    @pytest.mark.parametrize("fractional", [False, True])
    def test_fig4(self, fig4, kind, fractional):
        """Test the plan rate equals the bound and every receiver decodes"""
        plan = ss.plan_scheme(fig4, kind, fractional)
        name = ss.BOUND_FOR_SCHEME[(SchemeKind(kind), fractional)]
        assert plan.rate == compute_bounds(fig4, [name]).value(name)
        transcript = ss.simulate(fig4, plan, trials=20, seed=1)
        assert transcript.failures == 0
        assert all(transcript.success)

    def test_kappa(self, remark_comp1):
        """Test the kappa scheme sends two rows on the three-receiver example"""
        plan = ss.plan_scheme(remark_comp1, SchemeKind.KAPPA)
        assert plan.transmissions == 2
        assert ss.simulate(remark_comp1, plan, trials=10).failures == 0

    @pytest.mark.parametrize("q", [2, 3])
    @pytest.mark.parametrize("seed", range(50))
    def test_random_coded(self, seed, q):
        """Test every family sends its bound and decodes on random coded instances"""
        rng = np.random.default_rng(1000 * q + seed)
        top = 5 if q == 2 else 4
        n, m = (int(x) for x in rng.integers(2, top + 1, size=2))
        instance = random_iccsi(rng, field_make(q), n, m)
        report = compute_bounds(instance)
        for (kind, fractional), name in ss.BOUND_FOR_SCHEME.items():
            plan = ss.plan_scheme(instance, kind, fractional)
            assert plan.rate == report.value(name)
            assert ss.simulate(instance, plan, trials=10, seed=seed).failures == 0
        plan = ss.plan_scheme(instance, SchemeKind.KAPPA)
        assert plan.transmissions == report.value("kappa")
        assert ss.simulate(instance, plan, trials=10, seed=seed).failures == 0


class TestCliqueScheme:
    """Test the clique cover scheme"""

    def test_cycle_integral(self, c5):
        """Test three clique transmissions on the 5-cycle"""
        plan = ss.plan_scheme(c5, SchemeKind.CLIQUE)
        assert plan.transmissions == 3
        assert plan.split == 1
        assert not plan.extended

    def test_cycle_fractional(self, c5):
        """Test five half-size transmissions need an extension of GF(2)"""
        plan = ss.plan_scheme(c5, SchemeKind.CLIQUE, fractional=True)
        assert plan.rate == Fraction(5, 2)
        assert plan.split == 2
        assert plan.extended
        transcript = ss.simulate(c5, plan, trials=10)
        assert transcript.failures == 0
        assert len(transcript.words) == 5

    def test_bad_vector(self, c5):
        """Test a vector outside the coding set of its clique is refused"""
        cover = [[0, 1], [2], [3], [4]]
        vectors = [(1, 0, 0, 0, 0), (0, 0, 1, 0, 0), (0, 0, 0, 1, 0), (0, 0, 0, 0, 1)]
        with pytest.raises(PreconditionViolated):
            ss.scheme_clique_cover(c5, cover, vectors)

    def test_bad_weights(self, c5):
        """Test weights must give every receiver total weight one"""
        vectors = [(1, 1, 0, 0, 0), (0, 0, 1, 1, 0), (0, 0, 0, 0, 1)]
        with pytest.raises(PreconditionViolated):
            ss.scheme_clique_cover(c5, [[0, 1], [2, 3], [4]], vectors, [1, HALF, 1])


class TestLocalScheme:
    """Test the local clique scheme on the GF(4) example"""

    def test_two_transmissions(self, gf4_remark):
        """Test v = x5 + x6 for the third clique allows k = 2"""
        plan = ss.scheme_local_clique(gf4_remark, GF4_COVER, GF4_BASE + [(0, 0, 0, 0, 1, 1)])
        assert plan.transmissions == 2
        assert plan.parameters["k"] == 2
        assert ss.simulate(gf4_remark, plan, trials=25, seed=3).failures == 0

    def test_three_transmissions(self, gf4_remark):
        """Test v = x5 + alpha x6 forces k = 3"""
        plan = ss.scheme_local_clique(gf4_remark, GF4_COVER, GF4_BASE + [(0, 0, 0, 0, 1, 2)])
        assert plan.transmissions == 3
        assert ss.simulate(gf4_remark, plan, trials=10).failures == 0

    def test_partitioned(self, gf4_remark):
        """Test one group per clique sends each clique vector once"""
        plan = ss.scheme_partitioned_local(gf4_remark, GF4_COVER, GF4_COVER, GF4_BASE + [(0, 0, 0, 0, 1, 1)])
        assert plan.transmissions == 3
        assert ss.simulate(gf4_remark, plan, trials=10).failures == 0


class TestMulticastScheme:
    """Test the partition multicast scheme and the sub-block selection without MDS"""

    def test_fig4_fractional(self, fig4):
        """Test three half-weight groups send five half-size rows"""
        plan = ss.scheme_partition_multicast(fig4, FIG4_GROUPS, [HALF] * 3)
        assert plan.split == 2
        assert plan.transmissions == 5
        assert ss.simulate(fig4, plan, trials=20).failures == 0

    def test_groups_must_partition(self, fig4):
        """Test uncovered receivers are refused"""
        with pytest.raises(PreconditionViolated):
            ss.scheme_partition_multicast(fig4, [[0, 1, 2]])

    def test_sweep_without_mds_always_fails(self, fig4):
        """Test every fixed sub-block selection leaves some receiver short"""
        reports = ss.subpacket_sweep(fig4, FIG4_GROUPS, [HALF] * 3)
        assert len(reports) == 8
        assert all(report.failing for report in reports)

    def test_selection_length(self, fig4):
        """Test a selection needs one sub-block per group copy"""
        with pytest.raises(PreconditionViolated):
            ss.naive_subpacket_multicast(fig4, FIG4_GROUPS, [0, 1], [HALF] * 3)


class TestEncoderScheme:
    """Test schemes sending the rows of a given code"""

    def test_design_encoder(self, fano, fano_design):
        """Test the design-bound encoder serves all seven Fano receivers"""
        bound = design_bound(fano, fano_design, 2)
        plan = ss.scheme_from_encoder(fano, bound.encoder)
        assert plan.transmissions == 4
        assert ss.simulate(fano, plan, trials=30).failures == 0

    def test_failing_encoder(self, fig4, gf2):
        """Test simulation reports receivers without a decoder"""
        plan = ss.scheme_from_encoder(fig4, matrix(gf2, [[1, 1, 0, 0]]))
        traces = ss.decode_traces(fig4, plan)
        assert [t.decodable for t in traces] == [True, False, False, False]
        with pytest.raises(SchemeFailure):
            ss.simulate(fig4, plan)

    def test_seeded_words(self, fig4, gf2):
        """Test the same seed reproduces the transmitted words"""
        plan = ss.scheme_from_encoder(fig4, matrix(gf2, [[1, 1, 0, 0], [0, 1, 1, 1]]))
        first = ss.simulate(fig4, plan, trials=5, seed=11)
        second = ss.simulate(fig4, plan, trials=5, seed=11)
        assert first.words == second.words
        assert first.seed == 11
