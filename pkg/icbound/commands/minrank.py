"""
Min-rank Commands
minrank, kappa, reduce and classify
"""

import argparse
import logging

from icbound.commands.render import matrix_rows
from icbound.core.logging import log_duration
from icbound.dependencies import (
    add_common_arguments,
    field_arg,
    get_coded_instance,
    get_uncoded_instance,
    positive_int,
)
from icbound.models.graph import Digraph
from icbound.models.instance import IcsiInstance
from icbound.schemas.report import (
    ClassifyReportSchema,
    MinrankReportSchema,
    ReduceReportSchema,
    ReductionStepSchema,
)
from icbound.services import digraph_service, linalg, minrank_service
from icbound.services.finite_field import field_make
from icbound.services.instance_service import to_digraph, to_hypergraph
from icbound.utils.validators import is_prime

logger = logging.getLogger(__name__)


def _graph(instance: IcsiInstance):
    """Digraph for canonical instances, hypergraph otherwise"""
    return to_digraph(instance) if instance.is_canonical else to_hypergraph(instance)


def run_minrank(args: argparse.Namespace) -> MinrankReportSchema:
    """Exact min-rank with an optimal fitting matrix, optionally the rank histogram"""
    field = args.field or field_make(2)
    graph = _graph(get_uncoded_instance(args.instance))
    with log_duration("minrank") as timer:
        result = minrank_service.minrank(graph, field, budget=args.budget)
        distribution = None
        if args.distribution:
            counts = minrank_service.rank_distribution(graph, field, budget=args.budget)
            distribution = {str(r): c for r, c in counts.items()}
    return MinrankReportSchema(
        field=str(field),
        value=result.value,
        nodes=result.nodes,
        certificate=matrix_rows(result.certificate),
        distribution=distribution,
        elapsed=timer.elapsed if args.timing else None,
    )


def run_kappa(args: argparse.Namespace) -> MinrankReportSchema:
    """Optimal scalar linear length of a coded instance, with the transmitted rows"""
    instance = get_coded_instance(args.instance, args.field)
    with log_duration("kappa") as timer:
        result = minrank_service.kappa(instance, budget=args.budget)
    return MinrankReportSchema(
        field=str(instance.field),
        value=result.value,
        nodes=result.nodes,
        certificate=matrix_rows(result.code_rows),
        elapsed=timer.elapsed if args.timing else None,
    )


def _prime_above(n: int) -> int:
    p = n + 1
    while not is_prime(p):
        p += 1
    return p


def _digraph(path: str) -> Digraph:
    return to_digraph(get_uncoded_instance(path))


def run_reduce(args: argparse.Namespace) -> ReduceReportSchema:
    """Decide minrk = n - 1 and, for tau = 2, trace the rank n - 2 construction"""
    graph = _digraph(args.instance)
    field = args.field or field_make(_prime_above(graph.n))
    decision = digraph_service.decide_minrank_n_minus_1(graph, field)
    logger.info(f"minrk = n - 1 over {field}: {decision.holds} ({decision.reason})")
    steps = []
    certificate = decision.certificate
    if decision.tau == 2:
        trace = digraph_service.tau_two_reduction(graph, field)
        steps = [
            ReductionStepSchema(
                kind=s.kind, vertex=s.i1, target=s.i2 if s.kind == "contract" else None
            )
            for s in trace.steps
        ]
        certificate = trace.certificate
    return ReduceReportSchema(
        n=graph.n,
        field=str(field),
        holds=decision.holds,
        tau=decision.tau,
        reason=decision.reason,
        steps=steps,
        certificate=matrix_rows(certificate),
        certificate_rank=None if certificate is None else linalg.rank(certificate),
    )


def run_classify(args: argparse.Namespace) -> ClassifyReportSchema:
    """Min-rank from the near-extreme table"""
    graph = _digraph(args.instance)
    field = args.field or field_make(2)
    result = digraph_service.classify_near_extreme(graph, field)
    return ClassifyReportSchema(
        n=graph.n,
        field=str(field),
        value=None if result is None else result.value,
        reason=None if result is None else result.reason,
    )


def register(subparsers) -> None:
    parser = subparsers.add_parser("minrank", help="exact min-rank of an uncoded instance")
    parser.add_argument("instance", help="instance file or @fixture")
    parser.add_argument("--field", type=field_arg, help="field q or p^ell (default 2)")
    parser.add_argument("--distribution", action="store_true", help="rank histogram of all fitting matrices")
    parser.add_argument("--budget", type=positive_int, help="search node budget")
    parser.add_argument("--timing", action="store_true", help="include elapsed seconds")
    add_common_arguments(parser)
    parser.set_defaults(handler=run_minrank)

    parser = subparsers.add_parser("kappa", help="optimal scalar linear length of a coded instance")
    parser.add_argument("instance", help="instance file or @fixture")
    parser.add_argument("--field", type=field_arg, help="field for uncoded instances (default 2)")
    parser.add_argument("--budget", type=positive_int, help="search node budget")
    parser.add_argument("--timing", action="store_true", help="include elapsed seconds")
    add_common_arguments(parser)
    parser.set_defaults(handler=run_kappa)

    parser = subparsers.add_parser("reduce", help="decide minrk = n - 1 and reduce tau = 2 digraphs")
    parser.add_argument("instance", help="canonical uncoded instance")
    parser.add_argument("--field", type=field_arg, help="field with q > n")
    add_common_arguments(parser)
    parser.set_defaults(handler=run_reduce)

    parser = subparsers.add_parser("classify", help="near-extreme min-rank table")
    parser.add_argument("instance", help="canonical uncoded instance")
    parser.add_argument("--field", type=field_arg, help="field (default 2)")
    add_common_arguments(parser)
    parser.set_defaults(handler=run_classify)
