"""
Simulate Command
Build a scheme from its bound's certificate (or a design encoder) and run it on random data
"""

import argparse
from typing import Union

from icbound.commands.render import scheme_report_schema, subpacket_report_schema
from icbound.core.exceptions import PreconditionViolated
from icbound.dependencies import (
    add_common_arguments,
    field_arg,
    get_coded_instance,
    get_design,
    get_uncoded_instance,
    group_list,
    positive_int,
    rational_list,
)
from icbound.models.scheme import SchemeKind
from icbound.schemas.report import SchemeReportSchema, SubpacketSummarySchema
from icbound.services import design_service, scheme_service
from icbound.services.clique_service import phi_p_f
from icbound.services.finite_field import field_make
from icbound.utils.constants import SCHEME_NAMES
from icbound.utils.helpers import format_rational, to_labels


def _groups(instance, args):
    """Explicit --groups / --weights, else the fractional multicast certificate"""
    if args.groups:
        groups = [[j - 1 for j in g] for g in args.groups]
        weights = args.weights or [1] * len(groups)
        return groups, weights
    bound = phi_p_f(instance)
    return [sorted(g.members) for g in bound.groups], [g.weight for g in bound.groups]


def _run_no_mds(instance, args) -> SubpacketSummarySchema:
    groups, weights = _groups(instance, args)
    reports = scheme_service.subpacket_sweep(instance, groups, weights)
    return SubpacketSummarySchema(
        groups=[to_labels(g) for g in groups],
        weights=[format_rational(w) for w in weights],
        selections=[subpacket_report_schema(r) for r in reports],
        always_fails=all(r.failing for r in reports),
    )


def run_simulate(args: argparse.Namespace) -> Union[SchemeReportSchema, SubpacketSummarySchema]:
    """Plan the scheme, simulate `trials` random message sets and report the transcript"""
    if args.scheme == "design":
        if not args.design or args.p is None:
            raise PreconditionViolated("The design scheme needs --design and --p")
        uncoded = get_uncoded_instance(args.instance)
        bound = design_service.design_bound(uncoded, get_design(args.design), args.p)
        instance = get_coded_instance(args.instance, args.field or field_make(args.p))
        plan = scheme_service.scheme_from_encoder(instance, bound.encoder)
    else:
        instance = get_coded_instance(args.instance, args.field)
        if args.no_mds:
            return _run_no_mds(instance, args)
        plan = scheme_service.plan_scheme(
            instance, SchemeKind(args.scheme), fractional=args.fractional, budget=args.budget
        )
    transcript = scheme_service.simulate(instance, plan, trials=args.trials, seed=args.seed)
    return scheme_report_schema(transcript)


def register(subparsers) -> None:
    parser = subparsers.add_parser("simulate", help="run a scheme on random messages")
    parser.add_argument("instance", help="instance file or @fixture")
    parser.add_argument("--scheme", choices=SCHEME_NAMES, required=True, help="scheme family")
    parser.add_argument("--fractional", action="store_true", help="use the relaxed certificate")
    parser.add_argument("--trials", type=positive_int, help="random message sets (default 100)")
    parser.add_argument("--seed", type=int, help="random seed (default 0)")
    parser.add_argument("--field", type=field_arg, help="field for uncoded instances (default 2)")
    parser.add_argument("--budget", type=positive_int, help="search node budget for kappa")
    parser.add_argument("--design", help="design for the design scheme")
    parser.add_argument("--p", type=positive_int, help="prime for the design scheme")
    parser.add_argument(
        "--no-mds",
        action="store_true",
        help="multicast each group on one sub-block and report what every receiver recovers",
    )
    parser.add_argument("--groups", type=group_list, help='groups for --no-mds, e.g. "1,2,3;1,2,4;3,4"')
    parser.add_argument("--weights", type=rational_list, help='group weights for --no-mds, e.g. "1/2,1/2,1/2"')
    add_common_arguments(parser)
    parser.set_defaults(handler=run_simulate)
