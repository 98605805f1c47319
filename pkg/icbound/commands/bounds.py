"""
Bounds Command
Clique, multicast and local parameters of an instance
"""

import argparse

from icbound.commands.render import bound_report_schema
from icbound.core.logging import log_duration
from icbound.dependencies import (
    add_common_arguments,
    field_arg,
    get_coded_instance,
    parameter_list,
    positive_int,
)
from icbound.schemas.report import BoundReportSchema
from icbound.services.clique_service import compute_bounds
from icbound.utils.constants import PARAMETER_ORDER


def run_bounds(args: argparse.Namespace) -> BoundReportSchema:
    """Evaluate the requested parameters (all of them with --all or no --params)"""
    instance = get_coded_instance(args.instance, args.field)
    params = None if args.all or not args.params else args.params
    with log_duration("bounds") as timer:
        report = compute_bounds(instance, params, budget=args.budget)
    return bound_report_schema(
        report,
        certificates=args.certificates,
        elapsed=timer.elapsed if args.timing else None,
    )


def register(subparsers) -> None:
    parser = subparsers.add_parser("bounds", help="clique, multicast and local parameters")
    parser.add_argument("instance", help="instance file or @fixture")
    parser.add_argument(
        "--params",
        type=parameter_list,
        help=f"comma separated subset of: {', '.join(PARAMETER_ORDER)}",
    )
    parser.add_argument("--all", action="store_true", help="every parameter")
    parser.add_argument("--certificates", action="store_true", help="include covers, groups and vectors")
    parser.add_argument("--field", type=field_arg, help="field for uncoded instances (default 2)")
    parser.add_argument("--budget", type=positive_int, help="search node budget for kappa")
    parser.add_argument("--timing", action="store_true", help="include elapsed seconds")
    add_common_arguments(parser)
    parser.set_defaults(handler=run_bounds)
