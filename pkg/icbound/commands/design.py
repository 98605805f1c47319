"""
Design Commands
design, design-bound, secrecy, adversary and weights
"""

import argparse

from icbound.commands.render import matrix_rows
from icbound.dependencies import (
    add_common_arguments,
    get_design,
    get_uncoded_instance,
    label_list,
    positive_int,
)
from icbound.models.design import Design
from icbound.schemas.report import (
    AdversaryReportSchema,
    DesignBoundSchema,
    DesignReportSchema,
    KlemmSchema,
    SecrecyReportSchema,
    WeightReportSchema,
)
from icbound.services import design_service
from icbound.utils.helpers import format_rational


def run_design(args: argparse.Namespace) -> DesignReportSchema:
    """Validate a design; with --p also its p-rank and the rank bounds"""
    design: Design = get_design(args.design)
    klemm = None
    rank = None
    if args.p is not None:
        rank = design_service.p_rank(design, args.p)
        if design.order % args.p == 0:
            report = design_service.klemm_check(design, args.p)
            klemm = KlemmSchema(
                p=report.p,
                rank=report.rank,
                upper_bound=format_rational(report.upper_bound),
                upper_holds=report.upper_holds,
                containment_claimed=report.containment_claimed,
                dual_contained=report.dual_contained,
                lower_holds=report.lower_holds,
                passed=report.passed,
            )
    return DesignReportSchema(
        design=str(design),
        v=design.v,
        b=design.b,
        k=design.k,
        r=design.r,
        lam=design.lam,
        order=design.order,
        symmetric=design.is_symmetric,
        projective_plane=design.is_projective_plane,
        p_rank=rank,
        klemm=klemm,
    )


def run_design_bound(args: argparse.Namespace) -> DesignBoundSchema:
    """minrk <= rank_p(D) for an instance containing D"""
    instance = get_uncoded_instance(args.instance)
    design = get_design(args.design)
    containment = design_service.contains_design(instance, design)
    bound = design_service.design_bound(instance, design, args.p)
    return DesignBoundSchema(
        p=bound.p,
        bound=bound.bound,
        half_bound=format_rational(bound.half_bound),
        contains=containment.contains,
        coincides=containment.coincides,
        witness=[None if w is None else w + 1 for w in containment.witness],
        receivers_used=[i + 1 for i in bound.receivers_used],
        encoder=matrix_rows(bound.encoder),
    )


def run_secrecy(args: argparse.Namespace) -> SecrecyReportSchema:
    """Exhaustive check that no receiver learns a message it neither holds nor demands"""
    instance = get_uncoded_instance(args.instance)
    report = design_service.secrecy_check(instance, get_design(args.design), args.p)
    return SecrecyReportSchema(
        p=report.p,
        pairs_checked=report.pairs_checked,
        leaks=[list(pair) for pair in report.leaks],
        passed=report.passed,
    )


def run_adversary(args: argparse.Namespace) -> AdversaryReportSchema:
    """Eavesdropper hypotheses and exhaustive recoverability"""
    instance = get_uncoded_instance(args.instance) if args.instance else None
    report = design_service.adversary_check(get_design(args.design), args.known, args.p, instance)
    return AdversaryReportSchema(
        p=report.p,
        known=sorted(report.known),
        plane_ok=report.plane_ok,
        size_ok=report.size_ok,
        blocks_ok=report.blocks_ok,
        violating_block=None if report.violating_block is None else sorted(report.violating_block),
        recoverable=list(report.recoverable),
        block_recoverable=list(report.block_recoverable),
        hypotheses_hold=report.hypotheses_hold,
        safe=report.safe,
    )


def run_weights(args: argparse.Namespace) -> WeightReportSchema:
    """Minimum weight, minimal words and the weight gap of a plane's code"""
    report = design_service.weight_checks(get_design(args.design), args.p, limit=args.limit)
    return WeightReportSchema(
        p=report.p,
        order=report.order,
        min_weight=report.min_weight,
        expected_min_weight=report.expected_min_weight,
        minimal_words=report.minimal_words,
        minimal_are_block_multiples=report.minimal_are_block_multiples,
        gap=report.gap,
        gap_empty=report.gap_empty,
        distribution={str(w): c for w, c in sorted(report.distribution.items())},
        passed=report.passed,
    )


def _prime(text: str) -> int:
    value = positive_int(text)
    if value < 2:
        raise argparse.ArgumentTypeError(f"{value} is not a prime")
    return value


def register(subparsers) -> None:
    design_help = 'design file, @fixture or "plane:r"'

    parser = subparsers.add_parser("design", help="validate a design and check its p-rank bounds")
    parser.add_argument("design", help=design_help)
    parser.add_argument("--p", type=_prime, help="prime for the p-rank")
    add_common_arguments(parser)
    parser.set_defaults(handler=run_design)

    parser = subparsers.add_parser("design-bound", help="min-rank bound from a contained design")
    parser.add_argument("instance", help="uncoded instance")
    parser.add_argument("design", help=design_help)
    parser.add_argument("--p", type=_prime, required=True, help="prime dividing the order")
    add_common_arguments(parser)
    parser.set_defaults(handler=run_design_bound)

    parser = subparsers.add_parser("secrecy", help="receivers learn nothing beyond their demand")
    parser.add_argument("instance", help="uncoded instance coinciding with the plane")
    parser.add_argument("design", help=design_help)
    parser.add_argument("--p", type=_prime, required=True, help="prime dividing the order")
    add_common_arguments(parser)
    parser.set_defaults(handler=run_secrecy)

    parser = subparsers.add_parser("adversary", help="what an eavesdropper can recover")
    parser.add_argument("design", help=design_help)
    parser.add_argument("--known", type=label_list, required=True, help='side information, e.g. "1,2"')
    parser.add_argument("--p", type=_prime, required=True, help="order of the plane")
    parser.add_argument("--instance", help="instance that should contain the plane")
    add_common_arguments(parser)
    parser.set_defaults(handler=run_adversary)

    parser = subparsers.add_parser("weights", help="codeword weights of a plane's code")
    parser.add_argument("design", help=design_help)
    parser.add_argument("--p", type=_prime, required=True, help="prime dividing the order")
    parser.add_argument("--limit", type=positive_int, help="codeword enumeration limit")
    add_common_arguments(parser)
    parser.set_defaults(handler=run_weights)
