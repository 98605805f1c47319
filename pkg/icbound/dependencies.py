"""
Command Dependencies
Argument types and loaders shared by the sub-commands
"""

import argparse
from fractions import Fraction
from typing import List, Optional, Union

from icbound.core.exceptions import IcboundException, InstanceFormatError
from icbound.models.design import Design
from icbound.models.field import FieldSpec
from icbound.models.instance import IccsiInstance, IcsiInstance
from icbound.services.design_service import load_design, projective_plane
from icbound.services.finite_field import field_from_spec, field_make
from icbound.services.instance_service import as_iccsi, load_instance
from icbound.utils.constants import OUTPUT_FORMATS, PARAMETER_ORDER
from icbound.utils.helpers import parse_rational

Instance = Union[IcsiInstance, IccsiInstance]

PLANE_PREFIX = "plane:"


def field_arg(text: str) -> FieldSpec:
    """argparse type for "p", "q" or "p^ell" """
    try:
        return field_from_spec(text)
    except (IcboundException, ValueError) as e:
        raise argparse.ArgumentTypeError(f"invalid field {text!r}: {e}")


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if value < 1:
        raise argparse.ArgumentTypeError(f"{value} must be positive")
    return value


def label_list(text: str) -> List[int]:
    """Comma separated 1-based labels, e.g. "1,3,4" """
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma separated list of integers")


def group_list(text: str) -> List[List[int]]:
    """Semicolon separated groups of 1-based labels, e.g. "1,2,3;1,2,4;3,4" """
    return [label_list(part) for part in text.split(";") if part.strip()]


def name_list(text: str) -> List[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


def parameter_list(text: str) -> List[str]:
    """Comma separated parameter names, each one of PARAMETER_ORDER"""
    names = name_list(text)
    unknown = [name for name in names if name not in PARAMETER_ORDER]
    if unknown:
        raise argparse.ArgumentTypeError(
            f"unknown parameters {', '.join(unknown)}; choose from {', '.join(PARAMETER_ORDER)}"
        )
    return names


def rational_list(text: str) -> List[Fraction]:
    """Comma separated rationals, e.g. "1/2,1/2,1" """
    try:
        return [parse_rational(x) for x in name_list(text)]
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma separated list of rationals")


def add_common_arguments(parser: argparse.ArgumentParser) -> None:
    """Output format and verbosity, accepted by every sub-command"""
    parser.add_argument("--format", choices=OUTPUT_FORMATS, default="json", help="output format")
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="log progress (-vv for debug output)"
    )


def get_instance(path: str) -> Instance:
    return load_instance(path)


def get_coded_instance(path: str, field: Optional[FieldSpec] = None) -> IccsiInstance:
    """ICCSI instance; ICSI files are embedded over `field` (default GF(2))"""
    instance = load_instance(path)
    if isinstance(instance, IcsiInstance):
        return as_iccsi(instance, field or field_make(2))
    if field is not None and field != instance.field:
        raise InstanceFormatError(f"Instance is over {instance.field}, not {field}")
    return instance


def get_uncoded_instance(path: str) -> IcsiInstance:
    instance = load_instance(path)
    if not isinstance(instance, IcsiInstance):
        raise InstanceFormatError("This command needs an uncoded (icsi) instance")
    return instance


def get_design(text: str) -> Design:
    """A design file, a bundled @fixture, or "plane:r" for PG(2, r)"""
    if text.startswith(PLANE_PREFIX):
        order = text[len(PLANE_PREFIX):]
        if not order.isdigit():
            raise InstanceFormatError(f"Expected {PLANE_PREFIX}<order>, got {text!r}")
        return projective_plane(int(order))
    return load_design(text)
