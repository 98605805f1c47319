"""
Report Rendering
Domain results to report schemas, and schemas to JSON or plain-text tables
"""

import json
from typing import Dict, List, Optional

from pydantic import BaseModel

from icbound.models.bounds import BoundReport, BoundValue
from icbound.models.matrix import FqMatrix
from icbound.models.scheme import SchemeTranscript, SubpacketReport
from icbound.schemas.report import (
    BoundReportSchema,
    CertificateSchema,
    CoverEntrySchema,
    GroupEntrySchema,
    SchemeReportSchema,
    SubpacketReportSchema,
)
from icbound.utils.constants import PARAMETER_LABELS, PARAMETER_ORDER
from icbound.utils.helpers import format_rational, to_labels


def matrix_rows(M: Optional[FqMatrix]) -> Optional[List[List[int]]]:
    return None if M is None else M.tolist()


def certificate_schema(bound: BoundValue) -> CertificateSchema:
    return CertificateSchema(
        cover=[
            CoverEntrySchema(
                members=to_labels(e.members),
                weight=format_rational(e.weight),
                vector=None if e.vector is None else list(e.vector),
            )
            for e in bound.cover
        ],
        groups=[
            GroupEntrySchema(
                members=to_labels(g.members),
                weight=format_rational(g.weight),
                cost=format_rational(g.cost),
            )
            for g in bound.groups
        ],
        local=None if bound.local is None else format_rational(bound.local),
        nodes=bound.nodes,
    )


def bound_report_schema(
    report: BoundReport, certificates: bool = False, elapsed: Optional[float] = None
) -> BoundReportSchema:
    return BoundReportSchema(
        m=report.m,
        n=report.n,
        field=report.field,
        values={b.name: format_rational(b.value) for b in report},
        certificates={b.name: certificate_schema(b) for b in report} if certificates else None,
        elapsed=elapsed,
    )


def scheme_report_schema(transcript: SchemeTranscript) -> SchemeReportSchema:
    plan = transcript.plan
    return SchemeReportSchema(
        scheme=plan.kind.value,
        field=str(plan.field),
        extended=plan.extended,
        split=plan.split,
        transmissions=plan.transmissions,
        rate=format_rational(plan.rate),
        parameters=plan.parameters,
        trials=transcript.trials,
        seed=transcript.seed,
        failures=transcript.failures,
        decoded=list(transcript.success),
        words=list(transcript.words),
    )


def subpacket_report_schema(report: SubpacketReport) -> SubpacketReportSchema:
    return SubpacketReportSchema(
        selection=[a + 1 for a in report.selection],
        recovered=[to_labels(got) for got in report.recovered],
        failing=to_labels(report.failing),
    )


def to_json(report: BaseModel) -> str:
    """Canonical machine output: None fields dropped, keys in schema order"""
    return json.dumps(report.model_dump(mode="json", exclude_none=True), indent=2)


def _bounds_table(report: BoundReportSchema) -> str:
    lines = [f"{'parameter':<12} {'value':>8}  description"]
    for name in sorted(report.values, key=PARAMETER_ORDER.index):
        lines.append(f"{name:<12} {report.values[name]:>8}  {PARAMETER_LABELS[name]}")
    return "\n".join(lines)


def _cell(value) -> str:
    if isinstance(value, dict):
        return ", ".join(f"{k}: {_cell(v)}" for k, v in value.items())
    if isinstance(value, list):
        return "[" + ", ".join(_cell(v) for v in value) + "]"
    return str(value)


def _key_value_table(data: Dict) -> str:
    if not data:
        return ""
    width = max(len(k) for k in data)
    return "\n".join(f"{k:<{width}}  {_cell(v)}" for k, v in data.items())


def to_table(report: BaseModel) -> str:
    """
    Human-readable rendering

    Bound reports list one row per parameter in the bound order (smaller bounds first);
    other reports print one field per line.
    """
    if isinstance(report, BoundReportSchema):
        return _bounds_table(report)
    return _key_value_table(report.model_dump(mode="json", exclude_none=True))


def render(report: BaseModel, fmt: str = "json") -> str:
    return to_table(report) if fmt == "table" else to_json(report)
