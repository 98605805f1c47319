# icbound/schemas/__init__.py
"""
Pydantic schemas for the JSON file formats and command reports
"""

from icbound.schemas.design import DesignSchema
from icbound.schemas.instance import IccsiSchema, IcsiSchema, InstanceDocument
from icbound.schemas.report import BoundReportSchema, SchemeReportSchema, SubpacketSummarySchema

__all__ = [
    "DesignSchema",
    "IcsiSchema",
    "IccsiSchema",
    "InstanceDocument",
    "BoundReportSchema",
    "SchemeReportSchema",
    "SubpacketSummarySchema",
]
