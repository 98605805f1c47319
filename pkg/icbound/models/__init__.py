# icbound/models/__init__.py
"""
Immutable domain types
"""

from icbound.models.field import FieldSpec
from icbound.models.matrix import FqMatrix, Subspace
from icbound.models.graph import Digraph, Hyperarc, Hypergraph
from icbound.models.instance import IccsiInstance, IcsiInstance
from icbound.models.design import Design
from icbound.models.bounds import BoundReport, BoundValue, GeneralizedClique
from icbound.models.scheme import SchemeKind, SchemePlan, SchemeTranscript

__all__ = [
    "FieldSpec",
    "FqMatrix",
    "Subspace",
    "Digraph",
    "Hyperarc",
    "Hypergraph",
    "IcsiInstance",
    "IccsiInstance",
    "Design",
    "BoundReport",
    "BoundValue",
    "GeneralizedClique",
    "SchemeKind",
    "SchemePlan",
    "SchemeTranscript",
]
