from __future__ import annotations

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


# ===== Grafo =====
class EdgeDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: str
    src: str
    rng: str


class GraphDocument(BaseModel):
    """Graph JSON: a ordem dos campos é o contrato de serialização."""

    model_config = ConfigDict(
        extra="forbid",
        json_schema_extra={
            "examples": [
                {"vertices": ["a", "b"], "edges": [{"id": "z", "src": "a", "rng": "b"}]},
            ]
        },
    )

    vertices: List[str]
    edges: List[EdgeDocument] = Field(default_factory=list)


# ===== Par kernel-covariância (forma pullback) =====
class PairDocument(BaseModel):
    model_config = ConfigDict(
        extra="forbid",
        json_schema_extra={"examples": [{"kernel": [], "covariance": ["b"]}]},
    )

    kernel: List[str] = Field(default_factory=list)
    covariance: List[str] = Field(default_factory=list)


class LatticeDocument(BaseModel):
    pairs: List[PairDocument]
    covers: List[List[int]]


class DilationDocument(BaseModel):
    graph: GraphDocument
    vertex_map: Dict[str, str]
    copy_map: Dict[str, str]
    edge_map: Dict[str, str]
    copy_edge_map: Dict[str, str]


class RelationDefect(BaseModel):
    name: str
    max_defect: int | float


class RealizationDims(BaseModel):
    toeplitz: int
    ideal: int
    quotient: int
    center: int


class ReportDocument(BaseModel):
    relations: List[RelationDefect] = Field(default_factory=list)
    dims: Optional[RealizationDims] = None
    extra: Dict[str, Any] = Field(default_factory=dict)
