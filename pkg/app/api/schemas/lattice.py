from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from app.domain.schemas import GraphDocument, PairDocument


class GraphRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    graph: GraphDocument


class PairsRequest(GraphRequest):
    pairs: List[PairDocument] = Field(min_length=1)
    verify: bool = False


class PairRequest(GraphRequest):
    pair: PairDocument
    verify: bool = False
    format: Literal["json", "dot"] = "json"


class MorphismRequest(GraphRequest):
    source: PairDocument
    target_kernel: List[str]


class MaxCovarianceRequest(GraphRequest):
    kernel: List[str]
    target: PairDocument


class FockRequest(GraphRequest):
    truncation: Optional[int] = Field(default=None, ge=0)
    verify: bool = False
