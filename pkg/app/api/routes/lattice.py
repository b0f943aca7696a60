from __future__ import annotations

from typing import List

from fastapi import APIRouter, Query
from fastapi.responses import PlainTextResponse

from app.api.schemas.lattice import (
    FockRequest,
    GraphRequest,
    MaxCovarianceRequest,
    MorphismRequest,
    PairRequest,
    PairsRequest,
)
from app.domain import corpus
from app.domain.graph_model import Graph, graph_from_document
from app.domain.ideal_structure import Pair, pair_from_document
from app.domain.schemas import GraphDocument
from app.services import query_service as qs

router = APIRouter()


def _pairs(g: Graph, req: PairsRequest) -> List[Pair]:
    return [pair_from_document(g, p) for p in req.pairs]


@router.post("/check", summary="Valida um Graph JSON")
def check(doc: GraphDocument):
    return qs.check_graph(doc.model_dump())


@router.post("/pairs", summary="Reticulado completo de pares kernel-covariância")
def pairs(req: GraphRequest):
    return qs.lattice_payload(graph_from_document(req.graph))


@router.post("/meet")
def meet(req: PairsRequest):
    g = graph_from_document(req.graph)
    return qs.meet_payload(g, _pairs(g, req), verify=req.verify)


@router.post("/join")
def join(req: PairsRequest):
    g = graph_from_document(req.graph)
    return qs.join_payload(g, _pairs(g, req), verify=req.verify)


@router.post("/morphism", summary="Morfismo de conexão (menor covariância sobre o kernel alvo)")
def morphism(req: MorphismRequest):
    g = graph_from_document(req.graph)
    return qs.morphism_payload(g, pair_from_document(g, req.source), req.target_kernel)


@router.post("/morphism/max", summary="Maior covariância com kernel dado abaixo do alvo")
def morphism_max(req: MaxCovarianceRequest):
    g = graph_from_document(req.graph)
    return qs.max_covariance_payload(g, req.kernel, pair_from_document(g, req.target))


@router.post("/dilate")
def dilate(req: PairRequest):
    g = graph_from_document(req.graph)
    p = pair_from_document(g, req.pair)
    if req.format == "dot":
        return PlainTextResponse(qs.dilate_dot(g, p), media_type="text/vnd.graphviz")
    return qs.dilate_payload(g, p)


@router.post("/realize", summary="Álgebra de Cuntz-Pimsner relativa (grafos acíclicos)")
def realize(req: PairRequest):
    g = graph_from_document(req.graph)
    return qs.realize_payload(g, pair_from_document(g, req.pair), verify=req.verify)


@router.post("/fock")
def fock(req: FockRequest):
    return qs.fock_payload(graph_from_document(req.graph), req.truncation, verify=req.verify)


@router.get("/dot", response_class=PlainTextResponse, summary="DOT do reticulado (corpus)")
def dot(name: str = Query(..., description="Nome no corpus, ex.: G1")):
    return PlainTextResponse(
        qs.lattice_dot(corpus.named_graph(name)), media_type="text/vnd.graphviz"
    )
