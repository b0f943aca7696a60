"""Adaptadores finos: operações do domínio -> payloads JSON estáveis.

A CLI e as rotas HTTP passam por aqui, então os dois devolvem exatamente o
mesmo documento para a mesma entrada.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence

import structlog

from app.core.config import settings
from app.domain import corpus
from app.domain.dilation import katsura_dilation
from app.domain.errors import GaugeLatticeError, UnsupportedComputation
from app.domain.fock import (
    build_fock,
    check_relations,
    katsura_embedding_check,
    relative_cp_dimension,
    verify_kernel_covariance,
)
from app.domain.graph_model import Graph, graph_to_dot, is_acyclic, parse_graph
from app.domain.ideal_structure import (
    Pair,
    is_saturated,
    regular_vertices,
    require_hereditary,
    set_key,
)
from app.domain.lattice_engine import (
    brute_force_glb,
    brute_force_lub,
    enumerate_pairs,
    join,
    lattice_to_dot,
    max_covariance_from,
    meet,
    min_covariance_to,
)
from app.domain.schemas import (
    LatticeDocument,
    RealizationDims,
    RelationDefect,
    ReportDocument,
)

log = structlog.get_logger()

Payload = Dict[str, Any]

STATUS_OK = "ok"
STATUS_INVALID = "invalid-input"
STATUS_UNSUPPORTED = "unsupported"

_EXIT_CODES = {STATUS_OK: 0, STATUS_INVALID: 1, STATUS_UNSUPPORTED: 2}


@dataclass(frozen=True)
class CommandResult:
    status: str
    payload: Payload
    text: Optional[str] = None  # saída DOT

    @property
    def exit_code(self) -> int:
        return _EXIT_CODES[self.status]

    def render(self) -> str:
        if self.text is not None:
            return self.text
        return dump_json(self.payload) + "\n"


def dump_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def execute(fn: Callable[..., Any], *args: Any, **kwargs: Any) -> CommandResult:
    """Roda um comando e converte erros de domínio no envelope ``{"error": ...}``."""
    try:
        out = fn(*args, **kwargs)
    except UnsupportedComputation as e:
        log.warning("command_unsupported", code=e.code, command=fn.__name__)
        return CommandResult(status=STATUS_UNSUPPORTED, payload={"error": e.to_payload()})
    except GaugeLatticeError as e:
        log.warning("command_invalid_input", code=e.code, command=fn.__name__)
        return CommandResult(status=STATUS_INVALID, payload={"error": e.to_payload()})
    if isinstance(out, str):
        return CommandResult(status=STATUS_OK, payload={}, text=out)
    return CommandResult(status=STATUS_OK, payload=out)


# ---- helpers de serialização ----
def pair_payload(p: Pair) -> Payload:
    return p.to_document().model_dump()


def _sorted(s: Any) -> List[str]:
    return list(set_key(s)[1])


# ---- comandos ----
def check_graph(document: str | bytes | Dict[str, Any]) -> Payload:
    g = parse_graph(document)
    return {
        "valid": True,
        "vertices": len(g.vertices),
        "edges": len(g.edges),
        "acyclic": is_acyclic(g),
        "regular": _sorted(regular_vertices(g)),
    }


def lattice_document(g: Graph) -> LatticeDocument:
    lattice = enumerate_pairs(g)
    log.info("lattice_enumerated", pairs=len(lattice.pairs), covers=len(lattice.covers))
    return LatticeDocument(
        pairs=[p.to_document() for p in lattice.pairs],
        covers=[[i, j] for i, j in lattice.covers],
    )


def lattice_payload(g: Graph) -> Payload:
    return lattice_document(g).model_dump()


def lattice_dot(g: Graph) -> str:
    return lattice_to_dot(enumerate_pairs(g))


def meet_payload(g: Graph, pairs: Sequence[Pair], verify: bool = False) -> Payload:
    result = meet(g, pairs)
    out = pair_payload(result)
    if verify:
        out["oracle_agrees"] = brute_force_glb(enumerate_pairs(g), pairs) == result
    return out


def join_payload(g: Graph, pairs: Sequence[Pair], verify: bool = False) -> Payload:
    result = join(g, pairs)
    out = pair_payload(result)
    if verify:
        out["oracle_agrees"] = brute_force_lub(enumerate_pairs(g), pairs) == result
    return out


def morphism_payload(g: Graph, source: Pair, target_kernel: Sequence[str]) -> Payload:
    target = require_hereditary(g, target_kernel)
    found = min_covariance_to(g, source, target)
    if found is None:
        return {
            "exists": False,
            "pair": None,
            "target_kernel_saturated": is_saturated(g, target),
        }
    return {"exists": True, "pair": pair_payload(found)}


def max_covariance_payload(g: Graph, kernel: Sequence[str], target: Pair) -> Payload:
    return pair_payload(max_covariance_from(g, kernel, target))


def dilate_payload(g: Graph, p: Pair) -> Payload:
    return katsura_dilation(g, p).to_document().model_dump()


def dilate_dot(g: Graph, p: Pair) -> str:
    return graph_to_dot(katsura_dilation(g, p).graph, name="dilation")


def realize_payload(g: Graph, p: Pair, verify: bool = False) -> Payload:
    if verify:
        report = verify_kernel_covariance(g, p)
        r = report.realization
        extra: Payload = {
            "kernel_intersection": report.kernel_intersection,
            "covariance_intersection": report.covariance_intersection,
            "prescribed_covariance": report.prescribed_covariance,
            "recovered": report.ok,
        }
    else:
        r = relative_cp_dimension(g, p)
        extra = {}
    extra["pair"] = pair_payload(p)
    doc = ReportDocument(
        dims=RealizationDims(
            toeplitz=r.toeplitz, ideal=r.ideal, quotient=r.dimension, center=r.center
        ),
        extra=extra,
    )
    return doc.model_dump()


def fock_payload(g: Graph, truncation: Optional[int] = None, verify: bool = False) -> Payload:
    if truncation is None and not is_acyclic(g):
        truncation = settings.FOCK_DEFAULT_TRUNCATION
    f = build_fock(g, truncation)
    report = check_relations(f)
    extra: Payload = {
        "basis_size": report.basis_size,
        "guarded_size": report.guarded_size,
        "truncation": report.truncation,
        "ok": report.ok,
    }
    if verify:
        # acíclico sem truncamento: caminhos têm comprimento < |V|, então |V| já é exato
        depth = truncation if truncation is not None else len(g.vertices)
        checks = []
        for n in range(1, depth):
            emb = katsura_embedding_check(g, n, depth)
            checks.append({"level": n, "units": len(emb.norms), "ok": emb.ok})
        extra["embedding"] = checks
        extra["embedding_truncation"] = depth
    doc = ReportDocument(
        relations=[RelationDefect(name=name, max_defect=d) for name, d in report.relations],
        extra=extra,
    )
    return doc.model_dump()


def corpus_payload(name: Optional[str] = None) -> Payload:
    if name is not None:
        return corpus.named_graph(name).to_document().model_dump()
    return {
        "graphs": {k: g.to_document().model_dump() for k, g in sorted(corpus.NAMED.items())}
    }

