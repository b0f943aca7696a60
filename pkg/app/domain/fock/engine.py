"""Representação de Fock numa base de caminhos.

``P_v δ_p = δ_p`` sse ``range(p) == v``; ``S_e δ_p = δ_{e·p}`` quando
``src(e) == range(p)`` (e ``|p| < N`` se truncado). Para grafos acíclicos a base
é finita e tudo é inteiro; com truncamento, só o sub-bloco guardado
(``|p| < N``) tem garantia.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
import scipy.sparse as sparse
import structlog

from app.core.config import settings
from app.domain.errors import InvalidInput, UnsupportedComputation
from app.domain.fock.exact import (
    IntegerEchelon,
    SpannedAlgebra,
    center_dimension,
    flatten,
    ideal_closure,
    matrix_rank,
    span_closure,
    subspace_intersection_dimension,
)
from app.domain.graph_model import Graph, Path, all_paths, is_acyclic, paths_up_to
from app.domain.ideal_structure import Pair, quotient_graph, regular_vertices, require_valid_pair

log = structlog.get_logger()


@dataclass(frozen=True)
class FockRep:
    graph: Graph
    basis: Tuple[Path, ...]
    vertex_ops: Dict[str, sparse.csr_matrix] = field(repr=False)
    edge_ops: Dict[str, sparse.csr_matrix] = field(repr=False)
    truncation: Optional[int] = None

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def guarded_indices(self) -> List[int]:
        if self.truncation is None:
            return list(range(len(self.basis)))
        return [i for i, p in enumerate(self.basis) if p.length < self.truncation]

    def level_indices(self, n: int) -> List[int]:
        return [i for i, p in enumerate(self.basis) if p.length == n]

    def path_op(self, p: Path) -> sparse.csr_matrix:
        """``S_p = S_{e1} ... S_{en}``; comprimento 0 dá ``P_v``."""
        if not p.edges:
            return self.vertex_ops[p.range]
        return reduce(lambda acc, e: acc @ self.edge_ops[e], p.edges[1:], self.edge_ops[p.edges[0]])

    def generators(self) -> List[sparse.csr_matrix]:
        # ordem fixa: vértices por id, depois arestas por id
        ops = [self.vertex_ops[v] for v in sorted(self.vertex_ops)]
        ops.extend(self.edge_ops[e] for e in sorted(self.edge_ops))
        return ops


@dataclass(frozen=True)
class RelationReport:
    relations: List[Tuple[str, int]]
    basis_size: int
    guarded_size: int
    truncation: Optional[int]

    @property
    def ok(self) -> bool:
        return all(defect == 0 for _, defect in self.relations)


@dataclass(frozen=True)
class Realization:
    toeplitz: int
    ideal: int
    dimension: int
    center: int


@dataclass(frozen=True)
class KernelCovarianceReport:
    kernel_intersection: int
    covariance_intersection: int
    prescribed_covariance: int
    covariance_matches: bool
    realization: Realization

    @property
    def ok(self) -> bool:
        return self.kernel_intersection == 0 and self.covariance_matches


@dataclass(frozen=True)
class EmbeddingReport:
    level: int
    truncation: int
    norms: List[Tuple[str, str, float, float]]
    tolerance: float

    @property
    def ok(self) -> bool:
        return all(abs(a - b) <= self.tolerance for _, _, a, b in self.norms)


def _sparse(entries: List[Tuple[int, int]], d: int) -> sparse.csr_matrix:
    rows, cols = zip(*entries) if entries else ((), ())
    data = np.ones(len(rows), dtype=np.int64)
    return sparse.csr_matrix((data, (rows, cols)), shape=(d, d), dtype=np.int64)


def build_fock(g: Graph, truncation: Optional[int] = None) -> FockRep:
    if truncation is None:
        if not is_acyclic(g):
            raise UnsupportedComputation(
                "acyclic_required", "acyclic required for the untruncated Fock representation"
            )
        basis = all_paths(g)
    else:
        if truncation < 0:
            raise InvalidInput("invalid_truncation", "truncation must be non-negative")
        basis = paths_up_to(g, truncation)
    d = len(basis)
    index = {p: i for i, p in enumerate(basis)}
    vertex_ops = {
        v: _sparse([(i, i) for i, p in enumerate(basis) if p.range == v], d) for v in g.vertices
    }
    edge_ops: Dict[str, sparse.csr_matrix] = {}
    for e in g.edges:
        entries: List[Tuple[int, int]] = []
        for i, p in enumerate(basis):
            if p.range != e.src:
                continue
            if truncation is not None and p.length >= truncation:
                continue
            target = Path(edges=(e.id,) + p.edges, range=e.rng, source=p.source)
            entries.append((index[target], i))
        edge_ops[e.id] = _sparse(entries, d)
    log.debug("fock_built", basis=d, truncation=truncation)
    return FockRep(
        graph=g, basis=tuple(basis), vertex_ops=vertex_ops, edge_ops=edge_ops, truncation=truncation
    )


def _defect(m: sparse.spmatrix, guarded: List[int]) -> int:
    block = sparse.csr_matrix(m)[:, guarded] if guarded else sparse.csr_matrix((0, 0))
    return int(abs(block).max()) if block.nnz else 0


def check_relations(f: FockRep) -> RelationReport:
    guarded = f.guarded_indices()
    g = f.graph
    P, S = f.vertex_ops, f.edge_ops
    d = f.dimension
    zero = sparse.csr_matrix((d, d), dtype=np.int64)

    def when(cond: bool, m: sparse.csr_matrix) -> sparse.csr_matrix:
        return m if cond else zero

    def worst(mats: Iterable[sparse.spmatrix]) -> int:
        return max((_defect(m, guarded) for m in mats), default=0)

    vertex_sum = sum((P[v] for v in g.vertices), zero)
    identity = sparse.identity(d, dtype=np.int64, format="csr")
    relations = [
        (
            "edge_isometry",
            worst(
                S[e.id].T @ S[h.id] - when(e.id == h.id, P[e.src])
                for e in g.edges
                for h in g.edges
            ),
        ),
        (
            "range_left_action",
            worst(P[v] @ S[e.id] - when(e.rng == v, S[e.id]) for v in g.vertices for e in g.edges),
        ),
        (
            "source_right_action",
            worst(S[e.id] @ P[v] - when(e.src == v, S[e.id]) for v in g.vertices for e in g.edges),
        ),
        (
            "vertex_orthogonality",
            worst(P[v] @ P[w] - when(v == w, P[v]) for v in g.vertices for w in g.vertices),
        ),
        ("vertex_partition", worst([vertex_sum - identity])),
    ]
    report = RelationReport(
        relations=relations, basis_size=d, guarded_size=len(guarded), truncation=f.truncation
    )
    log.info("fock_relations_checked", basis=d, guarded=len(guarded), ok=report.ok)
    return report


def covariance_ideal_matrices(f: FockRep, iset: Iterable[str]) -> List[sparse.csr_matrix]:
    """``D_v = P_v - Σ_{rng(e)=v} S_e S_e*`` para cada ``v`` em ``iset`` (ordem por id)."""
    members = f.graph.require_subset(iset)
    outside = sorted(members - regular_vertices(f.graph))
    if outside:
        raise InvalidInput(
            "vertex_not_regular",
            f"covariance generators need regular vertices: {','.join(outside)}",
            {"vertices": outside},
        )
    out: List[sparse.csr_matrix] = []
    for v in sorted(members):
        d_v = f.vertex_ops[v].copy()
        for e in f.graph.incoming_edges(v):
            d_v = d_v - f.edge_ops[e.id] @ f.edge_ops[e.id].T
        out.append(sparse.csr_matrix(d_v))
    return out


def compact_ideal_matrices(f: FockRep, iset: Iterable[str]) -> List[sparse.csr_matrix]:
    """Unidades ``|δ_p><δ_q|`` com ``source(p) == source(q) ∈ iset``."""
    members = f.graph.require_subset(iset)
    d = f.dimension
    units: List[sparse.csr_matrix] = []
    for i, p in enumerate(f.basis):
        if p.source not in members:
            continue
        for j, q in enumerate(f.basis):
            if q.source == p.source:
                units.append(_sparse([(i, j)], d))
    return units


def _require_acyclic(g: Graph) -> None:
    if not is_acyclic(g):
        raise UnsupportedComputation("acyclic_required", "acyclic required for exact realization")


def realize_algebras(
    g: Graph, p: Pair
) -> Tuple[FockRep, SpannedAlgebra, SpannedAlgebra]:
    """Fock do quociente, Toeplitz ``T`` e o ideal de covariância ``J`` dentro de ``T``."""
    _require_acyclic(g)
    require_valid_pair(g, p)
    quotient = quotient_graph(g, p.kernel).quotient
    f = build_fock(quotient)
    toeplitz = span_closure(f.generators())
    seeds = covariance_ideal_matrices(f, p.covariance - p.kernel)
    return f, toeplitz, ideal_closure(toeplitz, seeds)


def relative_cp_dimension(g: Graph, p: Pair) -> Realization:
    _, toeplitz, ideal = realize_algebras(g, p)
    out = Realization(
        toeplitz=toeplitz.dimension,
        ideal=ideal.dimension,
        dimension=toeplitz.dimension - ideal.dimension,
        center=center_dimension(toeplitz, ideal),
    )
    log.info("relative_cp_realized", pair=str(p), quotient=out.dimension, center=out.center)
    return out


def verify_kernel_covariance(g: Graph, p: Pair) -> KernelCovarianceReport:
    f, toeplitz, ideal = realize_algebras(g, p)
    vertex_span = [f.vertex_ops[v] for v in sorted(f.graph.vertices)]
    reg = regular_vertices(f.graph)
    all_covariance = covariance_ideal_matrices(f, reg)
    prescribed = covariance_ideal_matrices(f, p.covariance - p.kernel)
    covariance_intersection = subspace_intersection_dimension(all_covariance, ideal.basis)
    prescribed_rank = matrix_rank(prescribed)
    inside = all(ideal.contains(m) for m in prescribed)
    return KernelCovarianceReport(
        kernel_intersection=subspace_intersection_dimension(vertex_span, ideal.basis),
        covariance_intersection=covariance_intersection,
        prescribed_covariance=prescribed_rank,
        covariance_matches=inside and covariance_intersection == prescribed_rank,
        realization=Realization(
            toeplitz=toeplitz.dimension,
            ideal=ideal.dimension,
            dimension=toeplitz.dimension - ideal.dimension,
            center=center_dimension(toeplitz, ideal),
        ),
    )


def katsura_embedding_check(
    g: Graph, n: int, truncation: int, tolerance: Optional[float] = None
) -> EmbeddingReport:
    """Compactos de nível ``n`` suportados nos regulares preservam a norma no nível ``n+1``."""
    if n < 0 or n + 1 > truncation:
        raise InvalidInput(
            "truncation_too_small",
            f"level {n} needs truncation >= {n + 1}",
            {"level": n, "truncation": truncation},
        )
    tol = settings.NORM_TOLERANCE if tolerance is None else tolerance
    f = build_fock(g, truncation)
    reg = regular_vertices(g)
    here = f.level_indices(n)
    there = f.level_indices(n + 1)
    level = [f.basis[i] for i in here]
    norms: List[Tuple[str, str, float, float]] = []
    for mu in level:
        if mu.source not in reg:
            continue
        for nu in level:
            if nu.source != mu.source:
                continue
            op = (f.path_op(mu) @ f.path_op(nu).T).toarray().astype(float)
            at_n = float(np.linalg.norm(op[np.ix_(here, here)], 2)) if here else 0.0
            at_next = float(np.linalg.norm(op[np.ix_(there, there)], 2)) if there else 0.0
            norms.append((mu.label, nu.label, at_n, at_next))
    report = EmbeddingReport(level=n, truncation=truncation, norms=norms, tolerance=tol)
    log.info(
        "katsura_embedding_checked", level=n, truncation=truncation, units=len(norms), ok=report.ok
    )
    return report


def hilbert_bimodule_oracle(g: Graph) -> bool:
    """Contenção em dimensão finita sobre ``ℓ²(E)``.

    O span das projeções de range ``R_v`` precisa conter toda unidade
    ``|δ_e><δ_f|`` com ``src(e) == src(f)`` (os compactos do módulo).
    """
    m = len(g.edges)
    pos = {e.id: i for i, e in enumerate(g.edges)}
    span = IntegerEchelon()
    for v in g.vertices:
        span.add(flatten(_sparse([(pos[e.id], pos[e.id]) for e in g.incoming_edges(v)], m)))
    for e in g.edges:
        for h in g.edges:
            if e.src == h.src and not span.contains(flatten(_sparse([(pos[e.id], pos[h.id])], m))):
                return False
    return True
