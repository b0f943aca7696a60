"""Reticulado dos pares kernel-covariância: ordem, Hasse, meet/join e morfismos de conexão."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, reduce
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
import structlog

from app.core.config import settings
from app.domain.errors import InvalidInput, UnsupportedComputation
from app.domain.graph_model import Graph, VertexSet, dot_quote
from app.domain.ideal_structure import (
    Pair,
    hereditary_closure,
    hereditary_sets,
    katsura_ideal_of_kernel,
    quotient_graph,
    regular_vertices,
    require_hereditary,
    require_valid_pair,
    set_key,
)

log = structlog.get_logger()


@dataclass(frozen=True)
class PairLattice:
    graph: Graph
    pairs: Tuple[Pair, ...]

    @cached_property
    def index(self) -> Dict[Pair, int]:
        return {p: i for i, p in enumerate(self.pairs)}

    @cached_property
    def _masks(self) -> Tuple[np.ndarray, np.ndarray]:
        bit = {v: 1 << i for i, v in enumerate(self.graph.vertices)}

        def mask(s: VertexSet) -> int:
            return sum(bit[v] for v in s)

        kernels = np.array([mask(p.kernel) for p in self.pairs], dtype=np.uint64)
        covariances = np.array([mask(p.covariance) for p in self.pairs], dtype=np.uint64)
        return kernels, covariances

    def row_leq(self, i: int) -> np.ndarray:
        """Linha ``i`` da matriz de ordem: ``pairs[i] <= pairs[j]`` para cada ``j``."""
        k, c = self._masks
        return ((k[i] & ~k) == 0) & ((c[i] & ~c) == 0)

    def column_leq(self, j: int) -> np.ndarray:
        k, c = self._masks
        return ((k & ~k[j]) == 0) & ((c & ~c[j]) == 0)

    @cached_property
    def leq(self) -> np.ndarray:
        k, c = self._masks
        return ((k[:, None] & ~k[None, :]) == 0) & ((c[:, None] & ~c[None, :]) == 0)

    @cached_property
    def covers(self) -> List[Tuple[int, int]]:
        return hasse_covers(self.leq)

    def position(self, p: Pair) -> int:
        try:
            return self.index[p]
        except KeyError:
            raise InvalidInput("invalid_pair", f"pair not in lattice: {p}")

    @property
    def bottom(self) -> Pair:
        return self.pairs[0]

    @property
    def top(self) -> Pair:
        return self.pairs[-1]


def hasse_covers(leq: np.ndarray) -> List[Tuple[int, int]]:
    """Redução transitiva da matriz de ordem: ``i < j`` sem ``k`` estritamente entre eles."""
    strict = leq & ~np.eye(len(leq), dtype=bool)
    # float32 usa BLAS; contagens ficam bem abaixo de 2**24
    as_float = strict.astype(np.float32)
    reduced = strict & ~((as_float @ as_float) > 0)
    return sorted((int(i), int(j)) for i, j in zip(*np.nonzero(reduced)))


# ---- ordem ----
def pair_leq(g: Graph, p: Pair, q: Pair) -> bool:
    require_valid_pair(g, p)
    require_valid_pair(g, q)
    return p.kernel <= q.kernel and p.covariance <= q.covariance


def _subsets(s: Iterable[str]) -> List[VertexSet]:
    members = sorted(s)
    out: List[VertexSet] = []
    for r in range(len(members) + 1):
        out.extend(frozenset(c) for c in combinations(members, r))
    return out


def count_pairs(g: Graph) -> int:
    """Tamanho do reticulado sem materializá-lo: soma de ``2**|reg(g/K)|`` sobre os ``K``."""
    return sum(2 ** len(reg) for _, reg in _kernels_with_regular(g))


def _kernels_with_regular(g: Graph) -> List[Tuple[VertexSet, VertexSet]]:
    return [
        (kernel, regular_vertices(quotient_graph(g, kernel).quotient))
        for kernel in hereditary_sets(g)
    ]


def enumerate_pairs(g: Graph) -> PairLattice:
    if len(g.vertices) > settings.MAX_ENUMERATION_VERTICES:
        raise UnsupportedComputation(
            "graph_too_large",
            f"lattice enumeration limited to {settings.MAX_ENUMERATION_VERTICES} vertices",
            {"vertices": len(g.vertices)},
        )
    kernels = _kernels_with_regular(g)
    size = sum(2 ** len(reg) for _, reg in kernels)
    if size > settings.MAX_LATTICE_PAIRS:
        raise UnsupportedComputation(
            "lattice_too_large",
            f"lattice has {size} pairs, limit is {settings.MAX_LATTICE_PAIRS}",
            {"pairs": size, "limit": settings.MAX_LATTICE_PAIRS},
        )
    pairs: List[Pair] = []
    for kernel, reg in kernels:
        pairs.extend(Pair(kernel=kernel, covariance=kernel | extra) for extra in _subsets(reg))
    pairs.sort(key=lambda p: p.sort_key)
    log.debug("lattice_enumerated", vertices=len(g.vertices), pairs=len(pairs))
    return PairLattice(graph=g, pairs=tuple(pairs))


def is_order_consistent(lattice: PairLattice) -> bool:
    """Axiomas de ordem parcial (matricial) + covers == redução transitiva do networkx."""
    leq = lattice.leq
    n = len(lattice.pairs)
    if not leq.diagonal().all():
        return False
    if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
        return False
    as_int = leq.astype(np.int64)
    if ((as_int @ as_int > 0) & ~leq).any():
        return False
    order = nx.DiGraph()
    order.add_nodes_from(range(n))
    order.add_edges_from((int(i), int(j)) for i, j in zip(*np.nonzero(leq)) if i != j)
    hasse = nx.transitive_reduction(order)
    return sorted((int(i), int(j)) for i, j in hasse.edges()) == lattice.covers


# ---- meet / join ----
def _require_pairs(g: Graph, ps: Sequence[Pair]) -> None:
    if not ps:
        raise InvalidInput("empty_pair_list", "at least one pair is required")
    for p in ps:
        require_valid_pair(g, p)


def meet(g: Graph, ps: Sequence[Pair]) -> Pair:
    _require_pairs(g, ps)
    kernel = reduce(lambda a, b: a & b, (p.kernel for p in ps))
    covariance = reduce(lambda a, b: a & b, (p.covariance for p in ps))
    return Pair(kernel=kernel, covariance=covariance & katsura_ideal_of_kernel(g, kernel))


def join(g: Graph, ps: Sequence[Pair]) -> Pair:
    _require_pairs(g, ps)
    kernel = hereditary_closure(g, frozenset().union(*(p.kernel for p in ps)))
    covariance = frozenset().union(*(p.covariance for p in ps)) | kernel
    rounds = 0
    while True:
        quotient = quotient_graph(g, kernel).quotient
        # vértice de covariância sem aresta sobrevivente precisa entrar no kernel
        forced = frozenset(v for v in covariance - kernel if not quotient.incoming_edges(v))
        if not forced:
            break
        rounds += 1
        kernel = hereditary_closure(g, kernel | forced)
        covariance = covariance | kernel
    log.debug("join_computed", pairs=len(ps), forcing_rounds=rounds)
    return Pair(kernel=kernel, covariance=covariance)


def brute_force_glb(lattice: PairLattice, ps: Sequence[Pair]) -> Pair:
    if not ps:
        raise InvalidInput("empty_pair_list", "at least one pair is required")
    lower = np.logical_and.reduce([lattice.column_leq(lattice.position(p)) for p in ps])
    candidates = np.nonzero(lower)[0]
    for i in candidates:
        if lattice.column_leq(int(i))[candidates].all():
            return lattice.pairs[int(i)]
    raise InvalidInput("no_greatest_lower_bound", "lower bounds have no maximum")


def brute_force_lub(lattice: PairLattice, ps: Sequence[Pair]) -> Pair:
    if not ps:
        raise InvalidInput("empty_pair_list", "at least one pair is required")
    upper = np.logical_and.reduce([lattice.row_leq(lattice.position(p)) for p in ps])
    candidates = np.nonzero(upper)[0]
    for i in candidates:
        if lattice.row_leq(int(i))[candidates].all():
            return lattice.pairs[int(i)]
    raise InvalidInput("no_least_upper_bound", "upper bounds have no minimum")


# ---- morfismos de conexão ----
def max_covariance_from(g: Graph, k: Iterable[str], target: Pair) -> Pair:
    kernel = require_hereditary(g, k)
    require_valid_pair(g, target)
    if not kernel <= target.kernel:
        raise InvalidInput(
            "kernel_not_below_target",
            "kernel must be contained in the target kernel",
            {"kernel": sorted(kernel), "target_kernel": sorted(target.kernel)},
        )
    reg = regular_vertices(quotient_graph(g, kernel).quotient)
    return Pair(kernel=kernel, covariance=kernel | (reg & target.covariance))


def min_covariance_to(g: Graph, p: Pair, l: Iterable[str]) -> Optional[Pair]:  # noqa: E741
    require_valid_pair(g, p)
    target_kernel = require_hereditary(g, l)
    if not p.kernel <= target_kernel:
        raise InvalidInput(
            "kernel_not_above_source",
            "target kernel must contain the source kernel",
            {"kernel": sorted(p.kernel), "target_kernel": sorted(target_kernel)},
        )
    covariance = p.covariance | target_kernel
    reg = regular_vertices(quotient_graph(g, target_kernel).quotient)
    if covariance - target_kernel <= reg:
        return Pair(kernel=target_kernel, covariance=covariance)
    return None


def gauge_invariant_ideals(g: Graph, p: Pair) -> List[Pair]:
    require_valid_pair(g, p)
    lattice = enumerate_pairs(g)
    above = lattice.row_leq(lattice.position(p))
    return [q for q, ok in zip(lattice.pairs, above) if ok]


# ---- DOT ----
def _dot_label(s: VertexSet) -> str:
    return "{" + ",".join(set_key(s)[1]) + "}"


def lattice_to_dot(lattice: PairLattice) -> str:
    lines = ["digraph pairs {", "  rankdir=BT;"]
    for i, p in enumerate(lattice.pairs):
        label = dot_quote(f"K={_dot_label(p.kernel)} I={_dot_label(p.covariance)}")
        lines.append(f"  p{i} [label={label}];")
    for i, j in lattice.covers:
        lines.append(f"  p{i} -> p{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
