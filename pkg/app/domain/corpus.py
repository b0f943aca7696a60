"""Corpus de exemplos: grafos nomeados e famílias geradas deterministicamente."""
from __future__ import annotations

import random
from itertools import combinations, combinations_with_replacement, product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from app.core.config import settings
from app.domain.errors import InvalidInput
from app.domain.graph_model import Edge, Graph, is_acyclic

VERTEX_NAMES = "abcdefg"


def _graph(vertices: Sequence[str], edges: Sequence[Tuple[str, str, str]]) -> Graph:
    return Graph(
        vertices=tuple(vertices),
        edges=tuple(Edge(id=i, src=s, rng=r) for i, s, r in edges),
    )


# grafos dos exemplos trabalhados
G1 = _graph(["a", "b"], [("la", "a", "a"), ("lb", "b", "b"), ("z", "a", "b")])
G2 = _graph(["a", "b"], [("z", "a", "b")])
G3 = _graph(["a"], [("x", "a", "a")])
SINGLE_VERTEX = _graph(["a"], [])
EMPTY = _graph([], [])
CYCLE = _graph(["a", "b"], [("u", "a", "b"), ("w", "b", "a")])
CHAIN = _graph(["a", "b", "c"], [("y", "a", "b"), ("z", "b", "c")])
DOUBLE_EDGE = _graph(["a", "b"], [("z1", "a", "b"), ("z2", "a", "b")])
FAN_IN = _graph(["a", "b", "c"], [("y", "a", "c"), ("z", "b", "c")])
FAN_OUT = _graph(["a", "b", "c"], [("y", "a", "b"), ("z", "a", "c")])

NAMED: Dict[str, Graph] = {
    "G1": G1,
    "G2": G2,
    "G3": G3,
    "single_vertex": SINGLE_VERTEX,
    "empty": EMPTY,
    "cycle": CYCLE,
    "chain": CHAIN,
    "double_edge": DOUBLE_EDGE,
    "fan_in": FAN_IN,
    "fan_out": FAN_OUT,
}


def named_graph(name: str) -> Graph:
    try:
        return NAMED[name]
    except KeyError:
        raise InvalidInput(
            "unknown_corpus_graph",
            f"no corpus graph named {name}",
            {"available": sorted(NAMED)},
        )


def from_arrows(n: int, arrows: Sequence[Tuple[int, int]]) -> Graph:
    names = VERTEX_NAMES[:n]
    return _graph(
        names,
        [(f"e{i}", names[s], names[r]) for i, (s, r) in enumerate(arrows)],
    )


def exhaustive_graphs(n: int, max_edges: int) -> Iterator[Graph]:
    """Todo grafo simples (laços permitidos, sem arestas múltiplas) com ``n`` vértices."""
    slots = list(product(range(n), repeat=2))
    for k in range(min(max_edges, len(slots)) + 1):
        for arrows in combinations(slots, k):
            yield from_arrows(n, arrows)


def _families(n: int) -> List[Graph]:
    idx = range(n)
    chain = [(i, i + 1) for i in range(n - 1)]
    out = [
        from_arrows(n, []),
        from_arrows(n, chain),
        from_arrows(n, [(0, i) for i in idx if i]),
        from_arrows(n, [(i, 0) for i in idx if i]),
        from_arrows(n, chain + [(n - 1, 0)]),
        from_arrows(n, [(i, i) for i in idx]),
        from_arrows(n, chain + [(0, 0)]),
        from_arrows(n, chain + [(n - 1, n - 1)]),
        from_arrows(n, chain + chain[:1]),
    ]
    if n <= 4:
        # DAG completo: 6 arestas com 4 vértices
        out.append(from_arrows(n, [(i, j) for i in idx for j in idx if i < j]))
    return out


def random_graph(rng: random.Random, max_vertices: int, max_edges: int) -> Graph:
    n = rng.randint(1, max_vertices)
    m = rng.randint(0, max_edges)
    arrows = [(rng.randrange(n), rng.randrange(n)) for _ in range(m)]
    return from_arrows(n, arrows)


def random_graphs(
    count: Optional[int] = None,
    max_vertices: int = 7,
    max_edges: int = 10,
    seed: Optional[int] = None,
) -> List[Graph]:
    rng = random.Random(settings.CORPUS_RANDOM_SEED if seed is None else seed)
    total = settings.CORPUS_RANDOM_GRAPHS if count is None else count
    return [random_graph(rng, max_vertices, max_edges) for _ in range(total)]


def exhaustive_multigraphs(n: int, max_edges: int) -> Iterator[Graph]:
    """Multigrafos com ``n`` vértices e até ``max_edges`` arestas, com laços e paralelas."""
    slots = list(product(range(n), repeat=2))
    for k in range(max_edges + 1):
        for arrows in combinations_with_replacement(slots, k):
            yield from_arrows(n, arrows)


def small_graphs(max_vertices: int = 5, max_edges: int = 8) -> List[Graph]:
    """Corpus pequeno e determinístico.

    Exaustivo até 2 vértices e, com 3 vértices, até 4 arestas; depois
    famílias estruturadas e uma amostra aleatória semeada até ``max_vertices``.
    """
    graphs: List[Graph] = list(NAMED.values())
    for n in range(0, min(max_vertices, 2) + 1):
        graphs.extend(exhaustive_graphs(n, max_edges))
    if max_vertices >= 3:
        graphs.extend(exhaustive_graphs(3, min(4, max_edges)))
    for n in range(3, max_vertices + 1):
        graphs.extend(g for g in _families(n) if len(g.edges) <= max_edges)
    rng = random.Random(settings.CORPUS_RANDOM_SEED + 1)
    for _ in range(30):
        graphs.append(random_graph(rng, max_vertices, max_edges))
    return [g for g in graphs if len(g.vertices) <= max_vertices and len(g.edges) <= max_edges]


def acyclic_graphs(max_vertices: int = 5, max_edges: int = 6) -> List[Graph]:
    return [g for g in small_graphs(max_vertices, max_edges) if is_acyclic(g)]
