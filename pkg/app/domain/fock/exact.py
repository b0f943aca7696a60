"""Álgebra linear exata (inteira, sem frações) sobre matrizes esparsas.

Todo o caminho exato do motor de Fock passa por aqui: posto, pertinência,
fecho de span e fecho de ideal. Nada de limiar numérico.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import gcd
from typing import Deque, Dict, Iterable, List, Optional, Sequence

import scipy.sparse as sparse
import structlog

from app.core.config import settings
from app.domain.errors import UnsupportedComputation

log = structlog.get_logger()

SparseVector = Dict[int, int]


def flatten(m: sparse.spmatrix, offset: int = 0) -> SparseVector:
    coo = sparse.coo_matrix(m)
    d = coo.shape[1]
    out: SparseVector = {}
    for r, c, val in zip(coo.row, coo.col, coo.data):
        if val:
            key = offset + int(r) * d + int(c)
            out[key] = out.get(key, 0) + int(val)
    return {k: v for k, v in out.items() if v}


def _normalize(v: SparseVector) -> SparseVector:
    g = 0
    for x in v.values():
        g = gcd(g, x)
    lead = v[min(v)]
    if lead < 0:
        g = -g
    return {k: x // g for k, x in v.items()}


class IntegerEchelon:
    """Forma escalonada incremental, eliminação fraction-free.

    Cada linha guardada tem pivô no menor índice não nulo e pivôs são
    distintos; então um vetor é dependente sse reduz a zero.
    """

    def __init__(self) -> None:
        self._rows: Dict[int, SparseVector] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _reduce(self, v: SparseVector) -> SparseVector:
        v = dict(v)
        while v:
            pivot = min(v)
            row = self._rows.get(pivot)
            if row is None:
                return v
            a, b = row[pivot], v[pivot]
            merged = {k: a * x for k, x in v.items()}
            for k, x in row.items():
                y = merged.get(k, 0) - b * x
                if y:
                    merged[k] = y
                else:
                    merged.pop(k, None)
            v = _normalize(merged) if merged else merged
        return v

    def add(self, v: SparseVector) -> bool:
        rest = self._reduce(v)
        if not rest:
            return False
        rest = _normalize(rest)
        self._rows[min(rest)] = rest
        return True

    def contains(self, v: SparseVector) -> bool:
        return not self._reduce(v)


def rank(vectors: Iterable[SparseVector]) -> int:
    ech = IntegerEchelon()
    for v in vectors:
        ech.add(v)
    return ech.rank


def matrix_rank(mats: Iterable[sparse.spmatrix]) -> int:
    return rank(flatten(m) for m in mats)


def subspace_intersection_dimension(
    a: Sequence[sparse.spmatrix], b: Sequence[sparse.spmatrix]
) -> int:
    """``dim(A ∩ B) = dim A + dim B - dim(A + B)``."""
    return matrix_rank(a) + matrix_rank(b) - matrix_rank(list(a) + list(b))


def _adjoint(m: sparse.spmatrix) -> sparse.csr_matrix:
    # matrizes reais: adjunto = transposta
    return sparse.csr_matrix(m.transpose())


def _clean(m: sparse.spmatrix) -> sparse.csr_matrix:
    out = sparse.csr_matrix(m)
    out.eliminate_zeros()
    return out


@dataclass
class SpannedAlgebra:
    ambient_dimension: int
    basis: List[sparse.csr_matrix]
    generators: List[sparse.csr_matrix] = field(default_factory=list)
    echelon: IntegerEchelon = field(default_factory=IntegerEchelon, repr=False, compare=False)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def contains(self, m: sparse.spmatrix) -> bool:
        return self.echelon.contains(flatten(m))


class _SpanBuilder:
    def __init__(self, ambient_dimension: int, limit: int):
        self.ambient_dimension = ambient_dimension
        self.limit = limit
        self.echelon = IntegerEchelon()
        self.basis: List[sparse.csr_matrix] = []
        self.queue: Deque[sparse.csr_matrix] = deque()

    def offer(self, m: sparse.spmatrix) -> None:
        m = _clean(m)
        if m.nnz == 0:
            return
        if self.echelon.add(flatten(m)):
            self.basis.append(m)
            self.queue.append(m)
            if len(self.basis) > self.limit:
                raise UnsupportedComputation(
                    "span_too_large",
                    f"span closure exceeded {self.limit} dimensions",
                    {"ambient_dimension": self.ambient_dimension},
                )


def _ambient(mats: Sequence[sparse.spmatrix], fallback: int = 0) -> int:
    return int(mats[0].shape[0]) if mats else fallback


def span_closure(
    generators: Sequence[sparse.spmatrix], limit: Optional[int] = None
) -> SpannedAlgebra:
    """Menor álgebra fechada por adjunto (sem unidade adjunta) contendo os geradores.

    A ordem dos geradores é respeitada, então a base sai determinística.
    """
    gens: List[sparse.csr_matrix] = []
    for g in generators:
        gens.append(_clean(g))
        gens.append(_adjoint(g))
    builder = _SpanBuilder(_ambient(gens), limit or settings.SPAN_MAX_DIMENSION)
    for g in gens:
        builder.offer(g)
    # palavras nos geradores, construídas por multiplicação à esquerda
    while builder.queue:
        b = builder.queue.popleft()
        for g in gens:
            builder.offer(g @ b)
    log.debug("span_closed", ambient=builder.ambient_dimension, dimension=len(builder.basis))
    return SpannedAlgebra(
        ambient_dimension=builder.ambient_dimension,
        basis=builder.basis,
        generators=[g for g in gens if g.nnz],
        echelon=builder.echelon,
    )


def ideal_closure(
    alg: SpannedAlgebra, seeds: Sequence[sparse.spmatrix], limit: Optional[int] = None
) -> SpannedAlgebra:
    """Ideal bilateral gerado pelas sementes dentro de ``alg`` (fechado por adjunto)."""
    multipliers = alg.generators or alg.basis
    builder = _SpanBuilder(alg.ambient_dimension, limit or settings.SPAN_MAX_DIMENSION)
    for s in seeds:
        builder.offer(s)
        builder.offer(_adjoint(s))
    while builder.queue:
        x = builder.queue.popleft()
        for a in multipliers:
            builder.offer(a @ x)
            builder.offer(x @ a)
    return SpannedAlgebra(
        ambient_dimension=alg.ambient_dimension,
        basis=builder.basis,
        generators=multipliers,
        echelon=builder.echelon,
    )


def commutant_dimension(
    elements: Sequence[sparse.spmatrix], against: Sequence[sparse.spmatrix]
) -> int:
    """Dimensão de ``{x ∈ span(elements) : [x, a] = 0 para todo a}``.

    ``elements`` precisa ser linearmente independente.
    """
    if not elements:
        return 0
    d = int(elements[0].shape[0])
    block = d * d
    vectors: List[SparseVector] = []
    for x in elements:
        v: SparseVector = {}
        for j, a in enumerate(against):
            v.update(flatten(x @ a - a @ x, offset=j * block))
        vectors.append(v)
    # núcleo do mapa coeficientes -> comutadores
    return len(elements) - rank(vectors)


def center_dimension(alg: SpannedAlgebra, ideal: Optional[SpannedAlgebra] = None) -> int:
    """Dimensão do centro de ``alg / ideal``.

    Álgebra-* de dimensão finita = soma de blocos simples e o ideal é soma de
    blocos, então ``Z(alg/ideal)`` tem dimensão ``dim Z(alg) - dim Z(ideal)``.
    """
    against = alg.generators or alg.basis
    total = commutant_dimension(alg.basis, against)
    inside = commutant_dimension(ideal.basis, against) if ideal is not None else 0
    return total - inside
