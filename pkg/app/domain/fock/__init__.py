from app.domain.fock.engine import (
    FockRep,
    build_fock,
    check_relations,
    compact_ideal_matrices,
    covariance_ideal_matrices,
    hilbert_bimodule_oracle,
    katsura_embedding_check,
    realize_algebras,
    relative_cp_dimension,
    verify_kernel_covariance,
)
from app.domain.fock.exact import SpannedAlgebra, ideal_closure, span_closure

__all__ = [
    "FockRep",
    "SpannedAlgebra",
    "build_fock",
    "check_relations",
    "compact_ideal_matrices",
    "covariance_ideal_matrices",
    "hilbert_bimodule_oracle",
    "ideal_closure",
    "katsura_embedding_check",
    "realize_algebras",
    "relative_cp_dimension",
    "span_closure",
    "verify_kernel_covariance",
]
