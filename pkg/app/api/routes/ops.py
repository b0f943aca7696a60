from __future__ import annotations

from fastapi import APIRouter

from app.core.config import settings

router = APIRouter()


@router.get("/config", summary="Configurações não sensíveis (observabilidade leve)")
async def config_info():
    return {
        "app_env": settings.APP_ENV,
        "log_level": settings.LOG_LEVEL,
        "fock_default_truncation": settings.FOCK_DEFAULT_TRUNCATION,
        "norm_tolerance": settings.NORM_TOLERANCE,
        "max_enumeration_vertices": settings.MAX_ENUMERATION_VERTICES,
        "max_lattice_pairs": settings.MAX_LATTICE_PAIRS,
        "span_max_dimension": settings.SPAN_MAX_DIMENSION,
        "version": "0.1.0",
    }
