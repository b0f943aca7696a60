import structlog
from fastapi import APIRouter, HTTPException

from app.domain import corpus
from app.domain.lattice_engine import enumerate_pairs

router = APIRouter()
log = structlog.get_logger()


@router.get("/live")
async def live():
    return {"status": "live"}


@router.get("/ready")
def ready():
    """Pronto quando o motor enumera o reticulado de um grafo conhecido."""
    try:
        pairs = len(enumerate_pairs(corpus.G2).pairs)
    except Exception as e:
        log.error("readiness_failed", error=str(e))
        raise HTTPException(status_code=503, detail="lattice_engine_unavailable")
    return {"status": "ready", "checks": {"lattice_pairs": pairs}}
