import uuid

import structlog
from fastapi import FastAPI, HTTPException
from fastapi.exceptions import RequestValidationError

from app.api.errors import (
    domain_exception_handler,
    generic_exception_handler,
    http_exception_handler,
    validation_exception_handler,
)
from app.api.routes.health import router as health_router
from app.api.routes.lattice import router as lattice_router
from app.api.routes.ops import router as ops_router
from app.core.logging import configure_logging
from app.domain.errors import GaugeLatticeError

configure_logging()
log = structlog.get_logger()

tags_metadata = [
    {"name": "health", "description": "Liveness e readiness."},
    {"name": "ops", "description": "Configurações não sensíveis."},
    {"name": "lattice", "description": "Pares kernel-covariância, dilatação e Fock."},
]

app = FastAPI(
    title="Gauge Lattice API",
    version="0.1.0",
    openapi_tags=tags_metadata,
)


@app.middleware("http")
async def _http_logger(request, call_next):
    cid = request.headers.get("x-correlation-id") or str(uuid.uuid4())
    log.info("http_request_start", method=request.method, path=request.url.path, correlation_id=cid)
    response = await call_next(request)
    response.headers["X-Correlation-Id"] = cid
    log.info(
        "http_request_end",
        method=request.method,
        path=request.url.path,
        status=response.status_code,
        correlation_id=cid,
    )
    return response


app.include_router(health_router, prefix="/health", tags=["health"])
app.include_router(ops_router, prefix="/ops", tags=["ops"])
app.include_router(lattice_router, prefix="/lattice", tags=["lattice"])

app.add_exception_handler(GaugeLatticeError, domain_exception_handler)
app.add_exception_handler(HTTPException, http_exception_handler)
app.add_exception_handler(RequestValidationError, validation_exception_handler)
app.add_exception_handler(Exception, generic_exception_handler)


@app.get("/")
async def root():
    return {"service": "gauge-lattice", "status": "ok"}
