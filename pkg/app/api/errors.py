from __future__ import annotations

from typing import Any

import structlog
from fastapi import HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from app.domain.errors import GaugeLatticeError, UnsupportedComputation

log = structlog.get_logger()


class ErrorPayload(BaseModel):
    code: str
    message: str
    details: Any | None = None


class ErrorResponse(BaseModel):
    error: ErrorPayload


def _respond(status: int, code: str, message: str, details: Any | None = None) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content=ErrorResponse(
            error=ErrorPayload(code=code, message=message, details=details)
        ).model_dump(),
    )


def _http_detail_to_code_message_details(exc: HTTPException) -> tuple[str, str, Any | None]:
    # detail string vira o código; dict já traz code/message
    if isinstance(exc.detail, str):
        return exc.detail, exc.detail.replace("_", " "), None
    if isinstance(exc.detail, dict):
        code = str(exc.detail.get("code", "bad_request"))
        msg = str(exc.detail.get("message", "Requisição inválida."))
        return code, msg, exc.detail.get("details")
    return "bad_request", "Requisição inválida.", None


async def http_exception_handler(request: Request, exc: HTTPException):
    code, message, details = _http_detail_to_code_message_details(exc)
    log.warning("http_error", code=code, status=exc.status_code, path=str(request.url))
    return _respond(exc.status_code, code, message, details)


async def domain_exception_handler(request: Request, exc: Exception):
    assert isinstance(exc, GaugeLatticeError)
    status = 409 if isinstance(exc, UnsupportedComputation) else 422
    log.warning("domain_error", code=exc.code, status=status, path=str(request.url))
    return _respond(status, exc.code, exc.message, exc.details)


async def validation_exception_handler(request: Request, exc: RequestValidationError):
    details: Any | None = None
    try:
        errs = exc.errors()
        details = errs
        fields = [".".join(str(p) for p in e.get("loc", [])) for e in errs]
        message = "Erro de validação: " + ", ".join(fields)
    except Exception:
        message = "Erro de validação nos dados enviados."
    log.warning("validation_error", detail=str(exc), path=str(request.url))
    return _respond(422, "validation_error", message, details)


async def generic_exception_handler(request: Request, exc: Exception):
    log.error("unhandled_exception", error=str(exc), path=str(request.url))
    return _respond(500, "internal_error", "Ocorreu um erro inesperado.")
