import logging
import sys
from typing import Any, MutableMapping

import structlog

from app.core.config import settings

# listas de vértices/arestas/pares podem ser enormes em grafos de teste
MAX_LOGGED_ITEMS = 12


def _shorten(value: Any) -> Any:
    if isinstance(value, (list, tuple, set, frozenset)) and len(value) > MAX_LOGGED_ITEMS:
        items = sorted(value, key=str) if isinstance(value, (set, frozenset)) else list(value)
        return [*items[:MAX_LOGGED_ITEMS], f"... (+{len(items) - MAX_LOGGED_ITEMS})"]
    return value


def truncate_processor(logger: Any, method_name: str, event_dict: MutableMapping[str, Any]):
    return {k: _shorten(v) for k, v in event_dict.items()}


def configure_logging() -> None:
    level = logging.getLevelName((settings.LOG_LEVEL or "INFO").upper())
    if not isinstance(level, int):
        level = logging.INFO
    renderer: Any
    if settings.is_dev and not settings.LOG_JSON:
        renderer = structlog.dev.ConsoleRenderer(colors=False)
    else:
        renderer = structlog.processors.JSONRenderer(sort_keys=True)

    logging.basicConfig(format="%(message)s", stream=sys.stderr, level=level)

    structlog.configure(
        processors=[
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            truncate_processor,
            structlog.processors.dict_tracebacks,
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(level),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )

    logging.getLogger("uvicorn.error").setLevel(level)
    logging.getLogger("uvicorn.access").setLevel(logging.WARNING)
