import os
import sys

import pytest
from fastapi.testclient import TestClient

# Garantir ambiente de testes previsível
os.environ["APP_ENV"] = "test"
os.environ.setdefault("LOG_LEVEL", "WARNING")

# Ensure the project root (which contains the 'app' package) is on sys.path
THIS_DIR = os.path.dirname(__file__)
PROJECT_ROOT = os.path.abspath(os.path.join(THIS_DIR, ".."))
if PROJECT_ROOT not in sys.path:
    sys.path.insert(0, PROJECT_ROOT)

from app.domain import corpus  # noqa: E402
from app.main import app  # noqa: E402


@pytest.fixture
def g1():
    """Dois laços (a, b) e a aresta z: a -> b."""
    return corpus.G1


@pytest.fixture
def g2():
    """a -> b pela aresta z."""
    return corpus.G2


@pytest.fixture
def g3():
    """Um laço x no vértice a (grafo de Toeplitz)."""
    return corpus.G3


@pytest.fixture
def single_vertex():
    return corpus.SINGLE_VERTEX


@pytest.fixture
def empty_graph():
    return corpus.EMPTY


@pytest.fixture
def cycle():
    return corpus.CYCLE


@pytest.fixture
def chain():
    return corpus.CHAIN


@pytest.fixture
def client():
    yield TestClient(app)


@pytest.fixture
def graph_file(tmp_path):
    """Grava um Graph JSON em disco e devolve o caminho."""

    def write(graph, name="graph.json"):
        path = tmp_path / name
        path.write_text(graph.to_document().model_dump_json(), encoding="utf-8")
        return str(path)

    return write


@pytest.fixture(autouse=True)
def _fresh_logging():
    """Reconfigura o structlog para o sys.stderr atual: testes que chamam
    ``cli.main()`` sob ``capsys`` deixariam o logger preso a um buffer fechado."""
    from app.core.logging import configure_logging

    configure_logging()
    yield
