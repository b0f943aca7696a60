from __future__ import annotations

from typing import Any


class GaugeLatticeError(ValueError):
    """Erro de domínio com código estável (snake_case) + mensagem curta.

    Mantém o idioma ``ValueError("codigo: detalhe")``: ``str(exc)`` devolve
    exatamente esse formato, então quem só faz ``except ValueError`` continua
    funcionando.
    """

    def __init__(self, code: str, message: str | None = None, details: Any | None = None):
        self.code = code
        self.message = message or code.replace("_", " ")
        self.details = details
        super().__init__(f"{self.code}: {self.message}")

    def to_payload(self) -> dict[str, Any]:
        return {"code": self.code, "message": self.message, "details": self.details}


class InvalidInput(GaugeLatticeError):
    """Documento malformado, ids duplicados, kernel não hereditário, par inválido..."""


class UnsupportedComputation(GaugeLatticeError):
    """Cálculo exato pedido fora do domínio suportado (ex.: grafo com ciclo)."""
