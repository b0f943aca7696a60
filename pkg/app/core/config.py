from functools import lru_cache

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_file=".env", env_file_encoding="utf-8", extra="ignore")

    # App
    APP_ENV: str = "dev"  # dev|prod|test
    API_HOST: str = "0.0.0.0"
    API_PORT: int = 8000

    # Logs vão para stderr; stdout fica reservado ao JSON da CLI
    LOG_LEVEL: str = "INFO"
    LOG_JSON: bool = False  # força JSON mesmo em dev

    # Fock / álgebra exata
    FOCK_DEFAULT_TRUNCATION: int = 4
    NORM_TOLERANCE: float = 1e-9
    # teto de segurança do fecho de span (dimensão da base)
    SPAN_MAX_DIMENSION: int = 20000

    # Enumeração do reticulado
    MAX_ENUMERATION_VERTICES: int = 16
    # teto de pares; o Hasse é cúbico no número de pares
    MAX_LATTICE_PAIRS: int = 4096

    # Corpus de exemplos
    CORPUS_RANDOM_SEED: int = 20240101
    CORPUS_RANDOM_GRAPHS: int = 100

    @property
    def is_dev(self) -> bool:
        return (self.APP_ENV or "").lower() in ("dev", "development", "local")


@lru_cache
def get_settings() -> Settings:
    return Settings()  # type: ignore


settings = get_settings()
