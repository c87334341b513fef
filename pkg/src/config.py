from pathlib import Path
from typing import Optional
from pydantic_settings import BaseSettings
from functools import lru_cache


class Settings(BaseSettings):
    """Runtime settings loaded from environment variables.

    Compilation never reads these; they only drive the prover runner,
    the HTTP service and the task queue.
    """

    # Project Info
    PROJECT_NAME: str = "Qiana Compiler"
    PROJECT_VERSION: str = "1.0.0"

    # External prover
    QIANA_PROVER: str = "vampire"
    QIANA_PROVER_ARGS: Optional[str] = None  # e.g. "--mode casc -t {timeout} {problem}"
    PROVER_TIMEOUT: float = 60.0
    MODAL_PROVER_TIMEOUT: float = 120.0
    PROVER_PARALLEL_GOALS: int = 2

    # Redis (Celery broker)
    REDIS_URL: str = "redis://redis:6379/0"

    # Paths
    BASE_DIR: Path = Path(__file__).resolve().parent.parent
    CORPUS_PATH: Path = BASE_DIR / "corpus"

    LOG_LEVEL: str = "INFO"

    # Environment mode
    ENVIRONMENT: str = "development"  # development, staging, production

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"
        case_sensitive = True


@lru_cache()
def get_settings() -> Settings:
    """Cached settings instance for dependency injection."""
    return Settings()


settings = get_settings()
