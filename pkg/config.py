import os
from pathlib import Path

from dotenv import load_dotenv
from pydantic_settings import BaseSettings, SettingsConfigDict

# Explicitly load .env from project root
try:
    load_dotenv(dotenv_path=Path(__file__).resolve().parent / ".env")
except UnicodeDecodeError:
    # process environment only
    pass


def _default_threads() -> int:
    return max(1, min(4, os.cpu_count() or 1))


class Settings(BaseSettings):
    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_DIR: str = "logs"
    LOG_TO_FILE: bool = True

    # Batch runs
    BOTTBORD_THREADS: int = _default_threads()

    # Determinism
    SEED: int = 7

    # Search guards
    MAX_FACTORS: int = 12

    # Sampled verifiers
    SAMPLE_COUNT: int = 100
    POINCARE_SAMPLES: int = 200
    MAX_SAMPLE_ATTEMPTS: int = 20000

    model_config = SettingsConfigDict(env_file=".env", extra="ignore")


settings = Settings()
