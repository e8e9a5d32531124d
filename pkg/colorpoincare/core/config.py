"""
Runtime configuration for colorpoincare.

Values come from environment variables prefixed with COLORPOINCARE_
(for example COLORPOINCARE_THREADS=8) or from a local .env file.
"""
from functools import lru_cache

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Library and CLI settings with environment variable support."""

    # Parallelism
    threads: int = 4

    # Defaults for verification runs
    default_n: int = 0
    default_formulation: str = "four"
    default_kappa: str = "2"
    samples: int = 100
    seed: int = 20240101

    # Output
    report_format: str = "text"
    log_level: str = "WARNING"

    class Config:
        env_prefix = "COLORPOINCARE_"
        env_file = ".env"
        env_file_encoding = "utf-8"


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
