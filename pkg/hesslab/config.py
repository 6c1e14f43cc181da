"""Configuration management for hesslab."""

from functools import lru_cache
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    # Application
    app_name: str = "hesslab"
    app_version: str = "1.0.0"
    port: int = 8080
    host: str = "0.0.0.0"
    log_level: str = "INFO"

    # CORS
    cors_origins: list = ["*"]

    # Enumeration
    threads: int = 1
    seed: int = 20240917
    trials: int = 5

    # Flag oracle limits
    oracle_max_p: int = 5
    oracle_max_n: int = 9
    oracle_max_m: int = 3
    oracle_budget: int = 2_000_000  # isotropic subspaces visited
    oracle_row_budget: int = 100_000_000  # candidate row pairs screened

    # Point counts
    count_budget: int = 10_000_000  # projective representatives

    # Output
    default_format: str = "json"

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="HESSLAB_",
        case_sensitive=False,
        extra="ignore",
    )


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


# Export settings instance
settings = get_settings()
