"""
Application Configuration Module
Search budgets, limits and logging settings, overridable through ICBOUND_* variables
"""

from functools import lru_cache
from typing import Optional

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Settings loaded from the environment (prefix ICBOUND_) or a .env file"""

    # Application
    APP_NAME: str = "icbound"
    APP_VERSION: str = "1.0.0"

    # Logging
    LOG_LEVEL: str = "WARNING"
    LOG_FILE: Optional[str] = None

    # Search budgets
    BUDGET: int = 2**26  # search nodes for min-rank / kappa, matrices for distributions
    TAU_LIMIT: int = 16
    NU_LIMIT: int = 12
    CC_LIMIT: int = 12

    # Cliques
    CLIQUE_MAX_RECEIVERS: int = 12
    CLIQUE_VECTOR_LIMIT: int = 2**20
    CHOICE_BUDGET: int = 10**6
    PARTITION_MAX_RECEIVERS: int = 10

    # Solver
    ILP_NODE_BUDGET: int = 200_000

    # Codes
    CODE_ENUMERATION_LIMIT: int = 2**22
    MDS_CHECK_MAX_LENGTH: int = 12
    MULTICAST_EXHAUSTIVE_LIMIT: int = 2**16
    MULTICAST_ATTEMPTS: int = 2000

    # Simulation
    DEFAULT_TRIALS: int = 100
    DEFAULT_SEED: int = 0

    class Config:
        env_file = ".env"
        env_prefix = "ICBOUND_"
        case_sensitive = True


@lru_cache()
def get_settings() -> Settings:
    """
    Returns cached settings instance
    Engines read budgets from here unless a caller passes an explicit override
    """
    return Settings()


settings = get_settings()
