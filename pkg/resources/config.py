from functools import lru_cache
from typing import Literal

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

load_dotenv()


class GorhomSettings(BaseSettings):
    """Runtime settings, read from GORHOM_* environment variables or a .env file."""

    model_config = SettingsConfigDict(env_prefix="GORHOM_", extra="ignore")

    log_level: str = Field("WARNING", description="Root logging level")
    default_format: Literal["text", "tree"] = Field(
        "text", description="Report format when --format is not given"
    )
    seed: int = Field(20240601, description="Seed for randomized property suites")

    oracle_ring_bound: int = Field(16, ge=2, description="Largest finite ring the oracle accepts")
    oracle_module_bound: int = Field(64, ge=1, description="Largest module the oracle tabulates")
    oracle_search_bound: int = Field(
        1 << 16, ge=1, description="Cap on exhaustive hom and cocycle searches"
    )
    enumeration_bound: int = Field(
        4096, ge=1, description="Cap on element enumeration used by filtration peeling"
    )
    cogeneration_degree_bound: int = Field(
        1, ge=0, description="Degree window |k| for the complex cogenerating set"
    )
    cogeneration_ideal_bound: int = Field(
        6, ge=1, description="Largest d for which Z/(d) enters the cogenerating sets over Z"
    )
    verify_workers: int = Field(4, ge=1, description="Thread pool size of the verify runner")


@lru_cache(maxsize=1)
def get_settings() -> GorhomSettings:
    return GorhomSettings()
