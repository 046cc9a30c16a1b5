"""Typed configuration for budgets, parallelism and logging."""

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # Parallelism
    threads: int = Field(default=1, ge=1, le=256, description="Worker cap for direction and sweep parallelism")

    # Logging
    log_level: str = Field(default="INFO", pattern="^(DEBUG|INFO|WARNING|ERROR|CRITICAL)$")
    log_json: bool = True

    # Work and memory budgets
    max_grid_points: int = Field(default=1_000_000, ge=1, le=100_000_000)
    rank_row_budget: int = Field(default=10_000, ge=1, le=1_000_000)
    restricted_rank_budget: int = Field(default=1_000, ge=1, le=1_000_000)
    g_image_budget: int = Field(default=10_000, ge=1, le=10_000_000)
    bruteforce_grid_limit: int = Field(default=20, ge=1, le=30)
    gl_budget: int = Field(default=10_000, ge=1, le=10_000_000)
    rotation_samples: int = Field(default=256, ge=1, le=1_000_000)

    # Reproducibility
    random_seed: int = Field(default=0, ge=0)

    model_config = SettingsConfigDict(
        env_prefix="KZN_",
        env_file=".env",
        extra="ignore",
        env_nested_delimiter="__",
    )

    def validate_runtime(self) -> None:
        """Fail startup when budgets contradict each other."""
        problems: list[str] = []
        if self.restricted_rank_budget > self.rank_row_budget:
            problems.append("KZN_RESTRICTED_RANK_BUDGET must not exceed KZN_RANK_ROW_BUDGET")
        if self.g_image_budget > self.max_grid_points:
            problems.append("KZN_G_IMAGE_BUDGET must not exceed KZN_MAX_GRID_POINTS")
        if self.bruteforce_grid_limit > self.max_grid_points:
            problems.append("KZN_BRUTEFORCE_GRID_LIMIT must not exceed KZN_MAX_GRID_POINTS")
        if problems:
            raise ValueError("Invalid runtime configuration: " + "; ".join(problems))


settings = Settings()
