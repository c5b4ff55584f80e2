"""Configuration settings for the time-reordering entanglement toolkit."""

from typing import Literal
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Toolkit settings loaded from environment variables (prefix REORDER_)."""

    model_config = SettingsConfigDict(
        env_prefix="REORDER_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",
    )

    # Logging Configuration
    log_level: str = Field(default="INFO")
    log_format: str = Field(
        default="<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | {name}:{function} - {message}"
    )

    # Quadrature Configuration
    quad_abs_tol: float = Field(default=1e-6, gt=0)
    quad_max_subdivisions: int = Field(default=20000, gt=0)
    quad_truncation_factor: float = Field(default=50.0, gt=0)
    quad_richardson_check: bool = Field(default=False)
    quad_batch_size: int = Field(default=512, gt=0)

    # Amplitude / Norm Configuration
    norm_abs_tol: float = Field(default=1e-8, gt=0)
    norm_deviation_threshold: float = Field(default=0.05, gt=0)
    min_color_separation: float = Field(default=10.0, ge=0)

    # Conventions
    beta_convention: Literal["kernel", "level"] = Field(default="kernel")
    gate_ordering: Literal["color", "symmetrized"] = Field(default="color")

    # Reduced-form F(s) table
    f_table_points: int = Field(default=801, ge=16)

    # Sweeps and optimizer
    sweep_workers: int = Field(default=1, ge=1)
    optimizer_grid_points: int = Field(default=7, ge=1)
    optimizer_max_evaluations: int = Field(default=200, ge=1)
    optimizer_rel_tol: float = Field(default=1e-5, gt=0)

    # Output
    output_significant_digits: int = Field(default=12, ge=1, le=17)

    # Validation suite
    validate_seed: int = Field(default=20240607)
    validate_samples: int = Field(default=50, ge=1)


# Global settings instance
settings = Settings()
