"""
Configuration Management

Loads and validates environment variables using Pydantic Settings.
Provides type-safe access to tolerances, seeds and complexity limits
throughout the library and the verification CLI.
"""

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Library settings loaded from FUNCVAL_* environment variables"""

    # Application
    environment: str = "development"
    log_level: str = "INFO"

    # Reproducibility (FUNCVAL_SEED overrides --seed on the command line)
    seed: int = 0x5EED
    default_trials: int = 20
    workers: int = 1  # independent checks may run on a thread pool

    # Quadrature
    quad_tol: float = 1e-8  # relative, layer-cake integrals
    quad_max_refinements: int = 14
    quad_initial_panels: int = 8
    psi_quad_tol: float = 1e-10  # relative, moment integrals
    tail_tol: float = 1e-12

    # Check tolerances
    identity_tol: float = 1e-6
    slope_tol: float = 1e-3
    growth_tol: float = 1e-5
    box_tol: float = 1e-4
    synthesis_tol: float = 1e-4
    continuity_tol: float = 1e-2
    condition_limit: float = 1e8

    # Complexity guard
    max_dimension: int = 3
    max_pieces: int = 12
    max_geometry_dimension: int = 4

    # Ball stand-in used by the synthesis check
    ball_vertices: int = 64
    ball_precision: int = 10**6  # max denominator of stereographic parameters

    model_config = SettingsConfigDict(
        env_prefix="FUNCVAL_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False
    )

    @field_validator(
        "quad_tol", "psi_quad_tol", "tail_tol", "identity_tol", "slope_tol",
        "growth_tol", "box_tol", "synthesis_tol", "continuity_tol", "condition_limit"
    )
    @classmethod
    def validate_positive(cls, v: float) -> float:
        """Tolerances and limits must be strictly positive"""
        if v <= 0:
            raise ValueError("must be positive")
        return v

    @field_validator("max_dimension", "max_pieces", "max_geometry_dimension", "ball_vertices")
    @classmethod
    def validate_guard(cls, v: int) -> int:
        """Complexity limits must allow at least one element"""
        if v < 1:
            raise ValueError("must be at least 1")
        return v


# Global settings instance
settings = Settings()
