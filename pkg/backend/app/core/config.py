"""
Configuration management for the 𝓕ₙ-multiple zeta value verifier.

Every knob can be overridden through an ``FMZV_``-prefixed environment
variable or a local ``.env`` file.
"""

import os
from typing import List, Optional, Tuple

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

_LOG_LEVELS = {"TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"}


def parse_window(value: str) -> Tuple[int, int]:
    """
    Parse a prime window of the form ``"A:B"``.

    Args:
        value: Window text, e.g. ``"7:97"``

    Returns:
        The pair ``(A, B)``

    Raises:
        ValueError: If the text is malformed, ``A < 5`` or ``A > B``
    """
    parts = value.strip().split(":")
    if len(parts) != 2:
        raise ValueError(f"prime window must look like A:B, got {value!r}")
    try:
        low, high = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise ValueError(f"prime window bounds must be integers, got {value!r}") from exc
    if low < 5:
        raise ValueError(f"prime window must start at 5 or above, got {low}")
    if low > high:
        raise ValueError(f"empty prime window {value!r}")
    return low, high


class Settings(BaseSettings):
    """Verifier settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="FMZV_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Logging Configuration
    log_level: str = Field(default="INFO")
    log_format: str = Field(default="text")
    log_file: Optional[str] = Field(default=None)

    # Sweep Configuration
    default_primes: str = Field(default="7:97")
    min_primes_compared: int = Field(default=10, ge=1)
    jobs: Optional[int] = Field(default=None, ge=1)

    # Numeric Configuration
    default_digits: int = Field(default=40)
    numeric_tolerance: float = Field(default=1e-12, gt=0)
    max_numeric_weight: int = Field(default=12, ge=2)
    max_series_terms: int = Field(default=20000, ge=100)

    # Exact Arithmetic Limits
    bernoulli_max_index: int = Field(default=1000, ge=2)
    modzeta2_max_denominator: int = Field(default=10**6, ge=1)

    @field_validator("log_level", mode="before")
    @classmethod
    def parse_log_level(cls, v):
        level = str(v).strip("'\"").upper()
        if level not in _LOG_LEVELS:
            raise ValueError(f"unknown log level {v!r}")
        return level

    @field_validator("log_format", mode="before")
    @classmethod
    def parse_log_format(cls, v):
        fmt = str(v).strip("'\"").lower()
        if fmt not in {"text", "json"}:
            raise ValueError(f"log format must be 'text' or 'json', got {v!r}")
        return fmt

    @field_validator("default_primes", mode="before")
    @classmethod
    def parse_default_primes(cls, v):
        text = str(v).strip("'\"")
        parse_window(text)
        return text

    @field_validator("default_digits")
    @classmethod
    def check_digits(cls, v):
        if v < 20:
            raise ValueError("at least 20 digits are required")
        return v

    @property
    def prime_window(self) -> Tuple[int, int]:
        """The default prime window as a ``(low, high)`` pair."""
        return parse_window(self.default_primes)

    @property
    def effective_jobs(self) -> int:
        """Worker count, defaulting to the number of available cores."""
        return self.jobs or os.cpu_count() or 1


# Create global settings instance
settings = Settings()


def validate_configuration() -> List[str]:
    """
    Check settings combinations that single-field validators cannot see.

    Returns:
        A list of human-readable problems; empty when the configuration is usable
    """
    problems = []
    low, high = settings.prime_window
    if high < 97 and settings.min_primes_compared >= 10:
        problems.append(
            f"prime window {low}:{high} may hold fewer than "
            f"{settings.min_primes_compared} primes after hypothesis thresholds")
    if settings.numeric_tolerance < 10.0**(1 - settings.default_digits):
        problems.append("numeric tolerance is tighter than the working precision")
    return problems
