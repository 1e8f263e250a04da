import logging
import math
import warnings
from functools import lru_cache
from typing import Literal

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

from pydantic import field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

logger = logging.getLogger(__name__)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


class Settings(BaseSettings):
    # App settings
    app_name: str = "semicut"
    debug: bool = False
    log_level: str = "INFO"

    # Brute-force guards
    oracle_max_n: int = 9  # n! orderings
    brute_count_max_n: int = 24  # 2^n partitions

    # Weighted instances with floating weights compare with this tolerance
    float_tolerance: float = 1e-9

    # Constant A of the analytic cut-count bounds (diagnostics only).
    # The optimal constant tends to 1/(4*sqrt(3)) for large k.
    hr_constant_a: float = 1.0 / (4.0 * math.sqrt(3.0))

    # Solver behaviour
    minimize_strategy: Literal["doubling", "linear"] = "doubling"

    # Benchmark harness
    bench_workers: int = 1
    bench_p_double: float = 0.2

    # Set to false for byte-identical JSON/CSV across reruns
    record_timings: bool = True

    # Sentry Error Monitoring
    sentry_dsn: str = ""
    sentry_environment: str = "development"

    model_config = SettingsConfigDict(
        env_prefix="SEMICUT_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Normalise and validate the log level name."""
        level = v.strip().upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"log_level must be one of {', '.join(LOG_LEVELS)}")
        return level

    @field_validator("float_tolerance")
    @classmethod
    def validate_float_tolerance(cls, v: float) -> float:
        if not 0.0 < v < 1e-3:
            raise ValueError("float_tolerance must lie in (0, 1e-3)")
        return v

    @field_validator("hr_constant_a")
    @classmethod
    def validate_hr_constant(cls, v: float) -> float:
        if v <= 0:
            raise ValueError("hr_constant_a must be positive")
        return v

    @field_validator("oracle_max_n", "brute_count_max_n", "bench_workers")
    @classmethod
    def validate_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("value must be at least 1")
        return v

    @field_validator("bench_p_double")
    @classmethod
    def validate_probability(cls, v: float) -> float:
        if not 0.0 <= v <= 1.0:
            raise ValueError("bench_p_double must lie in [0, 1]")
        return v

    @model_validator(mode="after")
    def validate_config(self) -> Self:
        """Log the effective configuration and warn about odd combinations."""
        if self.debug and not self.record_timings:
            warnings.warn(
                "Debug mode with timings disabled - wall times in reports will read 0.",
                UserWarning,
                stacklevel=2,
            )

        logger.debug(
            f"Config: oracle_max_n={self.oracle_max_n}, "
            f"brute_count_max_n={self.brute_count_max_n}, "
            f"minimize_strategy={self.minimize_strategy}, "
            f"bench_workers={self.bench_workers}"
        )
        if self.sentry_dsn:
            logger.info("Config: Enabled features - Sentry")

        return self


@lru_cache
def get_settings() -> Settings:
    return Settings()
