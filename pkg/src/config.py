"""
Runtime settings
Loaded from the environment (and an optional .env file)
"""
import os
from dataclasses import dataclass
from typing import Optional

from dotenv import load_dotenv

from .utils.errors import ValidationError

load_dotenv()

ENV_PREFIX = "CVTELEPORT_"
MIN_FALLBACK_STARTS = 32


def _env(name: str, default: Optional[str] = None) -> Optional[str]:
    return os.getenv(f"{ENV_PREFIX}{name}", default)


@dataclass(frozen=True)
class Settings:
    """Process-wide settings; CLI flags take precedence"""
    log_level: str = "INFO"
    log_file: Optional[str] = None
    verify_points: int = 256
    verify_tolerance: float = 1e-5
    fallback_starts: int = MIN_FALLBACK_STARTS
    fallback_max_iter: int = 5000
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.verify_points < 64 or self.verify_points % 2:
            raise ValidationError(f"verify_points must be an even integer >= 64, got {self.verify_points}")
        if self.fallback_starts < MIN_FALLBACK_STARTS:
            raise ValidationError(
                f"fallback_starts must be at least {MIN_FALLBACK_STARTS}, got {self.fallback_starts}"
            )
        if self.workers < 1:
            raise ValidationError(f"workers must be positive, got {self.workers}")

    @classmethod
    def from_env(cls) -> "Settings":
        """Build settings from CVTELEPORT_* environment variables"""
        return cls(
            log_level=_env("LOG_LEVEL", "INFO").upper(),
            log_file=_env("LOG_FILE") or None,
            verify_points=int(_env("VERIFY_POINTS", "256")),
            verify_tolerance=float(_env("VERIFY_TOLERANCE", "1e-5")),
            fallback_starts=int(_env("FALLBACK_STARTS", str(MIN_FALLBACK_STARTS))),
            fallback_max_iter=int(_env("FALLBACK_MAX_ITER", "5000")),
            seed=int(_env("SEED", "0")),
            workers=int(_env("WORKERS", "1")),
        )
