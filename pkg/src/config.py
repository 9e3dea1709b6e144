import os
from dataclasses import dataclass
from typing import Optional

import psutil
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

DEFAULT_BUDGET_NODES = 10_000_000
DEFAULT_BUDGET_SECONDS = 60.0
DEFAULT_EXACT_MAX_N = 7


def _env_int(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or not value.strip():
        return default
    try:
        return int(value)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {value!r}")


def _env_float(name: str, default: float) -> float:
    value = os.getenv(name)
    if value is None or not value.strip():
        return default
    try:
        return float(value)
    except ValueError:
        raise ValueError(f"{name} must be a number, got {value!r}")


def default_jobs() -> int:
    """Worker count when neither --jobs nor ZYCLONE_JOBS is given."""
    return psutil.cpu_count(logical=True) or 1


@dataclass(frozen=True)
class ZycloneConfig:
    """
    Runtime settings read from the environment.

    Command-line flags override these; see main.py.
    """
    jobs: int
    log_level: str
    budget_nodes: int
    budget_seconds: float
    exact_max_n: int

    @classmethod
    def from_env(cls) -> "ZycloneConfig":
        jobs = _env_int('ZYCLONE_JOBS', 0) or default_jobs()
        return cls(
            jobs=max(1, jobs),
            log_level=os.getenv('ZYCLONE_LOG_LEVEL', 'WARNING').upper(),
            budget_nodes=_env_int('ZYCLONE_BUDGET_NODES', DEFAULT_BUDGET_NODES),
            budget_seconds=_env_float('ZYCLONE_BUDGET_SECONDS', DEFAULT_BUDGET_SECONDS),
            exact_max_n=_env_int('ZYCLONE_EXACT_MAX_N', DEFAULT_EXACT_MAX_N),
        )

    def with_overrides(self, jobs: Optional[int] = None, log_level: Optional[str] = None,
                       budget_nodes: Optional[int] = None,
                       budget_seconds: Optional[float] = None) -> "ZycloneConfig":
        return ZycloneConfig(
            jobs=max(1, jobs) if jobs else self.jobs,
            log_level=(log_level or self.log_level).upper(),
            budget_nodes=budget_nodes or self.budget_nodes,
            budget_seconds=budget_seconds or self.budget_seconds,
            exact_max_n=self.exact_max_n,
        )
