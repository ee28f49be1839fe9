"""
Configuration module for the conflict-free coloring lab.
Contains environment loading, logging setup and the tunable defaults of every algorithm.
"""

import os
import logging
import sys
from dotenv import load_dotenv

# Load environment variables
load_dotenv()


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    return int(raw) if raw not in (None, "") else default


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    return float(raw) if raw not in (None, "") else default


LOG_LEVEL = os.getenv("CFLAB_LOG_LEVEL", "INFO").upper()
LOG_FILE = os.getenv("CFLAB_LOG_FILE")

# Logging configuration
# stdout carries machine output (graphs, colorings, JSON rows), so logs go to stderr
_handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
if LOG_FILE:
    _handlers.append(logging.FileHandler(LOG_FILE, encoding="utf-8"))

logging.basicConfig(
    level=getattr(logging, LOG_LEVEL, logging.INFO),
    format="[%(asctime)s] [%(levelname)s] %(message)s",
    handlers=_handlers,
)

# Reproducibility
DEFAULT_SEED = _env_int("CFLAB_DEFAULT_SEED", 0)

# Output schema for every JSON document (certificates, errors, lab rows)
JSON_SCHEMA_VERSION = 1

# Near-uniform hypergraph colorer
RESAMPLE_ROUNDS_PER_EDGE = _env_int("CFLAB_RESAMPLE_PER_EDGE", 64)
RESAMPLE_ROUNDS_FLOOR = 1000

# Claw-free CFCN rounds
CFCN_C = _env_float("CFLAB_CFCN_C", 0.02)
CFCN_TRIALS_PER_ROUND = _env_int("CFLAB_CFCN_TRIALS", 8)

# High minimum degree window sampler
WINDOW_MAX_RESAMPLE_ROUNDS = _env_int("CFLAB_WINDOW_ROUNDS", 2000)
WINDOW_GLOBAL_RESTARTS = _env_int("CFLAB_WINDOW_RESTARTS", 2)

# Exact solvers
ORACLE_MAX_VERTICES = _env_int("CFLAB_ORACLE_MAX_VERTICES", 16)
PROBE_EXACT_LIMIT = _env_int("CFLAB_PROBE_EXACT_LIMIT", 14)
