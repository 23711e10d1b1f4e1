"""Power-aware virtual platform: simulate firmware against a battery model."""

from ._powervp import (
    SimulationError,
    ValidationError,
    __version__,
    default_config,
    dse,
    load_config,
    paper_base_config,
    parse_duration,
    run,
    validate,
)

__all__ = [
    "SimulationError",
    "ValidationError",
    "__version__",
    "default_config",
    "dse",
    "load_config",
    "paper_base_config",
    "parse_duration",
    "run",
    "validate",
]
