"""Stream partitioning schemes and a deterministic load-balance simulator.

Routes skewed key streams from multiple independent sources to n workers,
tracking hot keys online and widening their candidate worker set just
enough to keep the load imbalance within a tolerance.
"""

from .choices import (
    SolverInput,
    SolverOutput,
    expected_workers,
    find_optimal_choices,
    prefix_constraint,
)
from .core import ImbalanceReport, LoadVector, Message, merge_loads
from .heavyhitters import (
    HeadSnapshot,
    SpaceSavingSummary,
    capacity_for_theta,
    default_theta,
)
from .partitioning import (
    SCHEMES,
    HashFamily,
    Partitioner,
    RoutingDecision,
    min_load_choice,
)
from .simulate import (
    KeyPlacementLedger,
    ProgressSample,
    RunResult,
    SimConfig,
    emit_csv,
    memory_estimates,
    run,
    summarize,
    sweep,
)
from .workload import StreamSource, ZipfConfig, generate, ingest, zipf_probability

__version__ = "0.1.0"

__all__ = [
    "SCHEMES",
    "HashFamily",
    "HeadSnapshot",
    "ImbalanceReport",
    "KeyPlacementLedger",
    "LoadVector",
    "Message",
    "Partitioner",
    "ProgressSample",
    "RoutingDecision",
    "RunResult",
    "SimConfig",
    "SolverInput",
    "SolverOutput",
    "SpaceSavingSummary",
    "StreamSource",
    "ZipfConfig",
    "capacity_for_theta",
    "default_theta",
    "emit_csv",
    "expected_workers",
    "find_optimal_choices",
    "generate",
    "ingest",
    "memory_estimates",
    "merge_loads",
    "min_load_choice",
    "prefix_constraint",
    "run",
    "summarize",
    "sweep",
    "zipf_probability",
]
