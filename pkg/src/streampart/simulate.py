"""End-to-end simulation: s sources, n workers, one partitioned stream.

Messages are dealt to sources round-robin by message index; each source
routes with its own partitioner state and local load vector, while the
harness keeps the ground-truth global load and a placement ledger for
memory accounting. Runs are deterministic functions of their config.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .core import ImbalanceReport, LoadVector
from .heavyhitters import default_theta
from .partitioning import SCHEMES, HashFamily, Partitioner
from .workload import StreamSource, ZipfConfig, generate, ingest

logger = logging.getLogger(__name__)

CSV_HEADER = (
    "at_message,scheme,n,s,z,theta,epsilon,seed,imbalance,"
    "head_size,d,memory_units,mem_pkg,mem_sg"
)


@dataclass(frozen=True)
class SimConfig:
    scheme: str
    n: int
    workload: ZipfConfig | str | Path
    s: int = 5
    theta: float | None = None  # None -> 1/(5n)
    epsilon: float = 1e-4
    seed: int = 0
    report_every: int = 10_000
    fixed_head_d: int | None = None  # dc only: bypass the solver

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}, expected one of {SCHEMES}")
        if self.n < 1:
            raise ValueError(f"worker count must be >= 1, got {self.n}")
        if self.s < 1:
            raise ValueError(f"source count must be >= 1, got {self.s}")
        if self.theta is not None and not 0.0 < self.theta <= 1.0:
            raise ValueError(f"theta must be in (0, 1], got {self.theta}")
        if self.epsilon <= 0.0:
            raise ValueError(f"epsilon must be > 0, got {self.epsilon}")
        if self.report_every < 1:
            raise ValueError(f"report_every must be >= 1, got {self.report_every}")

    @property
    def effective_theta(self) -> float:
        return default_theta(self.n) if self.theta is None else self.theta

    def stream(self) -> StreamSource:
        if isinstance(self.workload, ZipfConfig):
            return generate(self.workload)
        return ingest(self.workload)


class KeyPlacementLedger:
    """Which workers processed each key, with per-key message counts.

    ``max_d_used`` records the largest candidate-set size in force when a
    key was routed, for checking scheme placement bounds.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries: dict | None = None):
        # key -> [message_count, worker_set, max_d_used]
        self._entries = entries if entries is not None else {}

    def record(self, key, worker: int, d_used: int = 1) -> None:
        entry = self._entries.get(key)
        if entry is None:
            self._entries[key] = [1, {worker}, d_used]
        else:
            entry[0] += 1
            entry[1].add(worker)
            if d_used > entry[2]:
                entry[2] = d_used

    def message_count(self, key) -> int:
        return self._entries[key][0]

    def workers(self, key) -> frozenset:
        return frozenset(self._entries[key][1])

    def max_d_used(self, key) -> int:
        return self._entries[key][2]

    def keys(self):
        return self._entries.keys()

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, key) -> bool:
        return key in self._entries


def memory_estimates(ledger: KeyPlacementLedger, n: int) -> tuple[int, int, int]:
    """(actual, mem_pkg, mem_sg) memory units for a populated ledger.

    actual counts one unit of state per (key, worker) pair actually used;
    the other two estimate what two-choice and round-robin routing would
    need for the same key frequencies: sum of min(f_k, 2) and min(f_k, n).
    """
    actual = 0
    mem_pkg = 0
    mem_sg = 0
    for count, workers, _ in ledger._entries.values():
        actual += len(workers)
        mem_pkg += count if count < 2 else 2
        mem_sg += count if count < n else n
    return actual, mem_pkg, mem_sg


@dataclass(frozen=True)
class ProgressSample:
    """Everything recorded at one measurement point."""

    at_message: int
    imbalance: float
    head_size: int
    d: int
    memory_units: int
    mem_pkg: int
    mem_sg: int


@dataclass
class RunResult:
    samples: list[ProgressSample]
    final_imbalance: float
    memory_units: int
    mem_pkg: int
    mem_sg: int
    head_size: int
    d_final: int
    messages_routed: int
    config_echo: SimConfig
    ledger: KeyPlacementLedger = field(repr=False)
    local_loads: list[LoadVector] = field(repr=False)
    global_load: LoadVector = field(repr=False)

    @property
    def imbalance_series(self) -> list[ImbalanceReport]:
        return [ImbalanceReport(s.at_message, s.imbalance) for s in self.samples]

    @property
    def mean_imbalance(self) -> float:
        """Time-series average over measurement points (0 for empty runs)."""
        if not self.samples:
            return 0.0
        return sum(s.imbalance for s in self.samples) / len(self.samples)


def run(config: SimConfig) -> RunResult:
    """Route the configured stream and collect imbalance and memory series."""
    n = config.n
    s = config.s
    theta = config.effective_theta
    family = HashFamily(config.seed, n)
    partitioners = [
        Partitioner(
            config.scheme,
            n,
            family,
            source_index=i,
            num_sources=s,
            theta=theta,
            epsilon=config.epsilon,
            fixed_head_d=config.fixed_head_d,
        )
        for i in range(s)
    ]
    route_fns = [p.route_key for p in partitioners]
    global_load = LoadVector(n)
    gcounts = global_load.counts
    entries: dict = {}
    actual = 0
    mem_pkg = 0
    mem_sg = 0
    samples: list[ProgressSample] = []
    lead = partitioners[0]
    report_every = config.report_every
    next_report = report_every
    t = 0

    def snapshot() -> ProgressSample:
        head_size = len(lead.summary.head(theta)) if lead.summary is not None else 0
        return ProgressSample(
            at_message=t,
            imbalance=(max(gcounts) - t / n) / t,
            head_size=head_size,
            d=lead.current_d(),
            memory_units=actual,
            mem_pkg=mem_pkg,
            mem_sg=mem_sg,
        )

    for key in config.stream().keys():
        worker, d_used, _ = route_fns[t % s](key)
        gcounts[worker] += 1
        entry = entries.get(key)
        if entry is None:
            entries[key] = [1, {worker}, d_used]
            actual += 1
            mem_pkg += 1
            mem_sg += 1
        else:
            count = entry[0]
            entry[0] = count + 1
            if count < 2:
                mem_pkg += 1
            if count < n:
                mem_sg += 1
            workers = entry[1]
            if worker not in workers:
                workers.add(worker)
                actual += 1
            if d_used > entry[2]:
                entry[2] = d_used
        t += 1
        if t == next_report:
            samples.append(snapshot())
            next_report += report_every
    global_load.total = t

    if t > 0 and (not samples or samples[-1].at_message != t):
        samples.append(snapshot())
    final = samples[-1] if samples else None
    return RunResult(
        samples=samples,
        final_imbalance=final.imbalance if final else 0.0,
        memory_units=actual,
        mem_pkg=mem_pkg,
        mem_sg=mem_sg,
        head_size=final.head_size if final else 0,
        d_final=lead.current_d(),
        messages_routed=t,
        config_echo=config,
        ledger=KeyPlacementLedger(entries),
        local_loads=[p.local_load for p in partitioners],
        global_load=global_load,
    )


def _fmt(value: float) -> str:
    return f"{value:.9g}"


def emit_csv(result: RunResult, path: str | Path) -> None:
    """Write the measurement series plus a final summary row.

    Output is byte-stable for a fixed result: LF line endings, reals with 9
    significant digits. The z column is nan for file workloads.
    """
    config = result.config_echo
    workload = config.workload
    z = workload.z if isinstance(workload, ZipfConfig) else float("nan")
    prefix = (
        f"{config.scheme},{config.n},{config.s},{_fmt(z)},"
        f"{_fmt(config.effective_theta)},{_fmt(config.epsilon)},{config.seed}"
    )
    lines = [CSV_HEADER]
    for sample in result.samples:
        lines.append(
            f"{sample.at_message},{prefix},{_fmt(sample.imbalance)},"
            f"{sample.head_size},{sample.d},{sample.memory_units},"
            f"{sample.mem_pkg},{sample.mem_sg}"
        )
    lines.append(
        f"summary,{prefix},{_fmt(result.final_imbalance)},"
        f"{result.head_size},{result.d_final},{result.memory_units},"
        f"{result.mem_pkg},{result.mem_sg}"
    )
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write("\n".join(lines) + "\n")


def sweep(configs: Iterable[SimConfig]) -> list[RunResult | None]:
    """Run every config in order; a failed run logs its config and yields
    None while the rest of the grid still completes."""
    results: list[RunResult | None] = []
    for config in configs:
        try:
            results.append(run(config))
        except Exception:
            logger.exception("run failed for config %r", config)
            results.append(None)
    return results


def summarize(result: RunResult) -> str:
    """One-line human summary of a finished run."""
    config = result.config_echo
    return (
        f"scheme={config.scheme} n={config.n} s={config.s} "
        f"messages={result.messages_routed} "
        f"final_imbalance={result.final_imbalance:.3e} "
        f"mean_imbalance={result.mean_imbalance:.3e} "
        f"head_size={result.head_size} d={result.d_final} "
        f"memory={result.memory_units} "
        f"mem_pkg={result.mem_pkg} mem_sg={result.mem_sg}"
    )
