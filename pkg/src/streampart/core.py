"""Stream/worker data model and the load and imbalance metrics.

Loads are kept as raw message counts and normalized only when reporting,
so repeated increments never accumulate floating-point drift.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple


class Message(NamedTuple):
    """One element of a keyed stream."""

    timestamp: int
    key: object
    value: object = ""


@dataclass(frozen=True)
class ImbalanceReport:
    """Imbalance measured after ``at_message`` messages were routed."""

    at_message: int
    imbalance: float


class LoadVector:
    """Per-worker message counts, either one source's local view or the
    merged global view.

    The vector length is fixed at construction; only :meth:`record_send`
    mutates it.
    """

    __slots__ = ("counts", "total")

    def __init__(self, n: int, counts: Iterable[int] | None = None):
        if n < 1:
            raise ValueError(f"worker count must be >= 1, got {n}")
        if counts is None:
            self.counts = [0] * n
        else:
            self.counts = list(counts)
            if len(self.counts) != n:
                raise ValueError(f"expected {n} counts, got {len(self.counts)}")
            if any(c < 0 for c in self.counts):
                raise ValueError("counts must be nonnegative")
        self.total = sum(self.counts)

    @property
    def n(self) -> int:
        return len(self.counts)

    def record_send(self, worker: int) -> None:
        """Count one message routed to ``worker``."""
        if not 0 <= worker < len(self.counts):
            raise ValueError(f"worker {worker} out of range [0, {len(self.counts)})")
        self.counts[worker] += 1
        self.total += 1

    def imbalance(self) -> float:
        """Maximum load minus average load, as a fraction of messages so far.

        An empty vector reports 0 (the metric is undefined before the first
        message). The result lies in [0, 1 - 1/n].
        """
        if self.total == 0:
            return 0.0
        return (max(self.counts) - self.total / len(self.counts)) / self.total

    def copy(self) -> LoadVector:
        return LoadVector(len(self.counts), self.counts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LoadVector):
            return NotImplemented
        return self.counts == other.counts

    def __repr__(self) -> str:
        return f"LoadVector({self.counts!r})"


def merge_loads(locals_: Iterable[LoadVector]) -> LoadVector:
    """Elementwise sum of per-source load vectors (the global view).

    All vectors must have the same worker count.
    """
    vectors = list(locals_)
    if not vectors:
        raise ValueError("merge_loads needs at least one vector")
    n = vectors[0].n
    merged = [0] * n
    for v in vectors:
        if v.n != n:
            raise ValueError(f"mismatched worker counts: {v.n} != {n}")
        for i, c in enumerate(v.counts):
            merged[i] += c
    return LoadVector(n, merged)
