"""SpaceSaving frequency summary and head-of-distribution extraction.

Each source owns one summary over its own sub-stream; summaries are never
merged. The summary keeps at most ``capacity`` counters, overestimates
counts, and guarantees that any key whose true frequency exceeds
observed/capacity is tracked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from heapq import heapify, heappop, heappush


def default_theta(n: int) -> float:
    """Conservative head threshold for ``n`` workers: 1/(5n)."""
    if n < 1:
        raise ValueError(f"worker count must be >= 1, got {n}")
    return 1.0 / (5.0 * n)


def capacity_for_theta(theta: float) -> int:
    """Counter budget used per source for threshold ``theta``.

    ceil(2/theta): at least 1/theta is needed so theta-frequent keys are
    guaranteed tracked; the factor 2 is slack against estimation noise on
    shuffled sub-streams.
    """
    if not 0.0 < theta <= 1.0:
        raise ValueError(f"theta must be in (0, 1], got {theta}")
    return math.ceil(2.0 / theta)


@dataclass(frozen=True)
class HeadSnapshot:
    """Hot keys with estimated probabilities >= theta, sorted descending."""

    entries: tuple[tuple[object, float], ...]
    tail_mass: float
    theta: float

    def keys(self) -> list:
        return [k for k, _ in self.entries]

    def __len__(self) -> int:
        return len(self.entries)


class SpaceSavingSummary:
    """Counter-based sketch with at most ``capacity`` tracked keys.

    Eviction picks a minimum-count key, breaking ties toward the least
    recently updated one. A lazy min-heap of (count, last_seq, key)
    snapshots avoids O(capacity) scans; stale entries are discarded when
    popped, and the heap is compacted when it grows past 8x capacity.
    """

    __slots__ = ("capacity", "observed", "_entries", "_heap", "_seq")

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ValueError(f"capacity must be >= 1, got {capacity}")
        self.capacity = capacity
        self.observed = 0
        # key -> [count, overestimation, last_update_seq]
        self._entries: dict = {}
        self._heap: list = []
        self._seq = 0

    def update(self, key) -> int:
        """Count one occurrence of ``key``; returns its new estimate."""
        self.observed += 1
        self._seq += 1
        seq = self._seq
        entry = self._entries.get(key)
        if entry is not None:
            entry[0] += 1
            entry[2] = seq
            heappush(self._heap, (entry[0], seq, key))
            return entry[0]
        entries = self._entries
        if len(entries) < self.capacity:
            entries[key] = [1, 0, seq]
            heappush(self._heap, (1, seq, key))
            return 1
        # Evict the minimum counter; heap entries whose (count, seq) no
        # longer match the live entry are stale and skipped.
        heap = self._heap
        while True:
            count, entry_seq, victim = heap[0]
            live = entries.get(victim)
            if live is not None and live[0] == count and live[2] == entry_seq:
                break
            heappop(heap)
        heappop(heap)
        del entries[victim]
        entries[key] = [count + 1, count, seq]
        heappush(heap, (count + 1, seq, key))
        if len(heap) > 8 * self.capacity:
            self._compact()
        return count + 1

    def _compact(self) -> None:
        self._heap = [(e[0], e[2], k) for k, e in self._entries.items()]
        heapify(self._heap)

    @property
    def counters(self) -> dict:
        """Snapshot of tracked keys: key -> (count, overestimation)."""
        return {k: (e[0], e[1]) for k, e in self._entries.items()}

    def count(self, key) -> int:
        """Estimated count for ``key`` (0 if not tracked)."""
        entry = self._entries.get(key)
        return entry[0] if entry is not None else 0

    def __contains__(self, key) -> bool:
        return key in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def head(self, theta: float) -> HeadSnapshot:
        """Keys with estimated frequency count/observed >= ``theta``.

        An empty summary yields an empty snapshot with tail_mass 1.
        """
        if self.observed == 0:
            return HeadSnapshot(entries=(), tail_mass=1.0, theta=theta)
        observed = self.observed
        hot = [
            (k, e[0] / observed)
            for k, e in self._entries.items()
            if e[0] / observed >= theta
        ]
        hot.sort(key=lambda kv: kv[1], reverse=True)
        head_mass = sum(p for _, p in hot)
        return HeadSnapshot(
            entries=tuple(hot),
            tail_mass=max(0.0, 1.0 - head_mass),
            theta=theta,
        )
