"""Synthetic Zipf key streams and file-based key streams.

Generated keys are integer ranks 1..num_keys drawn i.i.d. from the Zipf
pmf via a cumulative table and binary search, so the pmf is exact and
every draw costs O(log K). File streams treat each nonempty line as one
key.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterator

import numpy as np

from .core import Message

_CHUNK = 100_000


@lru_cache(maxsize=32)
def _zipf_pmf(z: float, num_keys: int) -> np.ndarray:
    ranks = np.arange(1, num_keys + 1, dtype=np.float64)
    weights = ranks ** (-z)
    return weights / weights.sum()


def zipf_probability(rank: int, z: float, num_keys: int) -> float:
    """Probability of the key with the given 1-based rank: rank^-z / H."""
    if num_keys < 1:
        raise ValueError(f"num_keys must be >= 1, got {num_keys}")
    if not 1 <= rank <= num_keys:
        raise ValueError(f"rank {rank} out of range [1, {num_keys}]")
    if z < 0:
        raise ValueError(f"zipf exponent must be >= 0, got {z}")
    return float(_zipf_pmf(z, num_keys)[rank - 1])


@dataclass(frozen=True)
class ZipfConfig:
    z: float
    num_keys: int
    num_messages: int
    seed: int

    def __post_init__(self):
        if self.z < 0:
            raise ValueError(f"zipf exponent must be >= 0, got {self.z}")
        if self.num_keys < 1:
            raise ValueError(f"num_keys must be >= 1, got {self.num_keys}")
        if self.num_messages < 0:
            raise ValueError(f"num_messages must be >= 0, got {self.num_messages}")

    def probabilities(self) -> np.ndarray:
        """The full pmf over ranks 1..num_keys (copy)."""
        return _zipf_pmf(self.z, self.num_keys).copy()


class StreamSource:
    """Re-iterable finite stream of messages.

    ``length`` is None when it is not known up front (file streams).
    Iterating yields Message values; ``keys()`` yields bare keys for
    consumers that do not need timestamps.
    """

    def __init__(self, key_factory: Callable[[], Iterator], length: int | None):
        self._key_factory = key_factory
        self.length = length

    def keys(self) -> Iterator:
        return self._key_factory()

    def __iter__(self) -> Iterator[Message]:
        for t, key in enumerate(self._key_factory()):
            yield Message(t, key, "")


def generate(config: ZipfConfig) -> StreamSource:
    """Deterministic i.i.d. Zipf stream of ``num_messages`` integer keys."""
    cumulative = np.cumsum(_zipf_pmf(config.z, config.num_keys))
    cumulative[-1] = 1.0  # guard against the sum landing below a draw

    def keys() -> Iterator[int]:
        rng = np.random.default_rng(config.seed)
        remaining = config.num_messages
        while remaining > 0:
            batch = min(remaining, _CHUNK)
            draws = rng.random(batch)
            ranks = np.searchsorted(cumulative, draws, side="right") + 1
            yield from ranks.tolist()
            remaining -= batch

    return StreamSource(keys, config.num_messages)


def ingest(path: str | Path) -> StreamSource:
    """Stream of keys read from a UTF-8 text file, one key per line.

    Blank lines are skipped and timestamps stay consecutive. Missing or
    unreadable files raise OSError/UnicodeDecodeError with the path (and
    line number, where known) in the message.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"input stream file not found: {path}")

    def keys() -> Iterator[str]:
        lineno = 0
        try:
            with open(path, encoding="utf-8", newline=None) as handle:
                for lineno, line in enumerate(handle, start=1):
                    key = line.rstrip("\r\n")
                    if key:
                        yield key
        except UnicodeDecodeError as exc:
            raise UnicodeDecodeError(
                exc.encoding,
                exc.object,
                exc.start,
                exc.end,
                f"{exc.reason} (in {path} near line {lineno + 1})",
            ) from exc

    return StreamSource(keys, None)
