"""Routing schemes for one stream source.

Schemes:
  kg   one hashed worker per key
  sg   round-robin over workers, keys ignored
  pkg  two hashed candidates, least loaded wins
  rr   hot keys round-robin over all workers, cold keys as pkg
  dc   hot keys get a solver-chosen number of hashed candidates,
       cold keys as pkg
  wc   hot keys go to the least loaded of all workers, cold keys as pkg

Every choice is made from the source's local load vector only; sources
never coordinate.
"""

from __future__ import annotations

import struct
from hashlib import blake2b
from typing import NamedTuple

from .choices import SolverInput, SolverOutput, find_optimal_choices
from .core import LoadVector, Message
from .heavyhitters import SpaceSavingSummary, capacity_for_theta, default_theta

SCHEMES = ("kg", "sg", "pkg", "rr", "dc", "wc")

# Routing keeps using a cached solver result until the head changes or this
# many hot messages have passed, whichever comes first.
RESOLVE_INTERVAL = 1000


class RoutingDecision(NamedTuple):
    worker: int
    d_used: int
    was_head: bool


class HashFamily:
    """Lazy family of independent hash functions key -> [0, n).

    Function i is blake2b keyed by (base_seed, i), so distinct indices are
    independently seeded and every (seed, i, key) triple is deterministic.
    Results are cached per key and shared by all sources of a run.
    """

    __slots__ = ("base_seed", "n", "arity", "_cache")

    def __init__(self, base_seed: int, n: int, arity: int | None = None):
        if n < 1:
            raise ValueError(f"worker count must be >= 1, got {n}")
        if arity is None:
            arity = max(n, 2)
        if arity < 1:
            raise ValueError(f"arity must be >= 1, got {arity}")
        self.base_seed = base_seed & 0xFFFFFFFFFFFFFFFF
        self.n = n
        self.arity = arity
        self._cache: dict = {}

    def _extend(self, key, cached: list, d: int) -> None:
        key_bytes = key if isinstance(key, bytes) else str(key).encode("utf-8")
        n = self.n
        seed = self.base_seed
        while len(cached) < d:
            index = len(cached) + 1
            digest = blake2b(
                key_bytes,
                digest_size=8,
                key=struct.pack("<QQ", seed, index),
            ).digest()
            cached.append(int.from_bytes(digest, "little") % n)

    def candidates(self, key, d: int) -> list[int]:
        """Workers [h_1(key), ..., h_d(key)]; duplicates are possible."""
        if not 1 <= d <= self.arity:
            raise ValueError(f"d={d} out of range [1, {self.arity}]")
        cached = self._cache.get(key)
        if cached is None:
            cached = []
            self._cache[key] = cached
        if len(cached) < d:
            self._extend(key, cached, d)
        return cached[:d]

    def pair(self, key) -> tuple[int, int]:
        """(h_1, h_2) without copying, for the per-message fast path."""
        cached = self._cache.get(key)
        if cached is None:
            cached = []
            self._cache[key] = cached
        if len(cached) < 2:
            self._extend(key, cached, 2)
        return cached[0], cached[1]


def min_load_choice(load: LoadVector, candidates: list[int]) -> int:
    """Least-loaded candidate; ties go to the lowest worker index."""
    if not candidates:
        raise ValueError("candidate list must not be empty")
    counts = load.counts
    best = candidates[0]
    best_load = counts[best]
    for c in candidates[1:]:
        lc = counts[c]
        if lc < best_load or (lc == best_load and c < best):
            best = c
            best_load = lc
    return best


class Partitioner:
    """Per-source routing state for one scheme.

    ``num_sources`` is the dealing stride of the surrounding run; the sg
    cursor starts at source_index and advances by that stride, so the
    merged sg stream is an exact global round-robin.

    ``fixed_head_d`` (dc only) bypasses the solver and runs the plain
    greedy process with that many choices for hot keys, which is how the
    empirically optimal d is searched for.
    """

    def __init__(
        self,
        scheme: str,
        n: int,
        family: HashFamily,
        *,
        source_index: int = 0,
        num_sources: int = 1,
        theta: float | None = None,
        epsilon: float = 1e-4,
        fixed_head_d: int | None = None,
    ):
        if scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {scheme!r}, expected one of {SCHEMES}")
        if n < 1:
            raise ValueError(f"worker count must be >= 1, got {n}")
        if family.n != n:
            raise ValueError(f"hash family is for n={family.n}, partitioner for n={n}")
        if num_sources < 1:
            raise ValueError(f"num_sources must be >= 1, got {num_sources}")
        if fixed_head_d is not None and scheme != "dc":
            raise ValueError("fixed_head_d only applies to the dc scheme")
        if fixed_head_d is not None and not 2 <= fixed_head_d <= n:
            raise ValueError(f"fixed_head_d={fixed_head_d} out of range [2, {n}]")
        self.scheme = scheme
        self.n = n
        self.family = family
        self.source_index = source_index
        self.theta = default_theta(n) if theta is None else theta
        self.epsilon = epsilon
        self.fixed_head_d = fixed_head_d
        self.local_load = LoadVector(n)
        if scheme in ("rr", "dc", "wc"):
            self.summary: SpaceSavingSummary | None = SpaceSavingSummary(
                capacity_for_theta(self.theta)
            )
        else:
            self.summary = None
        self._sg_cursor = source_index % n
        self._sg_stride = num_sources
        self._head_cursors: dict = {}
        self._solution: SolverOutput | None = None
        self._solved_head: set = set()
        self._staleness = 0
        self._head_cands: dict = {}

    @property
    def cached_d(self) -> int | None:
        """Choice count currently applied to hot keys (dc), n when the
        solver fell back to all workers, None before the first solve."""
        if self.fixed_head_d is not None:
            return self.fixed_head_d
        if self._solution is None:
            return None
        return self._solution.effective_d(self.n)

    def current_d(self) -> int:
        """Effective head choice count for reporting."""
        scheme = self.scheme
        if scheme == "kg":
            return 1
        if scheme == "pkg":
            return 2
        if scheme in ("sg", "wc", "rr"):
            return self.n
        return self.cached_d if self.cached_d is not None else 2

    def _resolve(self) -> SolverOutput:
        snap = self.summary.head(self.theta)
        solution = find_optimal_choices(
            SolverInput(
                head_probs=tuple(p for _, p in snap.entries),
                tail_mass=snap.tail_mass,
                n=self.n,
                epsilon=self.epsilon,
            )
        )
        previous = self._solution
        if previous is None or previous.d != solution.d:
            self._head_cands.clear()
        self._solution = solution
        self._solved_head = {k for k, _ in snap.entries}
        self._staleness = 0
        return solution

    def _head_candidates(self, key, d: int) -> tuple[int, ...]:
        cands = self._head_cands.get(key)
        if cands is None:
            # Deduplicated and index-sorted: a low-to-high scan with strict
            # "<" then breaks load ties toward the lowest index for free.
            cands = tuple(sorted(set(self.family.candidates(key, d))))
            self._head_cands[key] = cands
        return cands

    def route(self, message: Message) -> RoutingDecision:
        return self.route_key(message.key)

    def route_key(self, key) -> RoutingDecision:
        """Pick a worker for one message with this key and record the send."""
        scheme = self.scheme
        loads = self.local_load.counts
        n = self.n
        was_head = False
        if scheme == "kg":
            worker = self.family.candidates(key, 1)[0]
            d_used = 1
        elif scheme == "sg":
            worker = self._sg_cursor
            self._sg_cursor = (worker + self._sg_stride) % n
            d_used = 1
        else:
            if scheme != "pkg":
                summary = self.summary
                count = summary.update(key)
                was_head = count / summary.observed >= self.theta
            if was_head:
                if scheme == "wc":
                    worker = loads.index(min(loads))
                    d_used = n
                elif scheme == "rr":
                    cursor = self._head_cursors.get(key)
                    if cursor is None:
                        cursor = self.family.candidates(key, 1)[0]
                    worker = cursor
                    self._head_cursors[key] = (cursor + 1) % n
                    d_used = n
                else:  # dc
                    if self.fixed_head_d is not None:
                        d_used = self.fixed_head_d
                        worker = None
                    else:
                        solution = self._solution
                        self._staleness += 1
                        if (
                            solution is None
                            or key not in self._solved_head
                            or self._staleness >= RESOLVE_INTERVAL
                        ):
                            solution = self._resolve()
                        if solution.all_workers:
                            worker = loads.index(min(loads))
                            d_used = n
                        else:
                            d_used = solution.d
                            worker = None
                    if worker is None:
                        best = None
                        best_load = None
                        for c in self._head_candidates(key, d_used):
                            lc = loads[c]
                            if best is None or lc < best_load:
                                best = c
                                best_load = lc
                        worker = best
            else:
                a, b = self.family.pair(key)
                la = loads[a]
                lb = loads[b]
                if la < lb:
                    worker = a
                elif lb < la:
                    worker = b
                else:
                    worker = a if a <= b else b
                d_used = 2
        loads[worker] += 1
        self.local_load.total += 1
        return RoutingDecision(worker, d_used, was_head)
