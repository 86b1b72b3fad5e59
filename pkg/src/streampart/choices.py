"""Solver for the number of candidate workers to give each hot key.

The load generated by the ``h`` most frequent hot keys, plus everything
that collides onto the same workers, must fit within the capacity of the
workers those keys reach. Checking that inequality for every prefix of the
head yields the smallest d that can keep the expected imbalance within the
tolerance; if no d < n works, the caller should fall back to using every
worker.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

_SUM_TOLERANCE = 1e-9


@dataclass(frozen=True)
class SolverInput:
    """Estimated key distribution summary handed to the solver.

    head_probs must be nonincreasing and, together with tail_mass, sum to 1
    (inputs drifting from 1, e.g. from sketch overestimation, are
    renormalized before solving).
    """

    head_probs: tuple[float, ...]
    tail_mass: float
    n: int
    epsilon: float

    def __post_init__(self):
        object.__setattr__(self, "head_probs", tuple(self.head_probs))
        if self.n < 1:
            raise ValueError(f"worker count must be >= 1, got {self.n}")
        if self.epsilon <= 0.0:
            raise ValueError(f"epsilon must be > 0, got {self.epsilon}")
        if self.tail_mass < 0.0:
            raise ValueError(f"tail_mass must be >= 0, got {self.tail_mass}")
        if any(p <= 0.0 for p in self.head_probs):
            raise ValueError("head probabilities must be positive")
        if any(a < b for a, b in zip(self.head_probs, self.head_probs[1:])):
            raise ValueError("head probabilities must be nonincreasing")

    def normalized(self) -> SolverInput:
        """Rescale so probabilities sum to 1 exactly."""
        total = sum(self.head_probs) + self.tail_mass
        if abs(total - 1.0) <= _SUM_TOLERANCE:
            return self
        head = tuple(p / total for p in self.head_probs)
        return SolverInput(
            head_probs=head,
            tail_mass=max(0.0, 1.0 - sum(head)),
            n=self.n,
            epsilon=self.epsilon,
        )


@dataclass(frozen=True)
class SolverOutput:
    """Either a choice count d in [2, n) or the use-all-workers fallback."""

    d: int | None
    constraints_checked: int

    @property
    def all_workers(self) -> bool:
        return self.d is None

    def effective_d(self, n: int) -> int:
        """Choice count with the fallback mapped to n."""
        return self.d if self.d is not None else n


def expected_workers(h: int, d: int, n: int) -> float:
    """Expected number of distinct workers reached by h keys with d
    independent uniform hash choices each (h*d placements into n slots,
    with replacement): n - n*((n-1)/n)^(h*d).
    """
    if h < 1 or d < 1 or n < 1:
        raise ValueError(f"h, d, n must all be >= 1, got h={h} d={d} n={n}")
    return n - n * ((n - 1) / n) ** (h * d)


@lru_cache(maxsize=128)
def _mass_tables(head_probs: tuple[float, ...]) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """prefix[h] = mass of the top h keys; suffix[h] = mass of the rest."""
    size = len(head_probs)
    prefix = [0.0] * (size + 1)
    for i, p in enumerate(head_probs):
        prefix[i + 1] = prefix[i] + p
    suffix = [0.0] * (size + 1)
    for i in range(size - 1, -1, -1):
        suffix[i] = suffix[i + 1] + head_probs[i]
    return tuple(prefix), tuple(suffix)


def prefix_constraint(inp: SolverInput, h: int, d: int) -> bool:
    """Can the workers covering the top-h hot keys absorb their load?

    The left side lower-bounds the expected load on those workers: the
    prefix mass itself, plus the remaining head mass scaled by the chance
    that all d of a head key's choices land inside the covered set, plus
    the tail mass scaled the same way for 2 choices. The right side is the
    covered workers' ideal share plus the tolerance.
    """
    size = len(inp.head_probs)
    if not 1 <= h <= size:
        raise ValueError(f"prefix length {h} out of range [1, {size}]")
    n = inp.n
    prefix, suffix = _mass_tables(inp.head_probs)
    b_h = expected_workers(h, d, n)
    ratio = b_h / n
    lhs = prefix[h] + ratio**d * suffix[h] + ratio**2 * inp.tail_mass
    return lhs <= b_h * (1.0 / n + inp.epsilon)


def find_optimal_choices(inp: SolverInput) -> SolverOutput:
    """Smallest d in [2, n) satisfying every prefix constraint; None when no
    such d exists (use every worker instead). An empty head solves to 2.

    The scan starts at the provable lower bound d >= p_1/(1/n + epsilon)
    (the h=1 constraint needs b_1 >= p_1/(1/n + epsilon) and b_1 <= d) and
    walks up linearly; the constraint set is not monotone in d in any
    obvious way, so no bisection.
    """
    inp = inp.normalized()
    if not inp.head_probs:
        return SolverOutput(d=2, constraints_checked=0)
    n = inp.n
    head_size = len(inp.head_probs)
    # Inlined prefix_constraint (same cached tables, same expressions) to
    # keep the scan cheap enough for frequent online re-solves.
    prefix, suffix = _mass_tables(inp.head_probs)
    tail = inp.tail_mass
    share = 1.0 / n + inp.epsilon
    decay = (n - 1) / n
    lower = math.ceil(inp.head_probs[0] / share - 1e-12)
    checked = 0
    for d in range(max(2, lower), n):
        ok = True
        for h in range(1, head_size + 1):
            checked += 1
            b_h = n - n * decay ** (h * d)
            ratio = b_h / n
            lhs = prefix[h] + ratio**d * suffix[h] + ratio**2 * tail
            if lhs > b_h * share:
                ok = False
                break
        if ok:
            return SolverOutput(d=d, constraints_checked=checked)
    return SolverOutput(d=None, constraints_checked=checked)
