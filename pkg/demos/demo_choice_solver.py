#!/usr/bin/env python3
"""How many candidate workers a hot key needs, as skew and scale vary.

Runs the choice solver on exact Zipf distributions and prints the chosen d
as a fraction of the worker pool. Low skew solves to the two-choice
minimum; extreme skew on small pools falls back to using every worker
("all"); in between, the solver buys balance with d < n.
"""

from streampart import SolverInput, ZipfConfig, default_theta, find_optimal_choices

Z_VALUES = [0.1, 0.5, 1.0, 1.2, 1.4, 1.6, 1.8, 2.0]
N_VALUES = [5, 10, 20, 50, 100]


def solve(z: float, n: int):
    pmf = ZipfConfig(z=z, num_keys=10_000, num_messages=0, seed=0).probabilities()
    theta = default_theta(n)
    head = tuple(float(p) for p in pmf if p >= theta)
    inp = SolverInput(
        head_probs=head,
        tail_mass=max(0.0, 1.0 - sum(head)),
        n=n,
        epsilon=1e-4,
    )
    return len(head), find_optimal_choices(inp)


def main():
    print("solver choice count d (head size in parentheses), theta = 1/(5n)")
    print("z     " + "".join(f"{f'n={n}':>14}" for n in N_VALUES))
    for z in Z_VALUES:
        cells = []
        for n in N_VALUES:
            head_size, out = solve(z, n)
            label = "all" if out.all_workers else str(out.d)
            cells.append(f"{label + f' ({head_size})':>14}")
        print(f"{z:<6}" + "".join(cells))
    print("\nfraction of the pool used for hot keys:")
    for z in (1.4, 2.0):
        row = []
        for n in N_VALUES:
            _, out = solve(z, n)
            row.append(f"{out.effective_d(n) / n:>10.2f}")
        print(f"z={z:<4}" + "".join(row))


if __name__ == "__main__":
    main()
