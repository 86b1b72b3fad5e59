#!/usr/bin/env python3
"""Memory cost of head-aware routing relative to the classic baselines.

Replicating a key's state on more workers buys balance with memory. This
demo measures state units (one per key-worker pair) actually used by dc
and wc, next to the estimator bounds for two-choice routing (sum of
min(f_k, 2)) and shuffle routing (sum of min(f_k, n)).
"""

from streampart import SimConfig, ZipfConfig, run

N_WORKERS = 50
MESSAGES = 200_000


def main():
    print(f"n={N_WORKERS} workers, m={MESSAGES} messages, K=10000 keys\n")
    print(f"{'z':>4} {'dc':>8} {'wc':>8} {'mem_pkg':>9} {'mem_sg':>9} "
          f"{'dc/pkg':>7} {'wc/pkg':>7} {'wc/sg':>6}")
    for z in (0.8, 1.2, 1.6, 2.0):
        results = {}
        for scheme in ("dc", "wc"):
            results[scheme] = run(
                SimConfig(
                    scheme=scheme,
                    n=N_WORKERS,
                    s=5,
                    workload=ZipfConfig(z=z, num_keys=10_000, num_messages=MESSAGES, seed=7),
                    seed=7,
                )
            )
        dc, wc = results["dc"], results["wc"]
        print(
            f"{z:>4} {dc.memory_units:>8} {wc.memory_units:>8} "
            f"{dc.mem_pkg:>9} {dc.mem_sg:>9} "
            f"{dc.memory_units / dc.mem_pkg:>7.2f} "
            f"{wc.memory_units / wc.mem_pkg:>7.2f} "
            f"{wc.memory_units / wc.mem_sg:>6.2f}"
        )
    print("\ndc stays at or below wc, and both cost a small fraction of "
          "full shuffle-style replication (wc/sg column).")


if __name__ == "__main__":
    main()
