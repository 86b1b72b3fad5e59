#!/usr/bin/env python3
"""How load imbalance grows with skew, scheme by scheme.

Sweeps the Zipf exponent for a mid-sized deployment and prints the final
imbalance of each scheme side by side. The head-aware schemes (dc, wc)
should stay flat while pkg degrades once the hottest key outgrows two
workers. Saves a PNG next to this script when matplotlib is available.
"""

from streampart import SimConfig, ZipfConfig, sweep

N_WORKERS = 50
MESSAGES = 200_000
Z_VALUES = [0.4, 0.8, 1.2, 1.6, 2.0]
SCHEMES = ["pkg", "rr", "dc", "wc"]


def main():
    grid = [
        SimConfig(
            scheme=scheme,
            n=N_WORKERS,
            s=5,
            workload=ZipfConfig(z=z, num_keys=10_000, num_messages=MESSAGES, seed=42),
            seed=42,
        )
        for scheme in SCHEMES
        for z in Z_VALUES
    ]
    results = sweep(grid)

    table = {}
    for result in results:
        config = result.config_echo
        table[(config.scheme, config.workload.z)] = result.final_imbalance

    header = "z      " + "".join(f"{scheme:>12}" for scheme in SCHEMES)
    print(f"final imbalance, n={N_WORKERS} workers, m={MESSAGES} messages")
    print(header)
    for z in Z_VALUES:
        row = f"{z:<7}" + "".join(f"{table[(s, z)]:>12.2e}" for s in SCHEMES)
        print(row)

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("\nmatplotlib not installed; skipping the plot")
        return

    fig, ax = plt.subplots(figsize=(7, 4.5))
    for scheme in SCHEMES:
        ax.plot(Z_VALUES, [table[(scheme, z)] for z in Z_VALUES], marker="o", label=scheme)
    ax.set_yscale("log")
    ax.set_xlabel("zipf exponent z")
    ax.set_ylabel("final imbalance")
    ax.set_title(f"imbalance vs skew (n={N_WORKERS}, m={MESSAGES})")
    ax.legend()
    fig.tight_layout()
    fig.savefig("imbalance_vs_skew.png", dpi=120)
    print("\nwrote imbalance_vs_skew.png")


if __name__ == "__main__":
    main()
