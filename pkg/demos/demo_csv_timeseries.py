#!/usr/bin/env python3
"""Export an imbalance time series to CSV and read it back.

The same artifact is produced by the CLI:

    streampart --scheme dc --workers 20 --zipf-z 1.8 --keys 10000 \
               --messages 200000 --seed 3 --out dc_run.csv
"""

import csv
import io

from streampart import SimConfig, ZipfConfig, emit_csv, run

OUT = "dc_run.csv"


def main():
    config = SimConfig(
        scheme="dc",
        n=20,
        s=5,
        workload=ZipfConfig(z=1.8, num_keys=10_000, num_messages=200_000, seed=3),
        seed=3,
        report_every=20_000,
    )
    result = run(config)
    emit_csv(result, OUT)
    print(f"wrote {OUT}")

    with open(OUT, encoding="utf-8") as handle:
        rows = list(csv.DictReader(handle))
    print(f"{'at_message':>12} {'imbalance':>12} {'head_size':>10} {'d':>4} {'memory':>8}")
    for row in rows:
        print(
            f"{row['at_message']:>12} {float(row['imbalance']):>12.3e} "
            f"{row['head_size']:>10} {row['d']:>4} {row['memory_units']:>8}"
        )


if __name__ == "__main__":
    main()
