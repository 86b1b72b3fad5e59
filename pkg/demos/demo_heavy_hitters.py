#!/usr/bin/env python3
"""Watch the SpaceSaving sketch find the head of a skewed stream.

Feeds a Zipf stream through a small summary and compares its estimates
against exact counts: estimates never undercount, every truly frequent key
is tracked, and the extracted head matches the keys above the threshold.
"""

from collections import Counter

from streampart import SpaceSavingSummary, ZipfConfig, capacity_for_theta, generate

THETA = 0.01
MESSAGES = 100_000


def main():
    capacity = capacity_for_theta(THETA)
    summary = SpaceSavingSummary(capacity)
    exact = Counter()
    stream = generate(ZipfConfig(z=1.6, num_keys=5_000, num_messages=MESSAGES, seed=11))
    for key in stream.keys():
        summary.update(key)
        exact[key] += 1

    print(f"capacity {capacity} counters for threshold {THETA}, "
          f"{len(exact)} distinct keys in {MESSAGES} messages\n")

    snap = summary.head(THETA)
    print(f"head: {len(snap)} keys with estimated frequency >= {THETA}, "
          f"tail mass {snap.tail_mass:.3f}")
    print(f"{'key':>6} {'estimate':>10} {'exact':>8} {'overestimate':>13}")
    for key, p_hat in snap.entries[:15]:
        count, over = summary.counters[key]
        print(f"{key:>6} {p_hat:>10.4f} {exact[key] / MESSAGES:>8.4f} {over:>13}")

    overcounts = sum(
        1 for key, (count, _) in summary.counters.items() if count < exact[key]
    )
    missed = [
        key
        for key, count in exact.items()
        if count / MESSAGES >= THETA and key not in summary
    ]
    print(f"\nestimates below exact count: {overcounts} (must be 0)")
    print(f"frequent keys missing from the sketch: {missed} (must be empty)")


if __name__ == "__main__":
    main()
