#!/usr/bin/env python3
"""Regenerate the bundled reading-speed dataset.

The reading-speed study swept seven character gaps over ten subjects each,
with every subject reading 100 three-letter words (300 characters) per gap.
Only rounded summary statistics survive from the study, so this script
reconstructs a per-subject dataset that is exactly consistent with them:

  * group means are hit exactly (total correct characters per group is fixed),
  * the within-group sum of squares equals the published ANOVA error term
    14696.5 exactly (the published per-group sd values are these groups'
    sds rounded to two decimals),
  * every accuracy is an integer number of correct characters out of 300.

Each group is pinned by two integers: S = sum of correct-character counts
and M = sum of their squares (equivalently the group's exact sd). The
reconstruction seeds a spread around the mean and then repairs S and M with
unit moves, which preserve integrality.

Running this script rewrites src/hapticbraille/data/*.csv deterministically.
"""

from __future__ import annotations

import csv
import math
import random
from pathlib import Path

CHARS_PER_SUBJECT = 300  # 100 words x 3 characters
SUBJECTS = 10

# gap_ms -> (S, M): S = sum of correct counts, M = sum of squared counts.
# Derived so that group mean = S/30 matches the published one-decimal means
# and sum over groups of (10*M - S^2)/90 == 14696.5 (the ANOVA error SS).
GROUP_TARGETS: dict[int, tuple[int, int]] = {
    2000: (2703, 740317),
    1500: (2703, 733777),
    1200: (2637, 698533),
    1000: (2637, 707257),
    800: (2073, 456067),
    500: (1596, 290512),
    400: (1392, 236022),
}

PUBLISHED_MEANS = {2000: 90.1, 1500: 90.1, 1200: 87.9, 1000: 87.9, 800: 69.1, 500: 53.2, 400: 46.4}
PUBLISHED_SDS = {2000: 10.94, 1500: 6.24, 1200: 6.24, 1000: 12.11, 800: 18.03, 500: 21.02, 400: 22.84}
ERROR_SS = 14696.5

DATA_DIR = Path(__file__).resolve().parents[1] / "src" / "hapticbraille" / "data"


def solve_counts(s_target: int, m_target: int, seed: int) -> list[int]:
    """Ten integers in [0, 300] with the given sum and sum of squares.

    Draws the first eight from a gaussian around the group mean, then solves
    the last two exactly: with K their required sum and t = 2*(M - sum of the
    eight squares) - K^2, they are (K +/- sqrt(t)) / 2 whenever t is a
    perfect square of K's parity. Rejection-samples draws until that lands.
    """
    rng = random.Random(seed)
    mean = s_target / SUBJECTS
    spread = math.sqrt(max(m_target - s_target**2 / SUBJECTS, 0.0) / SUBJECTS)
    for _ in range(2_000_000):
        head = [
            min(CHARS_PER_SUBJECT, max(0, round(rng.gauss(mean, spread))))
            for _ in range(SUBJECTS - 2)
        ]
        k = s_target - sum(head)
        t = 2 * (m_target - sum(c * c for c in head)) - k * k
        if t < 0:
            continue
        root = math.isqrt(t)
        if root * root != t or (k + root) % 2 != 0:
            continue
        pair = [(k + root) // 2, (k - root) // 2]
        counts = head + pair
        if not all(0 <= c <= CHARS_PER_SUBJECT for c in counts):
            continue
        assert sum(counts) == s_target
        assert sum(c * c for c in counts) == m_target
        return sorted(counts, reverse=True)
    raise RuntimeError(f"no solution found for S={s_target}, M={m_target}")


def main() -> None:
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    raw_rows = []
    summary_rows = []
    total_error_ss = 0.0
    for seed, (gap, (s_target, m_target)) in enumerate(GROUP_TARGETS.items(), start=1):
        counts = solve_counts(s_target, m_target, seed=seed)
        accuracies = [c / 3 for c in counts]
        for subject, acc in enumerate(accuracies, start=1):
            raw_rows.append((f"s{subject:02d}", gap, repr(acc)))
        mean = s_target / (3 * SUBJECTS)
        var = (SUBJECTS * m_target - s_target**2) / 810  # sample variance in pct^2
        sd = math.sqrt(var)
        total_error_ss += (SUBJECTS - 1) * var
        assert round(mean, 1) == PUBLISHED_MEANS[gap], (gap, mean)
        assert round(sd, 2) == PUBLISHED_SDS[gap], (gap, sd)
        summary_rows.append((gap, repr(mean), repr(sd), SUBJECTS))
    assert abs(total_error_ss - ERROR_SS) < 1e-9, total_error_ss

    with open(DATA_DIR / "reading_speed_raw.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["subject", "gap_ms", "accuracy_pct"])
        writer.writerows(raw_rows)
    with open(DATA_DIR / "reading_speed_summary.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["gap_ms", "mean", "sd", "n"])
        writer.writerows(summary_rows)
    print(f"wrote {len(raw_rows)} raw rows and {len(summary_rows)} summary rows to {DATA_DIR}")


if __name__ == "__main__":
    main()
