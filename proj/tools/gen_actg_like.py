"""Synthetic long-format CSV shaped like the ACTG 388 single-arm CD4 data.

166 subjects, 1 to 18 irregular visits each, times in weeks on [0, 120],
response log(CD4 + 1). The mean trajectory rises quickly over the first
40 weeks, flattens, and falls after week 100.
"""

import argparse
import csv

import numpy as np

N_SUBJECTS = 166
SCHEDULE = np.array([0.0, 4.0, 8.0] + [8.0 * k for k in range(2, 16)])  # 17 planned visits


def mean_log_cd4(t):
    rise = 1.1 * (1.0 - np.exp(-t / 15.0))
    late = 0.3 * np.clip(t - 40.0, 0.0, None) / 60.0
    drop = 0.012 * np.clip(t - 100.0, 0.0, None) ** 1.5 / 10.0
    return 4.4 + rise + np.minimum(late, 0.3) - drop


def generate(seed):
    rng = np.random.default_rng(seed)
    rows = []
    for i in range(N_SUBJECTS):
        times = SCHEDULE + rng.uniform(-2.0, 2.0, SCHEDULE.size)
        times[0] = 0.0
        keep = rng.uniform(size=SCHEDULE.size) < 0.7
        keep[0] = True
        dropout = rng.integers(1, SCHEDULE.size + 1)  # visits before leaving the study
        keep[dropout:] = False
        times = times[keep]
        if rng.uniform() < 0.15:  # one unscheduled visit
            times = np.append(times, rng.uniform(0.0, 120.0))
        if i == 0:
            times = times[:1]
        if i == 1:
            times = np.append(SCHEDULE, 60.0)
        times = np.sort(np.clip(times, 0.0, 120.0))
        b0 = rng.normal(0.0, 0.6)
        b1 = rng.normal(0.0, 0.003)
        y = mean_log_cd4(times) + b0 + b1 * times + rng.normal(0.0, 0.35, times.size)
        y = np.log1p(np.clip(np.expm1(y), 0.0, 1364.0))
        rows.extend((f"P{i + 1:03d}", round(float(t), 2), round(float(v), 6)) for t, v in zip(times, y))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=388)
    parser.add_argument("--out", default="data/actg388_like.csv")
    args = parser.parse_args()
    rows = generate(args.seed)
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["subject", "time", "y"])
        writer.writerows(rows)


if __name__ == "__main__":
    main()
