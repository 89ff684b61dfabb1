"""
Sweeping the threshold over a dataset
=====================================

Run every algorithm over an epsilon grid, then look at the result three
ways: the accuracy curve, the sentences solved at some threshold, and how
often each accuracy value occurs across the grid.
"""

import tempfile
from pathlib import Path

from epswsd import (
    EpsilonSchedule,
    best_epsilon_summary,
    distribution_summary,
    export_csv,
    fixture_paths,
    load_dataset,
    load_inventory,
    load_word2vec_text,
    read_csv,
    sweep,
)
from epswsd.evaluation import epsilon_curve

paths = fixture_paths()
model = load_word2vec_text(paths["model"])
inventories = load_inventory(paths["inventory"])
dataset = load_dataset(paths["dataset"], inventories)

grid = EpsilonSchedule.parse("0:1:0.1")
report = sweep(dataset, inventories, model, ["a0", "aeps-syn", "aeps-sent-syn", "k", "mfs"],
               grid, jobs=2)

# %%
# Accuracy per threshold, summed over targets.

for alg in ("aeps-syn", "aeps-sent-syn", "k"):
    curve = " ".join(f"{c:2d}" for _, c, _ in epsilon_curve(report, alg))
    print(f"{alg:14s} {curve}")
for alg in ("a0", "mfs"):
    _, c, n = epsilon_curve(report, alg)[0]
    print(f"{alg:14s} {c}/{n} (no threshold)")

# %%
# Sentences solved at one or more thresholds, per target.

for (target, alg), n in best_epsilon_summary(report).items():
    if alg == "k":
        print(f"{target}: {n} sentences correct at some epsilon")

# How many grid points produced each accuracy value for the K selector.
for target, counts in distribution_summary(report, "k").items():
    print(target, {round(acc, 3): m for acc, m in sorted(counts.items())})

# %%
# The CSV round-trips, so a stored sweep can be summarised later.

with tempfile.TemporaryDirectory() as tmp:
    out = Path(tmp) / "sweep.csv"
    export_csv(report, out)
    back = read_csv(out)
    print(out.read_text().splitlines()[0])
    print("rows equal after reload:", back.rows == report.rows)
