"""
Strategies on synthetic systems
===============================

One case study says little about other systems. Sample many synthetic ones
instead and see which assumption recovers the residual defects.
"""

import numpy as np

from guidedtest.config import load_config_file
from guidedtest.io import bundled_path
from guidedtest.simulation import SyntheticScenario, run_experiment, sample

strategies = load_config_file(bundled_path("simulation_strategies.json")).strategies

###############################################################################
# Skewed ground truth: a few parts carry most of the defects, every part was
# inspected, and inspection caught about half of what was there.

skewed = SyntheticScenario(n_parts=20, total_defects=1000, loc_min=200, loc_max=800, seed=2012)
pop = sample(skewed)
top = np.sort(pop.defects)[::-1]
print("defects in the 4 worst parts:", top[:4].sum(), "of", top.sum())

summary = run_experiment(skewed, strategies, runs=1000, random_baseline_fraction=0.2)
for sid, recall in sorted(summary.mean_recall_by_strategy.items()):
    print(f"{sid:<22} recall {recall:.3f}  effort saved {summary.mean_effort_saved[sid]:.3f}")

###############################################################################
# Flat ground truth with half the parts inspected. The unread half should
# hold (1 - c) / ((1 - c) + c (1 - e)) = 2/3 of what is left.

flat = SyntheticScenario(
    n_parts=20, total_defects=1000, loc_min=200, loc_max=800, ground_truth="uniform", inspection_coverage=0.5, seed=2012
)
summary = run_experiment(flat, strategies[:1], runs=1000)
print("equal distribution recall:", round(summary.mean_recall_by_strategy["equal_distribution"], 3))
