"""
How much cooperation makes every eps-fraction expand
====================================================

A union bound over transmitter subsets shows that random matching unions
expand on every set of size ``eps K`` once the cooperation order exceeds
``2 H(eps) / (-eps log2(1 - eps))``. We print that threshold and check it
against finite K.
"""

from fractions import Fraction

import numpy as np

from compdof import epsilon_experiment, epsilon_threshold, min_cooperation_order

for eps in (Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)):
    print(f"eps={eps}: threshold {epsilon_threshold(eps):.4f}, "
          f"smallest M above it {min_cooperation_order(eps)}")

# At K = 12 and eps = 1/2 each trial checks all 924 sets of six transmitters.
for m in (1, 2, 3, 4, 5):
    x = epsilon_experiment(12, m, Fraction(1, 2), trials=100, seed=0)
    worst = np.array([float(r) for r in x.min_ratio_per_trial])
    print(f"M={m}: {x.successes:3d}/100 expand, mean min ratio {worst.mean():.3f}")
