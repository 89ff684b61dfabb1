"""
Hausdorff distance and epsilon-dilatations
==========================================

The Euclidean reference machinery: the Hausdorff distance between two point
sets is the smallest radius at which each set sits inside the union of
balls around the other.
"""

import numpy as np

from epswsd.proximity import dilatation_restrictions, euclidean_hausdorff

rng = np.random.default_rng(7)
A = rng.uniform(-1, 1, size=(4, 2))
B = rng.uniform(-1, 1, size=(3, 2))

h = euclidean_hausdorff(A, B)
print(f"Hausdorff distance: {h:.6f}")

# %%
# Below the distance some point is left uncovered; at the distance both
# restrictions are complete.

for eps in (0.5 * h, 0.99 * h, h):
    in_a, in_b = dilatation_restrictions(A, B, eps)
    print(f"eps={eps:.4f}  A covered {in_a.sum()}/{len(A)}  B covered {in_b.sum()}/{len(B)}")

# A coarse scan finds the same value up to the step.
grid = np.arange(0, 3, 1e-3)
first = next(e for e in grid if all(m.all() for m in dilatation_restrictions(A, B, e)))
print(f"first covering grid point: {first:.3f}")
