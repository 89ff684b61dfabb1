"""
Proximity of two small vector sets
==================================

Three vectors on one side, one on the other. Plain averaging says the two
sets point the same way, because two of the three vectors cancel out. The
near/distant split shows that only part of the first set is actually close
to the second one.
"""

import numpy as np

from epswsd import SENTENCE, Origin, VectorSet, WordVector, proximity
from epswsd import average_similarity, k_proximity, k_tilde_proximity

A = VectorSet(WordVector(name, np.array(v, float), SENTENCE)
              for name, v in [("a1", (1, 0)), ("a2", (0, 1)), ("a3", (-1, 0))])
B = VectorSet([WordVector("b1", np.array((0.0, 1.0)), Origin.synset(1))])

# a1 and a3 cancel, so the mean of A is parallel to b1
print("average similarity:", average_similarity(A, B))

res = proximity(A, B, 0.5)
print("near:   ", sorted(lbl for lbl, _ in res.near))
print("distant:", sorted(lbl for lbl, _ in res.distant))
print("K  =", res.k_value, "  K~ =", res.k_tilde_value)

# %%
# Moving the threshold
# --------------------
# Raising epsilon can only shrink the near set. Below the smallest pairwise
# similarity everything is near (K = 1); at the largest one nothing is.

for eps in np.linspace(-1.0, 1.0, 9):
    print(f"eps={eps:+.2f}  K={k_proximity(A, B, eps):.3f}  K~={k_tilde_proximity(A, B, eps):.3f}")

# The inclusive comparator keeps pairs whose similarity equals epsilon.
print("strict K at eps=1:   ", k_proximity(A, B, 1.0, "strict"))
print("inclusive K at eps=1:", k_proximity(A, B, 1.0, "inclusive"))
