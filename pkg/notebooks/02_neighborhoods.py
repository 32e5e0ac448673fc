"""
Neighborhoods and the perturbation move
=======================================

The local search uses three move families on permutations, each with
n(n-1)/2 members, plus a four-job rearrangement used to escape local optima.
"""

# %%
import numpy as np

from pfsp_pils import enumerate_backward_shift, enumerate_exchange, enumerate_forward_shift, perturb, perturb_at

perm = (0, 1, 2, 3)

print("exchange      ", list(enumerate_exchange(perm)))
print("forward shift ", list(enumerate_forward_shift(perm)))
print("backward shift", list(enumerate_backward_shift(perm)))

# %%
# The window (a, b, c, d) becomes (c, d, b, a); jobs outside the window stay put.
print(perturb_at((0, 1, 2, 3, 4, 5), 2))

rng = np.random.default_rng(0)
print([perturb(tuple(range(8)), rng) for _ in range(3)])

# %%
# One exchange or shift move never undoes a perturbation.
out = perturb_at(perm, 0)
singles = set(enumerate_exchange(out)) | set(enumerate_forward_shift(out)) | set(enumerate_backward_shift(out))
print(perm in singles)
