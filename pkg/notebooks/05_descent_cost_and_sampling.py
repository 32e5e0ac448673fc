"""
How long does a descent take, and where do random schedules land?
=================================================================

The cost of reaching a local optimum from a random start grows quickly with
the number of jobs. Random permutations, meanwhile, cluster far from the
best trade-offs.
"""

# %%
import numpy as np

from pfsp_pils.harness import format_descent_table, measure_descent_cost, random_sample
from pfsp_pils.io import generate_instance

instances = {f"r{n}x5": generate_instance(n, 5, 1, tardiness_factor=1.5) for n in (10, 20, 30)}
print(format_descent_table(measure_descent_cost(instances, samples=10, seed=0)))

# %%
inst = generate_instance(50, 10, 1, tardiness_factor=1.5)
sample = random_sample(inst, 5_000, seed=1, bins=25)
i, j = np.unravel_index(sample.histogram.argmax(), sample.histogram.shape)
print("best sampled cmax/tsum:", sample.vectors.min(axis=0))
print("densest cell:", sample.xedges[i:i + 2], sample.yedges[j:j + 2])
