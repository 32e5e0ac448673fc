"""
Decoding a job sequence into a schedule
=======================================

A permutation flow shop solution is just a job order. Every job visits the
machines in the same order, and each operation starts as soon as both its
machine and the job's previous operation are free.
"""

# %%
import numpy as np

from pfsp_pils import BICRITERIA, TRICRITERIA, Instance, completion_times, decode_and_evaluate, dominates

# two jobs, two machines: p[j, k] is job j's time on machine k
inst = Instance([[3, 2], [1, 4]], d=[4, 6], name="toy")

# %%
# Completion times of the job at each sequence position (rows) on each machine (columns).
for order in ([0, 1], [1, 0]):
    print(order, completion_times(inst, order).tolist())

# %%
# The objective vector depends on the selected criteria.
for order in ([0, 1], [1, 0]):
    print(order, "cmax,tsum:", decode_and_evaluate(inst, order, BICRITERIA),
          "cmax,csum_avg,tsum_avg:", decode_and_evaluate(inst, order, TRICRITERIA))

# %%
# Neither order dominates the other here, so both belong to the Pareto set.
a = decode_and_evaluate(inst, [0, 1])
b = decode_and_evaluate(inst, [1, 0])
print(a, b, dominates(a, b), dominates(b, a))
