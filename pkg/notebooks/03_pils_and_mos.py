"""
PILS and MOS on a small instance
================================

Both engines keep an archive of non-dominated schedules. On a 7-job
instance the exact front is cheap to enumerate, so we can check how close
each engine gets.
"""

# %%
from pfsp_pils import SearchConfig, compute_d1_d2, exact_front, run_mos, run_pils
from pfsp_pils.io import generate_instance

inst = generate_instance(7, 3, seed=4, tardiness_factor=1.5)
front = exact_front(inst)
print("exact front:", sorted(front.vector_set()))

# %%
for engine, name in ((run_pils, "pils"), (run_mos, "mos")):
    res = engine(inst, SearchConfig(name, max_evaluations=20_000, seed=1))
    rep = compute_d1_d2(res.archive.vectors(), front.vectors())
    print(f"{name}: {len(res.archive)} vectors, {res.episodes} episodes, D1={rep.d1:.4f} D2={rep.d2:.4f}")

# %%
# Runs are reproducible: the seed fixes every random choice.
a = run_pils(inst, SearchConfig(max_evaluations=5_000, seed=7)).front()
b = run_pils(inst, SearchConfig(max_evaluations=5_000, seed=7)).front()
print(a == b)
