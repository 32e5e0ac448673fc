"""
A seeded PILS-versus-MOS experiment
===================================

Several seeded runs per algorithm on 20-job instances, scored against the
union of everything found (the exact front is out of reach at this size).
The budget is kept small so the script finishes in about a minute.
"""

# %%
from pfsp_pils.harness import run_experiment
from pfsp_pils.io import generate_instance

instances = {f"r20x5_s{s}": generate_instance(20, 5, s, tardiness_factor=1.5) for s in (1, 2)}
report = run_experiment(instances, ("pils", "mos"), runs=5, budgets=50_000)
print(report.format_table())

# %%
# Raw per-run values are kept for external statistical testing.
for cell in report.cells:
    print(cell.instance, [round(r.d1, 4) for r in cell.runs["pils"]])
