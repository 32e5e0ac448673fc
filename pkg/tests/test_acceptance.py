"""Acceptance criteria, one test each. Every test logs a PASS/FAIL line shown in the terminal summary."""

import json

import numpy as np
import pytest

from pfsp_pils import ParetoArchive, SearchConfig, compute_d1_d2, exact_front, run_pils
from pfsp_pils.harness import measure_descent_cost, run_experiment
from pfsp_pils.io import generate_instance
from pfsp_pils.neighborhoods import ENUMERATORS

pytestmark = pytest.mark.slow

TF = 1.5


def oracle_runs(inst, seeds, budget):
    """Run PILS for each seed; return (front vector sets, serialized archives)."""
    fronts, dumps = [], []
    for s in seeds:
        res = run_pils(inst, SearchConfig("pils", budget, s))
        fronts.append(res.front())
        dumps.append(json.dumps([[e.perm, e.objs] for e in res.archive]))
    return fronts, dumps


# 1 -------------------------------------------------------------------------

C1_INSTANCES = [generate_instance(7, 3, s, tardiness_factor=TF) for s in range(1, 11)]


def test_c1_oracle_equivalence(acceptance_log):
    worst = 10
    for inst in C1_INSTANCES:
        oracle = exact_front(inst).vector_set()
        fronts, _ = oracle_runs(inst, range(1, 11), 100_000)
        worst = min(worst, sum(f == oracle for f in fronts))
    ok = acceptance_log(1, worst >= 9, f"n=7 m=3 PILS@1e5 matches the exact front in >= {worst}/10 runs on every instance (need 9)")
    assert ok


# 2 -------------------------------------------------------------------------

C2_INSTANCES = {f"r20x5_s{s}": generate_instance(20, 5, s, tardiness_factor=TF) for s in range(1, 6)}
C2_RUNS = 20
C2_BUDGET = 200_000


@pytest.fixture(scope="module")
def c2_report():
    return run_experiment(C2_INSTANCES, ("pils", "mos"), C2_RUNS, C2_BUDGET, oracle_limit=0)


def test_c2_pils_beats_mos(c2_report, acceptance_log):
    rows = c2_report.mean_table()
    assert all(c.reference_source == "union" for c in c2_report.cells)
    per_instance = [r["D1_pils"] <= r["D1_mos"] and r["D2_pils"] <= r["D2_mos"] for r in rows]
    agg = {k: sum(r[k] for r in rows) / len(rows) for k in ("D1_pils", "D1_mos", "D2_pils", "D2_mos")}
    aggregate = agg["D1_pils"] < agg["D1_mos"] and agg["D2_pils"] < agg["D2_mos"]
    detail = "; ".join(
        f"{r['instance']}: D1 {r['D1_pils']:.4f}/{r['D1_mos']:.4f} D2 {r['D2_pils']:.4f}/{r['D2_mos']:.4f}" for r in rows)
    detail += (f"; mean D1 {agg['D1_pils']:.4f}/{agg['D1_mos']:.4f} D2 {agg['D2_pils']:.4f}/{agg['D2_mos']:.4f}"
               " (PILS/MOS)")
    ok = acceptance_log(2, all(per_instance) and aggregate, detail)
    assert ok


# 3 -------------------------------------------------------------------------

C3_INSTANCES = [generate_instance(n, 3, s, tardiness_factor=TF) for n in range(2, 7) for s in (1, 2)]


def test_c3_easy_instances_zero_regret(acceptance_log):
    bad = []
    for inst in C3_INSTANCES:
        oracle = exact_front(inst).vectors()
        for seed in range(1, 21):
            res = run_pils(inst, SearchConfig("pils", 50_000, seed))
            rep = compute_d1_d2(res.archive.vectors(), oracle)
            if rep.d1 != 0 or rep.d2 != 0:
                bad.append((inst.name, seed, rep))
    ok = acceptance_log(3, not bad, f"{len(C3_INSTANCES)} instances with n=2..6, 20 runs each at 5e4: {len(bad)} runs with D1 or D2 > 0")
    assert ok


# 4 -------------------------------------------------------------------------

def test_c4_neighborhood_cardinality(acceptance_log):
    counts = {(kind, n): len(list(enum(range(n)))) for kind, enum in ENUMERATORS.items() for n in (2, 5, 20, 50)}
    ok = acceptance_log(4, all(c == n * (n - 1) // 2 for (_, n), c in counts.items()),
                        "sizes " + ", ".join(f"n={n}:{counts[('exchange', n)]}" for n in (2, 5, 20, 50))
                        + " for exchange, forward and backward shift")
    assert ok


# 5 -------------------------------------------------------------------------

C5_INSTANCES = {f"r{n}x5": generate_instance(n, 5, 1, tardiness_factor=TF) for n in (10, 20, 50)}


@pytest.fixture(scope="module")
def c5_table():
    return measure_descent_cost(C5_INSTANCES, samples=30, seed=0)


def test_c5_descent_cost_trend(c5_table, acceptance_log):
    means = [row.mean for row in c5_table]
    increasing = all(a < b for a, b in zip(means, means[1:]))
    n20 = means[1]
    in_band = 3_292 / 5 <= n20 <= 3_614 * 5
    ok = acceptance_log(5, increasing and in_band,
                        f"mean evaluations to local optimum n=10/20/50: {means[0]:.0f}/{n20:.0f}/{means[2]:.0f}; "
                        f"n=20 band [{3_292 / 5:.0f}, {3_614 * 5}]")
    assert ok


# 6 -------------------------------------------------------------------------

def brute_nondominated(v):
    keep = []
    for i, x in enumerate(v):
        dominated = np.any(np.all(v <= x, axis=1) & np.any(v < x, axis=1))
        if not dominated:
            keep.append(tuple(x.tolist()))
    return set(keep)


def test_c6_archive_matches_brute_force(acceptance_log):
    rng = np.random.default_rng(6)
    mismatches = 0
    for dim in (2, 3):
        for _ in range(100):
            v = rng.integers(0, 200, size=(1_000, dim))
            arch = ParetoArchive()
            for i, x in enumerate(v):
                arch.update((i,), x)
            mismatches += arch.vector_set() != brute_nondominated(v)
    ok = acceptance_log(6, mismatches == 0, f"200 sequences of 1000 vectors (2-D and 3-D): {mismatches} mismatches")
    assert ok


# 7 -------------------------------------------------------------------------

def test_c7_metric_fixtures(acceptance_log):
    cases = [
        ([(0, 10), (10, 0)], [(0, 10), (10, 0)], 0.0, 0.0),
        ([(5, 5)], [(0, 10), (10, 0)], 0.5, 0.5),
        ([(0, 10), (5, 5)], [(0, 10), (10, 0)], 0.25, 0.5),
    ]
    errors = []
    for approx, ref, d1, d2 in cases:
        rep = compute_d1_d2(approx, ref)
        errors += [abs(rep.d1 - d1) / max(abs(d1), 1e-300) if d1 else abs(rep.d1),
                   abs(rep.d2 - d2) / max(abs(d2), 1e-300) if d2 else abs(rep.d2)]
    ok = acceptance_log(7, max(errors) <= 1e-12, f"max relative error {max(errors):.2e} (tolerance 1e-12)")
    assert ok


# 8 -------------------------------------------------------------------------

def test_c8_determinism(c2_report, c5_table, acceptance_log):
    checks = {}
    inst = C1_INSTANCES[0]
    checks["c1 archives"] = oracle_runs(inst, range(1, 11), 100_000)[1] == oracle_runs(inst, range(1, 11), 100_000)[1]

    name = next(iter(C2_INSTANCES))
    again = run_experiment({name: C2_INSTANCES[name]}, ("pils", "mos"), C2_RUNS, C2_BUDGET, oracle_limit=0)
    first = json.dumps(c2_report.to_dict(timing=False)["cells"][0])
    checks["c2 report"] = json.dumps(again.to_dict(timing=False)["cells"][0]) == first

    inst3 = C3_INSTANCES[-1]
    checks["c3 archives"] = oracle_runs(inst3, range(1, 21), 50_000)[1] == oracle_runs(inst3, range(1, 21), 50_000)[1]

    again5 = measure_descent_cost(C5_INSTANCES, samples=30, seed=0)
    checks["c5 table"] = [r.evaluations for r in again5] == [r.evaluations for r in c5_table]

    ok = acceptance_log(8, all(checks.values()), ", ".join(f"{k}: {'identical' if v else 'DIFFERENT'}" for k, v in checks.items()))
    assert ok
