"""Multi-run experiments: seeded repetitions, D1/D2 tables, descent cost and random sampling."""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping, Sequence

import numpy as np

from .io import RunRecord, format_vectors
from .metrics import build_reference, compute_d1_d2
from .model import BICRITERIA, Instance, ObjectiveSet, evaluate_raw
from .oracle import DEFAULT_LIMIT, exact_front
from .search import ALGORITHMS, SearchConfig, intensify_to_local_optimum, random_permutation, run


def default_budget(n: int) -> int:
    """Evaluation budget tier by job count: 10^6 up to ~20 jobs, 5*10^6 around 50, 10^7 beyond."""
    if n <= 35:
        return 1_000_000
    if n <= 75:
        return 5_000_000
    return 10_000_000


@dataclass
class RunSummary:
    seed: int
    d1: float
    d2: float
    evaluations: int
    episodes: int
    vectors: list[list[float]]
    elapsed: float = 0.0


@dataclass
class CellReport:
    """All runs of all algorithms on one instance, scored against one reference set."""

    instance: str
    n: int
    m: int
    reference_source: str
    reference: list[list[float]]
    runs: dict[str, list[RunSummary]]

    def mean(self, algorithm: str, metric: str) -> float:
        return float(np.mean([getattr(r, metric) for r in self.runs[algorithm]]))


@dataclass
class ExperimentReport:
    algorithms: list[str]
    runs: int
    budgets: dict[str, int]
    objectives: list[str]
    cells: list[CellReport]
    started: str = ""
    elapsed: float = 0.0

    def mean_table(self) -> list[dict]:
        """Rows ``{"instance", "D1_<alg>"..., "D2_<alg>"...}`` shaped like a D1/D2 comparison table."""
        rows = []
        for cell in self.cells:
            row = {"instance": cell.instance}
            for metric in ("d1", "d2"):
                for alg in self.algorithms:
                    row[f"{metric.upper()}_{alg}"] = cell.mean(alg, metric)
            rows.append(row)
        return rows

    def format_table(self) -> str:
        rows = self.mean_table()
        cols = [c for c in rows[0] if c != "instance"] if rows else []
        out = ["instance\t" + "\t".join(cols)]
        for row in rows:
            out.append(row["instance"] + "\t" + "\t".join(f"{row[c]:.4f}" for c in cols))
        return "\n".join(out) + "\n"

    def to_dict(self, timing: bool = True) -> dict:
        cells = []
        for c in self.cells:
            runs = {}
            for alg, rs in c.runs.items():
                runs[alg] = [
                    {k: v for k, v in vars(r).items() if timing or k != "elapsed"} for r in rs
                ]
            cells.append({
                "instance": c.instance, "n": c.n, "m": c.m,
                "reference_source": c.reference_source, "reference": c.reference, "runs": runs,
            })
        out = {
            "algorithms": self.algorithms, "runs": self.runs, "budgets": self.budgets,
            "objectives": self.objectives, "cells": cells, "mean_table": self.mean_table(),
        }
        if timing:
            out["started"] = self.started
            out["elapsed"] = self.elapsed
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2) + "\n"

    def write(self, directory) -> None:
        """Write ``report.json``, ``means.tsv`` and ``runs.tsv`` into ``directory``."""
        d = Path(directory)
        d.mkdir(parents=True, exist_ok=True)
        (d / "report.json").write_text(self.to_json())
        (d / "means.tsv").write_text(self.format_table())
        lines = ["instance\talgorithm\tseed\tD1\tD2\tevaluations\tfront_size"]
        for c in self.cells:
            for alg, rs in c.runs.items():
                for r in rs:
                    lines.append(f"{c.instance}\t{alg}\t{r.seed}\t{r.d1!r}\t{r.d2!r}\t{r.evaluations}\t{len(r.vectors)}")
        (d / "runs.tsv").write_text("\n".join(lines) + "\n")


def _one_run(args):
    inst, cfg = args
    res = run(inst, cfg)
    return res.vectors(), res.evaluations, res.episodes, res.elapsed


def _named(instances) -> dict[str, Instance]:
    if isinstance(instances, Mapping):
        return dict(instances)
    out = {}
    for i, inst in enumerate(instances):
        out[inst.name or f"instance_{i + 1}"] = inst
    return out


def run_experiment(
    instances: Mapping[str, Instance] | Sequence[Instance],
    algorithms: Sequence[str] = ALGORITHMS,
    runs: int = 20,
    budgets: int | Mapping[str, int] | Callable[[Instance], int] | None = None,
    objectives: ObjectiveSet = BICRITERIA,
    oracle_limit: int = DEFAULT_LIMIT,
    workers: int = 1,
    search_options: Mapping | None = None,
) -> ExperimentReport:
    """Run every algorithm ``runs`` times (seeds ``1..runs``) on every instance.

    Each instance is scored against its exact front when ``n <= oracle_limit``,
    otherwise against the non-dominated union of all its runs, built after
    the last run finishes.
    """
    if runs < 1:
        raise ValueError("runs must be at least 1")
    named = _named(instances)
    algorithms = [a.lower() for a in algorithms]
    options = dict(search_options or {})
    started = time.strftime("%Y-%m-%dT%H:%M:%S")
    t0 = time.perf_counter()

    def budget_for(name, inst):
        if budgets is None:
            return default_budget(inst.n)
        if isinstance(budgets, Mapping):
            return int(budgets[name])
        if callable(budgets):
            return int(budgets(inst))
        return int(budgets)

    jobs, keys = [], []
    budget_table = {}
    for name, inst in named.items():
        budget_table[name] = budget_for(name, inst)
        for alg in algorithms:
            for seed in range(1, runs + 1):
                cfg = SearchConfig(alg, budget_table[name], seed, objectives, **options)
                jobs.append((inst, cfg))
                keys.append((name, alg, seed))

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_one_run, jobs))
    else:
        outcomes = []
        for job, key in zip(jobs, keys):
            try:
                outcomes.append(_one_run(job))
            except Exception as exc:
                raise RuntimeError(f"run failed for instance={key[0]} algorithm={key[1]} seed={key[2]}: {exc}") from exc
    results = dict(zip(keys, outcomes))

    cells = []
    for name, inst in named.items():
        fronts = {alg: [results[(name, alg, s)][0] for s in range(1, runs + 1)] for alg in algorithms}
        if inst.n <= oracle_limit:
            ref = build_reference([], exact_front(inst, objectives, oracle_limit).vectors())
            source = "oracle"
        else:
            ref = build_reference([v for alg in algorithms for v in fronts[alg]])
            source = "union"
        per_alg = {}
        for alg in algorithms:
            summaries = []
            for s in range(1, runs + 1):
                vecs, evals, episodes, elapsed = results[(name, alg, s)]
                rep = compute_d1_d2(vecs, ref)
                summaries.append(RunSummary(s, rep.d1, rep.d2, int(evals), int(episodes), vecs.tolist(), float(elapsed)))
            per_alg[alg] = summaries
        ref_vecs = ref.vectors[np.lexsort(ref.vectors.T[::-1])]
        cells.append(CellReport(name, inst.n, inst.m, source, ref_vecs.tolist(), per_alg))

    return ExperimentReport(algorithms, runs, budget_table, list(objectives.criteria), cells,
                            started, time.perf_counter() - t0)


@dataclass
class DescentCost:
    instance: str
    n: int
    m: int
    mean: float
    evaluations: list[int] = field(default_factory=list)


def measure_descent_cost(
    instances: Mapping[str, Instance] | Sequence[Instance],
    samples: int = 30,
    seed: int = 0,
    objectives: ObjectiveSet = BICRITERIA,
    descent: str = "first",
) -> list[DescentCost]:
    """Mean evaluations needed to reach a local optimum from ``samples`` random starts.

    Every instance uses its own generator seeded with ``seed``.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    table = []
    for name, inst in _named(instances).items():
        rng = np.random.default_rng(seed)
        counts = []
        for _ in range(samples):
            start = random_permutation(inst.n, rng)
            counts.append(intensify_to_local_optimum(inst, start, objectives, rng=rng, descent=descent).evaluations)
        table.append(DescentCost(name, inst.n, inst.m, float(np.mean(counts)), counts))
    return table


def format_descent_table(table: Sequence[DescentCost]) -> str:
    lines = ["instance\tn\tm\tmean_evaluations"]
    lines += [f"{row.instance}\t{row.n}\t{row.m}\t{row.mean:.1f}" for row in table]
    return "\n".join(lines) + "\n"


@dataclass
class SampleResult:
    """Objective vectors of uniformly random permutations plus a 2-D histogram of the first two objectives."""

    vectors: np.ndarray
    histogram: np.ndarray
    xedges: np.ndarray
    yedges: np.ndarray
    objectives: ObjectiveSet = BICRITERIA

    def write(self, path) -> None:
        """Vectors to ``path``; histogram cells to ``<stem>.hist.tsv`` next to it."""
        path = Path(path)
        path.write_text(format_vectors(self.vectors, list(self.objectives.criteria)))
        hist_path = path.with_name(path.stem + ".hist.tsv")
        lines = ["x_low\tx_high\ty_low\ty_high\tcount"]
        for i in range(self.histogram.shape[0]):
            for j in range(self.histogram.shape[1]):
                c = int(self.histogram[i, j])
                if c:
                    lines.append(f"{self.xedges[i]!r}\t{self.xedges[i + 1]!r}\t{self.yedges[j]!r}\t{self.yedges[j + 1]!r}\t{c}")
        hist_path.write_text("\n".join(lines) + "\n")


def random_sample(inst: Instance, count: int, seed: int = 0, objectives: ObjectiveSet = BICRITERIA,
                  bins: int = 100) -> SampleResult:
    if count < 1:
        raise ValueError("count must be at least 1")
    rng = np.random.default_rng(seed)
    perms = np.array([random_permutation(inst.n, rng) for _ in range(count)], dtype=np.int64)
    raw = evaluate_raw(inst, perms)[:, objectives.columns]
    vectors = objectives.to_public_array(raw, inst.n)
    hist, xe, ye = np.histogram2d(vectors[:, 0].astype(float), vectors[:, 1].astype(float), bins=bins)
    return SampleResult(vectors, hist.astype(np.int64), xe, ye, objectives)
