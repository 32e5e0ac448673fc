"""Pareto Iterated Local Search (PILS) and the multi-operator search baseline (MOS).

Both engines share one evaluation counter, one Pareto archive and one seeded
``numpy.random.Generator`` (PCG64) per run. Random numbers are drawn in a
fixed order, so a (instance, config) pair always produces the same archive.

Neighborhoods are scanned in their lexicographic move order. Neighbors are
evaluated in small blocks by a compiled kernel, but only the prefix up to and
including the first accepted neighbor is charged to the budget and offered to
the archive, which keeps the result identical to a one-at-a-time scan.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .archive import ParetoArchive
from .errors import InvalidInputError
from .model import BICRITERIA, Instance, ObjectiveSet, check_permutation, evaluate_raw
from .neighborhoods import DEFAULT_ROSTER, KINDS, move_table, perturb

PILS = "pils"
MOS = "mos"
ALGORITHMS = (PILS, MOS)

_FIRST_BLOCK = 16
_MAX_BLOCK = 1024


@dataclass
class SearchConfig:
    """Parameters of one search run.

    Every evaluation counts against ``max_evaluations``, the random initial
    solution included; with ``max_evaluations=0`` that initial solution is
    still evaluated, so the run reports one evaluation.
    """

    algorithm: str = PILS
    max_evaluations: int = 100_000
    seed: int = 1
    objectives: ObjectiveSet = BICRITERIA
    roster: tuple = DEFAULT_ROSTER
    #: called as ``progress(evaluations, archive_size)`` every ``progress_interval`` evaluations
    progress: Callable[[int, int], None] | None = None
    progress_interval: int = 100_000
    #: PILS descent: ``"full"`` neighborhood evaluation or ``"first"`` improvement
    descent: str = "first"
    #: MOS restart scheme, ``"episode"`` or ``"redraw"`` (see :func:`run_mos`)
    mos_restart: str = "episode"
    #: called as ``on_evaluate(perms, raw_keys)`` for every charged block of evaluations
    on_evaluate: Callable[[np.ndarray, np.ndarray], None] | None = None

    def __post_init__(self):
        self.algorithm = self.algorithm.lower()
        if self.algorithm not in ALGORITHMS:
            raise InvalidInputError(f"unknown algorithm {self.algorithm!r}; choose from {ALGORITHMS}")
        if self.max_evaluations < 0:
            raise InvalidInputError("max_evaluations must be non-negative")
        self.roster = tuple(self.roster)
        if not self.roster:
            raise InvalidInputError("the neighborhood roster is empty")
        bad = [r for r in self.roster if r not in KINDS]
        if bad:
            raise InvalidInputError(f"unknown neighborhoods {bad}; choose from {KINDS}")
        if self.descent not in ("full", "first"):
            raise InvalidInputError(f"unknown descent mode {self.descent!r}")
        if self.mos_restart not in ("episode", "redraw"):
            raise InvalidInputError(f"unknown MOS restart scheme {self.mos_restart!r}")
        if isinstance(self.objectives, str):
            self.objectives = ObjectiveSet.parse(self.objectives)


@dataclass
class SearchResult:
    """Outcome of one run.

    ``archive`` holds reported objective values (averaged criteria divided
    by ``n``). ``descent_evaluations`` lists, per completed episode, the
    evaluations spent from the episode's start to its local optimum (PILS)
    or between restarts (MOS).
    """

    archive: ParetoArchive
    evaluations: int
    episodes: int
    descent_evaluations: list[int]
    elapsed: float
    config: SearchConfig = field(repr=False, default=None)

    def front(self) -> set[tuple]:
        return self.archive.vector_set()

    def vectors(self) -> np.ndarray:
        """Archive vectors sorted lexicographically."""
        v = self.archive.vectors()
        if len(v) == 0:
            return v
        return v[np.lexsort(v.T[::-1])]


class Evaluator:
    """Budgeted evaluation of permutations into raw integer objective keys."""

    def __init__(self, inst: Instance, objectives: ObjectiveSet, budget: int | None = None,
                 on_evaluate=None, progress=None, progress_interval: int = 100_000):
        self.inst = inst
        self.columns = objectives.columns
        self.budget = budget
        self.count = 0
        self.on_evaluate = on_evaluate
        self.progress = progress
        self.progress_interval = max(1, int(progress_interval))
        self._next_report = self.progress_interval
        self.archive_size = lambda: 0

    @property
    def remaining(self) -> int | float:
        if self.budget is None:
            return float("inf")
        return max(0, self.budget - self.count)

    def peek(self, perms: np.ndarray) -> np.ndarray:
        """Evaluate without charging the budget."""
        return evaluate_raw(self.inst, perms)[:, self.columns]

    def charge(self, perms: np.ndarray, keys: np.ndarray) -> None:
        self.count += len(perms)
        if self.on_evaluate is not None:
            self.on_evaluate(perms, keys)
        if self.progress is not None and self.count >= self._next_report:
            self.progress(self.count, self.archive_size())
            while self._next_report <= self.count:
                self._next_report += self.progress_interval

    def evaluate(self, perm: np.ndarray) -> np.ndarray:
        block = np.asarray(perm, dtype=np.int64)[None, :]
        keys = self.peek(block)
        self.charge(block, keys)
        return keys[0]


def random_permutation(n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniformly random permutation of ``0..n-1`` (Fisher-Yates via ``Generator.permutation``)."""
    if n < 1:
        raise InvalidInputError("n must be positive")
    return rng.permutation(n).astype(np.int64)


class _Engine:
    def __init__(self, inst: Instance, cfg: SearchConfig, budget: int | None,
                 archive: ParetoArchive | None = None, rng: np.random.Generator | None = None):
        self.inst = inst
        self.cfg = cfg
        self.n = inst.n
        self.rng = rng if rng is not None else np.random.default_rng(cfg.seed)
        self.archive = archive if archive is not None else ParetoArchive(cfg.objectives.k)
        self.ev = Evaluator(inst, cfg.objectives, budget, cfg.on_evaluate, cfg.progress, cfg.progress_interval)
        self.ev.archive_size = lambda: len(self.archive)
        self.order = list(cfg.roster)

    def offer(self, perm: np.ndarray) -> np.ndarray:
        """Evaluate (charged) and offer one solution to the archive."""
        key = self.ev.evaluate(perm)
        self.archive.update(perm, key)
        return key

    def descend(self, x: np.ndarray, fx: np.ndarray):
        """Descend until no roster neighborhood has a neighbor dominating ``x``.

        With ``descent="full"`` each neighborhood is evaluated completely and
        offered to the archive before moving to its first dominating
        neighbor; with ``"first"`` the scan stops at that neighbor.
        Returns ``(x, fx, locally_optimal)``; the flag is False when the
        budget ran out mid-descent.
        """
        rng, ev, archive = self.rng, self.ev, self.archive
        full = self.cfg.descent == "full"
        k = len(self.order)
        i = 0
        while i < k:
            table = move_table(self.order[i], self.n)
            total = len(table)
            pos, size = 0, (total if full else _FIRST_BLOCK)
            moved = False
            while pos < total:
                budget_left = ev.remaining
                if budget_left <= 0:
                    return x, fx, False
                take = int(min(size, total - pos, budget_left))
                nbrs = x[table[pos:pos + take]]
                keys = ev.peek(nbrs)
                better = np.all(keys <= fx, axis=1) & np.any(keys < fx, axis=1)
                hit = np.flatnonzero(better)
                used = int(hit[0]) + 1 if hit.size and not full else take
                ev.charge(nbrs[:used], keys[:used])
                archive.update_batch(nbrs[:used], keys[:used])
                if hit.size:
                    x, fx = nbrs[hit[0]].copy(), keys[hit[0]].copy()
                    moved = True
                    break
                pos += take
                size = min(2 * size, _MAX_BLOCK)
            if moved:
                i = 0
                self.order = [self.order[t] for t in rng.permutation(k)]
            else:
                i += 1
        return x, fx, True

    def result(self, episodes: int, costs: list[int], started: float) -> SearchResult:
        objectives = self.cfg.objectives
        if objectives.is_integral:
            public = self.archive
        else:
            public = ParetoArchive(objectives.k)
            for e in self.archive:
                new = public.update(e.perm, objectives.to_public(e.objs, self.n)).entry
                new.investigated = e.investigated
        return SearchResult(public, self.ev.count, episodes, costs, time.perf_counter() - started, self.cfg)


def run_pils(inst: Instance, cfg: SearchConfig) -> SearchResult:
    """Pareto Iterated Local Search.

    Descends from the current solution through the roster neighborhoods,
    reshuffling their order after every accepted move, until it is locally
    optimal for all of them. It then continues from a random archive member
    whose neighborhoods are not yet investigated, or, when every member has
    been investigated, from a perturbed copy of a random member. Stops when
    ``cfg.max_evaluations`` evaluations have been spent.
    """
    started = time.perf_counter()
    eng = _Engine(inst, cfg, cfg.max_evaluations)
    rng, archive, ev = eng.rng, eng.archive, eng.ev
    x = random_permutation(inst.n, rng)
    fx = eng.offer(x)
    episodes, costs = 0, []
    if inst.n < 2:
        return eng.result(episodes, costs, started)
    while ev.remaining > 0:
        start = ev.count
        x, fx, done = eng.descend(x, fx)
        if not done:
            break
        episodes += 1
        costs.append(ev.count - start)
        archive.mark_investigated(x)
        entry = archive.select_uninvestigated(rng)
        if entry is not None:
            x = np.array(entry.perm, dtype=np.int64)
            fx = np.array(entry.objs, dtype=np.int64)
            continue
        source = np.array(archive.select_any(rng).perm, dtype=np.int64)
        if inst.n >= 4:
            x = np.array(perturb(source, rng), dtype=np.int64)
        else:
            x = random_permutation(inst.n, rng)
        if ev.remaining <= 0:
            break
        fx = eng.offer(x)
    return eng.result(episodes, costs, started)


def run_mos(inst: Instance, cfg: SearchConfig) -> SearchResult:
    """Multi-operator search with restarts.

    Repeatedly expands a random uninvestigated member of the working archive
    with one randomly chosen roster neighborhood, scanning it completely, and
    flags the member investigated if it survived the update. When no
    uninvestigated member is left the search restarts.

    With ``cfg.mos_restart == "episode"`` (default) a restart begins a new
    episode from a fresh random solution with an empty working archive; the
    returned archive accumulates every evaluation of every episode. With
    ``"redraw"`` there is a single archive and fresh random solutions are
    drawn until one of them is accepted into it.
    """
    started = time.perf_counter()
    eng = _Engine(inst, cfg, cfg.max_evaluations)
    rng, archive, ev = eng.rng, eng.archive, eng.ev
    roster = list(cfg.roster)
    redraw = cfg.mos_restart == "redraw"

    def new_episode():
        x = random_permutation(inst.n, rng)
        key = eng.offer(x)
        if redraw:
            return archive
        local = ParetoArchive(cfg.objectives.k)
        local.update(x, key)
        return local

    work = new_episode()
    episodes, costs = 0, []
    episode_start = 0
    if inst.n < 2:
        return eng.result(episodes, costs, started)
    while ev.remaining > 0:
        entry = work.select_uninvestigated(rng)
        if entry is None:
            episodes += 1
            costs.append(ev.count - episode_start)
            episode_start = ev.count
            if redraw:
                while ev.remaining > 0:
                    x = random_permutation(inst.n, rng)
                    if archive.update(x, ev.evaluate(x)).accepted:
                        break
            else:
                work = new_episode()
            continue
        kind = roster[int(rng.integers(len(roster)))]
        table = move_table(kind, inst.n)
        take = int(min(len(table), ev.remaining))
        nbrs = np.array(entry.perm, dtype=np.int64)[table[:take]]
        keys = ev.peek(nbrs)
        ev.charge(nbrs, keys)
        archive.update_batch(nbrs, keys)
        if work is not archive:
            work.update_batch(nbrs, keys)
        if take == len(table):
            work.mark_investigated(entry)
    return eng.result(episodes, costs, started)


def run(inst: Instance, cfg: SearchConfig) -> SearchResult:
    return run_pils(inst, cfg) if cfg.algorithm == PILS else run_mos(inst, cfg)


class DescentResult(NamedTuple):
    perm: tuple
    evaluations: int
    locally_optimal: bool
    objectives: tuple


def intensify_to_local_optimum(
    inst: Instance,
    start: Sequence[int],
    objectives: ObjectiveSet = BICRITERIA,
    *,
    rng: np.random.Generator | None = None,
    archive: ParetoArchive | None = None,
    max_evaluations: int | None = None,
    roster: Sequence[str] = DEFAULT_ROSTER,
    descent: str = "first",
) -> DescentResult:
    """Run one PILS descent from ``start`` and report its evaluation cost.

    The start solution itself is evaluated without charge, so a start that
    is already locally optimal costs exactly one full scan of every roster
    neighborhood. ``archive``, when given, receives every charged neighbor
    (raw keys), as inside :func:`run_pils`.
    """
    x = check_permutation(start, inst.n)
    cfg = SearchConfig(PILS, max_evaluations or 1, 0, objectives, tuple(roster), descent=descent)
    eng = _Engine(inst, cfg, max_evaluations, archive=archive, rng=rng)
    fx = eng.ev.peek(x[None, :])[0]
    if inst.n < 2:
        return DescentResult(tuple(x.tolist()), 0, True, objectives.to_public(fx, inst.n))
    x, fx, done = eng.descend(x, fx)
    return DescentResult(tuple(x.tolist()), eng.ev.count, done, objectives.to_public(fx, inst.n))
