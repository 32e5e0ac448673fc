"""Exact Pareto fronts by enumerating all ``n!`` permutations."""

from __future__ import annotations

import itertools

import numpy as np

from .archive import ParetoArchive
from .errors import OracleSizeError
from .model import BICRITERIA, Instance, ObjectiveSet, evaluate_raw

DEFAULT_LIMIT = 10
_CHUNK = 20_000


def iter_permutation_blocks(n: int, chunk: int = _CHUNK):
    """All permutations of ``0..n-1`` in lexicographic order, as int64 blocks."""
    perms = itertools.permutations(range(n))
    while True:
        block = list(itertools.islice(perms, chunk))
        if not block:
            return
        yield np.array(block, dtype=np.int64).reshape(len(block), n)


def exact_front(inst: Instance, objectives: ObjectiveSet = BICRITERIA, limit: int = DEFAULT_LIMIT) -> ParetoArchive:
    """Archive holding every non-dominated vector, each with its lexicographically first permutation.

    Raises :class:`OracleSizeError` when ``inst.n > limit``.
    """
    if inst.n > limit:
        raise OracleSizeError(f"exhaustive enumeration refused: n = {inst.n} exceeds the limit of {limit}")
    raw = ParetoArchive(objectives.k)
    cols = objectives.columns
    for block in iter_permutation_blocks(inst.n):
        raw.update_batch(block, evaluate_raw(inst, block)[:, cols])
    if objectives.is_integral:
        return raw
    front = ParetoArchive(objectives.k)
    for e in raw:
        front.update(e.perm, objectives.to_public(e.objs, inst.n))
    return front
