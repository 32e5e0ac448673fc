"""Archive of mutually non-dominated solutions with per-entry 'investigated' flags."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import InvalidInputError, InvalidStateError


@dataclass(eq=False)
class ArchiveEntry:
    perm: tuple
    objs: tuple
    investigated: bool = False


class UpdateOutcome(NamedTuple):
    accepted: bool
    removed: int
    entry: ArchiveEntry | None


class ParetoArchive:
    """Unbounded Pareto archive (minimization).

    A candidate is rejected when an entry dominates it or has the same
    objective vector, so the first permutation reaching a vector is the one
    kept. Accepted candidates evict every entry they dominate. Entries keep
    insertion order, which makes the random selections reproducible.
    """

    def __init__(self, dim: int | None = None):
        self.dim = dim
        self.entries: list[ArchiveEntry] = []
        self._keys = None
        self._by_perm: dict[tuple, ArchiveEntry] = {}

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __contains__(self, entry: ArchiveEntry) -> bool:
        return self._by_perm.get(entry.perm) is entry

    def find(self, perm: Sequence[int]) -> ArchiveEntry | None:
        return self._by_perm.get(tuple(int(x) for x in perm))

    def vectors(self) -> np.ndarray:
        """Objective vectors in insertion order, shape ``(len, dim)``."""
        if self._keys is None:
            return np.empty((0, self.dim or 0))
        return self._keys.copy()

    def vector_set(self) -> set[tuple]:
        return {e.objs for e in self.entries}

    def _coerce(self, objs) -> np.ndarray:
        v = np.asarray(objs)
        if v.ndim != 1:
            raise InvalidInputError(f"objective vector must be one-dimensional, got shape {v.shape}")
        if self.dim is None:
            self.dim = v.shape[0]
        elif v.shape[0] != self.dim:
            raise InvalidInputError(f"objective vector of dimension {v.shape[0]} for a {self.dim}-dimensional archive")
        if self._keys is None:
            dtype = np.int64 if np.issubdtype(v.dtype, np.integer) else np.float64
            self._keys = np.empty((0, self.dim), dtype=dtype)
        elif self._keys.dtype == np.int64 and not np.issubdtype(v.dtype, np.integer):
            self._keys = self._keys.astype(np.float64)
        return v.astype(self._keys.dtype)

    def update(self, perm: Sequence[int], objs: Sequence[float]) -> UpdateOutcome:
        v = self._coerce(objs)
        keys = self._keys
        if len(keys) and np.any(np.all(keys <= v, axis=1)):
            return UpdateOutcome(False, 0, None)
        # v is not weakly dominated, so keys >= v componentwise means strictly dominated
        evict = np.all(keys >= v, axis=1) if len(keys) else np.zeros(0, dtype=bool)
        removed = int(evict.sum())
        if removed:
            keep = ~evict
            for e, gone in zip(self.entries, evict):
                if gone:
                    del self._by_perm[e.perm]
            self.entries = [e for e, k in zip(self.entries, keep) if k]
            keys = keys[keep]
        entry = ArchiveEntry(tuple(int(x) for x in perm), tuple(v.tolist()))
        self.entries.append(entry)
        self._by_perm[entry.perm] = entry
        self._keys = np.vstack([keys, v[None, :]])
        return UpdateOutcome(True, removed, entry)

    def update_batch(self, perms: np.ndarray, objs: np.ndarray) -> int:
        """Offer rows of ``perms``/``objs`` in order; returns the number accepted.

        Same result as calling :meth:`update` row by row. Rows weakly
        dominated by the archive as it stands on entry are skipped up front:
        an archive only ever moves toward dominating vectors, so those rows
        would be rejected later as well.
        """
        objs = np.asarray(objs)
        if objs.ndim != 2 or len(objs) == 0:
            if objs.ndim == 2:
                return 0
            raise InvalidInputError(f"expected a 2-D block of objective vectors, got shape {objs.shape}")
        accepted = 0
        first = 0
        if not self.entries:
            accepted += self.update(perms[0], objs[0]).accepted
            first = 1
        self._coerce(objs[0])
        covered = np.zeros(len(objs) - first, dtype=bool)
        for row in self._keys:
            covered |= np.all(row <= objs[first:], axis=1)
        for r in first + np.flatnonzero(~covered):
            accepted += self.update(perms[r], objs[r]).accepted
        return accepted

    def select_uninvestigated(self, rng: np.random.Generator) -> ArchiveEntry | None:
        pool = [e for e in self.entries if not e.investigated]
        if not pool:
            return None
        return pool[int(rng.integers(len(pool)))]

    def select_any(self, rng: np.random.Generator) -> ArchiveEntry:
        if not self.entries:
            raise InvalidStateError("cannot select from an empty archive")
        return self.entries[int(rng.integers(len(self.entries)))]

    def mark_investigated(self, entry: ArchiveEntry | Sequence[int]) -> None:
        """Flag an entry (or the entry holding a permutation); no-op if it was evicted."""
        if not isinstance(entry, ArchiveEntry):
            entry = self.find(entry)
            if entry is None:
                return
        if entry in self:
            entry.investigated = True

    def copy(self) -> "ParetoArchive":
        other = ParetoArchive(self.dim)
        for e in self.entries:
            clone = ArchiveEntry(e.perm, e.objs, e.investigated)
            other.entries.append(clone)
            other._by_perm[clone.perm] = clone
        other._keys = None if self._keys is None else self._keys.copy()
        return other


def nondominated(vectors) -> np.ndarray:
    """Distinct non-dominated rows of ``vectors``, in order of first appearance."""
    arch = ParetoArchive()
    for i, v in enumerate(np.asarray(vectors)):
        arch.update((i,), v)
    return arch.vectors()
