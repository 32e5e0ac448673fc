"""Exchange and shift neighborhoods plus the four-job perturbation.

Every neighborhood of a permutation of length ``n`` has ``n(n-1)/2`` moves,
enumerated in lexicographic ``(i, j)`` order (``i`` is the source position).
Internally a neighborhood is a precomputed ``(M, n)`` index table, so the
neighbors of ``perm`` are simply ``perm[table]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .errors import InvalidInputError, PerturbationUnavailableError

EXCHANGE = "exchange"
FORWARD_SHIFT = "forward_shift"
BACKWARD_SHIFT = "backward_shift"
KINDS = (EXCHANGE, FORWARD_SHIFT, BACKWARD_SHIFT)
DEFAULT_ROSTER = KINDS


@dataclass(frozen=True)
class Move:
    kind: str
    i: int
    j: int

    def apply(self, perm: Sequence[int]) -> tuple:
        return apply_move(perm, self)


def moves(kind: str, n: int) -> list[Move]:
    """All moves of one neighborhood in enumeration order."""
    if kind == EXCHANGE:
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    elif kind == FORWARD_SHIFT:
        pairs = [(i, j) for i in range(n) for j in range(i)]
    elif kind == BACKWARD_SHIFT:
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    else:
        raise InvalidInputError(f"unknown neighborhood {kind!r}; choose from {KINDS}")
    return [Move(kind, i, j) for i, j in pairs]


def apply_move(perm: Sequence[int], move: Move) -> tuple:
    seq = list(perm)
    i, j = move.i, move.j
    if move.kind == EXCHANGE:
        seq[i], seq[j] = seq[j], seq[i]
    else:
        # forward shift has j < i, backward shift j > i; pop/insert covers both
        job = seq.pop(i)
        seq.insert(j, job)
    return tuple(seq)


@lru_cache(maxsize=64)
def move_table(kind: str, n: int) -> np.ndarray:
    """Read-only ``(n(n-1)/2, n)`` array of position indices for ``kind``."""
    ident = list(range(n))
    rows = [apply_move(ident, mv) for mv in moves(kind, n)]
    table = np.array(rows, dtype=np.int64).reshape(len(rows), n)
    table.setflags(write=False)
    return table


def neighbor_block(perm: np.ndarray, kind: str, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Neighbors ``start:stop`` of ``perm`` as rows of an int64 array."""
    table = move_table(kind, len(perm))
    return np.asarray(perm, dtype=np.int64)[table[start:stop]]


def _enumerate(perm: Sequence[int], kind: str) -> Iterator[tuple]:
    perm = np.asarray(perm, dtype=np.int64)
    for row in move_table(kind, len(perm)):
        yield tuple(perm[row].tolist())


def enumerate_exchange(perm: Sequence[int]) -> Iterator[tuple]:
    """Swap positions ``i < j``; lazily yields ``n(n-1)/2`` permutations."""
    return _enumerate(perm, EXCHANGE)


def enumerate_forward_shift(perm: Sequence[int]) -> Iterator[tuple]:
    """Move the job at ``i`` to an earlier position ``j < i``."""
    return _enumerate(perm, FORWARD_SHIFT)


def enumerate_backward_shift(perm: Sequence[int]) -> Iterator[tuple]:
    """Move the job at ``i`` to a later position ``j > i``."""
    return _enumerate(perm, BACKWARD_SHIFT)


ENUMERATORS = {
    EXCHANGE: enumerate_exchange,
    FORWARD_SHIFT: enumerate_forward_shift,
    BACKWARD_SHIFT: enumerate_backward_shift,
}


def perturb_at(perm: Sequence[int], j: int) -> tuple:
    """Rearrange the window ``(a, b, c, d)`` at positions ``j..j+3`` into ``(c, d, b, a)``."""
    seq = list(perm)
    if len(seq) < 4:
        raise PerturbationUnavailableError(f"perturbation needs n >= 4, got n = {len(seq)}")
    if not 0 <= j <= len(seq) - 4:
        raise InvalidInputError(f"window start {j} out of range for n = {len(seq)}")
    a, b, c, d = seq[j:j + 4]
    seq[j:j + 4] = [c, d, b, a]
    return tuple(seq)


def perturb(perm: Sequence[int], rng: np.random.Generator) -> tuple:
    """Apply :func:`perturb_at` at a window start drawn uniformly from ``0..n-4``."""
    n = len(perm)
    if n < 4:
        raise PerturbationUnavailableError(f"perturbation needs n >= 4, got n = {n}")
    j = int(rng.integers(n - 3))
    return perturb_at(perm, j)
