"""Permutation flow shop model: instances, objective sets and schedule decoding.

Jobs and machines are indexed from 0 inside the package. The text formats in
:mod:`pfsp_pils.io` use 1-based numbering and convert at the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numba
import numpy as np

from .errors import InvalidInputError

#: Criteria that can be selected in an :class:`ObjectiveSet`.
CRITERIA = ("cmax", "csum", "tsum", "csum_avg", "tsum_avg")

# column of each criterion in the raw (cmax, csum, tsum) kernel output
_RAW_COLUMN = {"cmax": 0, "csum": 1, "tsum": 2, "csum_avg": 1, "tsum_avg": 2}


@dataclass(frozen=True, eq=False)
class Instance:
    """Immutable permutation flow shop instance.

    Parameters
    ----------
    p : array_like of shape (n, m)
        Non-negative integer processing times, ``p[j, k]`` for job ``j`` on
        machine ``k``.
    d : array_like of shape (n,), optional
        Non-negative integer due dates. Defaults to all zeros, in which case
        ``has_due_dates`` is False.
    name : str
        Free-form identifier used in reports.
    """

    p: np.ndarray
    d: np.ndarray = None
    name: str = ""
    has_due_dates: bool = field(default=None)

    def __post_init__(self):
        p = _as_int_matrix(self.p)
        if p.ndim != 2 or p.shape[0] < 1 or p.shape[1] < 1:
            raise InvalidInputError(f"processing times must be a non-empty n x m matrix, got shape {p.shape}")
        if (p < 0).any():
            raise InvalidInputError("processing times must be non-negative")
        has_dd = self.has_due_dates
        if self.d is None:
            d = np.zeros(p.shape[0], dtype=np.int64)
            if has_dd is None:
                has_dd = False
        else:
            d = _as_int_matrix(self.d)
            if d.shape != (p.shape[0],):
                raise InvalidInputError(f"expected {p.shape[0]} due dates, got shape {d.shape}")
            if (d < 0).any():
                raise InvalidInputError("due dates must be non-negative")
            if has_dd is None:
                has_dd = True
        p.setflags(write=False)
        d.setflags(write=False)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "has_due_dates", bool(has_dd))

    @property
    def n(self) -> int:
        return self.p.shape[0]

    @property
    def m(self) -> int:
        return self.p.shape[1]

    def with_due_dates(self, d) -> "Instance":
        return Instance(self.p, d, name=self.name, has_due_dates=True)

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            np.array_equal(self.p, other.p)
            and np.array_equal(self.d, other.d)
            and self.has_due_dates == other.has_due_dates
        )

    def __hash__(self):
        return hash((self.p.tobytes(), self.p.shape, self.d.tobytes(), self.has_due_dates))

    def __repr__(self):
        return f"Instance(name={self.name!r}, n={self.n}, m={self.m}, has_due_dates={self.has_due_dates})"


def _as_int_matrix(a) -> np.ndarray:
    arr = np.array(a)
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        as_int = arr.astype(np.int64)
        if not np.array_equal(as_int, arr):
            raise InvalidInputError("instance data must be integral")
        arr = as_int
    return arr.astype(np.int64)


@dataclass(frozen=True)
class ObjectiveSet:
    """Ordered selection of at least two criteria to minimize.

    ``csum_avg`` and ``tsum_avg`` are the sums divided by ``n``. The search
    works on integer *raw* keys (the undivided sums), which order solutions
    exactly like the averages; :meth:`to_public` converts raw keys back.
    """

    criteria: tuple[str, ...]

    def __post_init__(self):
        crit = tuple(self.criteria)
        if len(crit) < 2:
            raise InvalidInputError("an objective set needs at least two criteria")
        if len(set(crit)) != len(crit):
            raise InvalidInputError(f"duplicate criteria in {crit}")
        unknown = [c for c in crit if c not in CRITERIA]
        if unknown:
            raise InvalidInputError(f"unknown criteria {unknown}; choose from {CRITERIA}")
        # csum and csum_avg (or tsum and tsum_avg) together would be one criterion twice
        cols = [_RAW_COLUMN[c] for c in crit]
        if len(set(cols)) != len(cols):
            raise InvalidInputError(f"criteria {crit} select the same quantity twice")
        object.__setattr__(self, "criteria", crit)

    @classmethod
    def parse(cls, text: str | Sequence[str]) -> "ObjectiveSet":
        if isinstance(text, str):
            text = [t.strip().lower() for t in text.split(",") if t.strip()]
        return cls(tuple(text))

    @property
    def k(self) -> int:
        return len(self.criteria)

    @property
    def columns(self) -> np.ndarray:
        return np.array([_RAW_COLUMN[c] for c in self.criteria], dtype=np.intp)

    @property
    def is_integral(self) -> bool:
        return not any(c.endswith("_avg") for c in self.criteria)

    def to_public(self, raw, n: int) -> tuple:
        """Map a raw integer key to the reported objective vector."""
        out = []
        for c, v in zip(self.criteria, raw):
            out.append(int(v) / n if c.endswith("_avg") else int(v))
        return tuple(out)

    def to_public_array(self, raw: np.ndarray, n: int) -> np.ndarray:
        raw = np.asarray(raw)
        if self.is_integral:
            return raw.astype(np.int64)
        scale = np.array([n if c.endswith("_avg") else 1 for c in self.criteria], dtype=float)
        return raw / scale

    def __str__(self):
        return ",".join(self.criteria)


#: Bi-objective setting of the Taillard instances with generated due dates.
BICRITERIA = ObjectiveSet(("cmax", "tsum"))
#: Tri-objective setting with averaged flow time and tardiness.
TRICRITERIA = ObjectiveSet(("cmax", "csum_avg", "tsum_avg"))


@numba.njit(cache=True, nogil=True)
def _evaluate_rows(p, d, perms):
    B, n = perms.shape
    m = p.shape[1]
    out = np.empty((B, 3), dtype=np.int64)
    front = np.empty(m, dtype=np.int64)
    for b in range(B):
        for k in range(m):
            front[k] = 0
        csum = 0
        tsum = 0
        for i in range(n):
            j = perms[b, i]
            c = 0
            for k in range(m):
                # earliest start: machine k free and job j done on machine k-1
                if front[k] > c:
                    c = front[k]
                c += p[j, k]
                front[k] = c
            csum += c
            if c > d[j]:
                tsum += c - d[j]
        out[b, 0] = front[m - 1]
        out[b, 1] = csum
        out[b, 2] = tsum
    return out


def evaluate_raw(inst: Instance, perms: np.ndarray) -> np.ndarray:
    """Raw ``(cmax, csum, tsum)`` for each row of ``perms``; shape ``(B, 3)``, int64."""
    perms = np.ascontiguousarray(perms, dtype=np.int64)
    if perms.ndim == 1:
        perms = perms[None, :]
    return _evaluate_rows(inst.p, inst.d, perms)


def completion_times(inst: Instance, perm: Sequence[int]) -> np.ndarray:
    """Completion matrix ``C[i, k]`` of the job at sequence position ``i`` on machine ``k``."""
    perm = check_permutation(perm, inst.n)
    C = np.zeros((inst.n, inst.m), dtype=np.int64)
    for i, j in enumerate(perm):
        for k in range(inst.m):
            ready = max(C[i - 1, k] if i else 0, C[i, k - 1] if k else 0)
            C[i, k] = ready + inst.p[j, k]
    return C


def check_permutation(perm: Iterable[int], n: int) -> np.ndarray:
    arr = np.asarray(list(perm) if not isinstance(perm, np.ndarray) else perm)
    if arr.ndim != 1 or arr.shape[0] != n:
        raise InvalidInputError(f"permutation of length {arr.shape[0] if arr.ndim == 1 else arr.shape} for {n} jobs")
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        raise InvalidInputError("permutation entries must be integers")
    arr = arr.astype(np.int64)
    if not np.array_equal(np.sort(arr), np.arange(n)):
        raise InvalidInputError(f"{arr.tolist()} is not a permutation of 0..{n - 1}")
    return arr


def decode_and_evaluate(inst: Instance, perm: Sequence[int], objectives: ObjectiveSet = BICRITERIA) -> tuple:
    """Objective vector of the active schedule encoded by ``perm``.

    >>> inst = Instance([[3, 2], [1, 4]], [0, 0])
    >>> decode_and_evaluate(inst, [0, 1])
    (9, 14)
    """
    perm = check_permutation(perm, inst.n)
    raw = evaluate_raw(inst, perm)[0, objectives.columns]
    return objectives.to_public(raw, inst.n)


def dominates(a: Sequence[float], b: Sequence[float]) -> bool:
    """True when ``a`` is no worse than ``b`` everywhere and better somewhere (minimization)."""
    if len(a) != len(b):
        raise InvalidInputError(f"cannot compare vectors of dimension {len(a)} and {len(b)}")
    strictly = False
    for x, y in zip(a, b):
        if x > y:
            return False
        if x < y:
            strictly = True
    return strictly
