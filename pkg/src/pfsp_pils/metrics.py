"""D1/D2 approximation-quality metrics.

For every reference point ``r`` the regret of an approximation set ``A`` is
the smallest range-weighted Chebyshev shortfall

    delta(r) = min_{a in A} max_k w_k * max(0, a_k - r_k),   w_k = 1 / range_k,

where ``range_k`` is the spread of the reference set in objective ``k``
(``w_k = 1`` for a zero spread). D1 is the mean of ``delta`` over the
reference set and D2 its maximum.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .archive import nondominated
from .errors import InvalidInputError


@dataclass(frozen=True)
class ReferenceSet:
    vectors: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=float)
        if v.ndim != 2 or len(v) == 0:
            raise InvalidInputError("a reference set needs at least one vector")
        object.__setattr__(self, "vectors", v)

    @property
    def ranges(self) -> np.ndarray:
        return self.vectors.max(axis=0) - self.vectors.min(axis=0)

    @property
    def weights(self) -> np.ndarray:
        r = self.ranges
        return np.where(r > 0, 1.0 / np.where(r > 0, r, 1.0), 1.0)


@dataclass(frozen=True)
class MetricReport:
    d1: float
    d2: float


def regrets(approx, ref: ReferenceSet) -> np.ndarray:
    """Per-reference-point regret ``delta(r)``."""
    if not isinstance(ref, ReferenceSet):
        ref = ReferenceSet(ref)
    a = np.asarray(approx, dtype=float)
    if a.ndim != 2 or len(a) == 0:
        raise InvalidInputError("the approximation set is empty")
    if a.shape[1] != ref.vectors.shape[1]:
        raise InvalidInputError(f"dimension mismatch: approximation {a.shape[1]}, reference {ref.vectors.shape[1]}")
    shortfall = np.maximum(0.0, a[None, :, :] - ref.vectors[:, None, :]) * ref.weights
    return shortfall.max(axis=2).min(axis=1)


def compute_d1_d2(approx, ref) -> MetricReport:
    """Average (D1) and worst-case (D2) regret of ``approx`` against ``ref``.

    >>> r = compute_d1_d2([(0, 10), (5, 5)], [(0, 10), (10, 0)])
    >>> r.d1, r.d2
    (0.25, 0.5)
    """
    delta = regrets(approx, ref)
    return MetricReport(float(delta.mean()), float(delta.max()))


def build_reference(inputs: Iterable, oracle_front=None) -> ReferenceSet:
    """Reference set: the oracle front when given, else the non-dominated union of ``inputs``."""
    if oracle_front is not None:
        return ReferenceSet(np.asarray(oracle_front, dtype=float))
    blocks = [np.asarray(v, dtype=float) for v in inputs]
    blocks = [b for b in blocks if b.size]
    if not blocks:
        raise InvalidInputError("no vectors to build a reference set from")
    return ReferenceSet(nondominated(np.vstack(blocks)))
