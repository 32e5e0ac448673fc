import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pfsp_pils import InvalidInputError, ReferenceSet, build_reference, compute_d1_d2
from pfsp_pils.archive import nondominated


def loop_metrics(approx, ref):
    """Direct transcription of the regret definition with Python loops."""
    k = len(ref[0])
    w = []
    for c in range(k):
        spread = max(r[c] for r in ref) - min(r[c] for r in ref)
        w.append(1.0 / spread if spread > 0 else 1.0)
    deltas = []
    for r in ref:
        deltas.append(min(max(w[c] * max(0.0, a[c] - r[c]) for c in range(k)) for a in approx))
    return sum(deltas) / len(deltas), max(deltas)


def test_identical_sets():
    ref = [(0, 10), (3, 4), (10, 0)]
    rep = compute_d1_d2(ref, ref)
    assert rep.d1 == 0 and rep.d2 == 0


def test_single_compromise_point():
    rep = compute_d1_d2([(5, 5)], [(0, 10), (10, 0)])
    assert rep.d1 == pytest.approx(0.5, rel=1e-12)
    assert rep.d2 == pytest.approx(0.5, rel=1e-12)


def test_partial_cover():
    rep = compute_d1_d2([(0, 10), (5, 5)], [(0, 10), (10, 0)])
    assert rep.d1 == pytest.approx(0.25, rel=1e-12)
    assert rep.d2 == pytest.approx(0.5, rel=1e-12)


def test_zero_range_uses_unit_weight():
    rep = compute_d1_d2([(3, 4)], [(1, 1)])
    assert rep.d1 == rep.d2 == 3.0


def test_errors():
    with pytest.raises(InvalidInputError):
        compute_d1_d2([], [(1, 2)])
    with pytest.raises(InvalidInputError):
        compute_d1_d2([(1, 2)], [])
    with pytest.raises(InvalidInputError):
        compute_d1_d2([(1, 2, 3)], [(1, 2)])


def test_build_reference():
    assert {tuple(v) for v in build_reference([[(1, 2), (2, 1)]]).vectors.tolist()} == {(1, 2), (2, 1)}
    ref = build_reference([[(1, 3)], [(2, 2)], [(3, 1)], [(2, 3)]])
    assert {tuple(v) for v in ref.vectors.tolist()} == {(1, 3), (2, 2), (3, 1)}
    oracle = [(0, 5), (5, 0)]
    assert build_reference([[(9, 9)]], oracle_front=oracle).vectors.tolist() == [[0, 5], [5, 0]]
    with pytest.raises(InvalidInputError):
        build_reference([[], []])


point_sets = st.lists(st.tuples(st.integers(0, 20), st.integers(0, 20)), min_size=1, max_size=15)


@settings(max_examples=150, deadline=None)
@given(point_sets, point_sets, point_sets, st.floats(0.1, 50))
def test_metric_properties(raw_ref, approx, extra, scale):
    ref = [tuple(v) for v in nondominated(raw_ref).tolist()]
    rep = compute_d1_d2(approx, ref)
    exp_d1, exp_d2 = loop_metrics(approx, ref)
    assert rep.d1 == pytest.approx(exp_d1, rel=1e-12, abs=1e-15)
    assert rep.d2 == pytest.approx(exp_d2, rel=1e-12, abs=1e-15)
    assert 0 <= rep.d1 <= rep.d2 + 1e-15
    more = compute_d1_d2(approx + extra, ref)
    assert more.d1 <= rep.d1 + 1e-12 and more.d2 <= rep.d2 + 1e-12
    covered = all(any(all(a[c] <= r[c] for c in range(2)) for a in approx) for r in ref)
    assert covered == (rep.d2 == 0)
    if (ReferenceSet(ref).ranges == 0).any():
        return  # unit-weight fallback is not scale-free
    s = np.array([scale, 1.0])
    scaled = compute_d1_d2(np.array(approx) * s, ReferenceSet(np.array(ref) * s))
    assert scaled.d1 == pytest.approx(rep.d1, rel=1e-9, abs=1e-12)
    assert scaled.d2 == pytest.approx(rep.d2, rel=1e-9, abs=1e-12)
