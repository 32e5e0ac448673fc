import itertools

import numpy as np
import pytest

from pfsp_pils import Instance
from pfsp_pils.io import generate_instance


def reference_objectives(p, d, perm):
    """Plain-Python completion recursion: returns (cmax, csum, tsum)."""
    n, m = len(p), len(p[0])
    C = [[0] * m for _ in range(n)]
    for i, j in enumerate(perm):
        for k in range(m):
            prev_job = C[i - 1][k] if i > 0 else 0
            prev_mach = C[i][k - 1] if k > 0 else 0
            C[i][k] = max(prev_job, prev_mach) + p[j][k]
    done = [C[i][m - 1] for i in range(n)]
    tard = [max(c - d[j], 0) for c, j in zip(done, perm)]
    return max(done), sum(done), sum(tard)


def brute_front(vectors):
    """Distinct vectors not dominated by any other vector in the list."""
    vs = {tuple(v) for v in vectors}
    out = set()
    for v in vs:
        if not any(all(a <= b for a, b in zip(w, v)) and w != v for w in vs):
            out.add(v)
    return out


def brute_pareto(inst, columns=(0, 2)):
    p, d = inst.p.tolist(), inst.d.tolist()
    vecs = []
    for perm in itertools.permutations(range(inst.n)):
        raw = reference_objectives(p, d, perm)
        vecs.append(tuple(raw[c] for c in columns))
    return brute_front(vecs)


@pytest.fixture
def two_job():
    return Instance([[1], [2]], [0, 0], name="two_job")


@pytest.fixture
def small_instance():
    return generate_instance(7, 3, seed=1, tardiness_factor=1.5)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_log():
    """Record one PASS/FAIL line per acceptance criterion; printed in the terminal summary."""

    def record(criterion, passed, detail):
        _ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] criterion {criterion}: {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
