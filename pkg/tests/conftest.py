import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mixedmoore import MixedGraph, solve_exact  # noqa: E402


def random_mixed_graph(n, p_edge, p_arc, rng):
    edges, arcs = [], []
    for u in range(n):
        for v in range(u + 1, n):
            x = rng.random()
            if x < p_edge:
                edges.append((u, v))
            elif x < p_edge + p_arc:
                arcs.append((u, v) if rng.random() < 0.5 else (v, u))
    return MixedGraph(n, edges, arcs)


def floyd_warshall(g):
    """Independent all-pairs oracle: triple-loop relaxation on an adjacency matrix."""
    n = g.n
    INF = float("inf")
    d = [[0 if i == j else INF for j in range(n)] for i in range(n)]
    for u, v in g.edges:
        d[u][v] = d[v][u] = 1
    for u, v in g.arcs:
        d[u][v] = 1
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if dik == INF:
                continue
            di = d[i]
            for j in range(n):
                if dik + dk[j] < di[j]:
                    di[j] = dik + dk[j]
    return d


def moore_bound_closed_form(r, z, k):
    """Geometric-series closed form of the mixed Moore bound in exact rationals.

    With A = [[r-1, r], [z, z]] acting on (edge-reached, arc-reached) layer
    counts, M = 1 + 1^T (A^k - I)(A - I)^{-1} (r, z)^T.  A - I is singular
    exactly when r + 2z = 2.
    """
    F = Fraction
    a = [[F(r - 1), F(r)], [F(z), F(z)]]

    def mul(x, y):
        return [[sum(x[i][t] * y[t][j] for t in range(2)) for j in range(2)] for i in range(2)]

    power = [[F(1), F(0)], [F(0), F(1)]]
    for _ in range(k):
        power = mul(power, a)
    diff = [[power[i][j] - (1 if i == j else 0) for j in range(2)] for i in range(2)]
    am = [[a[i][j] - (1 if i == j else 0) for j in range(2)] for i in range(2)]
    det = am[0][0] * am[1][1] - am[0][1] * am[1][0]
    inv = [[am[1][1] / det, -am[0][1] / det], [-am[1][0] / det, am[0][0] / det]]
    m = mul(diff, inv)
    vec = [m[i][0] * r + m[i][1] * z for i in range(2)]
    val = 1 + vec[0] + vec[1]
    assert val.denominator == 1
    return int(val)


# (1,1)-regular mixed graph of order 6 and diameter 2 (a mixed Moore graph),
# labelled so that it contains the canonical Moore tree.
MOORE_1_1 = MixedGraph(6, [(0, 1), (2, 4), (3, 5)],
                       [(0, 2), (1, 3), (2, 5), (3, 4), (4, 1), (5, 0)])


@pytest.fixture(scope="session")
def best_11():
    return solve_exact(1, 1, time_limit=60)


@pytest.fixture(scope="session")
def best_21():
    return solve_exact(2, 1, time_limit=600)


@pytest.fixture(scope="session")
def best_12():
    return solve_exact(1, 2, time_limit=1800)


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture(scope="session")
def heuristic_22():
    from mixedmoore import HeuristicConfig, solve_heuristic
    return solve_heuristic(2, 2, HeuristicConfig(seed=0), time_limit=600)


# acceptance report: one PASS/FAIL line per criterion, printed after the run

def pytest_configure(config):
    config._acceptance = {}


@pytest.fixture
def acceptance(request):
    results = request.config._acceptance

    def record(number, ok, detail=""):
        results[number] = (bool(ok), detail)
        return ok
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "_acceptance", {})
    if not results:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(results):
        ok, detail = results[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
