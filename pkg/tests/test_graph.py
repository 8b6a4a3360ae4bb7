import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import floyd_warshall, random_mixed_graph
from mixedmoore import (ConflictingPair, InvalidGraph, MixedGraph, ParseError, SelfLoop,
                        UnreachablePair, degree_profile, distances, eccentricity_profile,
                        format_graph, parse_graph, read_graph, status_vector, write_graph)


def test_triangle_of_edges():
    g = MixedGraph(3, [(0, 1), (1, 2), (0, 2)])
    assert status_vector(g).total == 6
    ecc = eccentricity_profile(g)
    assert (ecc.radius, ecc.diameter) == (1, 1)
    assert degree_profile(g).is_totally_regular(2, 0)


def test_directed_triangle():
    g = MixedGraph(3, arcs=[(0, 1), (1, 2), (2, 0)])
    dm = distances(g)
    assert dm[0, 2] == 2 and dm[2, 0] == 1
    assert status_vector(g).per_vertex == (3, 3, 3)
    assert degree_profile(g).is_totally_regular(0, 1)


def test_path_is_not_regular():
    g = MixedGraph(3, [(0, 1), (1, 2)])
    assert not degree_profile(g).is_totally_regular(1, 0)
    ecc = eccentricity_profile(g)
    assert ecc.central == (1,)


def test_unreachable_pair():
    g = MixedGraph(2, arcs=[(0, 1)])
    dm = distances(g)
    assert dm[1, 0] == dm.inf == 2
    with pytest.raises(UnreachablePair) as exc:
        status_vector(g, dm)
    assert (exc.value.u, exc.value.v) == (1, 0)
    assert eccentricity_profile(g).eccentricities[1] == math.inf


@pytest.mark.parametrize("edges,arcs,err", [
    ([(1, 1)], [], SelfLoop),
    ([], [(2, 2)], SelfLoop),
    ([(0, 1)], [(1, 0)], ConflictingPair),
    ([], [(0, 1), (1, 0)], ConflictingPair),
    ([(0, 5)], [], InvalidGraph),
])
def test_invalid_graphs(edges, arcs, err):
    with pytest.raises(err):
        MixedGraph(3, edges, arcs)


def test_bfs_matches_floyd_warshall(rng):
    for _ in range(200):
        n = rng.randint(1, 30)
        g = random_mixed_graph(n, rng.random() * 0.3, rng.random() * 0.3, rng)
        fw = floyd_warshall(g)
        dm = distances(g)
        for u in range(n):
            for v in range(n):
                want = dm.inf if fw[u][v] == math.inf else fw[u][v]
                assert dm[u, v] == want


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 14), st.floats(0.1, 0.5), st.floats(0.1, 0.5), st.integers(0, 10**6))
def test_status_and_eccentricity_properties(n, pe, pa, seed):
    import random
    g = random_mixed_graph(n, pe, pa, random.Random(seed))
    dm = distances(g)
    ecc = eccentricity_profile(g, dm)
    assert ecc.diameter >= ecc.radius
    # replacing each edge by two opposite arcs keeps every distance
    assert distances(g.as_digraph()) == dm
    if all(dm.is_finite(u, v) for u in range(n) for v in range(n)):
        sv = status_vector(g, dm)
        assert sv.total == sum(sum(row) for row in dm.rows)
        assert sum(sv.per_vertex) == sv.total


def test_degree_profile_counts():
    g = MixedGraph(4, [(0, 1)], [(1, 2), (2, 3), (3, 1)])
    dp = degree_profile(g)
    assert dp.undirected == (1, 1, 0, 0)
    assert dp.out == (0, 1, 1, 1)
    assert dp.inn == (0, 1, 1, 1)


def test_format_round_trip(rng, tmp_path):
    for _ in range(20):
        g = random_mixed_graph(rng.randint(1, 15), 0.3, 0.3, rng)
        text = format_graph(g, 1, 1)
        g2, r, z = parse_graph(text)
        assert (g2, r, z) == (g, 1, 1)
        assert format_graph(g2, r, z) == text
        path = tmp_path / "g.mrg"
        write_graph(path, g, 1, 1)
        assert path.read_text() == text
        assert read_graph(path)[0] == g


def test_format_is_canonical():
    g = MixedGraph(4, [(3, 2), (1, 0)], [(2, 0), (0, 3)])
    assert format_graph(g, 1, 1) == "p mrg 4 1 1\ne 0 1\ne 2 3\na 0 3\na 2 0\n"
    assert parse_graph("# note\np mrg 4 1 1\n\na 2 0\ne 0 1\n")[0] == MixedGraph(4, [(0, 1)], [(2, 0)])


@pytest.mark.parametrize("text", [
    "",
    "e 0 1\n",
    "p mrg 3 1\n",
    "p mrg 3 1 1\ne 1 0\n",
    "p mrg 3 1 1\ne 0 1\ne 0 1\n",
    "p mrg 3 1 1\nx 0 1\n",
    "p mrg 3 1 1\na 0 q\n",
    "p mrg 3 1 1\np mrg 3 1 1\n",
    "p mrg 3 1 1\na 0 0\n",
    "p mrg 3 1 1\ne 0 1\na 1 0\n",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_graph(text)
