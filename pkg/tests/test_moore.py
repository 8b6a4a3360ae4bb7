import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import MOORE_1_1, moore_bound_closed_form
from mixedmoore import (InvalidParams, MixedGraph, OrderMismatch, degree_profile,
                        eccentricity_profile, moore_bound, moore_profile, moore_status,
                        moore_tree, status_norm1)
from mixedmoore.reference import REFERENCE_ROWS, consistency_note, reference_row


@pytest.mark.parametrize("row", REFERENCE_ROWS, ids=lambda row: f"{row.r}-{row.z}")
def test_bound_matches_reference(row):
    assert moore_bound(row.r, row.z, 2) == row.M


def test_small_bounds():
    assert moore_bound(0, 1, 2) == 3  # directed triangle
    assert moore_bound(1, 0, 2) == 2
    assert moore_bound(3, 0, 2) == 10  # Petersen
    assert moore_bound(2, 0, 2) == 5
    assert moore_bound(0, 2, 2) == 7


@given(st.integers(0, 6), st.integers(0, 6), st.integers(1, 5))
def test_recurrence_matches_closed_form(r, z, k):
    if r + z < 1 or r + 2 * z == 2:
        return
    assert moore_bound(r, z, k) == moore_bound_closed_form(r, z, k)


@given(st.integers(0, 8), st.integers(0, 8))
def test_radius_two_closed_form(r, z):
    if r + z < 1:
        return
    assert moore_bound(r, z, 2) == (r + z) ** 2 + z + 1
    # n * r is always even, so total regularity never fails on parity
    assert moore_bound(r, z, 2) * r % 2 == 0


def test_layer_counts_and_status():
    prof = moore_profile(2, 1, 2)
    assert prof.layer_counts == (1, 3, 7)
    assert moore_status(1, 1) == (8, 48)
    assert moore_status(2, 1) == (17, 187)
    assert moore_status(1, 2) == (19, 228)
    for r, z in [(1, 1), (2, 3), (4, 0)]:
        assert moore_status(r, z, 1)[0] == r + z


@pytest.mark.parametrize("r,z,k", [(0, 0, 2), (-1, 2, 2), (1, 1, 0), (1.5, 1, 2), (True, 1, 2)])
def test_invalid_params(r, z, k):
    with pytest.raises(InvalidParams):
        moore_profile(r, z, k)


@pytest.mark.parametrize("r,z,edges,arcs", [(1, 1, 2, 3), (2, 1, 6, 4), (1, 2, 3, 8)])
def test_tree_shape(r, z, edges, arcs):
    t = moore_tree(r, z)
    assert t.n == moore_bound(r, z, 2)
    assert (len(t.graph.edges), len(t.graph.arcs)) == (edges, arcs)
    assert eccentricity_profile(t.graph).eccentricities[0] == 2
    dp = degree_profile(t.graph)
    assert all(d <= r for d in dp.undirected)
    assert all(d <= z for d in dp.out) and all(d <= z for d in dp.inn)
    assert t.level.count(1) == r + z
    assert all(t.parent[v] == 0 for v in range(1, r + z + 1))


def test_tree_labelling_is_canonical():
    t = moore_tree(2, 1)
    assert t.via_edge[1:4] == (True, True, False)
    # children of vertex 1 (an edge child) come right after the level-1 block
    assert [v for v in range(t.n) if t.parent[v] == 1] == [4, 5]
    assert sorted(t.graph.arcs)[0] == (0, 3)


def test_status_norm1():
    assert status_norm1(MOORE_1_1, 1, 1) == 0
    with pytest.raises(OrderMismatch):
        status_norm1(MixedGraph(3, arcs=[(0, 1), (1, 2), (2, 0)]), 1, 1)


def test_reference_consistency_notes():
    assert consistency_note(reference_row(1, 1)) is None
    assert consistency_note(reference_row(2, 2)) is None
    note12 = consistency_note(reference_row(1, 2))
    note42 = consistency_note(reference_row(4, 2))
    assert note12 and "= 1" in note12
    assert note42 and "= 352" in note42
    flagged = [(row.r, row.z) for row in REFERENCE_ROWS if consistency_note(row)]
    assert flagged == [(1, 2), (4, 2)]
