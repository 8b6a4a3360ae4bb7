import pytest

from conftest import MOORE_1_1
from mixedmoore import (AsymmetricEdge, ConflictingPair, InvalidParams, MixedGraph, ModelTooLarge,
                        SelfLoop, assignment_to_graph, build_model, distances, graph_to_assignment,
                        model_stats, moore_tree, status_vector)
from mixedmoore.model import parse_var


def expected_counts(n):
    return {"a": 2 * n * (n - 1), "b": 0, "c": 3 * n, "d": 4 * n * n * (n - 1),
            "e": 4 * n ** 4, "f": n * n + n ** 3, "g": n * (n - 1)}


@pytest.mark.parametrize("r,z", [(1, 1), (2, 1), (1, 2)])
def test_variable_and_row_counts(r, z):
    model = build_model(r, z)
    n = model.n
    var_count, fam = model_stats(model)
    assert var_count == n ** 4 + n ** 3 + 3 * n ** 2
    assert fam == expected_counts(n)


def test_known_small_counts():
    var_count, fam = model_stats(build_model(1, 1))
    assert var_count == 1620
    assert fam == {"a": 60, "b": 0, "c": 18, "d": 720, "e": 5184, "f": 252, "g": 30}


def test_radial_only_adds_one_row():
    _, fam = model_stats(build_model(1, 1, radial_only=True))
    assert fam["h"] == 1


def test_fixings_hold_the_tree():
    model = build_model(2, 1)
    tree = moore_tree(2, 1).graph
    for u, v in tree.edges:
        assert model.fixings[f"x_{u}_{v}"] == 1 and model.fixings[f"x_{v}_{u}"] == 1
    for u, v in tree.arcs:
        assert model.fixings[f"y_{u}_{v}"] == 1
    assert model.fixings["x_0_1"] == 1
    assert model.fixings["x_3_3"] == 0 and model.fixings["c_2_5_2"] == 0
    assert list(model.fixings) == sorted(model.fixings)


def test_limits():
    with pytest.raises(ModelTooLarge):
        build_model(5, 1, max_order=30)
    with pytest.raises(InvalidParams):
        build_model(0, 0)


def test_model_is_deterministic():
    a, b = build_model(1, 1), build_model(1, 1)
    assert list(a.constraints()) == list(b.constraints())
    assert list(a.variables()) == list(b.variables())


def test_parse_var():
    assert parse_var("c_1_2_3") == ("c", (1, 2, 3))
    assert parse_var("p_0_0_1_12") == ("p", (0, 0, 1, 12))
    for bad in ("c_1_2", "q_1_2", "x_01_2", "x_a_b", "const_one"):
        assert parse_var(bad) is None


def check_replay(model, g):
    a = graph_to_assignment(model, g)
    assert model.violated(a) == []
    assert model.objective_value(a) == status_vector(g).total
    assert assignment_to_graph(model, a) == g


def test_replay_small(best_11):
    model = build_model(1, 1)
    check_replay(model, best_11.best_graph)
    check_replay(model, MOORE_1_1)
    assert model.objective_value(graph_to_assignment(model, MOORE_1_1)) == 48


def test_radial_only_row_excludes_moore_graph(best_11):
    model = build_model(1, 1, radial_only=True)
    bad = model.violated(graph_to_assignment(model, MOORE_1_1))
    assert [row.family for row in bad] == ["h"]
    assert model.violated(graph_to_assignment(model, best_11.best_graph)) == []


def test_far_pair_violates_cover_row(best_11):
    # drop a non-tree arc from the optimum so some pair ends up 4+ steps apart
    g = best_11.best_graph
    tree = moore_tree(1, 1).graph
    arc = max(g.arcs - tree.arcs)
    cut = MixedGraph(6, g.edges, g.arcs - {arc})
    assert max(max(row) for row in distances(cut).rows) > 3
    model = build_model(1, 1)
    fams = {row.family for row in model.violated(graph_to_assignment(model, cut))}
    assert {"c", "g"} <= fams


def test_assignment_errors():
    model = build_model(1, 1)
    base = graph_to_assignment(model, MOORE_1_1)
    a = dict(base, x_2_2=1)
    with pytest.raises(SelfLoop):
        assignment_to_graph(model, a)
    a = dict(base, x_0_3=1)
    with pytest.raises(AsymmetricEdge):
        assignment_to_graph(model, a)
    a = dict(base, x_0_3=1, x_3_0=1)  # 0 and 3 are not linked in MOORE_1_1
    assert not MOORE_1_1.has_link(0, 3) and not MOORE_1_1.has_link(3, 0)
    a["y_0_3"] = 1
    with pytest.raises(ConflictingPair):
        assignment_to_graph(model, a)
