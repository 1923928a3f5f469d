import math

import numpy as np
import pytest

from netspread import (
    Graph,
    ParseError,
    bfs_distances,
    build_graph,
    complete_graph,
    correlated_pair,
    cycle_graph,
    eccentricity,
    empty_graph,
    erdos_renyi,
    from_spec,
    generate,
    is_connected,
    load_edge_list,
    path_graph,
    star_graph,
    torus_grid,
    two_block,
)
from netspread.graphs import expected_edge_count


@pytest.mark.parametrize(
    "kind,n,count",
    [
        ("empty", 7, 0),
        ("complete", 6, 15),
        ("star", 9, 8),
        ("cycle", 5, 5),
        ("path", 8, 7),
    ],
)
def test_family_edge_counts(kind, n, count):
    g = generate(kind, n)
    assert g.num_edges == count
    assert expected_edge_count(kind, n) == count


def test_torus_edge_count_and_regularity():
    g = torus_grid([3, 4])
    assert g.n == 12
    assert g.num_edges == 12 * 2  # one cycle per axis
    assert set(g.degrees) == {4}
    assert expected_edge_count("torus", 12, dims=[3, 4]) == 24


def test_torus_rejects_small_dims():
    with pytest.raises(ValueError):
        torus_grid([2, 5])


def test_torus_3d():
    g = torus_grid([3, 3, 3])
    assert g.n == 27
    assert set(g.degrees) == {6}
    assert is_connected(g)


def test_build_graph_normalizes():
    g = build_graph(4, [(2, 1), (1, 2), (0, 3)])
    assert g.edges == ((0, 3), (1, 2))


def test_build_graph_rejects_self_loop_and_range():
    with pytest.raises(ValueError):
        build_graph(3, [(1, 1)])
    with pytest.raises(ValueError):
        build_graph(3, [(0, 3)])


def test_graph_is_immutable():
    g = cycle_graph(4)
    with pytest.raises(AttributeError):
        g.n = 5


def test_equality_ignores_labels():
    a = build_graph(3, [(0, 1)], labels=["x", "y", "z"])
    b = build_graph(3, [(0, 1)])
    assert a == b
    assert hash(a) == hash(b)


def test_adjacency_and_degrees():
    g = star_graph(5)
    assert g.neighbors(0) == (1, 2, 3, 4)
    assert g.degrees == (4, 1, 1, 1, 1)
    assert g.has_edge(0, 3)
    assert not g.has_edge(1, 2)


def test_bfs_distances_path():
    g = path_graph(5)
    assert bfs_distances(g, 0) == [0, 1, 2, 3, 4]


def test_bfs_unreachable_is_inf():
    g = build_graph(4, [(0, 1)])
    d = bfs_distances(g, 0)
    assert d[1] == 1
    assert d[2] == math.inf


def test_eccentricity_and_connectivity():
    assert eccentricity(cycle_graph(6), 0) == 3
    assert is_connected(cycle_graph(6))
    assert not is_connected(build_graph(3, [(0, 1)]))


def test_distance_matrix_matches_bfs():
    g = torus_grid([3, 3])
    mat = g.distance_matrix
    assert mat.shape == (9, 9)
    assert np.array_equal(mat[4], bfs_distances(g, 4))
    assert np.array_equal(mat, mat.T)
    assert np.all(np.diag(mat) == 0)


def test_load_edge_list_basic():
    text = "# contact list\na b\nb c\n\na c\n"
    g = load_edge_list(text)
    assert g.n == 3
    assert g.labels == ("a", "b", "c")
    assert g.num_edges == 3


def test_load_edge_list_collapses_duplicates():
    g = load_edge_list("a b\nb a\na b\n")
    assert g.num_edges == 1


def test_load_edge_list_errors_carry_line_numbers():
    with pytest.raises(ParseError, match="line 2"):
        load_edge_list("a b\na b c\n")
    with pytest.raises(ParseError, match="line 1"):
        load_edge_list("a a\n")
    with pytest.raises(ParseError):
        load_edge_list("# only a comment\n")


def test_label_lookup():
    g = load_edge_list("u v\nv w\n")
    assert g.index_of("w") == 2
    assert g.label_of(0) == "u"
    with pytest.raises(KeyError):
        g.index_of("nope")


def test_from_spec_families():
    assert from_spec("cycle:10") == cycle_graph(10)
    assert from_spec("torus:3x3") == torus_grid([3, 3])
    assert from_spec("empty:4") == empty_graph(4)


def test_from_spec_file(tmp_path):
    p = tmp_path / "edges.txt"
    p.write_text("a b\nb c\n")
    g = from_spec(f"file:{p}")
    assert g.n == 3


def test_from_spec_bad_inputs():
    with pytest.raises(ParseError):
        from_spec("hexagon:4")
    with pytest.raises(ParseError):
        from_spec("cycle:notanumber")
    with pytest.raises(ParseError):
        from_spec("file:/no/such/file")


def test_erdos_renyi_extremes_and_determinism():
    assert erdos_renyi(20, 0.0, 1).num_edges == 0
    assert erdos_renyi(12, 1.0, 1) == complete_graph(12)
    assert erdos_renyi(30, 0.4, 9) == erdos_renyi(30, 0.4, 9)
    assert erdos_renyi(30, 0.4, 9) != erdos_renyi(30, 0.4, 10)


def test_erdos_renyi_edge_count_is_plausible():
    # mean p*C(n,2) = 522, sd ~ 19; a 5-sigma band is a safe deterministic check
    g = erdos_renyi(60, 0.295, 123)
    mean = 0.295 * math.comb(60, 2)
    sd = math.sqrt(math.comb(60, 2) * 0.295 * 0.705)
    assert abs(g.num_edges - mean) < 5 * sd


def test_two_block_extremes():
    g = two_block(8, 1.0, 0.0, 3)
    within = [(u, v) for u, v in g.edges if (u < 4) == (v < 4)]
    assert len(within) == g.num_edges == 2 * math.comb(4, 2)


def test_correlated_pair_identical_at_gamma_one():
    a, b = correlated_pair(25, 0.3, 1.0, 11)
    assert a == b


def test_correlated_pair_disjoint_at_gamma_zero():
    a, b = correlated_pair(25, 0.5, 0.0, 4)
    assert not (set(a.edges) & set(b.edges))


def test_correlated_pair_rejects_invalid_gamma():
    with pytest.raises(ValueError):
        correlated_pair(10, 0.8, 0.1, 1)


def test_generate_dispatch():
    assert generate("er", 10, 0.5, 3) == erdos_renyi(10, 0.5, 3)
    with pytest.raises(ValueError):
        generate("mobius", 5)


def test_graph_needs_vertices():
    with pytest.raises(ValueError):
        Graph(n=0, edges=())
