from itertools import combinations
from math import inf

import pytest

from netspread import (
    DisconnectedTerminalsError,
    InfectionVector,
    StatisticSpec,
    avg_edges_within,
    build_graph,
    center_indicator,
    complete_graph,
    cycle_graph,
    edges_within,
    empty_graph,
    erdos_renyi,
    infection_from_infected,
    infection_radius,
    orbit_count,
    path_graph,
    star_graph,
    steiner_weight,
    substream,
    torus_grid,
)
from oracles import steiner_optimum


def iv_of(n, infected, censored=()):
    return infection_from_infected(n, infected, censored)


def test_edges_within_examples():
    g = cycle_graph(6)
    assert edges_within(g, iv_of(6, [0, 1, 2])) == 2
    assert edges_within(g, iv_of(6, [0, 2, 4])) == 0
    assert edges_within(g, iv_of(6, [0, 1], censored=[2])) == 1
    assert edges_within(complete_graph(5), iv_of(5, [1, 2, 4])) == 3
    assert edges_within(empty_graph(5), iv_of(5, [0, 1, 2])) == 0


def test_edges_within_censored_never_count():
    g = path_graph(4)
    # 1-1 edge counts; 1-* and *-* edges never do
    assert edges_within(g, InfectionVector((1, 1, 2, 2))) == 1
    assert edges_within(g, InfectionVector((1, 2, 2, 1))) == 0


def test_edges_within_size_mismatch():
    with pytest.raises(ValueError):
        edges_within(cycle_graph(4), iv_of(5, [0]))


def test_infection_radius_examples():
    g = cycle_graph(6)
    assert infection_radius(g, iv_of(6, [0, 3])) == 2
    assert infection_radius(g, iv_of(6, [0, 1])) == 1
    assert infection_radius(g, iv_of(6, [0])) == 0
    assert infection_radius(path_graph(7), iv_of(7, [0, 6])) == 3
    assert infection_radius(star_graph(7), iv_of(7, [1, 2, 3])) == 1


def test_infection_radius_center_may_be_any_vertex():
    # best center (vertex 1) is uninfected
    g = path_graph(3)
    assert infection_radius(g, iv_of(3, [0, 2])) == 1


def test_infection_radius_ignores_censored():
    g = path_graph(5)
    assert infection_radius(g, iv_of(5, [0, 1], censored=[4])) == 1


def test_infection_radius_disconnected_is_inf():
    g = build_graph(4, [(0, 1), (2, 3)])
    assert infection_radius(g, iv_of(4, [0, 2])) == inf
    assert infection_radius(g, iv_of(4, [0, 1])) == 1


def test_infection_radius_needs_infected():
    with pytest.raises(ValueError):
        infection_radius(cycle_graph(4), InfectionVector((0, 0, 0, 0)))


def test_infection_radius_large_graph_bfs_fallback():
    # same answer through the per-vertex BFS path as through the cached matrix
    g = torus_grid((4, 5))
    iv = iv_of(g.n, [0, 7, 13])
    from netspread import stats as stats_mod

    via_matrix = infection_radius(g, iv)
    old = stats_mod._DMAT_LIMIT
    stats_mod._DMAT_LIMIT = 1
    try:
        via_bfs = infection_radius(g, iv)
    finally:
        stats_mod._DMAT_LIMIT = old
    assert via_matrix == via_bfs


def test_center_indicator():
    assert center_indicator(iv_of(5, [0, 2]), 0) == 1
    assert center_indicator(iv_of(5, [0, 2]), 1) == 0
    assert center_indicator(iv_of(5, [0], censored=[1]), 1) == 0
    with pytest.raises(ValueError):
        center_indicator(iv_of(5, [0]), 5)


def test_orbit_count():
    iv = iv_of(6, [0, 1, 5], censored=[2])
    assert orbit_count(iv, {0, 5}) == 2
    assert orbit_count(iv, {2, 3}) == 0
    assert orbit_count(iv, range(6)) == 3
    with pytest.raises(ValueError):
        orbit_count(iv, {9})


def test_avg_edges_within():
    g = cycle_graph(5)
    ivs = [iv_of(5, [0, 1]), iv_of(5, [0, 2])]
    assert avg_edges_within(g, ivs) == 0.5
    with pytest.raises(ValueError):
        avg_edges_within(g, [])


def test_steiner_weight_simple_cases():
    g = path_graph(6)
    assert steiner_weight(g, iv_of(6, [2])) == 0
    assert steiner_weight(g, iv_of(6, [0, 5])) == 5
    assert steiner_weight(g, iv_of(6, [1, 3])) == 2
    star = star_graph(8)
    # leaves only connect through the hub
    assert steiner_weight(star, iv_of(8, [1, 2, 3])) == 3
    assert steiner_weight(star, iv_of(8, [0, 4])) == 1


def test_steiner_weight_cycle():
    g = cycle_graph(8)
    assert steiner_weight(g, iv_of(8, [0, 1, 2])) == 2
    # antipodal pair: either arc works, weight 4
    assert steiner_weight(g, iv_of(8, [0, 4])) == 4


def test_steiner_weight_disconnected():
    g = build_graph(5, [(0, 1), (2, 3), (3, 4)])
    with pytest.raises(DisconnectedTerminalsError):
        steiner_weight(g, iv_of(5, [0, 2]))


def test_steiner_weight_needs_infected():
    with pytest.raises(ValueError):
        steiner_weight(cycle_graph(4), InfectionVector((0, 0, 2, 0)))


def test_steiner_weight_within_factor_two_of_optimum():
    # every terminal set on a few small graphs: exact lower bound and
    # the approximation guarantee OPT <= T <= 2*OPT
    graphs = [
        cycle_graph(7),
        path_graph(7),
        star_graph(7),
        complete_graph(6),
        torus_grid((3, 3)),
        erdos_renyi(7, 0.5, 11),
    ]
    for g in graphs:
        if not all(
            steiner_is_defined(g, terms) for terms in combinations(range(g.n), 2)
        ):
            continue
        for k in (2, 3, 4):
            for terms in combinations(range(g.n), k):
                iv = iv_of(g.n, terms)
                try:
                    got = steiner_weight(g, iv)
                except DisconnectedTerminalsError:
                    continue
                opt = steiner_optimum(g, terms)
                assert opt <= got <= 2 * opt


def steiner_is_defined(g, terms):
    try:
        steiner_weight(g, iv_of(g.n, terms))
        return True
    except DisconnectedTerminalsError:
        return False


def test_statistic_spec_names_and_tails():
    g = cycle_graph(6)
    w = StatisticSpec.edges_within(g)
    r = StatisticSpec.infection_radius(g)
    t = StatisticSpec.steiner_weight(g)
    c = StatisticSpec.center_indicator(0)
    o = StatisticSpec.orbit_count({0, 5})
    assert [s.name for s in (w, r, t, c, o)] == ["W", "R", "T", "C", "orbit"]
    assert [s.tail for s in (w, r, t, c, o)] == [
        "upper",
        "lower",
        "lower",
        "upper",
        "upper",
    ]


def test_statistic_spec_evaluate_and_score():
    g = cycle_graph(6)
    iv = iv_of(6, [0, 1, 3])
    w = StatisticSpec.edges_within(g)
    assert w.evaluate(iv) == 1
    assert w.score(iv) == 1.0
    r = StatisticSpec.infection_radius(g)
    assert r.evaluate(iv) == 2
    # lower-tail statistics flip sign so larger score = more clustered
    assert r.score(iv) == -2.0
    t = StatisticSpec.steiner_weight(g)
    assert t.score(iv) == -float(t.evaluate(iv))


def test_statistic_spec_validation():
    with pytest.raises(ValueError):
        StatisticSpec(kind="edges_within")
    with pytest.raises(ValueError):
        StatisticSpec(kind="center_indicator")
    with pytest.raises(ValueError):
        StatisticSpec(kind="orbit_count")
    with pytest.raises(ValueError):
        StatisticSpec(kind="nonsense", graph=cycle_graph(4))
