import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from spectraham.errors import ConvergenceFailure, DomainError, EmptyGraph
from spectraham.graph import (
    BipartiteGraph,
    add_cone,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    disjoint_union,
    embed_bipartite,
    empty_graph,
    path_graph,
)
from spectraham.spectral import (
    Comparison,
    SpectralKind,
    SpectralMethod,
    adjacency_rayleigh,
    adjacency_spectral_radius,
    bounds_report,
    compare_with_slack,
    cone_lower_bound,
    hong_shu_f,
    q_spectral_radius,
    signless_rayleigh,
)

from strategies import bipartite_graphs, connected_graphs, graphs


def test_complete_graph_radius():
    for n in range(1, 31):
        assert abs(adjacency_spectral_radius(complete_graph(n)).value - (n - 1)) < 1e-10


def test_complete_bipartite_radius():
    for n in range(2, 31):
        for k in range(1, n):
            mu = adjacency_spectral_radius(complete_bipartite(k, n - k)).value
            assert abs(mu - math.sqrt(k * (n - k))) < 1e-8


@pytest.mark.parametrize("a, b", [(1, 1), (2, 3), (4, 4), (3, 7)])
def test_signless_radius_of_complete_bipartite(a, b):
    assert q_spectral_radius(complete_bipartite(a, b)).value == pytest.approx(a + b, abs=1e-9)


@pytest.mark.parametrize("n", [2, 5, 9])
def test_signless_radius_of_complete_graph(n):
    result = q_spectral_radius(complete_graph(n))
    assert result.kind == SpectralKind.SIGNLESS_LAPLACIAN
    assert result.value == pytest.approx(2 * (n - 1), abs=1e-9)


def test_cycle_and_path():
    assert adjacency_spectral_radius(cycle_graph(7)).value == pytest.approx(2.0, abs=1e-10)
    assert adjacency_spectral_radius(path_graph(5)).value == pytest.approx(2 * math.cos(math.pi / 6), abs=1e-10)


def test_edgeless_graph_has_zero_radius():
    result = adjacency_spectral_radius(empty_graph(4))
    assert result.value == 0.0
    assert np.linalg.norm(result.vector) == pytest.approx(1.0)


def test_empty_graph_rejected():
    with pytest.raises(EmptyGraph):
        adjacency_spectral_radius(empty_graph(0))


def test_disconnected_graph_vector_lives_on_the_largest_component():
    g = disjoint_union(complete_graph(3), complete_graph(4))
    result = adjacency_spectral_radius(g)
    assert result.value == pytest.approx(3.0, abs=1e-10)
    assert result.vector[:3] == [0.0, 0.0, 0.0]
    assert all(x > 0 for x in result.vector[3:])


@settings(max_examples=60, deadline=None)
@given(connected_graphs(min_n=2, max_n=9))
def test_perron_vector_is_positive_and_attains_the_rayleigh_quotient(g):
    result = adjacency_spectral_radius(g)
    x = np.array(result.vector)
    assert (x > 0).all()
    assert adjacency_rayleigh(g, x) == pytest.approx(result.value, abs=1e-8)
    q = q_spectral_radius(g)
    assert signless_rayleigh(g, q.vector) == pytest.approx(q.value, abs=1e-8)


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=1, max_n=9))
def test_dense_and_power_iteration_agree(g):
    dense = adjacency_spectral_radius(g, method=SpectralMethod.DENSE)
    power = adjacency_spectral_radius(g, method=SpectralMethod.SHIFTED_POWER_ITERATION, tol=1e-9)
    assert dense.value == pytest.approx(power.value, abs=1e-7)
    for kind in (SpectralMethod.DENSE, SpectralMethod.SHIFTED_POWER_ITERATION):
        assert q_spectral_radius(g, method=kind, tol=1e-9).value == pytest.approx(
            q_spectral_radius(g).value, abs=1e-7
        )


def test_power_iteration_on_bipartite_graph_does_not_oscillate():
    result = adjacency_spectral_radius(complete_bipartite(3, 5), method=SpectralMethod.SHIFTED_POWER_ITERATION)
    assert result.value == pytest.approx(math.sqrt(15), abs=1e-8)


def test_convergence_failure_carries_the_estimate():
    with pytest.raises(ConvergenceFailure) as info:
        adjacency_spectral_radius(
            path_graph(6), tol=-1.0, method=SpectralMethod.SHIFTED_POWER_ITERATION, max_iterations=5
        )
    assert info.value.iterations == 5
    assert info.value.estimate > 0


@settings(max_examples=60, deadline=None)
@given(connected_graphs(min_n=3, max_n=9), st.data())
def test_adding_an_edge_raises_both_radii(g, data):
    assume(g.non_edges())
    u, v = data.draw(st.sampled_from(g.non_edges()))
    h = g.add_edge(u, v)
    assert adjacency_spectral_radius(h).value > adjacency_spectral_radius(g).value + 1e-9
    assert q_spectral_radius(h).value > q_spectral_radius(g).value + 1e-9


@settings(max_examples=80, deadline=None)
@given(graphs(min_n=2, max_n=10))
def test_degree_bounds_sandwich_mu(g):
    mu = adjacency_spectral_radius(g).value
    report = bounds_report(g, mu=mu)
    assert mu <= report.hong_shu_upper + 1e-9
    if g.edge_count:
        q = q_spectral_radius(g).value
        assert q <= report.q_degree_upper + 1e-9


@settings(max_examples=80, deadline=None)
@given(connected_graphs(min_n=2, max_n=10))
def test_min_edge_geometric_lower_bound(g):
    mu = adjacency_spectral_radius(g).value
    assert bounds_report(g).min_edge_geometric_lower <= mu + 1e-9


@settings(max_examples=80, deadline=None)
@given(bipartite_graphs(min_side=1, max_side=6))
def test_bipartite_edge_bounds(b):
    g = embed_bipartite(b)
    report = bounds_report(g, x_size=b.x_size)
    assert adjacency_spectral_radius(g).value <= report.sqrt_edges_upper + 1e-9
    assert q_spectral_radius(g).value <= report.q_edge_part_upper + 1e-9


@settings(max_examples=80, deadline=None)
@given(graphs(min_n=2, max_n=9))
def test_cone_strictly_beats_the_lower_bound(g):
    mu = adjacency_spectral_radius(g).value
    coned = adjacency_spectral_radius(add_cone(g)).value
    assert coned > cone_lower_bound(mu, g.n)


def test_hong_shu_f_is_exact_for_regular_graphs():
    # f(delta) = mu for regular graphs
    for g in (complete_graph(6), cycle_graph(8), embed_bipartite(BipartiteGraph.complete(3, 3))):
        assert hong_shu_f(g.min_degree, g.n, g.edge_count) == pytest.approx(adjacency_spectral_radius(g).value)


def test_hong_shu_f_decreases():
    n, m = 10, 20
    values = [hong_shu_f(x, n, m) for x in range(0, 4)]
    assert all(a > b for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("x, n, m", [(1, 4, 7), (5, 5, 3), (4, 5, 2)])
def test_hong_shu_f_domain(x, n, m):
    with pytest.raises(DomainError):
        hong_shu_f(x, n, m)


def test_cone_bound_domain():
    with pytest.raises(DomainError):
        cone_lower_bound(0.0, 1)


def test_bounds_report_of_single_vertex():
    report = bounds_report(empty_graph(1))
    assert report.hong_shu_upper == 0.0
    assert report.min_edge_geometric_lower is None
    assert report.cone_lower is None


@pytest.mark.parametrize(
    "value, threshold, op, expected",
    [
        (3.0, 2.0, ">=", Comparison.HOLDS),
        (1.0, 2.0, ">=", Comparison.FAILS),
        (2.0, 2.0, ">", Comparison.BOUNDARY),
        (2.0 + 1e-9, 2.0, "<=", Comparison.BOUNDARY),
        (1.0, 2.0, "<", Comparison.HOLDS),
        (2.5, 2.0, "<=", Comparison.FAILS),
    ],
)
def test_compare_with_slack(value, threshold, op, expected):
    assert compare_with_slack(value, threshold, op, epsilon=1e-6) == expected


def test_compare_with_slack_rejects_unknown_operator():
    with pytest.raises(ValueError):
        compare_with_slack(1.0, 2.0, "==")
