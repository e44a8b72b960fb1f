import pytest

from spectraham.conditions import bipartite_edge_conditions, degree_sequence_hc, ore_hamilton_connected
from spectraham.errors import DomainError, HypothesisNotMet
from spectraham.families import bnk, cnk
from spectraham.graph import BipartiteGraph, complete_graph, cycle_graph, path_graph


def test_ore_on_complete_graph():
    assert ore_hamilton_connected(complete_graph(5)).satisfied


def test_ore_reports_the_first_bad_pair():
    verdict = ore_hamilton_connected(cycle_graph(5))
    assert not verdict.satisfied
    assert verdict.evidence == {"pair": [0, 2], "degree_sum": 4, "needed": 6}


def test_ore_needs_two_connectivity():
    verdict = ore_hamilton_connected(path_graph(4))
    assert not verdict.satisfied
    assert verdict.evidence["reason"] == "not 2-connected"


def test_small_orders_rejected():
    with pytest.raises(DomainError):
        ore_hamilton_connected(complete_graph(2))
    with pytest.raises(DomainError):
        degree_sequence_hc(complete_graph(2))


def test_degree_sequence():
    assert degree_sequence_hc(complete_graph(6)).satisfied
    verdict = degree_sequence_hc(cycle_graph(6))
    assert not verdict.satisfied
    assert verdict.evidence["k"] == 2


def test_balanced_edge_condition():
    verdict = bipartite_edge_conditions(BipartiteGraph.complete(5, 5), 2)
    assert verdict.satisfied
    assert verdict.branch == "balanced"
    assert (verdict.lhs, verdict.rhs) == (25, 19)


def test_extremal_graphs_sit_exactly_on_the_bound():
    balanced = bipartite_edge_conditions(bnk(5, 2), 2)
    assert not balanced.satisfied
    assert balanced.lhs == balanced.rhs == 19
    assert balanced.escape == "Bnk"

    nearly = bipartite_edge_conditions(cnk(5, 2), 2)
    assert not nearly.satisfied
    assert nearly.branch == "nearly_balanced"
    assert nearly.lhs == nearly.rhs == 14
    assert nearly.escape == "Cnk"


@pytest.mark.parametrize(
    "b, k",
    [
        (BipartiteGraph.complete(2, 4), 1),
        (BipartiteGraph.complete(3, 3), 2),
        (BipartiteGraph.complete(5, 5), 0),
        (bnk(5, 2), 3),
    ],
)
def test_edge_condition_hypotheses(b, k):
    with pytest.raises(HypothesisNotMet):
        bipartite_edge_conditions(b, k)
