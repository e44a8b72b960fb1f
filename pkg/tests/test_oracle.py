import pytest
from hypothesis import given, settings

from spectraham.errors import DomainError, EmptyGraph, InvalidVertex, TooLarge
from spectraham.families import bnk, cnk, sample_regular_hc
from spectraham.graph import (
    Graph,
    add_cone,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    embed_bipartite,
    empty_graph,
    path_graph,
)
from spectraham.oracle import (
    HAMILTON_CONNECTED,
    HAMILTONIAN,
    TRACEABLE,
    TRACEABLE_FROM_EVERY_VERTEX,
    HamiltonOracle,
    HamProperty,
    PropertyTag,
    backtracking_path,
    check_property,
    ham_path_between,
    traceable_from,
    validate_witness,
)

from strategies import graphs


@pytest.mark.parametrize("n", range(3, 10))
def test_complete_graphs_have_every_property(n):
    g = complete_graph(n)
    for prop in (HAMILTONIAN, TRACEABLE, HAMILTON_CONNECTED, TRACEABLE_FROM_EVERY_VERTEX):
        assert check_property(g, prop).holds


@pytest.mark.parametrize("n", range(3, 10))
def test_paths(n):
    g = path_graph(n)
    assert not check_property(g, HAMILTONIAN).holds
    answer = check_property(g, TRACEABLE)
    assert answer.holds and validate_witness(g, answer.witness)
    assert check_property(g, traceable_from(0)).holds
    assert not check_property(g, traceable_from(1)).holds
    assert not check_property(g, HAMILTON_CONNECTED).holds


def test_cycle_witness_closes():
    g = cycle_graph(7)
    answer = check_property(g, HAMILTONIAN)
    assert answer.holds
    assert validate_witness(g, answer.witness, cycle=True)


@pytest.mark.parametrize("n, k", [(n, k) for n in range(2, 7) for k in range(1, n // 2 + 1)])
def test_extremal_bipartite_patterns_fail(n, k):
    assert not check_property(embed_bipartite(bnk(n, k)), HAMILTONIAN).holds
    c = embed_bipartite(cnk(n, k))
    assert c.n <= 12
    assert not check_property(c, TRACEABLE).holds


def test_k4_minus_an_edge_is_hamiltonian_but_not_hamilton_connected():
    g = complete_graph(4).remove_edge(0, 1)
    assert check_property(g, HAMILTONIAN).holds
    answer = check_property(g, HAMILTON_CONNECTED)
    assert not answer.holds
    assert len(answer.witness) == 2
    # the failing pair really has no Hamiltonian path
    assert backtracking_path(g, *answer.witness) is None


def test_balanced_complete_bipartite_short_circuit():
    g = complete_bipartite(3, 3)
    answer = check_property(g, HAMILTON_CONNECTED)
    assert not answer.holds
    assert answer.reason.startswith("balanced bipartite")
    assert check_property(g, HAMILTONIAN).holds


def test_unbalanced_bipartite_is_untraceable():
    answer = check_property(complete_bipartite(2, 4), TRACEABLE)
    assert not answer.holds
    assert answer.reason.startswith("bipartite")


def test_disconnected():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert check_property(g, TRACEABLE).reason == "disconnected"
    answer = check_property(g, TRACEABLE_FROM_EVERY_VERTEX)
    assert not answer.holds and answer.witness == [0]
    assert check_property(g, HAMILTON_CONNECTED).witness == [0, 2]


def test_traceable_from_every_vertex_names_a_bad_vertex():
    # star K_{1,2} = P3: the centre starts no Hamiltonian path
    answer = check_property(path_graph(3), TRACEABLE_FROM_EVERY_VERTEX)
    assert not answer.holds
    assert answer.witness == [1]


def test_path_between():
    g = cycle_graph(5)
    answer = ham_path_between(g, 0, 1)
    assert answer.holds
    assert answer.witness[0] == 0 and answer.witness[-1] == 1
    assert validate_witness(g, answer.witness)
    with pytest.raises(DomainError):
        ham_path_between(g, 2, 2)
    with pytest.raises(InvalidVertex):
        ham_path_between(g, 0, 9)


def test_small_orders():
    assert check_property(empty_graph(1), TRACEABLE).witness == [0]
    with pytest.raises(DomainError):
        check_property(complete_graph(2), HAMILTONIAN)
    with pytest.raises(EmptyGraph):
        check_property(empty_graph(0), TRACEABLE)


def test_cap():
    oracle = HamiltonOracle(cap=6)
    with pytest.raises(TooLarge) as info:
        oracle.check(complete_graph(7), HAMILTONIAN)
    assert info.value.order == 7 and info.value.cap == 6


@settings(max_examples=80, deadline=None)
@given(graphs(min_n=1, max_n=8))
def test_dp_agrees_with_backtracking(g):
    oracle = HamiltonOracle()
    assert oracle.traceable(g).holds == (backtracking_path(g) is not None)
    for v in range(g.n):
        answer = oracle.traceable_from(g, v)
        assert answer.holds == (backtracking_path(g, start=v) is not None)
        if answer.holds:
            assert answer.witness[0] == v
            assert validate_witness(g, answer.witness)
    if g.n >= 3:
        hc = oracle.hamilton_connected(g).holds
        brute = all(backtracking_path(g, u, v) is not None for u in range(g.n) for v in range(u + 1, g.n))
        assert hc == brute


def test_regular_samples_are_hamilton_connected():
    for g in sample_regular_hc(3, 4, seed=7):
        assert g.n == 6 and g.is_regular()
        assert check_property(g, HAMILTON_CONNECTED).holds


@pytest.mark.parametrize(
    "text, expected",
    [
        ("Traceable", TRACEABLE),
        (" HamiltonConnected ", HAMILTON_CONNECTED),
        ("TraceableFrom(3)", traceable_from(3)),
    ],
)
def test_property_parse(text, expected):
    prop = HamProperty.parse(text)
    assert prop == expected
    assert HamProperty.parse(str(prop)) == prop


def test_property_validation():
    with pytest.raises(DomainError):
        HamProperty(PropertyTag.TRACEABLE_FROM)
    with pytest.raises(DomainError):
        HamProperty(PropertyTag.HAMILTONIAN, 2)
    with pytest.raises(ValueError):
        HamProperty.parse("Eulerian")


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=1, max_n=7))
def test_traceable_from_every_vertex_iff_cone_is_hamilton_connected(g):
    traceable = check_property(g, TRACEABLE_FROM_EVERY_VERTEX).holds
    assert traceable == check_property(add_cone(g), HAMILTON_CONNECTED).holds
