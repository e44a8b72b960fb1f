import pytest

from spectraham.formats import write_graph6, write_sidecar
from spectraham.graph import complete_graph, embed_bipartite


@pytest.fixture
def graph_file(tmp_path):
    """Write a graph (and its part sidecar, if any) to a .g6 file."""

    def write(g, name="input.g6", x_size=None):
        path = tmp_path / name
        path.write_text(write_graph6(g) + "\n")
        if x_size is not None:
            write_sidecar(path, x_size)
        return path

    return write


@pytest.fixture
def k9_file(graph_file):
    return graph_file(complete_graph(9), "k9.g6")


@pytest.fixture
def bipartite_file(graph_file):
    def write(b, name="bipartite.g6"):
        return graph_file(embed_bipartite(b), name, x_size=b.x_size)

    return write
