"""
Graph values and the graph algebra used throughout the package.

Adjacency is stored as one integer bitset per vertex and vertex identity is
positional (0..n-1). Values are immutable: every operation below returns a new
graph.
"""

from dataclasses import dataclass
from typing import Iterable, Iterator, List, Sequence, Tuple

import networkx as nx
import numpy as np
from pydantic import BaseModel

from .errors import EmptyGraph, InvalidEdge, InvalidVertex

Edge = Tuple[int, int]


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of mask, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _full(size: int) -> int:
    return (1 << size) - 1


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph of order n."""

    n: int
    rows: Tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or len(self.rows) != self.n:
            raise InvalidVertex(f"expected {self.n} adjacency rows, got {len(self.rows)}")
        for v, row in enumerate(self.rows):
            if row < 0 or row >> self.n:
                raise InvalidVertex(f"row {v} references a vertex outside 0..{self.n - 1}")
            if row >> v & 1:
                raise InvalidEdge(f"self-loop at vertex {v}")
            for u in iter_bits(row):
                if not self.rows[u] >> v & 1:
                    raise InvalidEdge(f"adjacency is not symmetric on ({v}, {u})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        if n < 0:
            raise InvalidVertex(f"negative order {n}")
        rows = [0] * n
        for edge in edges:
            u, v = int(edge[0]), int(edge[1])
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidVertex(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise InvalidEdge(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    # -- basic statistics -------------------------------------------------

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.rows[v].bit_count()

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(row.bit_count() for row in self.rows)

    @property
    def edge_count(self) -> int:
        return sum(self.degrees) // 2

    @property
    def min_degree(self) -> int:
        if self.n == 0:
            raise EmptyGraph("minimum degree of the empty graph")
        return min(self.degrees)

    @property
    def max_degree(self) -> int:
        if self.n == 0:
            raise EmptyGraph("maximum degree of the empty graph")
        return max(self.degrees)

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> List[int]:
        self._check_vertex(v)
        return list(iter_bits(self.rows[v]))

    def edges(self) -> List[Edge]:
        """Edges (u, v) with u < v in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in iter_bits(self.rows[u] >> (u + 1) << (u + 1))]

    def non_edges(self) -> List[Edge]:
        full = _full(self.n)
        out = []
        for u in range(self.n):
            missing = full & ~self.rows[u] & ~_full(u + 1)
            out.extend((u, v) for v in iter_bits(missing))
        return out

    def is_regular(self) -> bool:
        return len(set(self.degrees)) <= 1

    def components(self) -> List[List[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen = 0
        comps = []
        for v in range(self.n):
            if seen >> v & 1:
                continue
            comp = frontier = 1 << v
            while frontier:
                reach = 0
                for u in iter_bits(frontier):
                    reach |= self.rows[u]
                frontier = reach & ~comp
                comp |= frontier
            seen |= comp
            comps.append(list(iter_bits(comp)))
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    # -- derived graphs ---------------------------------------------------

    def add_edge(self, u: int, v: int) -> "Graph":
        if u == v:
            raise InvalidEdge(f"self-loop at vertex {u}")
        self._check_vertex(u)
        self._check_vertex(v)
        rows = list(self.rows)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph(self.n, tuple(rows))

    def remove_edge(self, u: int, v: int) -> "Graph":
        if not self.has_edge(u, v):
            raise InvalidEdge(f"({u}, {v}) is not an edge")
        rows = list(self.rows)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph(self.n, tuple(rows))

    def induced_subgraph(self, vertices: Sequence[int]) -> "Graph":
        """Subgraph induced by vertices, relabelled 0.. in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            self._check_vertex(v)
            row = 0
            for u in iter_bits(self.rows[v]):
                if u in index:
                    row |= 1 << index[u]
            rows.append(row)
        return Graph(len(rows), tuple(rows))

    def remove_vertex(self, v: int) -> "Graph":
        self._check_vertex(v)
        return self.induced_subgraph([u for u in range(self.n) if u != v])

    # -- matrices ---------------------------------------------------------

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.float64)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1.0
        return a

    def degree_matrix(self) -> np.ndarray:
        return np.diag(np.array(self.degrees, dtype=np.float64))

    def signless_laplacian(self) -> np.ndarray:
        return self.degree_matrix() + self.adjacency_matrix()

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise InvalidVertex(f"vertex {v} outside 0..{self.n - 1}")


@dataclass(frozen=True)
class BipartiteGraph:
    """
    Bipartite graph with fixed, ordered parts X and Y.

    rows[i] is the bitset (over Y indices) of the neighbours of x_i. Part order
    is significant: O_{2,3} and O_{3,2} are different values.
    """

    x_size: int
    y_size: int
    rows: Tuple[int, ...]

    def __post_init__(self):
        if self.x_size < 0 or self.y_size < 0 or len(self.rows) != self.x_size:
            raise InvalidVertex("bipartite rows do not match the part sizes")
        for i, row in enumerate(self.rows):
            if row < 0 or row >> self.y_size:
                raise InvalidVertex(f"x_{i} has a neighbour outside Y")

    @classmethod
    def from_edges(cls, x_size: int, y_size: int, edges: Iterable[Sequence[int]]) -> "BipartiteGraph":
        """Build from (x index, y index) pairs."""
        rows = [0] * x_size
        for edge in edges:
            i, j = int(edge[0]), int(edge[1])
            if not (0 <= i < x_size and 0 <= j < y_size):
                raise InvalidVertex(f"edge ({i}, {j}) outside the parts {x_size}x{y_size}")
            rows[i] |= 1 << j
        return cls(x_size, y_size, tuple(rows))

    @classmethod
    def complete(cls, x_size: int, y_size: int) -> "BipartiteGraph":
        return cls(x_size, y_size, (_full(y_size),) * x_size)

    @classmethod
    def empty(cls, x_size: int, y_size: int) -> "BipartiteGraph":
        return cls(x_size, y_size, (0,) * x_size)

    @classmethod
    def from_graph(cls, g: Graph, x_size: int) -> "BipartiteGraph":
        """Inverse of embed_bipartite: the first x_size vertices form X."""
        if not 0 <= x_size <= g.n:
            raise InvalidVertex(f"x_size {x_size} outside 0..{g.n}")
        x_mask = _full(x_size)
        rows = []
        for v in range(g.n):
            inside = g.rows[v] & x_mask if v < x_size else g.rows[v] & ~x_mask
            if inside:
                raise InvalidEdge(f"vertex {v} has a neighbour in its own part")
            if v < x_size:
                rows.append(g.rows[v] >> x_size)
        return cls(x_size, g.n - x_size, tuple(rows))

    @property
    def order(self) -> int:
        return self.x_size + self.y_size

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.rows)

    @property
    def y_rows(self) -> Tuple[int, ...]:
        """Neighbourhoods of the Y vertices as bitsets over X."""
        cols = [0] * self.y_size
        for i, row in enumerate(self.rows):
            for j in iter_bits(row):
                cols[j] |= 1 << i
        return tuple(cols)

    @property
    def x_degrees(self) -> Tuple[int, ...]:
        return tuple(row.bit_count() for row in self.rows)

    @property
    def y_degrees(self) -> Tuple[int, ...]:
        return tuple(col.bit_count() for col in self.y_rows)

    @property
    def min_degree(self) -> int:
        if self.order == 0:
            raise EmptyGraph("minimum degree of the empty graph")
        return min(self.x_degrees + self.y_degrees)

    def has_edge(self, i: int, j: int) -> bool:
        self._check_pair(i, j)
        return bool(self.rows[i] >> j & 1)

    def edges(self) -> List[Edge]:
        return [(i, j) for i in range(self.x_size) for j in iter_bits(self.rows[i])]

    def is_balanced(self) -> bool:
        return self.x_size == self.y_size

    def is_nearly_balanced(self) -> bool:
        return self.x_size == self.y_size - 1

    def is_semi_regular(self) -> bool:
        return len(set(self.x_degrees)) <= 1 and len(set(self.y_degrees)) <= 1

    def add_edge(self, i: int, j: int) -> "BipartiteGraph":
        self._check_pair(i, j)
        rows = list(self.rows)
        rows[i] |= 1 << j
        return BipartiteGraph(self.x_size, self.y_size, tuple(rows))

    def remove_edge(self, i: int, j: int) -> "BipartiteGraph":
        if not self.has_edge(i, j):
            raise InvalidEdge(f"(x_{i}, y_{j}) is not an edge")
        rows = list(self.rows)
        rows[i] &= ~(1 << j)
        return BipartiteGraph(self.x_size, self.y_size, tuple(rows))

    def remove_x_vertex(self, i: int) -> "BipartiteGraph":
        if not 0 <= i < self.x_size:
            raise InvalidVertex(f"x_{i} outside X")
        rows = self.rows[:i] + self.rows[i + 1:]
        return BipartiteGraph(self.x_size - 1, self.y_size, rows)

    def remove_y_vertex(self, j: int) -> "BipartiteGraph":
        if not 0 <= j < self.y_size:
            raise InvalidVertex(f"y_{j} outside Y")
        low = _full(j)
        rows = tuple((row & low) | (row >> (j + 1) << j) for row in self.rows)
        return BipartiteGraph(self.x_size, self.y_size - 1, rows)

    def swapped(self) -> "BipartiteGraph":
        """Same edges with the roles of X and Y exchanged."""
        return BipartiteGraph(self.y_size, self.x_size, self.y_rows)

    def _check_pair(self, i: int, j: int) -> None:
        if not 0 <= i < self.x_size:
            raise InvalidVertex(f"x_{i} outside X")
        if not 0 <= j < self.y_size:
            raise InvalidVertex(f"y_{j} outside Y")

    def to_networkx(self) -> nx.Graph:
        """Embedded graph with a 'part' node attribute (0 for X, 1 for Y)."""
        g = embed_bipartite(self).to_networkx()
        nx.set_node_attributes(g, {v: int(v >= self.x_size) for v in g.nodes}, "part")
        return g

    def embed(self) -> Graph:
        return embed_bipartite(self)


class GraphStats(BaseModel):
    degree_sequence: List[int]
    min_degree: int
    edge_count: int
    connected: bool
    two_connected: bool


# -- constructors -------------------------------------------------------------


def from_edges(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    return Graph.from_edges(n, edges)


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = _full(n)
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(v, v + 1) for v in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidEdge(f"a cycle needs at least 3 vertices, got {n}")
    return Graph.from_edges(n, [(v, (v + 1) % n) for v in range(n)])


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b} as a plain graph: O_a joined with O_b."""
    return join(empty_graph(a), empty_graph(b))


# -- algebra ------------------------------------------------------------------


def complement(g: Graph) -> Graph:
    full = _full(g.n)
    return Graph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.rows)))


def join(g1: Graph, g2: Graph) -> Graph:
    """G1 v G2: disjoint union plus every edge between the two vertex sets."""
    n1, n2 = g1.n, g2.n
    rows = [row | (_full(n2) << n1) for row in g1.rows]
    rows += [(row << n1) | _full(n1) for row in g2.rows]
    return Graph(n1 + n2, tuple(rows))


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    """G1 + G2."""
    return Graph(g1.n + g2.n, g1.rows + tuple(row << g1.n for row in g2.rows))


def add_cone(g: Graph) -> Graph:
    """G v K_1, with the cone vertex first (label 0)."""
    return join(complete_graph(1), g)


def quasi_complement(b: BipartiteGraph) -> BipartiteGraph:
    full = _full(b.y_size)
    return BipartiteGraph(b.x_size, b.y_size, tuple(full & ~row for row in b.rows))


def bipartite_sqcup(b1: BipartiteGraph, b2: BipartiteGraph) -> BipartiteGraph:
    """
    B1 u B2 plus all X1-Y2 and Y1-X2 edges.

    Parts of the result are (X1 then X2, Y1 then Y2).
    """
    y1 = b1.y_size
    rows = [row | (_full(b2.y_size) << y1) for row in b1.rows]
    rows += [_full(y1) | (row << y1) for row in b2.rows]
    return BipartiteGraph(b1.x_size + b2.x_size, y1 + b2.y_size, tuple(rows))


def embed_bipartite(b: BipartiteGraph) -> Graph:
    """Plain graph of order |X|+|Y|; X vertices come first."""
    rows = [row << b.x_size for row in b.rows]
    rows += list(b.y_rows)
    return Graph(b.order, tuple(rows))


def add_cone_to_part(b: BipartiteGraph, part: str = "x") -> BipartiteGraph:
    """
    Append one vertex to `part`, adjacent to every vertex of the other part.

    Coning X turns a nearly balanced graph (|X| = |Y| - 1) into a balanced one.
    """
    if part == "x":
        return BipartiteGraph(b.x_size + 1, b.y_size, b.rows + (_full(b.y_size),))
    if part == "y":
        rows = tuple(row | (1 << b.y_size) for row in b.rows)
        return BipartiteGraph(b.x_size, b.y_size + 1, rows)
    raise ValueError(f"part must be 'x' or 'y', got {part!r}")


def graph_stats(g: Graph) -> GraphStats:
    if g.n == 0:
        raise EmptyGraph("graph_stats needs at least one vertex")
    degrees = sorted(g.degrees)
    connected = g.is_connected()
    two_connected = False
    if connected and g.n > 2:
        two_connected = not any(True for _ in nx.articulation_points(g.to_networkx()))
    return GraphStats(
        degree_sequence=degrees,
        min_degree=degrees[0],
        edge_count=sum(degrees) // 2,
        connected=connected,
        two_connected=two_connected,
    )
