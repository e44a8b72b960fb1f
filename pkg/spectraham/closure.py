"""
The k-closure C_k(G) and the bipartite closure cl_B(G).

Both closures run the same worklist: candidate non-edges are visited in
lexicographic (or reverse) order, a pair is joined when its degree sum reaches
the threshold, and the non-edges at either endpoint are queued again after
every join. The closed graph does not depend on the order; the trace does.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import List, Tuple, Union

from .errors import DomainError, NotBalanced
from .graph import BipartiteGraph, Edge, Graph

logger = logging.getLogger(__name__)

ORDERS = ("lex", "reverse")


@dataclass(frozen=True)
class ClosureResult:
    closed_graph: Union[Graph, BipartiteGraph]
    added_edges: List[Edge]
    parameter: int

    @property
    def threshold(self) -> int:
        """Degree sum at which a non-adjacent pair gets joined."""
        if isinstance(self.closed_graph, BipartiteGraph):
            return self.parameter + 1
        return self.parameter


def _seed(pairs: List[Edge], order: str) -> deque:
    if order not in ORDERS:
        raise ValueError(f"order must be one of {ORDERS}, got {order!r}")
    return deque(sorted(pairs, reverse=order == "reverse"))


def k_closure(g: Graph, k: int, order: str = "lex") -> ClosureResult:
    """
    Join non-adjacent pairs with d(u) + d(v) >= k until none is left.

    Args:
        g: input graph
        k: degree-sum threshold (k >= 0)
        order: "lex" or "reverse" processing of the candidate pairs

    Returns:
        ClosureResult with the closed graph and the joins in the order made
    """
    if k < 0:
        raise DomainError(f"closure threshold must be non-negative, got {k}")
    n = g.n
    rows = list(g.rows)
    degree = list(g.degrees)
    queue = _seed(g.non_edges(), order)
    queued = set(queue)
    added: List[Edge] = []

    while queue:
        u, v = queue.popleft()
        queued.discard((u, v))
        if rows[u] >> v & 1 or degree[u] + degree[v] < k:
            continue
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        degree[u] += 1
        degree[v] += 1
        added.append((u, v))

        fresh = []
        for end in (u, v):
            for w in range(n):
                if w == end or rows[end] >> w & 1:
                    continue
                pair = (min(end, w), max(end, w))
                if pair not in queued:
                    queued.add(pair)
                    fresh.append(pair)
        queue.extend(sorted(fresh, reverse=order == "reverse"))

    logger.debug("k-closure (k=%d): %d joins", k, len(added))
    return ClosureResult(Graph(n, tuple(rows)), added, k)


def bipartite_closure(b: BipartiteGraph, order: str = "lex") -> ClosureResult:
    """
    Join non-adjacent cross pairs with degree sum >= n + 1 in a balanced
    bipartite graph with parts of size n.

    added_edges holds (x index, y index) pairs.
    """
    if not b.is_balanced():
        raise NotBalanced(f"bipartite closure needs |X| = |Y|, got {b.x_size} and {b.y_size}")
    n = b.x_size
    rows = list(b.rows)
    x_degree = list(b.x_degrees)
    y_degree = list(b.y_degrees)
    missing = [(i, j) for i in range(n) for j in range(n) if not rows[i] >> j & 1]
    queue = _seed(missing, order)
    queued = set(queue)
    added: List[Tuple[int, int]] = []

    while queue:
        i, j = queue.popleft()
        queued.discard((i, j))
        if rows[i] >> j & 1 or x_degree[i] + y_degree[j] < n + 1:
            continue
        rows[i] |= 1 << j
        x_degree[i] += 1
        y_degree[j] += 1
        added.append((i, j))

        fresh = [(i, jj) for jj in range(n) if not rows[i] >> jj & 1]
        fresh += [(ii, j) for ii in range(n) if not rows[ii] >> j & 1]
        fresh = [pair for pair in fresh if pair not in queued]
        queued.update(fresh)
        queue.extend(sorted(fresh, reverse=order == "reverse"))

    logger.debug("bipartite closure (n=%d): %d joins", n, len(added))
    return ClosureResult(BipartiteGraph(n, n, tuple(rows)), added, n)
