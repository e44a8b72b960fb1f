"""
Non-spectral sufficient conditions: the Ore-type and degree-sequence tests
for Hamilton-connectedness, and the edge-count tests for balanced and nearly
balanced bipartite graphs.
"""

import logging
from typing import Any, Dict, Optional

from pydantic import BaseModel

from .errors import DomainError, HypothesisNotMet
from .graph import BipartiteGraph, Graph, graph_stats

logger = logging.getLogger(__name__)


class ConditionVerdict(BaseModel):
    condition_id: str
    satisfied: bool
    evidence: Optional[Dict[str, Any]] = None
    # bipartite edge conditions only
    branch: Optional[str] = None
    lhs: Optional[int] = None
    rhs: Optional[int] = None
    escape: Optional[str] = None


def ore_hamilton_connected(g: Graph) -> ConditionVerdict:
    """2-connected with d(u) + d(v) >= n + 1 for every non-adjacent pair."""
    n = g.n
    if n < 3:
        raise DomainError(f"Ore condition needs n >= 3, got {n}")
    if not graph_stats(g).two_connected:
        return ConditionVerdict(condition_id="ore", satisfied=False, evidence={"reason": "not 2-connected"})
    degrees = g.degrees
    for u, v in g.non_edges():
        if degrees[u] + degrees[v] < n + 1:
            return ConditionVerdict(
                condition_id="ore",
                satisfied=False,
                evidence={"pair": [u, v], "degree_sum": degrees[u] + degrees[v], "needed": n + 1},
            )
    return ConditionVerdict(condition_id="ore", satisfied=True)


def degree_sequence_hc(g: Graph) -> ConditionVerdict:
    """
    Satisfied iff no integer 2 <= k <= n/2 has d(v_{k-1}) <= k and
    d(v_{n-k}) <= n - k, reading the ascending degree sequence 1-based.
    """
    n = g.n
    if n < 3:
        raise DomainError(f"degree-sequence condition needs n >= 3, got {n}")
    stats = graph_stats(g)
    if not stats.two_connected:
        logger.warning("degree-sequence condition evaluated on a graph that is not 2-connected")
    d = stats.degree_sequence
    for k in range(2, n // 2 + 1):
        if d[k - 2] <= k and d[n - k - 1] <= n - k:
            return ConditionVerdict(
                condition_id="degree_sequence",
                satisfied=False,
                evidence={"k": k, "d_k_minus_1": d[k - 2], "d_n_minus_k": d[n - k - 1]},
            )
    return ConditionVerdict(condition_id="degree_sequence", satisfied=True)


def bipartite_edge_conditions(b: BipartiteGraph, k: int) -> ConditionVerdict:
    """
    Edge-count tests for bipartite graphs with minimum degree >= k.

    Balanced (|X| = |Y| = n): e > n(n-k-1) + (k+1)^2 means Hamiltonian unless
    G is a subgraph of B_n^k. Nearly balanced (|X| = |Y| - 1 = n - 1):
    e > n(n-k-2) + (k+1)^2 means traceable unless G is a subgraph of C_n^k.

    Raises:
        HypothesisNotMet: parts not (nearly) balanced, k < 1, delta < k or
            n < 2k + 1
    """
    if b.is_balanced():
        branch, n, escape = "balanced", b.x_size, "Bnk"
        rhs = n * (n - k - 1) + (k + 1) ** 2
    elif b.is_nearly_balanced():
        branch, n, escape = "nearly_balanced", b.y_size, "Cnk"
        rhs = n * (n - k - 2) + (k + 1) ** 2
    else:
        raise HypothesisNotMet(f"parts {b.x_size} and {b.y_size} are neither balanced nor nearly balanced")
    if k < 1:
        raise HypothesisNotMet(f"k must be >= 1, got {k}")
    if b.min_degree < k:
        raise HypothesisNotMet(f"minimum degree {b.min_degree} < k = {k}")
    if n < 2 * k + 1:
        raise HypothesisNotMet(f"n = {n} < 2k + 1 = {2 * k + 1}")

    lhs = b.edge_count
    satisfied = lhs > rhs
    return ConditionVerdict(
        condition_id=f"bipartite_edges_{branch}",
        satisfied=satisfied,
        evidence=None if satisfied else {"edge_count": lhs, "bound": rhs},
        branch=branch,
        lhs=lhs,
        rhs=rhs,
        escape=escape,
    )
