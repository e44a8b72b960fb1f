"""
Exact Hamiltonicity decisions.

The core is a Held-Karp style DP over vertex subsets: table[mask] is the
bitset of vertices v such that some Hamiltonian path of G[mask] ends at v
(optionally starting at a fixed vertex). Subsets are processed one popcount
layer at a time with numpy, so each layer is a handful of vectorised gathers.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from pydantic import BaseModel

from .config import settings
from .errors import DomainError, EmptyGraph, InvalidVertex, TooLarge
from .graph import Graph, iter_bits

logger = logging.getLogger(__name__)

# uint32 endpoint bitsets
HARD_CAP = 32


class PropertyTag(str, Enum):
    HAMILTONIAN = "Hamiltonian"
    TRACEABLE = "Traceable"
    HAMILTON_CONNECTED = "HamiltonConnected"
    TRACEABLE_FROM_EVERY_VERTEX = "TraceableFromEveryVertex"
    TRACEABLE_FROM = "TraceableFrom"


@dataclass(frozen=True)
class HamProperty:
    tag: PropertyTag
    vertex: Optional[int] = None

    def __post_init__(self):
        if (self.tag == PropertyTag.TRACEABLE_FROM) != (self.vertex is not None):
            raise DomainError("TraceableFrom needs a vertex; other properties take none")

    @classmethod
    def parse(cls, text: str) -> "HamProperty":
        """Accept 'Traceable', 'HamiltonConnected', 'TraceableFrom(3)', ..."""
        text = text.strip()
        if text.startswith("TraceableFrom(") and text.endswith(")"):
            return cls(PropertyTag.TRACEABLE_FROM, int(text[len("TraceableFrom("):-1]))
        return cls(PropertyTag(text))

    def __str__(self):
        if self.tag == PropertyTag.TRACEABLE_FROM:
            return f"TraceableFrom({self.vertex})"
        return self.tag.value


HAMILTONIAN = HamProperty(PropertyTag.HAMILTONIAN)
TRACEABLE = HamProperty(PropertyTag.TRACEABLE)
HAMILTON_CONNECTED = HamProperty(PropertyTag.HAMILTON_CONNECTED)
TRACEABLE_FROM_EVERY_VERTEX = HamProperty(PropertyTag.TRACEABLE_FROM_EVERY_VERTEX)


def traceable_from(v: int) -> HamProperty:
    return HamProperty(PropertyTag.TRACEABLE_FROM, v)


class OracleAnswer(BaseModel):
    holds: bool
    witness: Optional[List[int]] = None
    reason: Optional[str] = None


@lru_cache(maxsize=4)
def _layers(n: int) -> Tuple[np.ndarray, ...]:
    """All n-bit masks grouped by popcount."""
    masks = np.arange(1 << n, dtype=np.uint32)
    counts = np.bitwise_count(masks)
    order = np.argsort(counts, kind="stable")
    bounds = np.searchsorted(counts[order], np.arange(n + 2))
    return tuple(masks[order[bounds[s]:bounds[s + 1]]] for s in range(n + 1))


def _endpoint_table(g: Graph, start: Optional[int] = None) -> np.ndarray:
    n = g.n
    table = np.zeros(1 << n, dtype=np.uint32)
    if start is None:
        for v in range(n):
            table[1 << v] = 1 << v
    else:
        table[1 << start] = 1 << start
    rows = [np.uint32(row) for row in g.rows]
    bits = [np.uint32(1 << v) for v in range(n)]
    layers = _layers(n)

    for size in range(2, n + 1):
        layer = layers[size]
        if start is not None:
            layer = layer[(layer & bits[start]) != 0]
        for v in range(n):
            if v == start:
                continue
            with_v = layer[(layer & bits[v]) != 0]
            hit = (table[with_v ^ bits[v]] & rows[v]) != 0
            table[with_v[hit]] |= bits[v]
    return table


def _walk_back(table: np.ndarray, g: Graph, end: int, mask: int) -> List[int]:
    """Recover the path behind table[mask] bit `end`, listed from its start."""
    path = [end]
    cur = end
    while mask & (mask - 1):
        mask ^= 1 << cur
        candidates = int(table[mask]) & g.rows[cur]
        cur = (candidates & -candidates).bit_length() - 1
        path.append(cur)
    path.reverse()
    return path


def validate_witness(g: Graph, witness: Sequence[int], cycle: bool = False) -> bool:
    """True when witness visits every vertex once along edges of g."""
    if sorted(witness) != list(range(g.n)):
        return False
    steps = list(zip(witness, witness[1:]))
    if cycle and len(witness) > 2:
        steps.append((witness[-1], witness[0]))
    return all(g.rows[u] >> v & 1 for u, v in steps)


def backtracking_path(g: Graph, start: Optional[int] = None, end: Optional[int] = None) -> Optional[List[int]]:
    """
    Depth-first search for a Hamiltonian path, optionally with fixed ends.

    Exponential and unmemoised; only meant for small graphs and for checking
    the DP against an independent method.
    """
    n = g.n
    if n == 0:
        raise EmptyGraph("Hamiltonian path in the empty graph")
    full = (1 << n) - 1

    def extend(path: List[int], visited: int) -> bool:
        last = path[-1]
        if visited == full:
            return end is None or last == end
        for w in iter_bits(g.rows[last] & ~visited):
            if w == end and visited | (1 << w) != full:
                continue
            path.append(w)
            if extend(path, visited | (1 << w)):
                return True
            path.pop()
        return False

    starts = [start] if start is not None else range(n)
    for s in starts:
        if s == end and n > 1:
            continue
        path = [s]
        if extend(path, 1 << s):
            return path
    return None


class HamiltonOracle:
    """
    Decides Hamiltonian, traceable, Hamilton-connected and traceable-from
    properties exactly, refusing graphs above the configured order cap.
    """

    def __init__(self, cap: Optional[int] = None):
        self.cap = min(cap or settings.ORACLE_CAP, HARD_CAP)

    def check(self, g: Graph, prop: HamProperty) -> OracleAnswer:
        self._guard(g)
        if prop.tag == PropertyTag.HAMILTONIAN:
            return self.hamiltonian(g)
        if prop.tag == PropertyTag.TRACEABLE:
            return self.traceable(g)
        if prop.tag == PropertyTag.HAMILTON_CONNECTED:
            return self.hamilton_connected(g)
        if prop.tag == PropertyTag.TRACEABLE_FROM_EVERY_VERTEX:
            return self.traceable_from_every_vertex(g)
        return self.traceable_from(g, prop.vertex)

    def path_between(self, g: Graph, u: int, v: int) -> OracleAnswer:
        self._guard(g)
        for w in (u, v):
            if not 0 <= w < g.n:
                raise InvalidVertex(f"vertex {w} outside 0..{g.n - 1}")
        if u == v:
            raise DomainError("path endpoints must differ")
        full = (1 << g.n) - 1
        table = _endpoint_table(g, start=u)
        if not int(table[full]) >> v & 1:
            return OracleAnswer(holds=False)
        return OracleAnswer(holds=True, witness=_walk_back(table, g, v, full))

    def traceable(self, g: Graph) -> OracleAnswer:
        self._guard(g)
        rejected = self._reject_untraceable(g)
        if rejected:
            return OracleAnswer(holds=False, reason=rejected)
        full = (1 << g.n) - 1
        table = _endpoint_table(g)
        ends = int(table[full])
        if not ends:
            return OracleAnswer(holds=False)
        return OracleAnswer(holds=True, witness=_walk_back(table, g, next(iter_bits(ends)), full))

    def traceable_from(self, g: Graph, v: int) -> OracleAnswer:
        self._guard(g)
        if v is None or not 0 <= v < g.n:
            raise InvalidVertex(f"vertex {v} outside 0..{g.n - 1}")
        rejected = self._reject_untraceable(g)
        if rejected:
            return OracleAnswer(holds=False, reason=rejected)
        full = (1 << g.n) - 1
        table = _endpoint_table(g)
        # a path ending at v, reversed, starts at v
        if not int(table[full]) >> v & 1:
            return OracleAnswer(holds=False)
        return OracleAnswer(holds=True, witness=_walk_back(table, g, v, full)[::-1])

    def traceable_from_every_vertex(self, g: Graph) -> OracleAnswer:
        self._guard(g)
        rejected = self._reject_untraceable(g)
        if rejected:
            return OracleAnswer(holds=False, witness=[0], reason=rejected)
        full = (1 << g.n) - 1
        ends = int(_endpoint_table(g)[full])
        missing = full & ~ends
        if missing:
            return OracleAnswer(holds=False, witness=[next(iter_bits(missing))])
        return OracleAnswer(holds=True)

    def hamiltonian(self, g: Graph) -> OracleAnswer:
        self._guard(g)
        if g.n < 3:
            raise DomainError(f"Hamiltonian cycles need n >= 3, got {g.n}")
        rejected = self._reject_untraceable(g)
        if rejected:
            return OracleAnswer(holds=False, reason=rejected)
        full = (1 << g.n) - 1
        table = _endpoint_table(g, start=0)
        closing = int(table[full]) & g.rows[0]
        if not closing:
            return OracleAnswer(holds=False)
        end = next(iter_bits(closing))
        return OracleAnswer(holds=True, witness=_walk_back(table, g, end, full))

    def hamilton_connected(self, g: Graph) -> OracleAnswer:
        """
        Every pair joined by a Hamiltonian path. On failure the witness is
        an offending pair [u, v].
        """
        self._guard(g)
        n = g.n
        if n >= 3:
            pair, reason = self._failing_pair(g)
            if pair is not None:
                logger.debug("Hamilton-connected short-circuit: %s", reason)
                return OracleAnswer(holds=False, witness=list(pair), reason=reason)
        full = (1 << n) - 1
        for s in range(n - 1):
            ends = int(_endpoint_table(g, start=s)[full])
            for t in range(s + 1, n):
                if not ends >> t & 1:
                    return OracleAnswer(holds=False, witness=[s, t])
        return OracleAnswer(holds=True)

    # -- necessary conditions -------------------------------------------

    def _guard(self, g: Graph) -> None:
        if g.n == 0:
            raise EmptyGraph("Hamiltonicity of the empty graph")
        if g.n > self.cap:
            raise TooLarge(g.n, self.cap)

    @staticmethod
    def _bipartition(g: Graph) -> Optional[Tuple[List[int], List[int]]]:
        """Parts (larger first) of a connected bipartite graph, else None."""
        if g.n < 2 or not g.is_connected():
            return None
        nxg = g.to_networkx()
        if not nx.is_bipartite(nxg):
            return None
        top, bottom = (sorted(part) for part in nx.bipartite.sets(nxg))
        return (top, bottom) if len(top) >= len(bottom) else (bottom, top)

    def _reject_untraceable(self, g: Graph) -> Optional[str]:
        if g.n > 1 and not g.is_connected():
            return "disconnected"
        parts = self._bipartition(g)
        if parts and len(parts[0]) - len(parts[1]) >= 2:
            return f"bipartite with parts {len(parts[0])} and {len(parts[1])}"
        return None

    def _failing_pair(self, g: Graph) -> Tuple[Optional[Tuple[int, int]], Optional[str]]:
        comps = g.components()
        if len(comps) > 1:
            return (comps[0][0], comps[1][0]), "disconnected"
        for w, d in enumerate(g.degrees):
            if d == 1:
                u = g.neighbors(w)[0]
                return (min(w, u), max(w, u)), f"vertex {w} has degree 1"
        cut = sorted(nx.articulation_points(g.to_networkx()))
        if cut:
            a = cut[0]
            rest = [v for v in range(g.n) if v != a]
            for comp in g.induced_subgraph(rest).components():
                if len(comp) >= 2:
                    return (rest[comp[0]], rest[comp[1]]), f"vertex {a} is a cut vertex"
        parts = self._bipartition(g)
        if parts:
            larger, smaller = parts
            if len(larger) == len(smaller):
                return (larger[0], larger[1]), "balanced bipartite: same-part ends"
            pair = sorted((larger[0], smaller[0]))
            return (pair[0], pair[1]), "bipartite: ends must lie in the larger part"
        return None, None


def ham_path_between(g: Graph, u: int, v: int, cap: Optional[int] = None) -> OracleAnswer:
    return HamiltonOracle(cap).path_between(g, u, v)


def check_property(g: Graph, prop: HamProperty, cap: Optional[int] = None) -> OracleAnswer:
    return HamiltonOracle(cap).check(g, prop)
