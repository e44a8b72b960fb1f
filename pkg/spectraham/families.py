"""
Named graph families: constructors, membership tests and seeded samplers.

Fixed families (one graph per parameter pair) are matched by isomorphism.
Set-valued families (ES_n, EW_n, the O_{k,n-k} join families) are matched
structurally: the degree sequence pins down the split, so no subset search
over vertex sets is needed. The "G is a spanning subgraph of C_n^k / B_n^k"
relation is a pruned search for the part X1.
"""

import logging
import math
import re
from enum import Enum
from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import networkx as nx
import numpy as np
from networkx.algorithms.isomorphism import GraphMatcher
from pydantic import BaseModel, ConfigDict

from .config import settings
from .errors import InvalidFamilyParams, TooLarge, UnavailableFamily
from .formats import parse_graph6_lines, read_sidecar
from .graph import (
    BipartiteGraph,
    Graph,
    bipartite_sqcup,
    complete_bipartite,
    complete_graph,
    disjoint_union,
    embed_bipartite,
    empty_graph,
    iter_bits,
    join,
)

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).parent / "data"
GAMMA_FILE = DATA_DIR / "gamma.g6"

AnyGraph = Union[Graph, BipartiteGraph]


class FamilyId(str, Enum):
    K2_JOIN_SPLIT = "K2JoinSplit"
    K1_JOIN_SPLIT = "K1JoinSplit"
    TWO_CLIQUES_JOIN_K2 = "TwoCliquesJoinK2"
    TWO_CLIQUES_JOIN_O2 = "TwoCliquesJoinO2"
    BIPARTITE_JOIN_K2 = "BipartiteJoinK2"
    BIPARTITE_JOIN_O2 = "BipartiteJoinO2"
    TWO_CLIQUES_JOIN_K1 = "TwoCliquesJoinK1"
    BIPARTITE_JOIN_K1 = "BipartiteJoinK1"
    BNK = "Bnk"
    CNK = "Cnk"
    ESN = "ESn"
    EWN = "EWn"
    SCRIPT_B = "ScriptB"
    SCRIPT_C = "ScriptC"
    GAMMA1 = "Gamma1"
    GAMMA2 = "Gamma2"
    GAMMA2_MINUS_V = "Gamma2MinusV"
    COMPLETE_BIPARTITE_HALF = "CompleteBipartiteHalf"


SET_VALUED = {FamilyId.ESN, FamilyId.EWN, FamilyId.SCRIPT_B, FamilyId.SCRIPT_C}
BIPARTITE = {
    FamilyId.BNK,
    FamilyId.CNK,
    FamilyId.SCRIPT_B,
    FamilyId.SCRIPT_C,
    FamilyId.GAMMA1,
    FamilyId.GAMMA2,
    FamilyId.GAMMA2_MINUS_V,
}
GAMMA = {FamilyId.GAMMA1, FamilyId.GAMMA2, FamilyId.GAMMA2_MINUS_V}
N_ONLY = {FamilyId.ESN, FamilyId.EWN, FamilyId.COMPLETE_BIPARTITE_HALF}

_SPEC_PATTERN = re.compile(r"^\s*(\w+)\s*(?:\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\))?\s*$")


class FamilySpec(BaseModel):
    """Symbolic family description, e.g. Cnk(6,2), ESn(8), Gamma2."""

    model_config = ConfigDict(frozen=True)

    id: FamilyId
    n: Optional[int] = None
    k: Optional[int] = None

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        match = _SPEC_PATTERN.match(text)
        if not match:
            raise InvalidFamilyParams(f"cannot parse family {text!r}")
        name, n, k = match.groups()
        try:
            family = FamilyId(name)
        except ValueError as exc:
            raise InvalidFamilyParams(f"unknown family {name!r}") from exc
        return cls(id=family, n=int(n) if n else None, k=int(k) if k else None)

    @property
    def is_set_valued(self) -> bool:
        return self.id in SET_VALUED

    @property
    def is_bipartite(self) -> bool:
        return self.id in BIPARTITE

    def __str__(self):
        if self.id in GAMMA:
            return self.id.value
        if self.id in N_ONLY:
            return f"{self.id.value}({self.n})"
        return f"{self.id.value}({self.n},{self.k})"


class MembershipResult(BaseModel):
    member: bool
    witness: Optional[Dict[str, Any]] = None


def check_params(spec: FamilySpec) -> None:
    """Raise InvalidFamilyParams when spec's n, k are outside the family's range."""
    fid, n, k = spec.id, spec.n, spec.k
    if fid in GAMMA:
        return
    if n is None or (fid not in N_ONLY and k is None):
        raise InvalidFamilyParams(f"{fid.value} needs {'n' if fid in N_ONLY else 'n and k'}")

    if fid in (FamilyId.ESN, FamilyId.COMPLETE_BIPARTITE_HALF):
        ok = n >= 2 and n % 2 == 0
    elif fid == FamilyId.EWN:
        ok = n >= 1 and n % 2 == 1
    elif fid in (FamilyId.BNK, FamilyId.CNK, FamilyId.SCRIPT_B, FamilyId.SCRIPT_C):
        ok = 1 <= k <= n / 2
    elif fid in (
        FamilyId.K2_JOIN_SPLIT,
        FamilyId.TWO_CLIQUES_JOIN_K2,
        FamilyId.TWO_CLIQUES_JOIN_O2,
        FamilyId.BIPARTITE_JOIN_K2,
        FamilyId.BIPARTITE_JOIN_O2,
    ):
        ok = k >= 2 and n >= k + 2
    else:
        ok = k >= 1 and n >= k + 2
    if not ok:
        raise InvalidFamilyParams(f"parameters out of range for {spec}")


# -- constructors -------------------------------------------------------------


def bnk(n: int, k: int) -> BipartiteGraph:
    """B_n^k = O_{k,n-k} u K_{n-k,k}: balanced, order 2n, not Hamiltonian."""
    return bipartite_sqcup(BipartiteGraph.empty(k, n - k), BipartiteGraph.complete(n - k, k))


def cnk(n: int, k: int) -> BipartiteGraph:
    """C_n^k = O_{k,n-k} u K_{n-k-1,k}: nearly balanced, order 2n-1, not traceable."""
    return bipartite_sqcup(BipartiteGraph.empty(k, n - k), BipartiteGraph.complete(n - k - 1, k))


@lru_cache(maxsize=1)
def load_gamma_graphs() -> Dict[str, BipartiteGraph]:
    if not GAMMA_FILE.exists():
        raise UnavailableFamily(f"missing family data {GAMMA_FILE.name}")
    side = read_sidecar(GAMMA_FILE)
    if not side or "x_size" not in side:
        raise UnavailableFamily(f"missing part sidecar for {GAMMA_FILE.name}")
    graphs = parse_graph6_lines(GAMMA_FILE.read_text())
    names = side.get("names", ["Gamma1", "Gamma2"])
    return {name: BipartiteGraph.from_graph(g, side["x_size"]) for name, g in zip(names, graphs)}


def gamma2_minus_v_variants() -> List[Tuple[str, BipartiteGraph]]:
    """
    Gamma2 with one degree-4 vertex deleted, one entry per such vertex.

    Parts are oriented so that |X| = |Y| - 1; a deletion from Y is reported
    with its parts swapped.
    """
    gamma2 = load_gamma_graphs()["Gamma2"]
    variants = []
    for i, d in enumerate(gamma2.x_degrees):
        if d == 4:
            variants.append((f"x{i}", gamma2.remove_x_vertex(i)))
    for j, d in enumerate(gamma2.y_degrees):
        if d == 4:
            variants.append((f"y{j}", gamma2.remove_y_vertex(j).swapped()))
    return variants


def build_family(spec: FamilySpec) -> AnyGraph:
    """
    Construct the graph named by spec. Set-valued families return their
    canonical member: the complete inner graph for ScriptB/ScriptC,
    K_{n/2,n/2} for ESn and K_{(n+1)/2,(n-1)/2} for EWn.
    """
    check_params(spec)
    fid, n, k = spec.id, spec.n, spec.k
    if fid == FamilyId.K2_JOIN_SPLIT:
        return join(complete_graph(2), disjoint_union(complete_graph(n - k - 1), complete_graph(k - 1)))
    if fid == FamilyId.K1_JOIN_SPLIT:
        return join(complete_graph(1), disjoint_union(complete_graph(n - k - 1), complete_graph(k)))
    if fid == FamilyId.TWO_CLIQUES_JOIN_K2:
        return join(disjoint_union(complete_graph(k - 1), complete_graph(n - k - 1)), complete_graph(2))
    if fid == FamilyId.TWO_CLIQUES_JOIN_O2:
        return join(disjoint_union(complete_graph(k - 1), complete_graph(n - k - 1)), empty_graph(2))
    if fid == FamilyId.BIPARTITE_JOIN_K2:
        return join(complete_bipartite(k - 1, n - k - 1), complete_graph(2))
    if fid == FamilyId.BIPARTITE_JOIN_O2:
        return join(complete_bipartite(k - 1, n - k - 1), empty_graph(2))
    if fid == FamilyId.TWO_CLIQUES_JOIN_K1:
        return join(disjoint_union(complete_graph(k), complete_graph(n - k - 1)), complete_graph(1))
    if fid == FamilyId.BIPARTITE_JOIN_K1:
        return join(complete_bipartite(k, n - k - 1), complete_graph(1))
    if fid in (FamilyId.BNK, FamilyId.SCRIPT_B):
        return bnk(n, k)
    if fid in (FamilyId.CNK, FamilyId.SCRIPT_C):
        return cnk(n, k)
    if fid in (FamilyId.ESN, FamilyId.COMPLETE_BIPARTITE_HALF):
        return complete_bipartite(n // 2, n // 2)
    if fid == FamilyId.EWN:
        return complete_bipartite((n + 1) // 2, (n - 1) // 2)
    if fid == FamilyId.GAMMA2_MINUS_V:
        return gamma2_minus_v_variants()[0][1]
    return load_gamma_graphs()[fid.value]


# -- membership ---------------------------------------------------------------


def _isomorphism(g: nx.Graph, target: nx.Graph, parts: bool = False) -> Optional[List[int]]:
    if g.number_of_nodes() != target.number_of_nodes() or g.number_of_edges() != target.number_of_edges():
        return None
    if sorted(d for _, d in g.degree()) != sorted(d for _, d in target.degree()):
        return None
    node_match = (lambda a, b: a["part"] == b["part"]) if parts else None
    matcher = GraphMatcher(g, target, node_match=node_match)
    if not matcher.is_isomorphic():
        return None
    return [matcher.mapping[v] for v in sorted(g.nodes)]


def find_x1(b: BipartiteGraph, k: int, cap: Optional[int] = None) -> Optional[List[int]]:
    """
    Lexicographically first k-subset X1 of X with |N(X1)| <= k, or None.

    Only X vertices of degree <= k can belong to X1, and a branch is cut as
    soon as the union of neighbourhoods exceeds k.
    """
    cap = cap or settings.MEMBERSHIP_CAP
    candidates = [i for i, row in enumerate(b.rows) if row.bit_count() <= k]
    if len(candidates) < k:
        return None
    if math.comb(len(candidates), k) > 1 << cap:
        raise TooLarge(len(candidates), cap, "subgraph search")

    def extend(start: int, chosen: List[int], union: int) -> Optional[List[int]]:
        if len(chosen) == k:
            return chosen
        for idx in range(start, len(candidates) - (k - len(chosen)) + 1):
            i = candidates[idx]
            reach = union | b.rows[i]
            if reach.bit_count() <= k:
                found = extend(idx + 1, chosen + [i], reach)
                if found:
                    return found
        return None

    return extend(0, [], 0)


def subgraph_of_pattern(b: BipartiteGraph, n: int, k: int, cap: Optional[int] = None) -> Optional[Dict[str, List[int]]]:
    """
    Part-respecting spanning embedding of b into B_n^k (|X| = n) or C_n^k
    (|X| = n - 1), with |Y| = n in both cases.

    The only non-edges of the pattern are X1 x Y1, so b embeds iff some
    k-set X1 has all its neighbours inside a k-set Y2. Returns the classes
    as X and Y indices.
    """
    if b.y_size != n or b.x_size not in (n, n - 1):
        return None
    x1 = find_x1(b, k, cap)
    if x1 is None:
        return None
    reach = 0
    for i in x1:
        reach |= b.rows[i]
    y2 = list(iter_bits(reach))
    y2 += [j for j in range(n) if j not in y2][: k - len(y2)]
    y2.sort()
    return {
        "X1": x1,
        "X2": [i for i in range(b.x_size) if i not in x1],
        "Y1": [j for j in range(n) if j not in y2],
        "Y2": y2,
    }


def _script_member(b: BipartiteGraph, n: int, k: int, inner_x: int) -> Optional[Dict[str, List[int]]]:
    """Realise b as O_{k,n-k} u G(X2, Y2) with |X2| = inner_x, |Y2| = k."""
    if b.x_size != k + inner_x or b.y_size != n:
        return None
    everything_y = (1 << n) - 1
    for x, row in enumerate(b.rows):
        if row.bit_count() != k:
            continue
        x1 = [i for i, other in enumerate(b.rows) if other == row]
        if len(x1) != k:
            continue
        y1_mask = everything_y & ~row
        x2 = [i for i in range(b.x_size) if i not in x1]
        if all(b.rows[i] & y1_mask == y1_mask for i in x2):
            return {"X1": x1, "X2": x2, "Y1": list(iter_bits(y1_mask)), "Y2": list(iter_bits(row))}
    return None


def _joined(g: Graph, inner: List[int]) -> bool:
    """Every vertex of inner is adjacent to every vertex outside it."""
    inside = sum(1 << v for v in inner)
    outside = ((1 << g.n) - 1) & ~inside
    return all(g.rows[v] & outside == outside for v in inner)


def es_membership(g: Graph) -> Optional[Dict[str, Any]]:
    """
    ES_n membership for even n: K_{n/2,n/2}, or G1 v G2 with |G2| = r and G1
    regular of order n - r and degree n/2 - r (1 <= r <= n/2).

    G1 vertices have degree exactly n/2 and, for r < n/2, G2 vertices have
    degree > n/2, so the split is forced. For r = n/2, G1 is an independent
    set whose members all have neighbourhood V(G2).
    """
    n = g.n
    if n < 2 or n % 2:
        return None
    half = n // 2
    degrees = g.degrees
    if all(d == half for d in degrees) and nx.is_bipartite(g.to_networkx()):
        return {"case": "complete_bipartite"}

    heavy = [v for v in range(n) if degrees[v] != half]
    if 1 <= len(heavy) < half and _joined(g, heavy):
        return {"case": "join", "r": len(heavy), "regular_part": [v for v in range(n) if v not in heavy], "joined_part": heavy}

    full = (1 << n) - 1
    for t in range(n):
        if degrees[t] != half:
            continue
        independent = full & ~g.rows[t]
        members = list(iter_bits(independent))
        if len(members) == half and all(g.rows[u] == g.rows[t] for u in members):
            return {"case": "join", "r": half, "regular_part": members, "joined_part": list(iter_bits(g.rows[t]))}
    return None


def ew_membership(g: Graph) -> Optional[Dict[str, Any]]:
    """
    EW_n membership for odd n: G1 v G2 with |G2| = r - 1 and G1 regular of
    order n + 1 - r and degree (n+1)/2 - r (1 <= r <= (n+1)/2).

    G1 vertices have degree exactly (n-1)/2 and G2 vertices strictly more.
    """
    n = g.n
    if n < 1 or n % 2 == 0:
        return None
    degrees = g.degrees
    heavy = [v for v in range(n) if degrees[v] != (n - 1) // 2]
    if len(heavy) > (n - 1) // 2 or not _joined(g, heavy):
        return None
    return {"case": "join", "r": len(heavy) + 1, "regular_part": [v for v in range(n) if v not in heavy], "joined_part": heavy}


def _as_bipartite(g: AnyGraph, x_size: Optional[int]) -> BipartiteGraph:
    if isinstance(g, BipartiteGraph):
        return g
    if x_size is None:
        raise InvalidFamilyParams("bipartite family membership needs the part sizes")
    return BipartiteGraph.from_graph(g, x_size)


def family_membership(
    g: AnyGraph,
    spec: FamilySpec,
    relation: str = "equal",
    x_size: Optional[int] = None,
    cap: Optional[int] = None,
) -> MembershipResult:
    """
    Decide whether g belongs to the family (relation "equal") or is a
    part-respecting spanning subgraph of it (relation "subgraph"; Bnk and
    Cnk only).

    Args:
        g: Graph, or BipartiteGraph for the bipartite families
        spec: family description
        relation: "equal" or "subgraph"
        x_size: part size when g is a plain Graph and the family is bipartite
        cap: search budget (as a power of two) for the subgraph search

    Returns:
        MembershipResult with a witness: an isomorphism (vertex -> family
        vertex), a split, or the four part classes X1, X2, Y1, Y2
    """
    check_params(spec)
    fid, n, k = spec.id, spec.n, spec.k
    if relation not in ("equal", "subgraph"):
        raise InvalidFamilyParams(f"unknown relation {relation!r}")
    if relation == "subgraph" and fid not in (FamilyId.BNK, FamilyId.CNK):
        raise InvalidFamilyParams(f"subgraph relation is defined for Bnk and Cnk, not {fid.value}")

    if fid in BIPARTITE:
        b = _as_bipartite(g, x_size)
        if fid in (FamilyId.BNK, FamilyId.CNK):
            x_expected = n if fid == FamilyId.BNK else n - 1
            if b.x_size != x_expected:
                return MembershipResult(member=False)
            classes = subgraph_of_pattern(b, n, k, cap)
            if classes is None:
                return MembershipResult(member=False)
            if relation == "equal":
                pattern_edges = n * (n - k - (0 if fid == FamilyId.BNK else 1)) + k * k
                if b.edge_count != pattern_edges:
                    return MembershipResult(member=False)
            return MembershipResult(member=True, witness=classes)
        if fid in (FamilyId.SCRIPT_B, FamilyId.SCRIPT_C):
            inner_x = n - k if fid == FamilyId.SCRIPT_B else n - k - 1
            classes = _script_member(b, n, k, inner_x)
            return MembershipResult(member=classes is not None, witness=classes)
        if fid == FamilyId.GAMMA2_MINUS_V:
            for label, variant in gamma2_minus_v_variants():
                mapping = _isomorphism(b.to_networkx(), variant.to_networkx(), parts=True)
                if mapping is not None:
                    return MembershipResult(member=True, witness={"deleted": label, "mapping": mapping})
            return MembershipResult(member=False)
        mapping = _isomorphism(b.to_networkx(), load_gamma_graphs()[fid.value].to_networkx(), parts=True)
        return MembershipResult(member=mapping is not None, witness={"mapping": mapping} if mapping else None)

    plain = embed_bipartite(g) if isinstance(g, BipartiteGraph) else g
    if plain.n != n:
        return MembershipResult(member=False)
    if fid == FamilyId.ESN:
        split = es_membership(plain)
        return MembershipResult(member=split is not None, witness=split)
    if fid == FamilyId.EWN:
        split = ew_membership(plain)
        return MembershipResult(member=split is not None, witness=split)
    mapping = _isomorphism(plain.to_networkx(), build_family(spec).to_networkx())
    return MembershipResult(member=mapping is not None, witness={"mapping": mapping} if mapping else None)


# -- sampling -----------------------------------------------------------------


def _child_seed(rng: np.random.Generator) -> int:
    return int(rng.integers(0, 2**31 - 1))


def _random_regular(order: int, degree: int, rng: np.random.Generator) -> Graph:
    if degree == 0:
        return empty_graph(order)
    nxg = nx.random_regular_graph(degree, order, seed=_child_seed(rng))
    return Graph.from_edges(order, nxg.edges())


def _random_graph(order: int, rng: np.random.Generator, p: float = 0.5) -> Graph:
    upper = np.triu(rng.random((order, order)) < p, k=1)
    return Graph.from_edges(order, zip(*np.nonzero(upper)))


def _random_bipartite(x_size: int, y_size: int, rng: np.random.Generator, p: float = 0.5) -> BipartiteGraph:
    mask = rng.random((x_size, y_size)) < p
    return BipartiteGraph.from_edges(x_size, y_size, zip(*np.nonzero(mask)))


def _shuffled(g: Graph, rng: np.random.Generator) -> Graph:
    return g.induced_subgraph([int(v) for v in rng.permutation(g.n)])


def _join_member(order_g1: int, degree_g1: int, order_g2: int, rng: np.random.Generator) -> Graph:
    return _shuffled(join(_random_regular(order_g1, degree_g1, rng), _random_graph(order_g2, rng)), rng)


def sample_family_members(spec: FamilySpec, count: int, seed: Optional[int] = None) -> List[AnyGraph]:
    """Deterministic pseudorandom members of a set-valued family."""
    check_params(spec)
    if not spec.is_set_valued:
        raise InvalidFamilyParams(f"{spec} is a single graph, not a set-valued family")
    rng = np.random.default_rng(seed)
    n, k = spec.n, spec.k
    members: List[AnyGraph] = []
    for _ in range(count):
        if spec.id == FamilyId.ESN:
            # r with an even degree sum for the regular part
            choices = [r for r in range(1, n // 2 + 1) if (n - r) * (n // 2 - r) % 2 == 0]
            r = int(rng.choice(choices))
            members.append(_join_member(n - r, n // 2 - r, r, rng))
        elif spec.id == FamilyId.EWN:
            top = (n + 1) // 2
            choices = [r for r in range(1, top + 1) if (n + 1 - r) * (top - r) % 2 == 0]
            r = int(rng.choice(choices))
            members.append(_join_member(n + 1 - r, top - r, r - 1, rng))
        else:
            inner_x = n - k if spec.id == FamilyId.SCRIPT_B else n - k - 1
            inner = _random_bipartite(inner_x, k, rng)
            members.append(bipartite_sqcup(BipartiteGraph.empty(k, n - k), inner))
    return members


def sample_regular_hc(t: int, count: int, seed: Optional[int] = None) -> List[Graph]:
    """
    t-regular graphs on 2t vertices other than K_{t,t}; every such graph is
    Hamilton-connected, which makes them useful positive test inputs.
    """
    if t < 3:
        raise InvalidFamilyParams(f"no t-regular graph on 2t vertices besides K_{{t,t}} for t = {t}")
    rng = np.random.default_rng(seed)
    out: List[Graph] = []
    while len(out) < count:
        g = _random_regular(2 * t, t, rng)
        if not nx.is_bipartite(g.to_networkx()):
            out.append(g)
    return out
