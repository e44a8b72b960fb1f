from pydantic import BaseModel, model_validator
from typing import List, Optional

from spectraham.formats import parse_graph6
from spectraham.graph import BipartiteGraph, Graph
from spectraham.spectral import BoundsReport


class GraphPayload(BaseModel):
    """A graph as graph6 text or as an explicit edge list."""

    graph6: Optional[str] = None
    n: Optional[int] = None
    edges: Optional[List[List[int]]] = None
    x_size: Optional[int] = None

    @model_validator(mode="after")
    def one_encoding(self):
        if (self.graph6 is None) == (self.n is None):
            raise ValueError("give either graph6 or n (with edges)")
        return self

    def to_graph(self) -> Graph:
        if self.graph6 is not None:
            g = parse_graph6(self.graph6)
        else:
            g = Graph.from_edges(self.n, self.edges or [])
        if self.x_size is not None:
            BipartiteGraph.from_graph(g, self.x_size)
        return g


class BoundsResponse(BaseModel):
    mu: float
    q: float
    bounds: BoundsReport


class FamilyResponse(BaseModel):
    family: str
    graph6: str
    order: int
    edge_count: int
    edges: List[List[int]]
    x_size: Optional[int] = None
