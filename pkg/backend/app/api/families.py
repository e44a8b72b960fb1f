from fastapi import APIRouter, Query
from typing import Optional

from spectraham.errors import SpectrahamError
from spectraham.families import FamilyId, FamilySpec, build_family
from spectraham.formats import write_graph6
from spectraham.graph import BipartiteGraph, embed_bipartite

from ..core.errors import http_error
from ..schemas.graph import FamilyResponse

router = APIRouter()


@router.get("/{family}", response_model=FamilyResponse)
async def get_family(
    family: FamilyId,
    n: Optional[int] = Query(None, description="Family order parameter"),
    k: Optional[int] = Query(None, description="Family degree parameter"),
):
    """Canonical member of a named family"""
    spec = FamilySpec(id=family, n=n, k=k)
    try:
        graph = build_family(spec)
    except SpectrahamError as exc:
        raise http_error(exc) from exc

    x_size = None
    if isinstance(graph, BipartiteGraph):
        x_size = graph.x_size
        graph = embed_bipartite(graph)
    return FamilyResponse(
        family=str(spec),
        graph6=write_graph6(graph),
        order=graph.n,
        edge_count=graph.edge_count,
        edges=[list(e) for e in graph.edges()],
        x_size=x_size,
    )
