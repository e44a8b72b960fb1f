from fastapi import APIRouter, HTTPException

from spectraham.errors import SpectrahamError
from spectraham.spectral import SpectralResult, adjacency_spectral_radius, bounds_report, q_spectral_radius

from ..core.config import settings
from ..core.errors import http_error
from ..schemas.graph import BoundsResponse, GraphPayload

router = APIRouter()

SOLVERS = {"mu": adjacency_spectral_radius, "q": q_spectral_radius}


def _checked_graph(payload: GraphPayload):
    g = payload.to_graph()
    if g.n > settings.MAX_ORDER:
        raise HTTPException(status_code=413, detail=f"order {g.n} exceeds {settings.MAX_ORDER}")
    return g


@router.post("/bounds", response_model=BoundsResponse)
async def spectral_bounds(payload: GraphPayload):
    """mu, q and the degree / edge-count bounds around them"""
    try:
        g = _checked_graph(payload)
        mu = adjacency_spectral_radius(g).value
        q = q_spectral_radius(g).value
        return BoundsResponse(mu=mu, q=q, bounds=bounds_report(g, x_size=payload.x_size, mu=mu))
    except SpectrahamError as exc:
        raise http_error(exc) from exc


@router.post("/{kind}", response_model=SpectralResult)
async def spectral_radius(kind: str, payload: GraphPayload):
    """Spectral radius of A(G) (kind=mu) or Q(G) (kind=q)"""
    if kind not in SOLVERS:
        raise HTTPException(status_code=404, detail=f"Unknown spectrum {kind!r}")
    try:
        return SOLVERS[kind](_checked_graph(payload))
    except SpectrahamError as exc:
        raise http_error(exc) from exc
