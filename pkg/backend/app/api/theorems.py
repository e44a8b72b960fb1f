from fastapi import APIRouter

from spectraham.errors import SpectrahamError
from spectraham.theorems import TheoremChecker, cross_validate

from ..core.errors import http_error
from ..schemas.theorems import TheoremRequest, TheoremResponse

router = APIRouter()


@router.post("/check", response_model=TheoremResponse)
async def check_theorem(request: TheoremRequest):
    """Evaluate one theorem on the posted graph, optionally against the oracle"""
    try:
        g = request.graph.to_graph()
        checker = TheoremChecker(epsilon=request.epsilon, variant=request.variant)
        verdict = checker.check(request.theorem, g, request.k, x_size=request.graph.x_size)
        validation = None
        if request.validate_with_oracle:
            validation = cross_validate(verdict, g, x_size=request.graph.x_size)
    except SpectrahamError as exc:
        raise http_error(exc) from exc
    return TheoremResponse(verdict=verdict, validation=validation)
