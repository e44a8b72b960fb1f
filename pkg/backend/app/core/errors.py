from fastapi import HTTPException

from spectraham.errors import ConvergenceFailure, HypothesisNotMet, SpectrahamError, TooLarge, ValidationMismatch


def http_error(exc: SpectrahamError) -> HTTPException:
    """Map a library error onto the status code the routers return."""
    if isinstance(exc, TooLarge):
        return HTTPException(status_code=413, detail=str(exc))
    if isinstance(exc, HypothesisNotMet):
        return HTTPException(status_code=422, detail=str(exc))
    if isinstance(exc, (ConvergenceFailure, ValidationMismatch)):
        return HTTPException(status_code=500, detail=str(exc))
    return HTTPException(status_code=400, detail=str(exc))
