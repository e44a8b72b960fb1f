from pydantic import BaseModel
from typing import Optional

from spectraham.theorems import TheoremId, TheoremVerdict, ValidationReport

from .graph import GraphPayload


class TheoremRequest(BaseModel):
    graph: GraphPayload
    theorem: TheoremId
    k: int
    epsilon: Optional[float] = None
    variant: Optional[str] = None
    validate_with_oracle: bool = False


class TheoremResponse(BaseModel):
    verdict: TheoremVerdict
    validation: Optional[ValidationReport] = None
