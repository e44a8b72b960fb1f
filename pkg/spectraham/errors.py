"""
Error types raised by the spectraham library.

Every error derives from SpectrahamError so callers (CLI, HTTP service) can
map the whole family onto exit codes / status codes in one place.
"""

from typing import Any, Dict, Optional


class SpectrahamError(Exception):
    """Base class for all library errors."""


class InvalidEdge(SpectrahamError):
    pass


class InvalidVertex(SpectrahamError):
    pass


class EmptyGraph(SpectrahamError):
    pass


class NotBalanced(SpectrahamError):
    pass


class DomainError(SpectrahamError):
    """An argument lies outside the domain where the quantity is defined."""


class TooLarge(SpectrahamError):
    """Exact search refused: the order exceeds the configured cap."""

    def __init__(self, order: int, cap: int, what: str = "oracle"):
        super().__init__(f"{what}: order {order} exceeds cap {cap}")
        self.order = order
        self.cap = cap


class HypothesisNotMet(SpectrahamError):
    pass


class InvalidFamilyParams(SpectrahamError):
    pass


class UnavailableFamily(SpectrahamError):
    pass


class ConvergenceFailure(SpectrahamError):
    def __init__(self, estimate: float, residual: float, iterations: int):
        super().__init__(
            f"power iteration did not converge after {iterations} iterations "
            f"(estimate {estimate:.12g}, residual {residual:.3e})"
        )
        self.estimate = estimate
        self.residual = residual
        self.iterations = iterations


class ParseError(SpectrahamError):
    def __init__(self, message: str, offset: Optional[int] = None):
        where = f" at byte {offset}" if offset is not None else ""
        super().__init__(f"{message}{where}")
        self.offset = offset


class ValidationMismatch(SpectrahamError):
    """A theorem verdict disagrees with the exact oracle."""

    def __init__(self, message: str, evidence: Dict[str, Any]):
        super().__init__(message)
        self.evidence = evidence
