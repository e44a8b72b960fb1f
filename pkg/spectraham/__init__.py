"""
spectraham: spectral sufficient conditions for Hamiltonian properties,
with exact oracles to check them against.
"""

from .config import settings
from .errors import SpectrahamError
from .graph import BipartiteGraph, Graph
from .oracle import HamiltonOracle, HamProperty
from .spectral import adjacency_spectral_radius, q_spectral_radius
from .theorems import TheoremChecker, TheoremId, check_theorem, cross_validate

__version__ = "1.0.0"

__all__ = [
    "BipartiteGraph",
    "Graph",
    "HamProperty",
    "HamiltonOracle",
    "SpectrahamError",
    "TheoremChecker",
    "TheoremId",
    "adjacency_spectral_radius",
    "check_theorem",
    "cross_validate",
    "q_spectral_radius",
    "settings",
]
