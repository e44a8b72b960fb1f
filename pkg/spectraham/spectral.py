"""
Spectral radii of A(G) and Q(G) = D(G) + A(G), plus the closed-form bounds
that sandwich them.

Eigenpairs are computed per connected component: a dense symmetric solve for
small components, shifted power iteration on M + I for large ones. Every
returned result carries its own residual certificate.
"""

import logging
import math
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
import scipy.linalg
from pydantic import BaseModel

from .config import settings
from .errors import ConvergenceFailure, DomainError, EmptyGraph
from .graph import BipartiteGraph, Graph

logger = logging.getLogger(__name__)


class SpectralKind(str, Enum):
    ADJACENCY = "Adjacency"
    SIGNLESS_LAPLACIAN = "SignlessLaplacian"


class SpectralMethod(str, Enum):
    DENSE = "Dense"
    SHIFTED_POWER_ITERATION = "ShiftedPowerIteration"


class Comparison(str, Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    BOUNDARY = "Boundary"


class SpectralResult(BaseModel):
    kind: SpectralKind
    value: float
    vector: List[float]
    residual: float
    iterations: int
    method: SpectralMethod


class BoundsReport(BaseModel):
    hong_shu_upper: float
    min_edge_geometric_lower: Optional[float] = None
    cone_lower: Optional[float] = None
    sqrt_edges_upper: Optional[float] = None
    q_degree_upper: Optional[float] = None
    q_edge_part_upper: Optional[float] = None


def _residual(m: np.ndarray, x: np.ndarray, value: float) -> float:
    return float(np.max(np.abs(m @ x - value * x))) if len(x) else 0.0


def _power_iteration(
    m: np.ndarray, start: np.ndarray, tol: float, max_iterations: int
) -> Tuple[float, np.ndarray, float, int]:
    """
    Dominant eigenpair of a symmetric non-negative matrix.

    Iterates on M + I, which is primitive on a connected support, so the
    +/- mu oscillation of bipartite graphs cannot occur. Stops on the
    infinity-norm residual of the unshifted matrix.
    """
    shifted = m + np.eye(len(m))
    x = start / np.linalg.norm(start)
    value, residual = 0.0, math.inf
    for iteration in range(1, max_iterations + 1):
        y = shifted @ x
        x = y / np.linalg.norm(y)
        mx = m @ x
        value = float(x @ mx)
        residual = float(np.max(np.abs(mx - value * x)))
        if residual <= tol:
            return value, x, residual, iteration
    raise ConvergenceFailure(value, residual, max_iterations)


def _component_pair(
    m: np.ndarray, tol: float, max_iterations: int, method: SpectralMethod
) -> Tuple[float, np.ndarray, float, int]:
    size = len(m)
    if size == 1:
        return float(m[0, 0]), np.ones(1), 0.0, 0
    if method == SpectralMethod.DENSE:
        w, v = scipy.linalg.eigh(m)
        value, x = float(w[-1]), v[:, -1]
        if x.sum() < 0:
            x = -x
        residual = _residual(m, x, value)
        if residual <= tol:
            return value, x, residual, 0
        # polish the dense vector when a very tight tolerance was asked for
        return _power_iteration(m, np.abs(x), tol, max_iterations)
    return _power_iteration(m, np.ones(size), tol, max_iterations)


def _spectral_radius(
    g: Graph,
    kind: SpectralKind,
    tol: Optional[float],
    method: Optional[SpectralMethod],
    max_iterations: Optional[int],
) -> SpectralResult:
    if g.n == 0:
        raise EmptyGraph("spectral radius of the empty graph")
    tol = settings.TOLERANCE if tol is None else tol
    max_iterations = max_iterations or settings.MAX_ITERATIONS
    full = g.adjacency_matrix() if kind == SpectralKind.ADJACENCY else g.signless_laplacian()

    best = None
    for comp in g.components():
        comp_method = method or (
            SpectralMethod.DENSE if len(comp) <= settings.DENSE_CUTOFF
            else SpectralMethod.SHIFTED_POWER_ITERATION
        )
        sub = full[np.ix_(comp, comp)]
        value, x, _, iterations = _component_pair(sub, tol, max_iterations, comp_method)
        # ties go to the component with the smallest first vertex
        if best is None or value > best[0] + tol:
            best = (value, comp, x, iterations, comp_method)

    value, comp, x, iterations, comp_method = best
    vector = np.zeros(g.n)
    vector[comp] = x
    vector /= np.linalg.norm(vector)
    residual = _residual(full, vector, value)
    if residual > tol:
        raise ConvergenceFailure(value, residual, iterations)
    logger.debug("%s radius %.12g via %s (%d components)", kind.value, value, comp_method.value, len(g.components()))
    return SpectralResult(
        kind=kind,
        value=value,
        vector=vector.tolist(),
        residual=residual,
        iterations=iterations,
        method=comp_method,
    )


def adjacency_spectral_radius(
    g: Graph,
    tol: Optional[float] = None,
    method: Optional[SpectralMethod] = None,
    max_iterations: Optional[int] = None,
) -> SpectralResult:
    """
    mu(G), the largest eigenvalue of A(G).

    Args:
        g: graph of order >= 1
        tol: residual tolerance (defaults to Settings.TOLERANCE)
        method: force Dense or ShiftedPowerIteration for every component
        max_iterations: iteration cap for power iteration

    Returns:
        SpectralResult whose vector is a positive Perron vector on the
        component that attains the maximum and zero elsewhere.
    """
    return _spectral_radius(g, SpectralKind.ADJACENCY, tol, method, max_iterations)


def q_spectral_radius(
    g: Graph,
    tol: Optional[float] = None,
    method: Optional[SpectralMethod] = None,
    max_iterations: Optional[int] = None,
) -> SpectralResult:
    """q(G), the largest eigenvalue of the signless Laplacian."""
    return _spectral_radius(g, SpectralKind.SIGNLESS_LAPLACIAN, tol, method, max_iterations)


def adjacency_rayleigh(g: Graph, x) -> float:
    """x^T A x = 2 * sum over edges of x_u x_v."""
    x = np.asarray(x, dtype=np.float64)
    edges = np.array(g.edges(), dtype=np.int64).reshape(-1, 2)
    return float(2.0 * np.sum(x[edges[:, 0]] * x[edges[:, 1]]))


def signless_rayleigh(g: Graph, x) -> float:
    """x^T Q x = sum over edges of (x_u + x_v)^2."""
    x = np.asarray(x, dtype=np.float64)
    edges = np.array(g.edges(), dtype=np.int64).reshape(-1, 2)
    return float(np.sum((x[edges[:, 0]] + x[edges[:, 1]]) ** 2))


def hong_shu_f(x: float, n: int, m: int) -> float:
    """
    (x - 1)/2 + sqrt(2m - n x + (x + 1)^2 / 4).

    Upper bound on mu(G) at x = delta(G); non-increasing in x for x <= n - 1,
    strictly so whenever 2m < n(n - 1).
    """
    if 2 * m > n * (n - 1):
        raise DomainError(f"m = {m} exceeds n(n-1)/2 for n = {n}")
    if x > n - 1:
        raise DomainError(f"x = {x} exceeds n - 1 = {n - 1}")
    radicand = 2 * m - n * x + (x + 1) ** 2 / 4
    if radicand < 0:
        raise DomainError(f"negative radicand {radicand} at x = {x}, n = {n}, m = {m}")
    return (x - 1) / 2 + math.sqrt(radicand)


def cone_lower_bound(mu: float, n: int) -> float:
    """Strict lower bound on mu(G v K_1) for G of order n with mu(G) = mu."""
    if n < 2:
        raise DomainError(f"cone bound needs n >= 2, got {n}")
    return (n - 1) / n * mu + 2 * math.sqrt(n - 1) / n


def bounds_report(g: Graph, x_size: Optional[int] = None, mu: Optional[float] = None) -> BoundsReport:
    """
    Degree and edge-count bounds on mu(G) and q(G); no eigensolve.

    x_size marks the first x_size vertices as the X part and enables the
    bipartite-only bounds. mu, when given, is mu(G) and enables the cone bound.
    """
    if g.n == 0:
        raise EmptyGraph("bounds of the empty graph")
    degrees = g.degrees
    m = g.edge_count
    report = BoundsReport(hong_shu_upper=hong_shu_f(min(degrees), g.n, m))

    if m > 0:
        report.min_edge_geometric_lower = min(
            math.sqrt(degrees[u] * degrees[v]) for u, v in g.edges()
        )
        report.q_degree_upper = max(
            degrees[u] + sum(degrees[v] for v in g.neighbors(u)) / degrees[u]
            for u in range(g.n)
            if degrees[u] > 0
        )
    if mu is not None and g.n >= 2:
        report.cone_lower = cone_lower_bound(mu, g.n)
    if x_size is not None:
        b = BipartiteGraph.from_graph(g, x_size)
        n_max = max(b.x_size, b.y_size)
        report.sqrt_edges_upper = math.sqrt(m)
        report.q_edge_part_upper = m / n_max + n_max
    return report


def compare_with_slack(
    value: float, threshold: float, op: str, epsilon: Optional[float] = None
) -> Comparison:
    """
    Compare value `op` threshold, reporting Boundary when the two are closer
    than epsilon.
    """
    epsilon = settings.BOUNDARY_EPSILON if epsilon is None else epsilon
    if abs(value - threshold) < epsilon:
        return Comparison.BOUNDARY
    ops = {
        ">=": value >= threshold,
        ">": value > threshold,
        "<=": value <= threshold,
        "<": value < threshold,
    }
    if op not in ops:
        raise ValueError(f"unknown comparison {op!r}")
    return Comparison.HOLDS if ops[op] else Comparison.FAILS
