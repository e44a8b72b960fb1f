"""
Checkers for the spectral Hamiltonicity theorems, the sharpness lemmas and
the signless-Laplacian remark, with oracle cross-validation.

Theorem ids follow the numbering the CLI exposes: T2_10 .. T2_13 for general
graphs, T3_9 .. T3_11 for nearly balanced bipartite graphs.
"""

import logging
import math
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple, Union

import networkx as nx
import numpy as np
import scipy.linalg
from pydantic import BaseModel, Field

from .config import settings
from .errors import DomainError, HypothesisNotMet, TooLarge, UnavailableFamily, ValidationMismatch
from .families import FamilyId, FamilySpec, build_family, cnk, family_membership
from .graph import BipartiteGraph, Graph, complement, embed_bipartite, quasi_complement
from .oracle import (
    HAMILTON_CONNECTED,
    TRACEABLE,
    TRACEABLE_FROM_EVERY_VERTEX,
    HamiltonOracle,
    HamProperty,
    OracleAnswer,
)
from .spectral import Comparison, adjacency_spectral_radius, compare_with_slack, q_spectral_radius

logger = logging.getLogger(__name__)

AnyGraph = Union[Graph, BipartiteGraph]


class TheoremId(str, Enum):
    T2_10 = "T2_10"
    T2_11 = "T2_11"
    T2_12 = "T2_12"
    T2_13 = "T2_13"
    T3_9 = "T3_9"
    T3_10 = "T3_10"
    T3_11 = "T3_11"


class HypothesisStatus(str, Enum):
    MET = "Met"
    NOT_MET = "NotMet"
    BOUNDARY = "Boundary"


class ConclusionKind(str, Enum):
    CERTIFIED = "Certified"
    EXCEPTION = "Exception"


class Conclusion(BaseModel):
    kind: ConclusionKind
    property: str
    family: Optional[str] = None
    witness: Optional[Dict[str, Any]] = None
    # False for set-valued exceptions whose members may still have the property
    definitive: bool = True


class TheoremVerdict(BaseModel):
    theorem_id: TheoremId
    hypothesis: HypothesisStatus
    detail: Optional[str] = None
    conclusion: Optional[Conclusion] = None
    evidence: Dict[str, Any] = Field(default_factory=dict)


class SharpnessReport(BaseModel):
    lemma_id: str
    n: int
    k: int
    threshold: float
    extremal_mu: float
    extremal_margin: float
    admissible_deletions: int
    max_subgraph_mu: Optional[float] = None
    margin: Optional[float] = None
    violations: List[List[int]] = Field(default_factory=list)
    holds: bool


class RemarkReport(BaseModel):
    n: int
    k: int
    x: int
    f_factored: int
    f_expanded: int
    f_quotient: float
    sign_negative: bool
    quotient_radius: float
    q: Optional[float] = None
    q_exceeds_x: Optional[bool] = None
    removed_edge: List[int]
    min_degree_ok: bool
    t311_threshold: float
    x_at_least_threshold: bool
    holds: bool
    note: Optional[str] = None


class ValidationReport(BaseModel):
    theorem_id: TheoremId
    status: str
    property: Optional[str] = None
    oracle: Optional[OracleAnswer] = None
    detail: Optional[str] = None


PROPERTY = {
    TheoremId.T2_10: HAMILTON_CONNECTED,
    TheoremId.T2_11: TRACEABLE_FROM_EVERY_VERTEX,
    TheoremId.T2_12: HAMILTON_CONNECTED,
    TheoremId.T2_13: TRACEABLE_FROM_EVERY_VERTEX,
    TheoremId.T3_9: TRACEABLE,
    TheoremId.T3_10: TRACEABLE,
    TheoremId.T3_11: TRACEABLE,
}

BIPARTITE_THEOREMS = {TheoremId.T3_9, TheoremId.T3_10, TheoremId.T3_11}

# which matrix each theorem's spectral hypothesis is read from
MATRIX = {
    TheoremId.T2_10: "A(G)",
    TheoremId.T2_11: "A(G)",
    TheoremId.T2_12: "A(complement of G)",
    TheoremId.T2_13: "A(complement of G)",
    TheoremId.T3_9: "A(G)",
    TheoremId.T3_10: "A(quasi-complement of G)",
    TheoremId.T3_11: "Q(G)",
}

OPERATOR = {
    TheoremId.T2_10: ">=",
    TheoremId.T2_11: ">=",
    TheoremId.T2_12: "<=",
    TheoremId.T2_13: "<=",
    TheoremId.T3_9: ">",
    TheoremId.T3_10: "<=",
    TheoremId.T3_11: ">",
}

THM211_VARIANTS = ("statement", "proof")


def threshold(theorem_id: TheoremId, n: int, k: int, variant: Optional[str] = None) -> float:
    """Right-hand side of the theorem's spectral condition."""
    if theorem_id == TheoremId.T2_10:
        return float(n - k)
    if theorem_id == TheoremId.T2_11:
        variant = variant or settings.THM211_VARIANT
        if variant not in THM211_VARIANTS:
            raise DomainError(f"unknown T2_11 variant {variant!r}")
        root = n - 2 if variant == "statement" else n - 1
        return n * n / (n - 1) - n * k / (n - 1) - 2 / math.sqrt(root)
    if theorem_id == TheoremId.T2_12:
        return math.sqrt((k - 1) * (n - k - 1))
    if theorem_id == TheoremId.T2_13:
        return math.sqrt(k * (n - k - 1))
    if theorem_id == TheoremId.T3_9:
        return math.sqrt(n * (n - k - 1))
    if theorem_id == TheoremId.T3_10:
        return math.sqrt(k * (n - k))
    return (n * (2 * n - k - 2) + (k + 1) ** 2) / n


def _order_clause(theorem_id: TheoremId, n: int, k: int) -> Optional[str]:
    """The violated k / order clause, or None when both hold."""
    floors = {
        TheoremId.T2_10: 2,
        TheoremId.T2_11: 1,
        TheoremId.T2_12: 2,
        TheoremId.T2_13: 2,
        TheoremId.T3_9: 1,
        TheoremId.T3_10: 1,
        TheoremId.T3_11: 1,
    }
    if k < floors[theorem_id]:
        return f"k >= {floors[theorem_id]} required, got k = {k}"
    needs = {
        TheoremId.T2_10: (2 * k * k + 1, "n >= 2k^2 + 1"),
        TheoremId.T2_11: (2 * (k + 1) ** 2, "n >= 2(k+1)^2"),
        TheoremId.T2_12: (2 * k, "n >= 2k"),
        TheoremId.T2_13: (2 * k + 1, "n >= 2k + 1"),
        TheoremId.T3_9: (max(k**3 / 2 + k + 2, (k + 1) ** 2), "n >= max(k^3/2 + k + 2, (k+1)^2)"),
        TheoremId.T3_10: (2 * k, "n >= 2k"),
        TheoremId.T3_11: ((k + 1) ** 2, "n >= (k+1)^2"),
    }
    bound, text = needs[theorem_id]
    if n < bound:
        return f"{text} required, got n = {n}"
    return None


def _resolve_bipartite(g: AnyGraph, x_size: Optional[int]) -> Tuple[Optional[BipartiteGraph], Optional[str], List[str]]:
    """Nearly balanced orientation of g (|X| = |Y| - 1), or a reason why not."""
    notes: List[str] = []
    if isinstance(g, BipartiteGraph):
        b = g
    elif x_size is not None:
        b = BipartiteGraph.from_graph(g, x_size)
    else:
        nxg = g.to_networkx()
        if not nx.is_bipartite(nxg):
            return None, "graph is not bipartite", notes
        if not g.is_connected():
            return None, "bipartition of a disconnected graph is ambiguous; give x_size", notes
        top, bottom = (sorted(p) for p in nx.bipartite.sets(nxg))
        if len(top) > len(bottom):
            top, bottom = bottom, top
        order = top + bottom
        relabelled = g.induced_subgraph(order)
        b = BipartiteGraph.from_graph(relabelled, len(top))
        notes.append(f"bipartition detected: X = {top}, Y = {bottom}")
    if b.x_size == b.y_size + 1:
        b = b.swapped()
        notes.append("parts swapped so that |X| = |Y| - 1")
    if not b.is_nearly_balanced():
        return None, f"parts {b.x_size} and {b.y_size} are not nearly balanced", notes
    return b, None, notes


class TheoremChecker:
    """
    Evaluates one theorem on one graph: order and degree clauses, the
    spectral condition with boundary slack, then the exceptional families.
    """

    def __init__(
        self,
        epsilon: Optional[float] = None,
        tol: Optional[float] = None,
        variant: Optional[str] = None,
        membership_cap: Optional[int] = None,
    ):
        self.epsilon = settings.BOUNDARY_EPSILON if epsilon is None else epsilon
        self.tol = settings.TOLERANCE if tol is None else tol
        self.variant = variant or settings.THM211_VARIANT
        self.membership_cap = membership_cap

    def check(self, theorem_id: TheoremId, g: AnyGraph, k: int, x_size: Optional[int] = None) -> TheoremVerdict:
        theorem_id = TheoremId(theorem_id)
        evidence: Dict[str, Any] = {"k": k, "matrix": MATRIX[theorem_id], "op": OPERATOR[theorem_id]}
        notes: List[str] = []

        if theorem_id in BIPARTITE_THEOREMS:
            b, reason, notes = _resolve_bipartite(g, x_size)
            if b is None:
                return self._not_met(theorem_id, reason, evidence, notes)
            n = b.y_size
            plain = embed_bipartite(b)
            delta = b.min_degree
        else:
            b = None
            plain = embed_bipartite(g) if isinstance(g, BipartiteGraph) else g
            n = plain.n
            delta = plain.min_degree if n else 0
        evidence.update(n=n, delta=delta)

        clause = _order_clause(theorem_id, n, k)
        if clause is None and delta < k:
            clause = f"minimum degree {delta} < k = {k}"
        if clause:
            return self._not_met(theorem_id, clause, evidence, notes)

        value = self._spectral_value(theorem_id, plain, b)
        limit = threshold(theorem_id, n, k, self.variant)
        outcome = compare_with_slack(value, limit, OPERATOR[theorem_id], self.epsilon)
        evidence.update(value=value, threshold=limit, margin=value - limit)
        if theorem_id == TheoremId.T2_11:
            evidence["variant"] = self.variant

        if outcome == Comparison.FAILS:
            return self._not_met(theorem_id, "spectral condition fails", evidence, notes)

        exception = self._match_exception(theorem_id, plain, b, n, k, notes)
        prop = str(PROPERTY[theorem_id])
        if outcome == Comparison.BOUNDARY:
            detail = f"|{value:.12g} - {limit:.12g}| < {self.epsilon:g}"
            logger.info("%s: boundary case deferred to structure (%s)", theorem_id.value, detail)
            evidence["notes"] = notes
            return TheoremVerdict(
                theorem_id=theorem_id,
                hypothesis=HypothesisStatus.BOUNDARY,
                detail=detail,
                conclusion=exception,
                evidence=evidence,
            )
        evidence["notes"] = notes
        conclusion = exception or Conclusion(kind=ConclusionKind.CERTIFIED, property=prop)
        return TheoremVerdict(theorem_id=theorem_id, hypothesis=HypothesisStatus.MET, conclusion=conclusion, evidence=evidence)

    # -- internals ----------------------------------------------------------

    @staticmethod
    def _not_met(theorem_id: TheoremId, reason: str, evidence: Dict[str, Any], notes: List[str]) -> TheoremVerdict:
        evidence["notes"] = notes
        return TheoremVerdict(theorem_id=theorem_id, hypothesis=HypothesisStatus.NOT_MET, detail=reason, evidence=evidence)

    def _spectral_value(self, theorem_id: TheoremId, plain: Graph, b: Optional[BipartiteGraph]) -> float:
        if theorem_id in (TheoremId.T2_12, TheoremId.T2_13):
            return adjacency_spectral_radius(complement(plain), tol=self.tol).value
        if theorem_id == TheoremId.T3_10:
            return adjacency_spectral_radius(embed_bipartite(quasi_complement(b)), tol=self.tol).value
        if theorem_id == TheoremId.T3_11:
            return q_spectral_radius(plain, tol=self.tol).value
        return adjacency_spectral_radius(plain, tol=self.tol).value

    def _candidates(self, theorem_id: TheoremId, n: int, k: int) -> List[Tuple[FamilySpec, str, bool]]:
        """(family, relation, definitive) in the order they are tried."""
        spec = lambda fid, nn=n, kk=k: FamilySpec(id=fid, n=nn, k=kk)  # noqa: E731
        if theorem_id == TheoremId.T2_10:
            return [(spec(FamilyId.K2_JOIN_SPLIT), "equal", True)]
        if theorem_id == TheoremId.T2_11:
            return [(spec(FamilyId.K1_JOIN_SPLIT), "equal", True)]
        if theorem_id == TheoremId.T2_12:
            found = [
                (spec(FamilyId.TWO_CLIQUES_JOIN_K2), "equal", True),
                (spec(FamilyId.TWO_CLIQUES_JOIN_O2), "equal", True),
            ]
            if n == 2 * k:
                found.append((FamilySpec(id=FamilyId.ESN, n=n), "equal", False))
            return found
        if theorem_id == TheoremId.T2_13:
            found = [(spec(FamilyId.TWO_CLIQUES_JOIN_K1), "equal", True)]
            if n == 2 * k + 1:
                found.append((FamilySpec(id=FamilyId.EWN, n=n), "equal", False))
            return found
        if theorem_id == TheoremId.T3_9:
            return [(spec(FamilyId.CNK), "equal", True)]
        if theorem_id == TheoremId.T3_10:
            found = [(spec(FamilyId.SCRIPT_C, n, kk), "equal", True) for kk in range(1, n // 2 + 1)]
            if n == 4:
                found.append((FamilySpec(id=FamilyId.GAMMA2_MINUS_V), "equal", True))
            return found
        return [(spec(FamilyId.CNK), "subgraph", True)]

    def _match_exception(
        self, theorem_id: TheoremId, plain: Graph, b: Optional[BipartiteGraph], n: int, k: int, notes: List[str]
    ) -> Optional[Conclusion]:
        prop = str(PROPERTY[theorem_id])
        subject = b if b is not None else plain
        for family, relation, definitive in self._candidates(theorem_id, n, k):
            try:
                result = family_membership(subject, family, relation=relation, cap=self.membership_cap)
            except UnavailableFamily as exc:
                logger.warning("%s: skipping %s (%s)", theorem_id.value, family, exc)
                notes.append(f"{family} unavailable: {exc}")
                continue
            if result.member:
                return Conclusion(
                    kind=ConclusionKind.EXCEPTION,
                    property=prop,
                    family=str(family) if relation == "equal" else f"subgraph of {family}",
                    witness=result.witness,
                    definitive=definitive,
                )
        self._note_statement_reading(theorem_id, plain, n, k, notes)
        return None

    @staticmethod
    def _note_statement_reading(theorem_id: TheoremId, plain: Graph, n: int, k: int, notes: List[str]) -> None:
        """Record a match with the exception as printed in the theorem statement."""
        if theorem_id == TheoremId.T2_12:
            printed = [FamilyId.BIPARTITE_JOIN_K2, FamilyId.BIPARTITE_JOIN_O2]
        elif theorem_id == TheoremId.T2_13:
            printed = [FamilyId.BIPARTITE_JOIN_K1]
        else:
            return
        for fid in printed:
            spec = FamilySpec(id=fid, n=n, k=k)
            if family_membership(plain, spec).member:
                notes.append(f"matches {spec}, the exception as printed in the statement; not treated as exceptional")


def check_theorem(
    theorem_id: Union[TheoremId, str],
    g: AnyGraph,
    k: int,
    x_size: Optional[int] = None,
    epsilon: Optional[float] = None,
    tol: Optional[float] = None,
    variant: Optional[str] = None,
) -> TheoremVerdict:
    return TheoremChecker(epsilon=epsilon, tol=tol, variant=variant).check(TheoremId(theorem_id), g, k, x_size)


def cross_validate(
    verdict: TheoremVerdict, g: AnyGraph, x_size: Optional[int] = None, cap: Optional[int] = None
) -> ValidationReport:
    """
    Check a verdict against the exact oracle.

    Certified verdicts and definitive exceptions must agree with the oracle,
    otherwise ValidationMismatch is raised with the full evidence. For
    set-valued exceptions the oracle outcome is only recorded.
    """
    if verdict.conclusion is None:
        return ValidationReport(theorem_id=verdict.theorem_id, status="skipped", detail="no conclusion to validate")
    prop: HamProperty = PROPERTY[verdict.theorem_id]
    if isinstance(g, BipartiteGraph):
        plain = embed_bipartite(g)
    else:
        plain = g
    try:
        answer = HamiltonOracle(cap).check(plain, prop)
    except TooLarge as exc:
        return ValidationReport(theorem_id=verdict.theorem_id, status="too_large", property=str(prop), detail=str(exc))

    conclusion = verdict.conclusion
    evidence = {"verdict": verdict.model_dump(mode="json"), "oracle": answer.model_dump(mode="json")}
    if conclusion.kind == ConclusionKind.CERTIFIED:
        if not answer.holds:
            raise ValidationMismatch(f"{verdict.theorem_id.value} certified {prop} but the oracle refutes it", evidence)
        return ValidationReport(theorem_id=verdict.theorem_id, status="agree", property=str(prop), oracle=answer)
    if not conclusion.definitive:
        return ValidationReport(
            theorem_id=verdict.theorem_id,
            status="recorded",
            property=str(prop),
            oracle=answer,
            detail=f"set-valued exception {conclusion.family}; property {'holds' if answer.holds else 'fails'}",
        )
    if answer.holds:
        raise ValidationMismatch(f"{verdict.theorem_id.value} exception {conclusion.family} has {prop} after all", evidence)
    return ValidationReport(theorem_id=verdict.theorem_id, status="agree", property=str(prop), oracle=answer)


# -- sharpness ----------------------------------------------------------------


def verify_sharpness(lemma_id: str, n: int, k: int, tol: Optional[float] = None, cap: Optional[int] = None) -> SharpnessReport:
    """
    Delete each edge of the extremal graph in turn; every deletion that keeps
    minimum degree >= k must have mu strictly below the threshold.

    L2_9: extremal K_2 v (K_{n-k-1} + K_{k-1}), threshold n - k.
    L3_8: extremal C_n^k, threshold sqrt(n(n-k-1)).
    """
    if lemma_id == "L2_9":
        if k < 2 or n < 2 * k * k + 1:
            raise HypothesisNotMet(f"L2_9 needs k >= 2 and n >= 2k^2 + 1, got n = {n}, k = {k}")
        extremal = build_family(FamilySpec(id=FamilyId.K2_JOIN_SPLIT, n=n, k=k))
        limit = float(n - k)
    elif lemma_id == "L3_8":
        if k < 1 or n < k**3 / 2 + k + 2 or 2 * k > n:
            raise HypothesisNotMet(f"L3_8 needs k >= 1 and n >= k^3/2 + k + 2, got n = {n}, k = {k}")
        extremal = embed_bipartite(cnk(n, k))
        limit = math.sqrt(n * (n - k - 1))
    else:
        raise DomainError(f"unknown sharpness lemma {lemma_id!r}")

    cap = cap or settings.SHARPNESS_CAP
    if extremal.n > cap:
        raise TooLarge(extremal.n, cap, "sharpness")

    extremal_mu = adjacency_spectral_radius(extremal, tol=tol).value
    values = []
    violations = []
    for u, v in extremal.edges():
        sub = extremal.remove_edge(u, v)
        if sub.min_degree < k:
            continue
        mu = adjacency_spectral_radius(sub, tol=tol).value
        values.append(mu)
        if mu >= limit:
            violations.append([u, v])

    top = max(values) if values else None
    return SharpnessReport(
        lemma_id=lemma_id,
        n=n,
        k=k,
        threshold=limit,
        extremal_mu=extremal_mu,
        extremal_margin=extremal_mu - limit,
        admissible_deletions=len(values),
        max_subgraph_mu=top,
        margin=None if top is None else limit - top,
        violations=violations,
        holds=not violations,
    )


# -- the signless-Laplacian remark --------------------------------------------


def remark_polynomial_factored(n: int, k: int) -> int:
    """The factored value of the characteristic polynomial at x = 2n - k - 1."""
    return (k + 1 - 2 * n) * (k - n) * ((4 - k * k) * n * n + (-6 * k + k**3 - 4) * n + 1 + 3 * k * k + 3 * k + k**3)


def remark_polynomial_expanded(x: int, n: int, k: int) -> int:
    """det(B - xI) for the 6x6 quotient matrix B, in expanded integer form."""
    quartic = (
        x**4
        + (-4 * n + k + 4) * x**3
        + (-n * k + 6 + 5 * n * n - 2 * k * k - 11 * n + k) * x**2
        + (7 * n * n + 5 * n * k + 2 + 6 * n * k * k - 2 * n * n * k - 7 * n - 2 * n**3 - 6 * k * k - 2 * k**3 - 3 * k) * x
        + 2 * n * k**3 - k**3 - 2 * k - 3 * k * k + 8 * n * k * k + 7 * n * k + 2 * n**3 * k - 4 * n * n * k * k - 7 * n * n * k
    )
    return -x * (n - 1 - x) * quartic


def remark_quotient_matrix(n: int, k: int) -> np.ndarray:
    """
    Quotient matrix of Q(C_n^k - uv) over the classes (X1, X2 - u, Y1 - v,
    Y2, {u}, {v}), where u is in X2 and v in Y1.
    """
    return np.array(
        [
            [k, 0, 0, k, 0, 0],
            [0, n, n - k - 1, k, 0, 1],
            [0, n - k - 2, n - k - 1, 0, 1, 0],
            [k, n - k - 2, 0, n - 1, 1, 0],
            [0, 0, n - k - 1, k, n - 1, 0],
            [0, n - k - 2, 0, 0, 0, n - k - 2],
        ],
        dtype=np.float64,
    )


def remark_polynomial_quotient(x: float, n: int, k: int) -> float:
    b = remark_quotient_matrix(n, k)
    return float(scipy.linalg.det(b - x * np.eye(6)))


def remark_graph(n: int, k: int) -> BipartiteGraph:
    """C_n^k minus one edge between the first vertex of X2 and the first of Y1."""
    return cnk(n, k).remove_edge(k, 0)


def check_remark_3_11(n: int, k: int, tol: Optional[float] = None, cap: Optional[int] = None) -> RemarkReport:
    """
    Evaluate the remark that a proper subgraph of C_n^k can still satisfy the
    signless-Laplacian condition: the sign of the quotient polynomial at
    2n - k - 1 and, when the order allows, q of the graph itself.
    """
    if k < 1 or n < (k + 1) ** 2:
        raise HypothesisNotMet(f"remark needs k >= 1 and n >= (k+1)^2, got n = {n}, k = {k}")
    x = 2 * n - k - 1
    factored = remark_polynomial_factored(n, k)
    expanded = remark_polynomial_expanded(x, n, k)
    quotient = remark_polynomial_quotient(x, n, k)
    radius = float(max(np.linalg.eigvals(remark_quotient_matrix(n, k)).real))
    limit = threshold(TheoremId.T3_11, n, k)

    b = remark_graph(n, k)
    cap = cap or settings.SHARPNESS_CAP
    q = exceeds = None
    if b.order <= cap:
        q = q_spectral_radius(embed_bipartite(b), tol=tol).value
        exceeds = q > x
    sign_negative = factored < 0
    note = None
    if not sign_negative:
        note = f"f({x}) = {factored} is not negative, so this (n, k) gives no q > {x}"
    return RemarkReport(
        n=n,
        k=k,
        x=x,
        f_factored=factored,
        f_expanded=expanded,
        f_quotient=quotient,
        sign_negative=sign_negative,
        quotient_radius=radius,
        q=q,
        q_exceeds_x=exceeds,
        removed_edge=[k, 0],
        min_degree_ok=b.min_degree >= k,
        t311_threshold=limit,
        x_at_least_threshold=x >= limit,
        holds=sign_negative and exceeds is not False,
        note=note,
    )
