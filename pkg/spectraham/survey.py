"""
Seeded random sweeps: draw graphs, run every applicable theorem, confirm each
Certified verdict with the exact oracle and tabulate the outcomes.
"""

import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field
from tqdm import tqdm

from .config import settings
from .errors import ValidationMismatch
from .formats import write_graph6
from .graph import BipartiteGraph, Graph, embed_bipartite
from .theorems import (
    BIPARTITE_THEOREMS,
    ConclusionKind,
    HypothesisStatus,
    TheoremChecker,
    TheoremId,
    cross_validate,
)

logger = logging.getLogger(__name__)

REGIMES = ("simple", "bipartite")
MODES = ("filter", "repair")


class SurveyResult(BaseModel):
    regime: str
    mode: str
    n: int
    k: int
    samples: int
    seed: Optional[int] = None
    rejected: int = 0
    table: List[Dict[str, Any]] = Field(default_factory=list)
    counterexamples: List[Dict[str, Any]] = Field(default_factory=list)


class SurveyRunner:
    """
    Sweeps G(n, p) samples (or nearly balanced bipartite samples with |Y| = n)
    whose minimum degree is at least k.

    In "filter" mode samples below minimum degree k are redrawn up to
    MAX_ATTEMPTS times; in "repair" mode random edges are added at deficient
    vertices. When p is None each sample draws its own p from [P_LOW, 1).
    """

    MAX_ATTEMPTS = 200
    P_LOW = 0.5

    def __init__(
        self,
        n: int,
        k: int,
        regime: str = "simple",
        mode: str = "filter",
        p: Optional[float] = None,
        threads: Optional[int] = None,
        oracle_cap: Optional[int] = None,
        epsilon: Optional[float] = None,
        quiet: bool = False,
    ):
        if regime not in REGIMES:
            raise ValueError(f"unknown regime {regime!r}; expected one of {REGIMES}")
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
        self.n = n
        self.k = k
        self.regime = regime
        self.mode = mode
        self.p = p
        self.threads = threads or settings.THREADS
        self.oracle_cap = oracle_cap
        self.checker = TheoremChecker(epsilon=epsilon)
        self.quiet = quiet

    @property
    def theorems(self) -> List[TheoremId]:
        if self.regime == "bipartite":
            return [t for t in TheoremId if t in BIPARTITE_THEOREMS]
        return [t for t in TheoremId if t not in BIPARTITE_THEOREMS]

    def run(self, samples: int, seed: Optional[int] = None) -> SurveyResult:
        children = np.random.SeedSequence(seed).spawn(samples)
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            outcomes = list(
                tqdm(
                    pool.map(self._one_sample, children),
                    total=samples,
                    disable=self.quiet,
                    file=sys.stderr,
                    desc=f"survey {self.regime} n={self.n} k={self.k}",
                )
            )

        rows: List[Dict[str, Any]] = []
        counterexamples: List[Dict[str, Any]] = []
        rejected = 0
        for index, outcome in enumerate(outcomes):
            if outcome is None:
                rejected += 1
                continue
            sample_rows, found = outcome
            for row in sample_rows:
                row["sample"] = index
            rows.extend(sample_rows)
            counterexamples.extend(found)
        if rejected:
            logger.info("survey: %d of %d samples never reached minimum degree %d", rejected, samples, self.k)
        return SurveyResult(
            regime=self.regime,
            mode=self.mode,
            n=self.n,
            k=self.k,
            samples=samples,
            seed=seed,
            rejected=rejected,
            table=summarize(rows, self.theorems),
            counterexamples=counterexamples,
        )

    # -- sampling -----------------------------------------------------------

    def _one_sample(self, seq: np.random.SeedSequence) -> Optional[Tuple[List[Dict[str, Any]], List[Dict[str, Any]]]]:
        rng = np.random.default_rng(seq)
        drawn = self._draw(rng)
        if drawn is None:
            return None
        g, x_size = drawn
        return self._evaluate(g, x_size)

    def _draw(self, rng: np.random.Generator) -> Optional[Tuple[Graph, Optional[int]]]:
        attempts = self.MAX_ATTEMPTS if self.mode == "filter" else 1
        for _ in range(attempts):
            p = self.p if self.p is not None else float(rng.uniform(self.P_LOW, 1.0))
            if self.regime == "simple":
                upper = np.triu(rng.random((self.n, self.n)) < p, k=1)
                g = Graph.from_edges(self.n, zip(*np.nonzero(upper)))
                if self.mode == "repair":
                    g = repair_min_degree(g, self.k, rng)
                if g.min_degree >= self.k:
                    return g, None
            else:
                mask = rng.random((self.n - 1, self.n)) < p
                b = BipartiteGraph.from_edges(self.n - 1, self.n, zip(*np.nonzero(mask)))
                if self.mode == "repair":
                    b = repair_bipartite_min_degree(b, self.k, rng)
                if b.min_degree >= self.k:
                    return embed_bipartite(b), b.x_size
        return None

    def _evaluate(self, g: Graph, x_size: Optional[int]) -> Tuple[List[Dict[str, Any]], List[Dict[str, Any]]]:
        rows: List[Dict[str, Any]] = []
        found: List[Dict[str, Any]] = []
        for theorem_id in self.theorems:
            verdict = self.checker.check(theorem_id, g, self.k, x_size=x_size)
            conclusion = verdict.conclusion
            row = {
                "theorem": theorem_id.value,
                "met": verdict.hypothesis == HypothesisStatus.MET,
                "boundary": verdict.hypothesis == HypothesisStatus.BOUNDARY,
                "certified": conclusion is not None and conclusion.kind == ConclusionKind.CERTIFIED,
                "exception": conclusion is not None and conclusion.kind == ConclusionKind.EXCEPTION,
                "confirmed": False,
                "counterexample": False,
            }
            if row["certified"]:
                try:
                    report = cross_validate(verdict, g, x_size=x_size, cap=self.oracle_cap)
                    row["confirmed"] = report.status == "agree"
                except ValidationMismatch as exc:
                    logger.error("survey counterexample for %s: %s", theorem_id.value, exc)
                    row["counterexample"] = True
                    found.append({"theorem": theorem_id.value, "graph6": write_graph6(g), "x_size": x_size})
            rows.append(row)
        return rows, found


def repair_min_degree(g: Graph, k: int, rng: np.random.Generator) -> Graph:
    """Join each vertex of degree < k to random non-neighbours until it reaches k."""
    for v in range(g.n):
        missing = k - g.degree(v)
        if missing <= 0:
            continue
        candidates = [u for u in range(g.n) if u != v and not g.has_edge(u, v)]
        for u in rng.permutation(candidates)[:missing]:
            g = g.add_edge(v, int(u))
    return g


def repair_bipartite_min_degree(b: BipartiteGraph, k: int, rng: np.random.Generator) -> BipartiteGraph:
    for i in range(b.x_size):
        missing = k - b.x_degrees[i]
        if missing > 0:
            free = [j for j in range(b.y_size) if not b.has_edge(i, j)]
            for j in rng.permutation(free)[:missing]:
                b = b.add_edge(i, int(j))
    for j in range(b.y_size):
        missing = k - b.y_degrees[j]
        if missing > 0:
            free = [i for i in range(b.x_size) if not b.has_edge(i, j)]
            for i in rng.permutation(free)[:missing]:
                b = b.add_edge(int(i), j)
    return b


def summarize(rows: List[Dict[str, Any]], theorems: List[TheoremId]) -> List[Dict[str, Any]]:
    """Per-theorem counts; theorems with no rows still get a zero line."""
    columns = ["met", "boundary", "certified", "exception", "confirmed", "counterexample"]
    if rows:
        frame = pd.DataFrame(rows)
        counts = frame.groupby("theorem")[columns].sum().astype(int)
        checked = frame.groupby("theorem").size()
    else:
        counts = pd.DataFrame(columns=columns, dtype=int)
        checked = pd.Series(dtype=int)
    table = []
    for theorem_id in theorems:
        name = theorem_id.value
        line: Dict[str, Any] = {"theorem": name, "checked": int(checked.get(name, 0))}
        for column in columns:
            line[column] = int(counts.loc[name, column]) if name in counts.index else 0
        table.append(line)
    return table


def run_survey(
    n: int,
    k: int,
    samples: int,
    seed: Optional[int] = None,
    regime: str = "simple",
    mode: str = "filter",
    **kwargs: Any,
) -> SurveyResult:
    return SurveyRunner(n, k, regime=regime, mode=mode, **kwargs).run(samples, seed)
