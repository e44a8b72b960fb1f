import numpy as np
import pytest

from spectraham.graph import BipartiteGraph, empty_graph
from spectraham.survey import SurveyRunner, repair_bipartite_min_degree, repair_min_degree, run_survey, summarize
from spectraham.theorems import TheoremId


def test_same_seed_same_table():
    first = run_survey(6, 2, samples=4, seed=1, quiet=True)
    second = run_survey(6, 2, samples=4, seed=1, quiet=True, threads=2)
    assert first.table == second.table
    assert first.counterexamples == second.counterexamples


def test_table_covers_every_theorem_of_the_regime():
    result = run_survey(6, 2, samples=3, seed=4, quiet=True)
    assert [line["theorem"] for line in result.table] == ["T2_10", "T2_11", "T2_12", "T2_13"]
    for line in result.table:
        assert line["checked"] == result.samples - result.rejected
        # every certified verdict went to the oracle
        assert line["certified"] == line["confirmed"] + line["counterexample"]


def test_bipartite_regime():
    runner = SurveyRunner(4, 1, regime="bipartite", quiet=True)
    assert runner.theorems == [TheoremId.T3_9, TheoremId.T3_10, TheoremId.T3_11]
    result = runner.run(3, seed=2)
    assert result.regime == "bipartite"
    assert len(result.table) == 3


def test_repair_mode_never_rejects():
    result = run_survey(7, 3, samples=3, seed=9, mode="repair", p=0.2, quiet=True)
    assert result.rejected == 0


def test_invalid_settings():
    with pytest.raises(ValueError):
        SurveyRunner(6, 2, regime="directed")
    with pytest.raises(ValueError):
        SurveyRunner(6, 2, mode="resample")


def test_repairs_reach_the_minimum_degree():
    rng = np.random.default_rng(0)
    assert repair_min_degree(empty_graph(6), 3, rng).min_degree >= 3
    b = repair_bipartite_min_degree(BipartiteGraph.empty(4, 5), 2, rng)
    assert b.min_degree >= 2


def test_summarize_without_rows():
    table = summarize([], [TheoremId.T3_9])
    assert table == [
        {
            "theorem": "T3_9",
            "checked": 0,
            "met": 0,
            "boundary": 0,
            "certified": 0,
            "exception": 0,
            "confirmed": 0,
            "counterexample": 0,
        }
    ]


@pytest.mark.slow
def test_simple_sweep_finds_no_counterexample():
    result = run_survey(10, 2, samples=200, seed=2024, quiet=True, threads=4)
    assert result.counterexamples == []


@pytest.mark.slow
def test_bipartite_sweep_finds_no_counterexample():
    result = run_survey(9, 2, samples=200, seed=2024, regime="bipartite", quiet=True, threads=4)
    assert result.counterexamples == []
