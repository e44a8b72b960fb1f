import json

import pytest

from spectraham import cli
from spectraham.config import settings
from spectraham.families import bnk, cnk
from spectraham.graph import BipartiteGraph, cycle_graph, path_graph
from spectraham.reports import SCHEMA_VERSION


def run(capsys, *argv):
    code, report = cli.run_command(list(argv))
    captured = capsys.readouterr()
    doc = json.loads(captured.out) if captured.out.strip().startswith("{") else None
    return code, report, doc, captured.err


def test_mu_report(capsys, k9_file):
    code, report, doc, _ = run(capsys, "mu", "--in", str(k9_file))
    assert code == 0
    assert doc["schema_version"] == SCHEMA_VERSION
    assert doc["command"]["name"] == "mu"
    assert doc["results"][0]["value"] == pytest.approx(8.0)
    assert doc["input_digest"] == report.input_digest
    assert "generated_at" in doc


def test_q_with_forced_method(capsys, k9_file):
    code, _, doc, _ = run(capsys, "q", "--in", str(k9_file), "--method", "ShiftedPowerIteration")
    assert code == 0
    assert doc["results"][0]["value"] == pytest.approx(16.0)
    assert doc["results"][0]["method"] == "ShiftedPowerIteration"


def test_reports_are_reproducible(capsys, k9_file):
    _, first, _, _ = run(capsys, "bounds", "--in", str(k9_file))
    _, second, _, _ = run(capsys, "bounds", "--in", str(k9_file))
    assert first.payload() == second.payload()
    assert first.results[0]["hong_shu_upper"] == pytest.approx(8.0)


def test_report_to_file(capsys, tmp_path, k9_file):
    out = tmp_path / "report.json"
    code, _, doc, _ = run(capsys, "mu", "--in", str(k9_file), "--out", str(out))
    assert code == 0 and doc is None
    assert json.loads(out.read_text())["command"]["argv"] == ["mu", "--in", str(k9_file), "--out", str(out)]


def test_gen_bipartite_family(capsys, tmp_path):
    graph_out = tmp_path / "c41.g6"
    code, _, doc, _ = run(capsys, "gen", "--family", "Cnk", "--n", "4", "--k", "1", "--graph-out", str(graph_out))
    assert code == 0
    entry = doc["results"][0]
    assert entry["family"] == "Cnk(4,1)"
    assert entry["x_size"] == 3
    assert entry["part_mask"] == "1110000"
    assert json.loads((tmp_path / "c41.g6.json").read_text())["x_size"] == 3


def test_gen_samples_are_seeded(capsys, tmp_path):
    argv = ["gen", "--family", "ESn(6)", "--count", "3", "--seed", "8", "--graph-out", str(tmp_path / "es.g6")]
    _, first, _, _ = run(capsys, *argv)
    _, second, _, _ = run(capsys, *argv)
    assert len(first.results) == 3
    assert first.seed == 8
    assert first.payload() == second.payload()
    assert len((tmp_path / "es.g6").read_text().splitlines()) == 3


def test_gen_rejects_bad_family(capsys):
    code, _, _, err = run(capsys, "gen", "--family", "Bnk(5,3)")
    assert code == 2
    assert "out of range" in err


def test_check_certified_with_validation(capsys, k9_file):
    code, _, doc, _ = run(capsys, "check", "--in", str(k9_file), "--theorem", "T2_10", "--k", "2", "--validate")
    assert code == 0
    verdict = doc["results"][0]
    assert verdict["hypothesis"] == "Met"
    assert verdict["conclusion"]["kind"] == "Certified"
    assert verdict["validation"]["status"] == "agree"


def test_check_exception_exits_1(capsys, graph_file):
    path = graph_file(cycle_graph(5), "c5.g6")
    code, _, doc, _ = run(capsys, "check", "--in", str(path), "--theorem", "T2_13", "--k", "2")
    assert code == 1
    assert doc["results"][0]["conclusion"]["family"] == "EWn(5)"


def test_check_all(capsys, k9_file):
    code, _, doc, _ = run(capsys, "check", "--in", str(k9_file), "--theorem", "all", "--k", "2")
    assert code == 0
    assert [r["theorem_id"] for r in doc["results"]] == ["T2_10", "T2_11", "T2_12", "T2_13", "T3_9", "T3_10", "T3_11"]
    assert doc["results"][4]["detail"] == "graph is not bipartite"


def test_check_bipartite_sidecar(capsys, bipartite_file):
    path = bipartite_file(cnk(4, 1))
    code, _, doc, _ = run(capsys, "check", "--in", str(path), "--theorem", "T3_11", "--k", "1")
    assert code == 1
    assert doc["results"][0]["conclusion"]["family"] == "subgraph of Cnk(4,1)"


def test_oracle(capsys, k9_file, graph_file):
    code, _, doc, _ = run(capsys, "oracle", "--in", str(k9_file), "--property", "HamiltonConnected")
    assert code == 0 and doc["results"][0]["holds"]
    path = graph_file(path_graph(5), "p5.g6")
    code, _, doc, _ = run(capsys, "oracle", "--in", str(path))
    assert code == 1
    assert doc["results"][0]["property"] == "Hamiltonian"
    code, _, doc, _ = run(capsys, "oracle", "--in", str(path), "--property", "TraceableFrom(0)")
    assert code == 0 and doc["results"][0]["witness"][0] == 0


def test_closure_commands(capsys, graph_file, bipartite_file):
    path = graph_file(cycle_graph(4), "c4.g6")
    code, _, doc, _ = run(capsys, "closure", "--in", str(path), "--k", "4")
    assert code == 0
    assert doc["results"][0]["added_edges"] == [[0, 2], [1, 3]]

    almost = bipartite_file(BipartiteGraph.complete(3, 3).remove_edge(0, 0))
    code, _, doc, _ = run(capsys, "closure", "--in", str(almost))
    assert doc["results"][0]["added_edges"] == [[0, 0]]
    assert doc["results"][0]["threshold"] == 4
    assert doc["results"][0]["closed"]["edge_count"] == 9


def test_conditions(capsys, k9_file, bipartite_file):
    _, _, doc, _ = run(capsys, "conditions", "--in", str(k9_file))
    assert [r["condition_id"] for r in doc["results"]] == ["ore", "degree_sequence"]
    assert all(r["satisfied"] for r in doc["results"])
    _, _, doc, _ = run(capsys, "conditions", "--in", str(bipartite_file(bnk(5, 2))), "--k", "2")
    assert doc["results"][-1]["condition_id"] == "bipartite_edges_balanced"
    assert doc["results"][-1]["satisfied"] is False


def test_sharpness_and_remark(capsys):
    code, _, doc, _ = run(capsys, "sharpness", "--lemma", "L2_9", "--n", "9", "--k", "2")
    assert code == 0 and doc["results"][0]["holds"]
    code, _, doc, _ = run(capsys, "remark", "--n", "9", "--k", "2")
    assert code == 0 and doc["results"][0]["f_factored"] == -4725
    code, _, doc, _ = run(capsys, "remark", "--n", "4", "--k", "1")
    assert code == 1 and doc["results"][0]["holds"] is False
    code, _, _, _ = run(capsys, "remark", "--n", "3", "--k", "2")
    assert code == 2


def test_survey_command(capsys):
    code, _, doc, _ = run(capsys, "-q", "survey", "--n", "6", "--k", "2", "--samples", "3", "--seed", "5")
    result = doc["results"][0]
    assert doc["seed"] == 5
    assert len(result["table"]) == 4
    assert code == (1 if result["counterexamples"] else 0)


def test_convert(capsys, tmp_path, bipartite_file):
    path = bipartite_file(cnk(3, 1))
    code, _, doc, _ = run(capsys, "convert", "--in", str(path), "--to", "json")
    assert code == 0
    assert json.loads(doc["results"][0]["text"])["x_size"] == 2
    dot_out = tmp_path / "c31.dot"
    run(capsys, "convert", "--in", str(path), "--to", "dot", "--graph-out", str(dot_out))
    assert "shape=box" in dot_out.read_text()


@pytest.mark.parametrize(
    "argv",
    [
        ["mu", "--in", "does-not-exist.g6"],
        ["check", "--in", "IN", "--theorem", "T9_9", "--k", "2"],
        ["oracle", "--in", "IN", "--property", "Eulerian"],
        ["mu"],
        ["mu", "--in", "IN", "--format", "dot"],
        ["--seed", "1", "mu", "--in", "IN"],
        ["nonsense"],
    ],
)
def test_usage_errors_exit_2(capsys, k9_file, argv):
    argv = [str(k9_file) if a == "IN" else a for a in argv]
    code, _, _, _ = run(capsys, *argv)
    assert code == 2


def test_malformed_input_exits_2(capsys, tmp_path):
    path = tmp_path / "bad.g6"
    path.write_text("Bx\n")
    code, _, _, err = run(capsys, "mu", "--in", str(path))
    assert code == 2
    assert "padding" in err


def test_wrong_part_size_exits_2(capsys, k9_file):
    code, _, _, _ = run(capsys, "mu", "--in", str(k9_file), "--x-size", "3")
    assert code == 2


def test_convergence_failure_exits_3(capsys, monkeypatch, k9_file):
    monkeypatch.setattr(settings, "MAX_ITERATIONS", 5)
    code, _, _, err = run(capsys, "--tol=-1", "mu", "--in", str(k9_file), "--method", "ShiftedPowerIteration")
    assert code == 3
    assert "did not converge" in err
