"""
Command-line front end.

Every subcommand builds a ReportDocument and writes it as JSON to stdout or
--out. Exit codes: 0 completed, 1 property refuted or verdict Exception,
2 usage or input error, 3 internal failure.
"""

import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import click

from .closure import bipartite_closure, k_closure
from .conditions import bipartite_edge_conditions, degree_sequence_hc, ore_hamilton_connected
from .config import settings
from .errors import ConvergenceFailure, SpectrahamError, ValidationMismatch
from .families import FamilySpec, build_family, sample_family_members
from .formats import FORMATS, dump_graph, load_graph_file, load_graph_text, write_graph6, write_sidecar
from .graph import BipartiteGraph, Graph, embed_bipartite
from .oracle import HamiltonOracle, HamProperty
from .reports import ReportDocument, graph_digest, new_report
from .spectral import SpectralMethod, adjacency_spectral_radius, bounds_report, q_spectral_radius
from .survey import MODES, REGIMES, SurveyRunner
from .theorems import (
    THM211_VARIANTS,
    ConclusionKind,
    TheoremChecker,
    TheoremId,
    check_remark_3_11,
    cross_validate,
    verify_sharpness,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3

INTERNAL_ERRORS = (ConvergenceFailure, ValidationMismatch)


# -- shared plumbing ----------------------------------------------------------


def _options(ctx: click.Context) -> Dict[str, Any]:
    merged = dict(ctx.parent.params) if ctx.parent else {}
    merged.update(ctx.params)
    return {key: value for key, value in sorted(merged.items()) if value is not None}


def _start(ctx: click.Context, seed: Optional[int] = None) -> ReportDocument:
    report = new_report(ctx.info_name, ctx.obj["argv"], _options(ctx), seed=seed)
    ctx.obj["report"] = report
    return report


def _load(path: str, fmt: Optional[str], x_size: Optional[int]) -> Tuple[Graph, Optional[int]]:
    if path == "-":
        g, found = load_graph_text(click.get_text_stream("stdin").read(), fmt or "graph6")
    else:
        g, found = load_graph_file(path, fmt)
    if x_size is not None:
        BipartiteGraph.from_graph(g, x_size)
        found = x_size
    return g, found


def _emit(report: ReportDocument, out: Optional[str]) -> None:
    text = report.to_json()
    if out in (None, "-"):
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text)


def _graph_entry(g: Graph, x_size: Optional[int]) -> Dict[str, Any]:
    entry: Dict[str, Any] = {"graph6": write_graph6(g), "order": g.n, "edge_count": g.edge_count}
    if x_size is not None:
        entry["x_size"] = x_size
        entry["part_mask"] = "".join("1" if v < x_size else "0" for v in range(g.n))
    return entry


def _as_plain(graph) -> Tuple[Graph, Optional[int]]:
    if isinstance(graph, BipartiteGraph):
        return embed_bipartite(graph), graph.x_size
    return graph, None


def _write_graphs(path: str, graphs: List[Tuple[Graph, Optional[int]]], fmt: str) -> None:
    if fmt == "graph6":
        Path(path).write_text("".join(dump_graph(g, "graph6") for g, _ in graphs))
        x_sizes = {x for _, x in graphs}
        if len(x_sizes) == 1 and None not in x_sizes:
            write_sidecar(path, x_sizes.pop())
        return
    if len(graphs) != 1:
        raise click.UsageError(f"{fmt} output holds a single graph; use graph6 for several")
    g, x_size = graphs[0]
    Path(path).write_text(dump_graph(g, fmt, x_size))


def graph_input(func):
    func = click.option("--x-size", type=int, default=None, help="Size of the X part (first vertices).")(func)
    func = click.option("--format", "fmt", type=click.Choice(["graph6", "json"]), default=None, help="Input format.")(func)
    func = click.option("--in", "in_path", required=True, help="Input graph file, or '-' for stdin.")(func)
    return func


def report_output(func):
    return click.option("--out", default=None, help="Report destination (default stdout).")(func)


# -- commands -----------------------------------------------------------------


@click.group()
@click.option("--tol", type=float, default=None, help=f"Eigen residual tolerance (default {settings.TOLERANCE:g}).")
@click.option("--epsilon", type=float, default=None, help=f"Boundary slack (default {settings.BOUNDARY_EPSILON:g}).")
@click.option("--oracle-cap", type=int, default=None, help=f"Largest order for exact search (default {settings.ORACLE_CAP}).")
@click.option("--thm211-variant", type=click.Choice(THM211_VARIANTS), default=None)
@click.option("--verbose", "-v", is_flag=True, default=False)
@click.option("--quiet", "-q", is_flag=True, default=False)
@click.pass_context
def cli(ctx: click.Context, tol, epsilon, oracle_cap, thm211_variant, verbose, quiet):
    """Spectral conditions for Hamiltonian properties of graphs."""
    ctx.ensure_object(dict)
    ctx.obj.setdefault("argv", [])
    level = logging.DEBUG if verbose else (logging.ERROR if quiet else settings.LOG_LEVEL)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s", force=True)


@cli.command()
@click.option("--family", required=True, help="Family name, e.g. Cnk, or a full spec such as Cnk(6,2).")
@click.option("--n", type=int, default=None)
@click.option("--k", type=int, default=None)
@click.option("--count", type=int, default=None, help="Sample this many members of a set-valued family.")
@click.option("--seed", type=int, default=None)
@click.option("--graph-out", default=None, help="Also write the graph(s) to this file.")
@click.option("--to", "out_fmt", type=click.Choice(FORMATS), default="graph6")
@report_output
@click.pass_context
def gen(ctx, family, n, k, count, seed, graph_out, out_fmt, out):
    """Generate a member of a named family."""
    spec = FamilySpec.parse(family)
    if n is not None or k is not None:
        spec = FamilySpec(id=spec.id, n=n if n is not None else spec.n, k=k if k is not None else spec.k)
    report = _start(ctx, seed=seed)
    members = sample_family_members(spec, count, seed) if count else [build_family(spec)]
    graphs = [_as_plain(m) for m in members]
    for g, x_size in graphs:
        report.results.append({"family": str(spec), **_graph_entry(g, x_size)})
    if len(graphs) == 1:
        report.input_digest = graph_digest(*graphs[0])
    if graph_out:
        _write_graphs(graph_out, graphs, out_fmt)
    _emit(report, out)
    return EXIT_OK


def _spectral_command(ctx, in_path, fmt, x_size, method, out, which):
    g, x_size = _load(in_path, fmt, x_size)
    report = _start(ctx)
    report.input_digest = graph_digest(g, x_size)
    solve = adjacency_spectral_radius if which == "mu" else q_spectral_radius
    result = solve(g, tol=ctx.parent.params["tol"], method=SpectralMethod(method) if method else None)
    report.results.append(result.model_dump(mode="json"))
    _emit(report, out)
    return EXIT_OK


@cli.command()
@graph_input
@click.option("--method", type=click.Choice([m.value for m in SpectralMethod]), default=None)
@report_output
@click.pass_context
def mu(ctx, in_path, fmt, x_size, method, out):
    """Adjacency spectral radius with its Perron vector."""
    return _spectral_command(ctx, in_path, fmt, x_size, method, out, "mu")


@cli.command()
@graph_input
@click.option("--method", type=click.Choice([m.value for m in SpectralMethod]), default=None)
@report_output
@click.pass_context
def q(ctx, in_path, fmt, x_size, method, out):
    """Signless Laplacian spectral radius."""
    return _spectral_command(ctx, in_path, fmt, x_size, method, out, "q")


@cli.command()
@graph_input
@report_output
@click.pass_context
def bounds(ctx, in_path, fmt, x_size, out):
    """Degree and edge-count bounds next to the computed mu and q."""
    g, x_size = _load(in_path, fmt, x_size)
    report = _start(ctx)
    report.input_digest = graph_digest(g, x_size)
    tol = ctx.parent.params["tol"]
    mu_value = adjacency_spectral_radius(g, tol=tol).value
    q_value = q_spectral_radius(g, tol=tol).value
    found = bounds_report(g, x_size=x_size, mu=mu_value)
    report.results.append({"mu": mu_value, "q": q_value, **found.model_dump(mode="json")})
    _emit(report, out)
    return EXIT_OK


@cli.command()
@graph_input
@click.option("--k", type=int, default=None, help="Degree-sum threshold (default n); omit with --x-size for the bipartite closure.")
@click.option("--order", type=click.Choice(["lex", "reverse"]), default="lex")
@report_output
@click.pass_context
def closure(ctx, in_path, fmt, x_size, k, order, out):
    """k-closure, or the bipartite closure of a balanced bipartite graph."""
    g, x_size = _load(in_path, fmt, x_size)
    report = _start(ctx)
    report.input_digest = graph_digest(g, x_size)
    if k is None and x_size is not None:
        result = bipartite_closure(BipartiteGraph.from_graph(g, x_size), order=order)
        closed, closed_x = embed_bipartite(result.closed_graph), x_size
    else:
        result = k_closure(g, g.n if k is None else k, order=order)
        closed, closed_x = result.closed_graph, None
    report.results.append(
        {
            "closed": _graph_entry(closed, closed_x),
            "added_edges": [list(e) for e in result.added_edges],
            "threshold": result.threshold,
        }
    )
    _emit(report, out)
    return EXIT_OK


@cli.command()
@graph_input
@click.option("--k", type=int, default=None, help="Minimum degree for the bipartite edge conditions.")
@report_output
@click.pass_context
def conditions(ctx, in_path, fmt, x_size, k, out):
    """Ore-type, degree-sequence and bipartite edge-count conditions."""
    g, x_size = _load(in_path, fmt, x_size)
    report = _start(ctx)
    report.input_digest = graph_digest(g, x_size)
    if g.n >= 3:
        report.results.append(ore_hamilton_connected(g).model_dump(mode="json"))
        report.results.append(degree_sequence_hc(g).model_dump(mode="json"))
    if x_size is not None and k is not None:
        try:
            verdict = bipartite_edge_conditions(BipartiteGraph.from_graph(g, x_size), k)
            report.results.append(verdict.model_dump(mode="json"))
        except SpectrahamError as exc:
            report.results.append({"condition_id": "bipartite_edges", "error": str(exc)})
    _emit(report, out)
    return EXIT_OK


def _parse_property(ctx, param, value):
    try:
        return HamProperty.parse(value)
    except (ValueError, SpectrahamError) as exc:
        raise click.BadParameter(str(exc)) from exc


@cli.command()
@graph_input
@click.option("--property", "prop", default="Hamiltonian", callback=_parse_property,
              help="Hamiltonian, Traceable, HamiltonConnected, TraceableFromEveryVertex or TraceableFrom(v).")
@report_output
@click.pass_context
def oracle(ctx, in_path, fmt, x_size, prop, out):
    """Decide a Hamiltonian property exactly."""
    g, x_size = _load(in_path, fmt, x_size)
    report = _start(ctx)
    report.input_digest = graph_digest(g, x_size)
    answer = HamiltonOracle(ctx.parent.params["oracle_cap"]).check(g, prop)
    report.results.append({"property": str(prop), **answer.model_dump(mode="json")})
    _emit(report, out)
    return EXIT_OK if answer.holds else EXIT_REFUTED


@cli.command()
@graph_input
@click.option("--theorem", "theorems", multiple=True, required=True,
              type=click.Choice([t.value for t in TheoremId] + ["all"]))
@click.option("--k", type=int, required=True)
@click.option("--validate", is_flag=True, default=False, help="Confirm conclusions with the exact oracle.")
@report_output
@click.pass_context
def check(ctx, in_path, fmt, x_size, theorems, k, validate, out):
    """Evaluate theorem hypotheses and conclusions on a graph."""
    g, x_size = _load(in_path, fmt, x_size)
    report = _start(ctx)
    report.input_digest = graph_digest(g, x_size)
    params = ctx.parent.params
    checker = TheoremChecker(epsilon=params["epsilon"], tol=params["tol"], variant=params["thm211_variant"])
    ids = list(TheoremId) if "all" in theorems else [TheoremId(t) for t in theorems]
    code = EXIT_OK
    for theorem_id in ids:
        verdict = checker.check(theorem_id, g, k, x_size=x_size)
        entry = verdict.model_dump(mode="json")
        if validate:
            entry["validation"] = cross_validate(verdict, g, x_size=x_size, cap=params["oracle_cap"]).model_dump(mode="json")
        report.results.append(entry)
        if verdict.conclusion is not None and verdict.conclusion.kind == ConclusionKind.EXCEPTION:
            code = EXIT_REFUTED
    _emit(report, out)
    return code


@cli.command()
@click.option("--lemma", type=click.Choice(["L2_9", "L3_8"]), required=True)
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@report_output
@click.pass_context
def sharpness(ctx, lemma, n, k, out):
    """Check that no admissible edge-deleted subgraph reaches the threshold."""
    report = _start(ctx)
    result = verify_sharpness(lemma, n, k, tol=ctx.parent.params["tol"])
    report.results.append(result.model_dump(mode="json"))
    _emit(report, out)
    return EXIT_OK if result.holds else EXIT_REFUTED


@cli.command()
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@report_output
@click.pass_context
def remark(ctx, n, k, out):
    """Signless Laplacian radius of C_n^k minus one edge against 2n - k - 1."""
    report = _start(ctx)
    result = check_remark_3_11(n, k, tol=ctx.parent.params["tol"])
    report.results.append(result.model_dump(mode="json"))
    _emit(report, out)
    return EXIT_OK if result.holds else EXIT_REFUTED


@cli.command()
@click.option("--n", type=int, required=True, help="Order (simple regime) or |Y| (bipartite regime).")
@click.option("--k", type=int, required=True)
@click.option("--samples", type=int, default=1000)
@click.option("--seed", type=int, default=None)
@click.option("--regime", type=click.Choice(REGIMES), default="simple")
@click.option("--mode", type=click.Choice(MODES), default="filter")
@click.option("--p", "p", type=float, default=None, help="Edge probability (default: drawn per sample).")
@click.option("--threads", type=int, default=None)
@report_output
@click.pass_context
def survey(ctx, n, k, samples, seed, regime, mode, p, threads, out):
    """Random sweep: hypothesis, certification and oracle confirmation counts."""
    params = ctx.parent.params
    report = _start(ctx, seed=seed)
    runner = SurveyRunner(
        n,
        k,
        regime=regime,
        mode=mode,
        p=p,
        threads=threads,
        oracle_cap=params["oracle_cap"],
        epsilon=params["epsilon"],
        quiet=params["quiet"],
    )
    result = runner.run(samples, seed)
    report.results.append(result.model_dump(mode="json"))
    _emit(report, out)
    return EXIT_REFUTED if result.counterexamples else EXIT_OK


@cli.command()
@graph_input
@click.option("--to", "out_fmt", type=click.Choice(FORMATS), default="graph6")
@click.option("--graph-out", default=None, help="Write the converted graph here.")
@report_output
@click.pass_context
def convert(ctx, in_path, fmt, x_size, out_fmt, graph_out, out):
    """Re-encode a graph as graph6, JSON or DOT."""
    g, x_size = _load(in_path, fmt, x_size)
    report = _start(ctx)
    report.input_digest = graph_digest(g, x_size)
    text = dump_graph(g, out_fmt, x_size)
    if graph_out:
        _write_graphs(graph_out, [(g, x_size)], out_fmt)
    report.results.append({"format": out_fmt, "text": text, **_graph_entry(g, x_size)})
    _emit(report, out)
    return EXIT_OK


# -- entry points -------------------------------------------------------------


def run_command(argv: Sequence[str]) -> Tuple[int, Optional[ReportDocument]]:
    """Run one CLI invocation in-process and return (exit code, report)."""
    obj: Dict[str, Any] = {"argv": list(argv)}
    try:
        code = cli.main(args=list(argv), prog_name="spectraham", standalone_mode=False, obj=obj)
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE, None
    except click.exceptions.Abort:
        return EXIT_USAGE, None
    except INTERNAL_ERRORS as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_INTERNAL, obj.get("report")
    except (SpectrahamError, OSError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_USAGE, None
    except Exception as exc:  # noqa: BLE001
        logger.exception("internal failure")
        click.echo(f"internal error: {exc}", err=True)
        return EXIT_INTERNAL, None
    return (code if isinstance(code, int) else EXIT_OK), obj.get("report")


def main() -> None:
    sys.exit(run_command(sys.argv[1:])[0])
