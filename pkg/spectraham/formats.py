"""
Graph file formats: graph6 (read/write), JSON (read/write), DOT (write only).

graph6 has no notion of a bipartition, so bipartite graphs travel as the
graph6 of the embedded graph (X first) plus a JSON sidecar {"x_size": ...}
stored next to the file as `<name>.json`.
"""

import json
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import networkx as nx

from .errors import ParseError
from .graph import BipartiteGraph, Graph

GRAPH6_HEADER = b">>graph6<<"
FORMATS = ("graph6", "json", "dot")


def _validate_graph6(body: bytes, base: int) -> int:
    """Check a header-less graph6 record and return its order."""
    if not body:
        raise ParseError("missing length header", base)
    for i, c in enumerate(body):
        if not 63 <= c <= 126:
            raise ParseError(f"byte {c!r} outside the graph6 range 63..126", base + i)

    if body[0] != 126:
        n, head = body[0] - 63, 1
    elif len(body) >= 2 and body[1] != 126:
        head = 4
        if len(body) < head:
            raise ParseError("truncated 3-byte length header", base + len(body))
        n = 0
        for c in body[1:4]:
            n = (n << 6) | (c - 63)
    else:
        head = 8
        if len(body) < head:
            raise ParseError("truncated 6-byte length header", base + len(body))
        n = 0
        for c in body[2:8]:
            n = (n << 6) | (c - 63)

    nbits = n * (n - 1) // 2
    nbytes = math.ceil(nbits / 6)
    data = body[head:]
    if len(data) != nbytes:
        raise ParseError(
            f"order {n} needs {nbytes} data bytes, found {len(data)}",
            base + head + min(len(data), nbytes),
        )
    pad = nbytes * 6 - nbits
    if pad and (data[-1] - 63) & ((1 << pad) - 1):
        raise ParseError("trailing padding bits are not zero", base + head + nbytes - 1)
    return n


def parse_graph6(text: Union[str, bytes]) -> Graph:
    """Decode one graph6 record; an optional >>graph6<< header is accepted."""
    if isinstance(text, str):
        try:
            raw = text.strip().encode("ascii")
        except UnicodeEncodeError as exc:
            raise ParseError("non-ASCII character in graph6 input", exc.start) from exc
    else:
        raw = text.strip()
    base = 0
    if raw.startswith(GRAPH6_HEADER):
        base = len(GRAPH6_HEADER)
    body = raw[base:]
    n = _validate_graph6(body, base)
    decoded = nx.from_graph6_bytes(body)
    return Graph.from_edges(n, decoded.edges())


def write_graph6(g: Graph) -> str:
    return nx.to_graph6_bytes(g.to_networkx(), header=False).decode("ascii").strip()


def parse_graph6_lines(text: str) -> List[Graph]:
    """One graph per non-blank line."""
    return [parse_graph6(line) for line in text.splitlines() if line.strip()]


def graph_to_json(g: Graph, x_size: Optional[int] = None) -> Dict[str, Any]:
    doc: Dict[str, Any] = {"n": g.n, "edges": [list(e) for e in g.edges()]}
    if x_size is not None:
        doc["x_size"] = x_size
    return doc


def graph_from_json(doc: Union[str, Dict[str, Any]]) -> Tuple[Graph, Optional[int]]:
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from exc
    if not isinstance(doc, dict) or "n" not in doc or "edges" not in doc:
        raise ParseError("JSON graph needs 'n' and 'edges'")
    g = Graph.from_edges(int(doc["n"]), doc["edges"])
    x_size = doc.get("x_size")
    if x_size is not None:
        BipartiteGraph.from_graph(g, int(x_size))
        x_size = int(x_size)
    return g, x_size


def write_dot(g: Graph, x_size: Optional[int] = None) -> str:
    """DOT text for visual inspection; X vertices are drawn as boxes."""
    lines = ["graph G {"]
    for v in range(g.n):
        shape = "box" if x_size is not None and v < x_size else "circle"
        lines.append(f"  {v} [shape={shape}];")
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dump_graph(g: Graph, fmt: str = "graph6", x_size: Optional[int] = None) -> str:
    if fmt == "graph6":
        return write_graph6(g) + "\n"
    if fmt == "json":
        return json.dumps(graph_to_json(g, x_size), sort_keys=True) + "\n"
    if fmt == "dot":
        return write_dot(g, x_size)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def load_graph_text(text: str, fmt: str = "graph6") -> Tuple[Graph, Optional[int]]:
    """Parse graph text; DOT is write-only."""
    if fmt == "graph6":
        return parse_graph6(text), None
    if fmt == "json":
        return graph_from_json(text)
    raise ParseError(f"cannot read format {fmt!r}")


def guess_format(path: Union[str, Path]) -> str:
    suffix = Path(path).suffix.lower()
    if suffix == ".json":
        return "json"
    if suffix == ".dot":
        return "dot"
    return "graph6"


def sidecar_path(path: Union[str, Path]) -> Path:
    path = Path(path)
    return path.with_name(path.name + ".json")


def read_sidecar(path: Union[str, Path]) -> Optional[Dict[str, Any]]:
    side = sidecar_path(path)
    if not side.exists():
        return None
    try:
        return json.loads(side.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid sidecar {side.name}: {exc.msg}", exc.pos) from exc


def write_sidecar(path: Union[str, Path], x_size: int, **extra: Any) -> Path:
    side = sidecar_path(path)
    side.write_text(json.dumps({"x_size": x_size, **extra}, sort_keys=True, indent=2) + "\n")
    return side


def load_graph_file(path: Union[str, Path], fmt: Optional[str] = None) -> Tuple[Graph, Optional[int]]:
    """Read a graph file, picking up the part sidecar of graph6 inputs."""
    fmt = fmt or guess_format(path)
    g, x_size = load_graph_text(Path(path).read_text(), fmt)
    if fmt == "graph6":
        side = read_sidecar(path)
        if side and "x_size" in side:
            x_size = int(side["x_size"])
            BipartiteGraph.from_graph(g, x_size)
    return g, x_size
