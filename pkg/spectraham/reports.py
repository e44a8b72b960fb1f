"""
JSON report documents written by the CLI.
"""

import hashlib
import json
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from .formats import write_graph6
from .graph import Graph

SCHEMA_VERSION = "spectraham/1"


class CommandRecord(BaseModel):
    name: str
    argv: List[str]
    options: Dict[str, Any] = Field(default_factory=dict)


class ReportDocument(BaseModel):
    schema_version: str = SCHEMA_VERSION
    input_digest: Optional[str] = None
    command: CommandRecord
    results: List[Dict[str, Any]] = Field(default_factory=list)
    seed: Optional[int] = None
    generated_at: Optional[str] = None

    def payload(self) -> Dict[str, Any]:
        """Everything except the timestamp."""
        return self.model_dump(mode="json", exclude={"generated_at"})

    def to_json(self, timestamp: bool = True) -> str:
        doc = self.model_dump(mode="json") if timestamp else self.payload()
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def graph_digest(g: Graph, x_size: Optional[int] = None) -> str:
    """sha256 over the graph6 encoding and the X part size."""
    h = hashlib.sha256(write_graph6(g).encode("ascii"))
    h.update(f"|x_size={x_size}".encode("ascii"))
    return h.hexdigest()


def new_report(name: str, argv: List[str], options: Dict[str, Any], seed: Optional[int] = None) -> ReportDocument:
    return ReportDocument(
        command=CommandRecord(name=name, argv=list(argv), options=options),
        seed=seed,
        generated_at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
    )
