from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Mapping

from wheelwatch.core.errors import CertificateError, GraphFormatError
from wheelwatch.core.graph import complement, hubs
from wheelwatch.core.graph_io import GraphDocument, GraphFileService, artifact_from_document, write_text_atomic
from wheelwatch.core.graph_models import ConfigWitness, HoleWitness, Side, SidedWitness
from wheelwatch.core.reduction_models import Assignment
from wheelwatch.core.witnesses import validate_hole, validate_witness
from wheelwatch.version import APP_VERSION

logger = logging.getLogger(__name__)


def file_digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def config_record(witness: ConfigWitness) -> dict:
    return {"type": "config", **witness.to_record()}


def sided_record(found: SidedWitness) -> dict:
    return {"type": "sided", **found.to_record()}


def hole_record(hole: HoleWitness, min_len: int) -> dict:
    return {"type": "hole", "cycle": list(hole.cycle), "min_len": min_len}


def hubs_record(vertices: frozenset[int]) -> dict:
    return {"type": "hubs", "vertices": sorted(vertices)}


def assignment_record(xi: Assignment) -> dict:
    return {"type": "assignment", "bits": xi.to_bits()}


def check_witness(record: Mapping[str, Any], document: GraphDocument) -> None:
    """Re-validate a serialized witness against the graph (and formula) it was found in."""
    graph = document.graph
    payload = {key: value for key, value in record.items() if key != "type"}
    kind = record.get("type")
    if kind == "config":
        validate_witness(graph, ConfigWitness.from_record(payload))
    elif kind == "sided":
        found = SidedWitness.from_record(payload)
        validate_witness(graph if found.side is Side.GRAPH else complement(graph), found.witness)
    elif kind == "hole":
        validate_hole(graph, [int(v) for v in payload["cycle"]], int(payload.get("min_len", 4)))
    elif kind == "hubs":
        if set(payload["vertices"]) != set(hubs(graph)):
            raise CertificateError("recorded hubs differ from the hubs of the graph")
    elif kind == "assignment":
        formula = artifact_from_document(document).formula
        xi = Assignment.from_bits(payload["bits"])
        if len(xi) != formula.n:
            raise CertificateError(f"assignment has {len(xi)} values, formula has {formula.n} variables")
        clause = formula.first_unsatisfied_clause(xi.values)
        if clause is not None:
            raise CertificateError(f"assignment does not satisfy formula (clause {clause} is false)")
    else:
        raise CertificateError(f"unknown witness type {kind!r}")


@dataclass(slots=True)
class RunReport:
    command: list[str]
    answer: str
    exit_code: int
    inputs: dict[str, str] = field(default_factory=dict)
    graph_input: str | None = None
    side: str | None = None
    witness: dict | None = None
    wall_time: float = 0.0
    seed: int | None = None
    details: dict[str, Any] = field(default_factory=dict)
    version: str = APP_VERSION

    def add_input(self, path: Path, holds_graph: bool = False) -> None:
        resolved = str(path.expanduser().resolve())
        self.inputs[resolved] = file_digest(path)
        if holds_graph:
            self.graph_input = resolved

    def to_record(self) -> dict:
        return asdict(self)

    @classmethod
    def from_record(cls, record: Mapping[str, Any]) -> RunReport:
        return cls(**{name: record[name] for name in cls.__dataclass_fields__ if name in record})


class ReportService:
    """JSON run reports; loading re-validates the witness against the recorded graph input."""

    def __init__(self, graph_files: GraphFileService | None = None) -> None:
        self._graph_files = graph_files or GraphFileService()

    def format(self, report: RunReport) -> str:
        return json.dumps(report.to_record(), indent=2, sort_keys=True) + "\n"

    def parse(self, text: str) -> RunReport:
        try:
            record = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"report is not valid JSON: {exc}") from None
        if not isinstance(record, dict) or "command" not in record or "answer" not in record:
            raise GraphFormatError("report lacks 'command' or 'answer'")
        return RunReport.from_record(record)

    def write(self, report: RunReport, path: Path) -> Path:
        return write_text_atomic(path, self.format(report))

    def load(self, path: Path, document: GraphDocument | None = None) -> RunReport:
        report = self.parse(path.read_text(encoding="utf-8"))
        if report.witness is None:
            return report
        if document is None:
            document = self._recorded_document(report)
        if document is not None:
            check_witness(report.witness, document)
        return report

    def _recorded_document(self, report: RunReport) -> GraphDocument | None:
        if report.graph_input is None:
            return None
        graph_path = Path(report.graph_input)
        if not graph_path.is_file():
            logger.warning("graph input %s is gone; witness not re-validated", graph_path)
            return None
        expected = report.inputs.get(report.graph_input)
        if expected is not None and file_digest(graph_path) != expected:
            raise CertificateError(f"graph input {graph_path} changed since the report was written")
        return self._graph_files.read(graph_path)
