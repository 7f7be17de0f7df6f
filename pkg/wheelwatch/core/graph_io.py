from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from wheelwatch.core.errors import GraphError, GraphFormatError
from wheelwatch.core.graph import Graph
from wheelwatch.core.graph_models import EdgeColor
from wheelwatch.core.reduction_models import CnfFormula, ReductionArtifact, ReductionStage

_DOT_EDGE_STYLE = {
    EdgeColor.RED: 'color="red", style="solid"',
    EdgeColor.BLACK: 'color="black", style="dashed"',
    EdgeColor.PLAIN: 'color="gray", style="solid"',
}


def write_text_atomic(path: Path, text: str) -> Path:
    """Write through a temporary sibling file and rename it into place."""
    path.parent.mkdir(parents=True, exist_ok=True)
    handle, temp_name = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(handle, "w", encoding="utf-8", newline="\n") as stream:
            stream.write(text)
        os.replace(temp_name, path)
    except BaseException:
        Path(temp_name).unlink(missing_ok=True)
        raise
    return path


@dataclass(slots=True)
class GraphDocument:
    """Contents of one edge-list file: the graph plus optional instance metadata."""

    graph: Graph
    terminals: dict[str, int] = field(default_factory=dict)
    params: dict[str, int] = field(default_factory=dict)
    clauses: list[tuple[int, ...]] = field(default_factory=list)
    stage: str | None = None


class GraphFileService:
    """Edge-list text format.

    ``graph <n>`` comes first; then, in any order, ``vertex <id>`` (only when
    identities are not ``0..n-1``), ``stage <name>``, ``terminal <name> <v>``,
    ``param <name> <int>``, ``clause <lit> <lit> <lit>``,
    ``e <u> <v> [black|red|plain]`` and ``label <v> <text>``. ``#`` starts a
    comment line.
    """

    def format(self, document: GraphDocument) -> str:
        graph = document.graph
        lines = [f"graph {graph.order}"]
        if graph.vertices != tuple(range(graph.order)):
            lines.extend(f"vertex {vertex}" for vertex in graph.vertices)
        if document.stage:
            lines.append(f"stage {document.stage}")
        lines.extend(f"terminal {name} {vertex}" for name, vertex in document.terminals.items())
        lines.extend(f"param {name} {value}" for name, value in document.params.items())
        lines.extend("clause " + " ".join(str(value) for value in clause) for clause in document.clauses)
        for u, v in graph.edges():
            lines.append(f"e {u} {v} {graph.color(u, v).value}")
        for vertex, text in sorted(graph.labels.items()):
            lines.append(f"label {vertex} {text}")
        return "\n".join(lines) + "\n"

    def parse(self, text: str) -> GraphDocument:
        declared: int | None = None
        vertices: list[int] = []
        edges: list[tuple[int, int, EdgeColor]] = []
        labels: dict[int, str] = {}
        document = GraphDocument(graph=Graph({}))

        for line_number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            keyword, _, rest = line.partition(" ")
            parts = rest.split()
            try:
                if declared is None:
                    if keyword != "graph" or len(parts) != 1:
                        raise GraphFormatError("file must start with 'graph <n>'")
                    declared = int(parts[0])
                    if declared < 0:
                        raise GraphFormatError("vertex count must be non-negative")
                elif keyword == "vertex" and len(parts) == 1:
                    vertices.append(int(parts[0]))
                elif keyword == "e" and len(parts) in (2, 3):
                    color = EdgeColor(parts[2]) if len(parts) == 3 else EdgeColor.PLAIN
                    edges.append((int(parts[0]), int(parts[1]), color))
                elif keyword == "label" and len(parts) >= 2:
                    labels[int(parts[0])] = rest.strip().partition(" ")[2].strip()
                elif keyword == "terminal" and len(parts) == 2:
                    document.terminals[parts[0]] = int(parts[1])
                elif keyword == "param" and len(parts) == 2:
                    document.params[parts[0]] = int(parts[1])
                elif keyword == "clause" and parts:
                    document.clauses.append(tuple(int(value) for value in parts))
                elif keyword == "stage" and len(parts) == 1:
                    document.stage = parts[0]
                else:
                    raise GraphFormatError(f"unrecognised line {line!r}")
            except ValueError as exc:
                raise GraphFormatError(f"line {line_number}: {exc}") from None

        if declared is None:
            raise GraphFormatError("empty graph file")
        if vertices and len(vertices) != declared:
            raise GraphFormatError(f"header declares {declared} vertices but {len(vertices)} vertex lines follow")
        try:
            document.graph = Graph.from_edges(vertices or range(declared), edges, labels)
        except GraphError as exc:
            raise GraphFormatError(str(exc)) from exc
        for name, vertex in document.terminals.items():
            if vertex not in document.graph:
                raise GraphFormatError(f"terminal {name} names unknown vertex {vertex}")
        return document

    def read(self, path: Path) -> GraphDocument:
        return self.parse(path.read_text(encoding="utf-8"))

    def write(self, document: GraphDocument, path: Path) -> Path:
        return write_text_atomic(path, self.format(document))


class DotService:
    """Graphviz export: red edges red, black edges dashed, plain edges gray; terminals double-circled."""

    def render(self, graph: Graph, terminals: Mapping[str, int] | None = None, name: str = "G") -> str:
        marked = set((terminals or {}).values())
        lines = [f"graph {name} {{"]
        for vertex in graph.vertices:
            label = (graph.label(vertex) or str(vertex)).replace('"', '\\"')
            shape = ', shape="doublecircle"' if vertex in marked else ""
            lines.append(f'    "{vertex}" [label="{label}"{shape}];')
        for u, v in graph.edges():
            lines.append(f'    "{u}" -- "{v}" [{_DOT_EDGE_STYLE[graph.color(u, v)]}];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def write(self, graph: Graph, path: Path, terminals: Mapping[str, int] | None = None) -> Path:
        return write_text_atomic(path, self.render(graph, terminals, name=_dot_name(path)))


def _dot_name(path: Path) -> str:
    cleaned = "".join(char if char.isalnum() else "_" for char in path.stem)
    return cleaned if cleaned and not cleaned[0].isdigit() else f"G_{cleaned}"


def document_from_artifact(art: ReductionArtifact) -> GraphDocument:
    return GraphDocument(
        graph=art.graph,
        terminals=dict(art.terminals),
        params={"n": art.n, "m": art.m, **{k: v for k, v in art.params.items() if k not in ("n", "m")}},
        clauses=[tuple(clause) for clause in art.formula.dimacs_clauses()],
        stage=art.stage.value,
    )


def artifact_from_document(document: GraphDocument) -> ReductionArtifact:
    """Rebuild a reduction artifact from an instance file; needs stage, clauses and ``param n``."""
    if document.stage is None or not document.clauses or "n" not in document.params:
        raise GraphFormatError("file is not a reduction instance (needs stage, clause lines and 'param n')")
    try:
        stage = ReductionStage(document.stage)
        formula = CnfFormula.from_dimacs_clauses(document.params["n"], document.clauses)
        return ReductionArtifact(
            stage=stage,
            formula=formula,
            graph=document.graph,
            terminals=dict(document.terminals),
            params=dict(document.params),
        )
    except ValueError as exc:
        raise GraphFormatError(f"invalid reduction instance: {exc}") from exc
