from __future__ import annotations

from pathlib import Path
from typing import Callable

import networkx as nx
import pytest

from wheelwatch.core.generators import GraphFamily, generate
from wheelwatch.core.graph import Graph
from wheelwatch.core.graph_io import GraphDocument, GraphFileService
from wheelwatch.core.reduction_models import CnfFormula


@pytest.fixture
def w4() -> Graph:
    return generate(GraphFamily.WHEEL, n=4)


@pytest.fixture
def c5() -> Graph:
    return generate(GraphFamily.CYCLE, n=5)


@pytest.fixture
def c6() -> Graph:
    return generate(GraphFamily.CYCLE, n=6)


@pytest.fixture
def c8() -> Graph:
    return generate(GraphFamily.CYCLE, n=8)


@pytest.fixture
def prism() -> Graph:
    return generate(GraphFamily.PRISM)


@pytest.fixture
def k23() -> Graph:
    return generate(GraphFamily.THETA_K23)


@pytest.fixture
def k33() -> Graph:
    return Graph.from_networkx(nx.complete_bipartite_graph(3, 3))


@pytest.fixture
def petersen() -> Graph:
    return generate(GraphFamily.PETERSEN)


@pytest.fixture
def c8_with_center() -> Graph:
    """C8 on 0..7 plus vertex 8 adjacent to 0, 3 and 6."""
    return Graph.from_edges(9, [(i, (i + 1) % 8) for i in range(8)] + [(8, 0), (8, 3), (8, 6)])


@pytest.fixture
def satisfiable_formula() -> CnfFormula:
    return CnfFormula.from_dimacs_clauses(1, [(1, 1, 1)])


@pytest.fixture
def unsatisfiable_formula() -> CnfFormula:
    return CnfFormula.from_dimacs_clauses(1, [(1, 1, 1), (-1, -1, -1)])


@pytest.fixture
def write_graph(tmp_path: Path) -> Callable[..., Path]:
    def write(graph: Graph, name: str = "graph.txt", **metadata) -> Path:
        return GraphFileService().write(GraphDocument(graph=graph, **metadata), tmp_path / name)

    return write


@pytest.fixture
def write_cnf(tmp_path: Path) -> Callable[[str, str], Path]:
    def write(text: str, name: str = "formula.cnf") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return write
