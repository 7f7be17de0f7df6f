from __future__ import annotations

from enum import Enum

import networkx as nx

from wheelwatch.core.errors import ParameterError
from wheelwatch.core.graph import Graph, GraphBuilder


class GraphFamily(str, Enum):
    CYCLE = "cycle"
    WHEEL = "wheel"
    PRISM = "prism"
    THETA_K23 = "theta-k23"
    PETERSEN = "petersen"
    PATH = "path"
    GNP = "gnp"


def _require_order(family: GraphFamily, n: int | None, minimum: int) -> int:
    if n is None or n < minimum:
        raise ParameterError(f"{family.value} needs --n >= {minimum}, got {n}")
    return n


def prism_graph(rung_subdivisions: int = 0) -> Graph:
    """Two triangles 0-1-2 and 3-4-5 joined by the rungs i-(i+3), each subdivided as asked."""
    if rung_subdivisions < 0:
        raise ParameterError(f"Rung subdivision count must be non-negative, got {rung_subdivisions}")
    builder = GraphBuilder(Graph.from_networkx(nx.circular_ladder_graph(3)))
    for rung in range(3):
        builder.subdivide(rung, rung + 3, rung_subdivisions)
    return builder.build()


def generate(
    family: GraphFamily,
    n: int | None = None,
    p: float | None = None,
    seed: int | None = None,
    rung_subdivisions: int = 0,
) -> Graph:
    """Build one member of ``family``; ``gnp`` is deterministic for a fixed ``seed``.

    For ``wheel``, ``n`` is the rim length and the center is vertex 0.
    """
    if family is GraphFamily.CYCLE:
        return Graph.from_networkx(nx.cycle_graph(_require_order(family, n, 3)))
    if family is GraphFamily.WHEEL:
        return Graph.from_networkx(nx.wheel_graph(_require_order(family, n, 3) + 1))
    if family is GraphFamily.PRISM:
        return prism_graph(rung_subdivisions)
    if family is GraphFamily.THETA_K23:
        return Graph.from_networkx(nx.complete_bipartite_graph(2, 3))
    if family is GraphFamily.PETERSEN:
        return Graph.from_networkx(nx.petersen_graph())
    if family is GraphFamily.PATH:
        return Graph.from_networkx(nx.path_graph(_require_order(family, n, 1)))
    if family is GraphFamily.GNP:
        order = _require_order(family, n, 0)
        if p is None or not 0.0 <= p <= 1.0:
            raise ParameterError(f"gnp needs --p in [0, 1], got {p}")
        return Graph.from_networkx(nx.gnp_random_graph(order, p, seed=seed))
    raise ParameterError(f"Unknown graph family: {family}")
