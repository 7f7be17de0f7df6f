from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable

import networkx as nx

from wheelwatch import config
from wheelwatch.core.errors import ParameterError
from wheelwatch.core.fast_wheel import wheel_in_g_or_complement
from wheelwatch.core.graph import Graph

logger = logging.getLogger(__name__)

ProgressCallback = Callable[[str, int, str], None]

_NAMED_MEMBERS = {
    "C5": nx.cycle_graph(5),
    "C6": nx.cycle_graph(6),
    "P5": nx.path_graph(5),
}


@dataclass(slots=True)
class CrossCheck:
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass(slots=True)
class CensusOrder:
    order: int
    total: int
    wheel_free: list[str]


@dataclass(slots=True)
class CensusReport:
    max_n: int
    orders: list[CensusOrder] = field(default_factory=list)
    cross_checks: dict[str, CrossCheck] = field(default_factory=dict)

    def to_record(self) -> dict:
        return {
            "max_n": self.max_n,
            "orders": [
                {"order": item.order, "total": item.total, "wheel_free": list(item.wheel_free)}
                for item in self.orders
            ],
            "cross_checks": {
                name: {"checked": check.checked, "failures": list(check.failures)}
                for name, check in self.cross_checks.items()
            },
        }


def graph6_code(nx_graph: nx.Graph) -> str:
    return nx.to_graph6_bytes(nx_graph, header=False).decode("ascii").strip()


def _fingerprint(nx_graph: nx.Graph) -> tuple:
    degrees = tuple(sorted(degree for _, degree in nx_graph.degree()))
    return degrees, nx.weisfeiler_lehman_graph_hash(nx_graph, iterations=3)


def enumerate_graphs(
    max_n: int,
    progress_callback: ProgressCallback | None = None,
) -> dict[int, list[nx.Graph]]:
    """One representative per isomorphism class for every order 1..``max_n``.

    Order k+1 grows from order k by adding a vertex with every possible
    neighbourhood; candidates are bucketed by degree sequence and WL hash,
    then compared with ``is_isomorphic``.
    """
    if not 1 <= max_n <= config.CENSUS_MAX_ORDER:
        raise ParameterError(f"Census order must lie in [1, {config.CENSUS_MAX_ORDER}], got {max_n}")
    single = nx.Graph()
    single.add_node(0)
    classes: dict[int, list[nx.Graph]] = {1: [single]}
    for order in range(2, max_n + 1):
        buckets: dict[tuple, list[nx.Graph]] = {}
        previous = classes[order - 1]
        new_vertex = order - 1
        for index, base in enumerate(previous):
            for mask in range(1 << new_vertex):
                candidate = base.copy()
                candidate.add_node(new_vertex)
                candidate.add_edges_from((new_vertex, v) for v in range(new_vertex) if mask >> v & 1)
                bucket = buckets.setdefault(_fingerprint(candidate), [])
                if not any(nx.is_isomorphic(candidate, known) for known in bucket):
                    bucket.append(candidate)
            if progress_callback is not None:
                percent = int(100 * (index + 1) / len(previous))
                progress_callback(f"Order {order}", percent, f"{index + 1}/{len(previous)} parents")
        classes[order] = [graph for bucket in buckets.values() for graph in bucket]
        logger.debug("order %s: %s isomorphism classes", order, len(classes[order]))
    return classes


def is_split(nx_graph: nx.Graph) -> bool:
    """Degree-sequence test: clique plus independent set."""
    degrees = sorted((degree for _, degree in nx_graph.degree()), reverse=True)
    if not degrees:
        return True
    m = max(i for i in range(1, len(degrees) + 1) if degrees[i - 1] >= i - 1)
    return sum(degrees[:m]) == m * (m - 1) + sum(degrees[m:])


def is_complete_bipartite(nx_graph: nx.Graph) -> bool:
    """Both sides non-empty; equivalently the complement is two disjoint cliques."""
    co = nx.complement(nx_graph)
    parts = list(nx.connected_components(co))
    if len(parts) != 2:
        return False
    return all(co.subgraph(part).number_of_edges() == len(part) * (len(part) - 1) // 2 for part in parts)


def _families(nx_graph: nx.Graph) -> list[str]:
    names = []
    if is_split(nx_graph):
        names.append("split")
    if is_complete_bipartite(nx_graph):
        names.append("complete-bipartite")
    for name, member in _NAMED_MEMBERS.items():
        if nx_graph.number_of_nodes() == member.number_of_nodes() and nx.is_isomorphic(nx_graph, member):
            names.append(name)
    return names


def run_census(max_n: int, progress_callback: ProgressCallback | None = None) -> CensusReport:
    """Graphs on at most ``max_n`` vertices where neither G nor its complement holds a wheel."""
    classes = enumerate_graphs(max_n, progress_callback)
    report = CensusReport(max_n=max_n)
    for name in ("split", "complete-bipartite", *_NAMED_MEMBERS):
        report.cross_checks[name] = CrossCheck()

    for order in range(1, max_n + 1):
        representatives = classes[order]
        wheel_free: list[str] = []
        for index, nx_graph in enumerate(representatives):
            graph = Graph.from_networkx(nx_graph)
            found = wheel_in_g_or_complement(graph)
            code = graph6_code(nx_graph)
            if found is None:
                wheel_free.append(code)
            for name in _families(nx_graph):
                check = report.cross_checks[name]
                check.checked += 1
                if found is not None:
                    check.failures.append(code)
            if progress_callback is not None and (index + 1) % 64 == 0:
                percent = int(100 * (index + 1) / len(representatives))
                progress_callback(f"Checking order {order}", percent, f"{index + 1}/{len(representatives)} graphs")
        report.orders.append(CensusOrder(order=order, total=len(representatives), wheel_free=wheel_free))

    return report

