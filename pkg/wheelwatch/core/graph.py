from __future__ import annotations

from collections import deque
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import networkx as nx

from wheelwatch.core.bitset import bit, iter_bits, mask_of
from wheelwatch.core.errors import GraphError
from wheelwatch.core.graph_models import EdgeColor, TwoColoring

Edge = tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def subdivision_label(u: int, v: int, index: int) -> str:
    return f"sub({u},{v},{index})"


class Graph:
    """Immutable simple undirected graph over stable integer vertex identities.

    Adjacency is kept twice: as bit rows (``row(v)`` has bit ``u`` set when
    uv is an edge) and as sorted neighbour tuples.
    """

    __slots__ = ("_rows", "_neighbors", "_colors", "_labels", "_mask")

    def __init__(
        self,
        rows: Mapping[int, int],
        colors: Mapping[Edge, EdgeColor] | None = None,
        labels: Mapping[int, str] | None = None,
    ) -> None:
        ordered = {vertex: rows[vertex] for vertex in sorted(rows)}
        for vertex, row in ordered.items():
            if vertex < 0:
                raise GraphError(f"Negative vertex identity: {vertex}")
            if row < 0:
                raise GraphError(f"Vertex {vertex} has a negative neighbour row")
        mask = mask_of(ordered)
        for vertex, row in ordered.items():
            if row & bit(vertex):
                raise GraphError(f"Self-loop at vertex {vertex}")
            if row & ~mask:
                raise GraphError(f"Vertex {vertex} has a neighbour outside the vertex set")
            for neighbor in iter_bits(row):
                if not ordered[neighbor] & bit(vertex):
                    raise GraphError(f"Adjacency is not symmetric on {vertex}-{neighbor}")

        edge_colors: dict[Edge, EdgeColor] = {}
        for key, color in (colors or {}).items():
            u, v = edge_key(*key)
            if u not in ordered or not ordered[u] & bit(v):
                raise GraphError(f"Color given for a missing edge {u}-{v}")
            edge_colors[(u, v)] = EdgeColor(color)

        vertex_labels: dict[int, str] = {}
        for vertex, text in (labels or {}).items():
            if vertex not in ordered:
                raise GraphError(f"Label given for a missing vertex {vertex}")
            vertex_labels[vertex] = text

        self._rows = ordered
        self._mask = mask
        self._neighbors = {vertex: tuple(iter_bits(row)) for vertex, row in ordered.items()}
        self._colors = edge_colors
        self._labels = vertex_labels

    @classmethod
    def from_edges(
        cls,
        vertices: int | Iterable[int],
        edges: Iterable[Sequence],
        labels: Mapping[int, str] | None = None,
    ) -> Graph:
        """Build a graph; ``edges`` holds ``(u, v)`` or ``(u, v, color)`` items."""
        vertex_ids = range(vertices) if isinstance(vertices, int) else vertices
        rows = {vertex: 0 for vertex in vertex_ids}
        for vertex in rows:
            if vertex < 0:
                raise GraphError(f"Negative vertex identity: {vertex}")
        colors: dict[Edge, EdgeColor] = {}
        for item in edges:
            u, v = int(item[0]), int(item[1])
            if u == v:
                raise GraphError(f"Self-loop at vertex {u}")
            if u not in rows or v not in rows:
                raise GraphError(f"Edge {u}-{v} uses an unknown vertex")
            if rows[u] & bit(v):
                raise GraphError(f"Parallel edge {u}-{v}")
            rows[u] |= bit(v)
            rows[v] |= bit(u)
            if len(item) > 2:
                colors[edge_key(u, v)] = EdgeColor(item[2])
        return cls(rows, colors, labels)

    @classmethod
    def from_networkx(cls, nx_graph: nx.Graph) -> Graph:
        if nx_graph.is_directed() or nx_graph.is_multigraph():
            raise GraphError("Only simple undirected graphs are supported")
        relabeled = nx.convert_node_labels_to_integers(nx_graph, ordering="sorted")
        return cls.from_edges(range(relabeled.number_of_nodes()), relabeled.edges())

    def to_networkx(self) -> nx.Graph:
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(self._rows)
        for u, v in self.edges():
            nx_graph.add_edge(u, v, color=self.color(u, v).value)
        return nx_graph

    def to_builder(self) -> GraphBuilder:
        return GraphBuilder(self)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(self._rows)

    @property
    def vertex_mask(self) -> int:
        return self._mask

    @property
    def rows(self) -> Mapping[int, int]:
        return MappingProxyType(self._rows)

    @property
    def order(self) -> int:
        return len(self._rows)

    @property
    def size(self) -> int:
        return sum(row.bit_count() for row in self._rows.values()) // 2

    @property
    def labels(self) -> Mapping[int, str]:
        return MappingProxyType(self._labels)

    def __contains__(self, vertex: object) -> bool:
        return vertex in self._rows

    def __len__(self) -> int:
        return len(self._rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self._rows == other._rows
            and self.edge_colors() == other.edge_colors()
            and self._labels == other._labels
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Graph(vertices: {self.order}, edges: {self.size})"

    def row(self, vertex: int) -> int:
        try:
            return self._rows[vertex]
        except KeyError:
            raise GraphError(f"Unknown vertex: {vertex}") from None

    def neighbors(self, vertex: int) -> tuple[int, ...]:
        try:
            return self._neighbors[vertex]
        except KeyError:
            raise GraphError(f"Unknown vertex: {vertex}") from None

    def degree(self, vertex: int) -> int:
        return self.row(vertex).bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._rows and v in self._rows and bool(self._rows[u] & bit(v))

    def edges(self) -> list[Edge]:
        return [(u, v) for u, neighbors in self._neighbors.items() for v in neighbors if u < v]

    def color(self, u: int, v: int) -> EdgeColor:
        if not self.has_edge(u, v):
            raise GraphError(f"Unknown edge: {u}-{v}")
        return self._colors.get(edge_key(u, v), EdgeColor.PLAIN)

    def edge_colors(self) -> dict[Edge, EdgeColor]:
        return {edge: self._colors.get(edge, EdgeColor.PLAIN) for edge in self.edges()}

    def edges_of_color(self, color: EdgeColor) -> list[Edge]:
        return [edge for edge in self.edges() if self._colors.get(edge, EdgeColor.PLAIN) is color]

    def label(self, vertex: int) -> str | None:
        if vertex not in self._rows:
            raise GraphError(f"Unknown vertex: {vertex}")
        return self._labels.get(vertex)


class GraphBuilder:
    """Mutable draft of a :class:`Graph`; every ``build()`` returns a new graph."""

    def __init__(self, graph: Graph | None = None) -> None:
        self._rows: dict[int, int] = dict(graph.rows) if graph is not None else {}
        self._colors: dict[Edge, EdgeColor] = graph.edge_colors() if graph is not None else {}
        self._labels: dict[int, str] = dict(graph.labels) if graph is not None else {}
        self._next_id = max(self._rows, default=-1) + 1

    def __contains__(self, vertex: object) -> bool:
        return vertex in self._rows

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self._rows))

    def neighbors(self, vertex: int) -> tuple[int, ...]:
        return tuple(iter_bits(self._rows[vertex]))

    def add_vertex(self, label: str | None = None) -> int:
        vertex = self._next_id
        self._next_id += 1
        self._rows[vertex] = 0
        if label is not None:
            self._labels[vertex] = label
        return vertex

    def remove_vertex(self, vertex: int) -> None:
        if vertex not in self._rows:
            raise GraphError(f"Unknown vertex: {vertex}")
        for neighbor in iter_bits(self._rows.pop(vertex)):
            self._rows[neighbor] &= ~bit(vertex)
            self._colors.pop(edge_key(vertex, neighbor), None)
        self._labels.pop(vertex, None)

    def add_edge(self, u: int, v: int, color: EdgeColor = EdgeColor.PLAIN) -> None:
        if u == v:
            raise GraphError(f"Self-loop at vertex {u}")
        if u not in self._rows or v not in self._rows:
            raise GraphError(f"Edge {u}-{v} uses an unknown vertex")
        if self._rows[u] & bit(v):
            raise GraphError(f"Parallel edge {u}-{v}")
        self._rows[u] |= bit(v)
        self._rows[v] |= bit(u)
        self._colors[edge_key(u, v)] = color

    def remove_edge(self, u: int, v: int) -> EdgeColor:
        if u not in self._rows or not self._rows[u] & bit(v):
            raise GraphError(f"Unknown edge: {u}-{v}")
        self._rows[u] &= ~bit(v)
        self._rows[v] &= ~bit(u)
        return self._colors.pop(edge_key(u, v), EdgeColor.PLAIN)

    def color(self, u: int, v: int) -> EdgeColor:
        if u not in self._rows or not self._rows[u] & bit(v):
            raise GraphError(f"Unknown edge: {u}-{v}")
        return self._colors.get(edge_key(u, v), EdgeColor.PLAIN)

    def subdivide(self, u: int, v: int, times: int) -> list[int]:
        """Replace uv by a path with ``times`` fresh inner vertices, listed from u to v."""
        if times < 0:
            raise GraphError(f"Subdivision count must be non-negative, got {times}")
        if times == 0:
            if u not in self._rows or not self._rows[u] & bit(v):
                raise GraphError(f"Unknown edge: {u}-{v}")
            return []
        color = self.remove_edge(u, v)
        inner = [self.add_vertex(subdivision_label(u, v, index)) for index in range(1, times + 1)]
        chain = [u, *inner, v]
        for left, right in zip(chain, chain[1:]):
            self.add_edge(left, right, color)
        return inner

    def build(self) -> Graph:
        return Graph(self._rows, self._colors, self._labels)


def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    rows = {vertex: full & ~row & ~bit(vertex) for vertex, row in g.rows.items()}
    return Graph(rows, labels=g.labels)


def induced_subgraph(g: Graph, selection: Iterable[int]) -> Graph:
    chosen = set(selection)
    unknown = sorted(vertex for vertex in chosen if vertex not in g)
    if unknown:
        raise GraphError(f"Selection contains unknown vertices: {unknown}")
    mask = mask_of(chosen)
    rows = {vertex: g.row(vertex) & mask for vertex in chosen}
    colors = {edge: color for edge, color in g.edge_colors().items() if edge[0] in chosen and edge[1] in chosen}
    labels = {vertex: text for vertex, text in g.labels.items() if vertex in chosen}
    return Graph(rows, colors, labels)


def subdivide_edge(g: Graph, e: Edge, times: int, *, require_black: bool = False) -> Graph:
    u, v = e
    if not g.has_edge(u, v):
        raise GraphError(f"Unknown edge: {u}-{v}")
    if times < 0:
        raise GraphError(f"Subdivision count must be non-negative, got {times}")
    if require_black:
        color = g.color(u, v)
        if color is EdgeColor.RED:
            raise GraphError(f"Edge {u}-{v} is red; red edges are non-subdivisible")
        if color is not EdgeColor.BLACK:
            raise GraphError(f"Edge {u}-{v} is {color.value}; only black edges may be subdivided")
    if times == 0:
        return g
    builder = g.to_builder()
    builder.subdivide(u, v, times)
    return builder.build()


def hubs(g: Graph) -> frozenset[int]:
    """Vertices with at least three neighbours of degree at least three."""
    heavy = mask_of(vertex for vertex, row in g.rows.items() if row.bit_count() >= 3)
    return frozenset(vertex for vertex, row in g.rows.items() if (row & heavy).bit_count() >= 3)


def bipartition(g: Graph) -> TwoColoring | None:
    """Breadth-first 2-coloring; each component's smallest vertex gets color 0."""
    colors: dict[int, int] = {}
    for root in g.vertices:
        if root in colors:
            continue
        colors[root] = 0
        queue = deque([root])
        while queue:
            vertex = queue.popleft()
            for neighbor in g.neighbors(vertex):
                if neighbor not in colors:
                    colors[neighbor] = 1 - colors[vertex]
                    queue.append(neighbor)
                elif colors[neighbor] == colors[vertex]:
                    return None
    return TwoColoring(colors)


def is_chordless_cycle(g: Graph, seq: Sequence[int], min_length: int = 3) -> bool:
    length = len(seq)
    if length < max(3, min_length) or len(set(seq)) != length:
        return False
    if any(vertex not in g for vertex in seq):
        return False
    mask = mask_of(seq)
    for index, vertex in enumerate(seq):
        expected = bit(seq[index - 1]) | bit(seq[(index + 1) % length])
        if g.row(vertex) & mask != expected:
            return False
    return True


def is_hole(g: Graph, seq: Sequence[int]) -> bool:
    return is_chordless_cycle(g, seq, min_length=4)
