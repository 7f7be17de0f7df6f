from __future__ import annotations

import logging
import random
from itertools import product
from typing import Mapping

import networkx as nx

from wheelwatch import config
from wheelwatch.core.errors import CertificateError, GraphError, InvariantViolation, ParameterError
from wheelwatch.core.graph import (
    Edge,
    Graph,
    GraphBuilder,
    bipartition,
    edge_key,
    hubs,
    induced_subgraph,
    is_hole,
)
from wheelwatch.core.graph_models import EdgeColor, HoleWitness
from wheelwatch.core.reduction_models import (
    Assignment,
    CnfFormula,
    LabelRole,
    Literal,
    ReductionArtifact,
    ReductionStage,
)

logger = logging.getLogger(__name__)

BLACK = EdgeColor.BLACK
RED = EdgeColor.RED

_ALLOWED_SHAPES = (nx.empty_graph(1), nx.path_graph(3), nx.cycle_graph(4))


def expected_gf_counts(n: int, m: int) -> tuple[int, int, int]:
    """Vertex, black-edge and red-edge counts of G_f for n variables and m clauses."""
    return n * (8 * m + 8) + 5 * m + 2, n * (8 * m + 10) + 7 * m + 2, 4 * n * (m + 1) + 6 * m


def _path_labels(prefix: str, variable: int, m: int) -> list[str]:
    return [f"{prefix}_{variable},{j}" for j in range(2 * m + 1)]


def build_gf(f: CnfFormula) -> ReductionArtifact:
    """Gadget graph G_f with terminals ``a`` and ``b``."""
    n, m = f.n, f.m
    builder = GraphBuilder()
    ids: dict[str, int] = {}

    def vertex(label: str) -> int:
        ids[label] = builder.add_vertex(label)
        return ids[label]

    def chain(labels: list[str]) -> None:
        for left, right in zip(labels, labels[1:]):
            builder.add_edge(ids[left], ids[right], BLACK)

    vertex("a")
    vertex("b")
    for i in range(1, n + 1):
        for name in (f"a_{i}", f"b_{i}", f"a'_{i}", f"b'_{i}"):
            vertex(name)
        for prefix in ("t", "f", "t'", "f'"):
            for label in _path_labels(prefix, i, m):
                vertex(label)
        chain([f"a_{i}", *_path_labels("t", i, m), f"b_{i}"])
        chain([f"a_{i}", *_path_labels("f", i, m), f"b_{i}"])
        chain([f"a'_{i}", *_path_labels("t'", i, m), f"b'_{i}"])
        chain([f"a'_{i}", *_path_labels("f'", i, m), f"b'_{i}"])
        for j in range(m + 1):
            square = [f"t_{i},{2 * j}", f"f_{i},{2 * j}", f"t'_{i},{2 * j}", f"f'_{i},{2 * j}"]
            for left, right in zip(square, square[1:] + square[:1]):
                builder.add_edge(ids[left], ids[right], RED)

    for j, clause in enumerate(f.clauses, start=1):
        vertex(f"c_{j}")
        vertex(f"d_{j}")
        for p, literal in enumerate(clause, start=1):
            v = vertex(f"v_{j}^{p}")
            builder.add_edge(ids[f"c_{j}"], v, BLACK)
            builder.add_edge(ids[f"d_{j}"], v, BLACK)
            targets = ("f", "f'") if literal.positive else ("t", "t'")
            for prefix in targets:
                builder.add_edge(v, ids[f"{prefix}_{literal.variable},{2 * j - 1}"], RED)

    for i in range(1, n):
        chain([f"b_{i}", f"a_{i + 1}"])
        chain([f"b'_{i}", f"a'_{i + 1}"])
    chain([f"b'_{n}", "c_1"])
    for j in range(1, m):
        chain([f"d_{j}", f"c_{j + 1}"])
    chain(["a", "a_1"])
    chain(["a", "a'_1"])
    chain(["b", f"d_{m}"])
    chain(["b", f"b_{n}"])

    graph = builder.build()
    expected = expected_gf_counts(n, m)
    actual = (graph.order, len(graph.edges_of_color(BLACK)), len(graph.edges_of_color(RED)))
    if actual != expected:
        raise InvariantViolation(f"G_f counts {actual} differ from the closed forms {expected}")
    logger.debug("built G_f with %s vertices for n=%s, m=%s", graph.order, n, m)
    return ReductionArtifact(
        stage=ReductionStage.GF,
        formula=f,
        graph=graph,
        terminals={"a": ids["a"], "b": ids["b"]},
        params={"n": n, "m": m},
    )


def make_f_graph(art: ReductionArtifact, plan: Mapping[Edge, int]) -> ReductionArtifact:
    """Subdivide black edges of ``art`` as listed in ``plan``; red edges stay intact."""
    if art.stage not in (ReductionStage.GF, ReductionStage.F_GRAPH):
        raise ParameterError(f"f-graphs are built from G_f, not from a {art.stage.value} instance")
    builder = art.graph.to_builder()
    applied: dict[Edge, int] = dict(art.subdivision_plan)
    for edge in sorted(plan):
        times = plan[edge]
        u, v = edge
        if not art.graph.has_edge(u, v):
            raise GraphError(f"Plan names {u}-{v}, which is not an edge")
        color = art.graph.color(u, v)
        if color is not BLACK:
            raise GraphError(f"Plan names the {color.value} edge {u}-{v}; only black edges may be subdivided")
        if times < 0:
            raise GraphError(f"Subdivision count must be non-negative, got {times} for {u}-{v}")
        builder.subdivide(u, v, times)
        applied[edge_key(u, v)] = applied.get(edge_key(u, v), 0) + times
    return ReductionArtifact(
        stage=ReductionStage.F_GRAPH,
        formula=art.formula,
        graph=builder.build(),
        terminals=dict(art.terminals),
        params=dict(art.params),
        subdivision_plan=applied,
    )


def random_subdivision_plan(
    art: ReductionArtifact,
    seed: int | None,
    max_count: int = config.SUBDIVISION_PLAN_MAX,
) -> dict[Edge, int]:
    rng = random.Random(seed)
    return {edge: rng.randint(0, max_count) for edge in art.graph.edges_of_color(BLACK)}


def _trim_repeated_literals(builder: GraphBuilder, art: ReductionArtifact) -> int:
    trimmed = 0
    for j, clause in enumerate(art.formula.clauses, start=1):
        if clause[0] == clause[1] == clause[2]:
            builder.remove_vertex(art.vertex(f"v_{j}^3"))
            trimmed += 1
    return trimmed


def _check_degree3_shapes(g: Graph, heavy: list[int]) -> None:
    core = induced_subgraph(g, heavy).to_networkx()
    for component in nx.connected_components(core):
        shape = core.subgraph(component)
        if not any(nx.is_isomorphic(shape, allowed) for allowed in _ALLOWED_SHAPES):
            raise InvariantViolation(
                f"degree>=3 component {sorted(component)} is not an isolated vertex, P3 or C4"
            )


def _walk_black_path(g: Graph, heavy: set[int], start: int, first: int) -> list[int]:
    path = [start, first]
    while path[-1] not in heavy:
        options = [v for v in g.neighbors(path[-1]) if v != path[-2]]
        if len(options) != 1:
            raise InvariantViolation(f"vertex {path[-1]} outside the degree>=3 set has degree {len(options) + 1}")
        path.append(options[0])
    return path


def harden(art: ReductionArtifact, k: int = config.DEFAULT_HARDEN_K) -> ReductionArtifact:
    """Bipartite hub-free instance where every cycle through ``a`` has length at least ``k``."""
    if art.stage is not ReductionStage.GF:
        raise ParameterError(f"harden expects a freshly built G_f, got a {art.stage.value} instance")
    if k < 3:
        raise ParameterError(f"Hardening length must be at least 3, got {k}")

    builder = art.graph.to_builder()
    trimmed = _trim_repeated_literals(builder, art)
    base = builder.build()
    a, a1 = art.terminals["a"], art.vertex("a_1")
    for u, v in base.edges_of_color(BLACK):
        builder.subdivide(u, v, k if edge_key(u, v) == edge_key(a, a1) else 1)
    graph = builder.build()

    heavy = [v for v in graph.vertices if graph.degree(v) >= 3]
    _check_degree3_shapes(graph, heavy)
    coloring = bipartition(induced_subgraph(graph, heavy))
    if coloring is None:
        raise InvariantViolation("degree>=3 subgraph is not bipartite")

    heavy_set = set(heavy)
    builder = graph.to_builder()
    seen: set[tuple[int, int]] = set()
    fixes = 0
    for start in heavy:
        for first in graph.neighbors(start):
            if first in heavy_set:
                continue
            path = _walk_black_path(graph, heavy_set, start, first)
            key = (start, first)
            if key in seen:
                continue
            seen.add((path[-1], path[-2]))
            same_color = coloring.color(start) == coloring.color(path[-1])
            even_length = (len(path) - 1) % 2 == 0
            if same_color != even_length:
                builder.subdivide(start, first, 1)
                fixes += 1
    hardened = builder.build()
    logger.debug("hardening: %s trimmed literal copies, %s parity fixes", trimmed, fixes)

    result = ReductionArtifact(
        stage=ReductionStage.HARDENED,
        formula=art.formula,
        graph=hardened,
        terminals=dict(art.terminals),
        params={**art.params, "k": k},
    )
    _assert_hardened(result)
    return result


def _assert_hardened(art: ReductionArtifact) -> None:
    g = art.graph
    if bipartition(g) is None:
        raise InvariantViolation("hardened instance is not bipartite")
    found = hubs(g)
    if found:
        raise InvariantViolation(f"hardened instance has hubs {sorted(found)}")
    for name in ("a", "b"):
        if g.degree(art.terminals[name]) != 2:
            raise InvariantViolation(f"terminal {name} does not have degree 2")


def _attachment_counts(colors: Mapping[int, int], olds: list[int], new_color: int) -> list[int]:
    counts = []
    for old in olds:
        distinct = colors[old] != new_color
        # s inner vertices keep the end colors distinct iff s is even
        counts.append(next(s for s in range(config.SUBDIVISION_PLAN_MAX + 1) if (s % 2 == 0) == distinct))
    return counts


def lift_to_wheel_instance(art: ReductionArtifact, k: int, l: int) -> ReductionArtifact:
    """Replace the terminals by the z-path, ``x`` and ``y``; the result has ``x`` as its only hub."""
    if l < 3:
        raise ParameterError(f"Lifting supports only l >= 3, got {l}")
    if art.stage is not ReductionStage.HARDENED:
        raise ParameterError(f"Lifting expects a hardened instance, got a {art.stage.value} instance")
    harden_k = art.params.get("k")
    if harden_k is None or not 3 <= k <= harden_k:
        raise ParameterError(f"k must lie in [3, {harden_k}] for this hardened instance, got {k}")

    g = art.graph
    a, b = art.terminals["a"], art.terminals["b"]
    a_first, a_second = g.neighbors(a)
    b_first, b_second = g.neighbors(b)

    rest = g.to_builder()
    rest.remove_vertex(a)
    rest.remove_vertex(b)
    coloring = bipartition(rest.build())
    if coloring is None:
        raise InvariantViolation("hardened instance without its terminals is not bipartite")

    # z_1, z_{2l-3} and y all share one color
    olds = [a_first, a_second, b_first, b_second]
    options = [_attachment_counts(coloring.colors, olds, new_color) for new_color in (0, 1)]
    counts = min(options, key=sum)

    z = [rest.add_vertex(f"z_{r}") for r in range(1, 2 * l - 2)]
    for left, right in zip(z, z[1:]):
        rest.add_edge(left, right, BLACK)
    x = rest.add_vertex("x")
    y = rest.add_vertex("y")
    for index in range(0, len(z), 2):
        rest.add_edge(x, z[index], BLACK)
    rest.add_edge(x, y, BLACK)
    attachments = [(z[0], a_first), (z[-1], a_second), (y, b_first), (y, b_second)]
    for (new, old), count in zip(attachments, counts):
        rest.add_edge(new, old, BLACK)
        rest.subdivide(new, old, count)
    lifted = rest.build()

    if bipartition(lifted) is None:
        raise InvariantViolation("lifted instance is not bipartite")
    found = hubs(lifted)
    if found != {x}:
        raise InvariantViolation(f"lifted instance hubs are {sorted(found)}, expected only x={x}")
    logger.debug("lifted with attachment subdivisions %s", counts)
    return ReductionArtifact(
        stage=ReductionStage.WHEEL_INSTANCE,
        formula=art.formula,
        graph=lifted,
        terminals={"x": x, "y": y},
        params={**art.params, "harden_k": harden_k, "k": k, "l": l},
    )


def formula_is_satisfied(f: CnfFormula, xi: Assignment) -> bool:
    return len(xi) == f.n and f.first_unsatisfied_clause(xi.values) is None


def brute_force_satisfiable(f: CnfFormula) -> Assignment | None:
    """First satisfying assignment in lexicographic order, or ``None``."""
    for values in product((0, 1), repeat=f.n):
        if f.first_unsatisfied_clause(values) is None:
            return Assignment(tuple(values))
    return None


def _require_terminals(art: ReductionArtifact) -> tuple[int, int]:
    if "a" not in art.terminals or "b" not in art.terminals:
        raise CertificateError(f"a {art.stage.value} instance has no terminals a and b")
    return art.terminals["a"], art.terminals["b"]


def _expand(art: ReductionArtifact, u: int, v: int) -> list[int]:
    """Vertices strictly between original vertices u and v along their subdivided edge."""
    g = art.graph
    if g.has_edge(u, v):
        return []
    for first in g.neighbors(u):
        if art.label_of(first).role is not LabelRole.SUB:
            continue
        chain = [u, first]
        while art.label_of(chain[-1]).role is LabelRole.SUB:
            following = [w for w in g.neighbors(chain[-1]) if w != chain[-2]]
            if len(following) != 1:
                break
            chain.append(following[0])
        if chain[-1] == v:
            return chain[1:-1]
    raise InvariantViolation(f"no subdivided black edge joins {u} and {v}")


def assignment_to_cycle(art: ReductionArtifact, xi: Assignment) -> HoleWitness:
    """Induced cycle through ``a`` and ``b`` selected by a satisfying assignment."""
    a, b = _require_terminals(art)
    f = art.formula
    if len(xi) != f.n:
        raise CertificateError(f"assignment has {len(xi)} values but the formula has {f.n} variables")
    unsatisfied = f.first_unsatisfied_clause(xi.values)
    if unsatisfied is not None:
        raise CertificateError(f"assignment does not satisfy formula (clause {unsatisfied} is false)")

    n, m = f.n, f.m
    order: list[str] = ["a"]
    for i in range(1, n + 1):
        prefix = "t" if xi.value(i) else "f"
        order += [f"a_{i}", *_path_labels(prefix, i, m), f"b_{i}"]
    order.append("b")
    for j in range(m, 0, -1):
        p = next(
            p for p, literal in enumerate(f.clauses[j - 1], start=1)
            if literal.is_true(xi.values) and art.has_label(f"v_{j}^{p}")
        )
        order += [f"d_{j}", f"v_{j}^{p}", f"c_{j}"]
    for i in range(n, 0, -1):
        prefix = "t'" if xi.value(i) else "f'"
        order += [f"b'_{i}", *reversed(_path_labels(prefix, i, m)), f"a'_{i}"]

    originals = [art.vertex(label) for label in order]
    cycle: list[int] = []
    for index, vertex in enumerate(originals):
        following = originals[(index + 1) % len(originals)]
        cycle.append(vertex)
        cycle.extend(_expand(art, vertex, following))

    if a not in cycle or b not in cycle or not is_hole(art.graph, cycle):
        raise InvariantViolation("selected vertices do not induce a cycle through a and b")
    _assert_no_red_edge(art.graph, cycle)
    return HoleWitness(tuple(cycle))


def _assert_no_red_edge(g: Graph, cycle: list[int] | tuple[int, ...]) -> None:
    for index, vertex in enumerate(cycle):
        following = cycle[(index + 1) % len(cycle)]
        if g.color(vertex, following) is RED:
            raise InvariantViolation(f"certificate cycle uses the red edge {vertex}-{following}")


def _clause_literal(art: ReductionArtifact, vertex: int) -> tuple[int, Literal] | None:
    label = art.label_of(vertex)
    if label.role is not LabelRole.V:
        return None
    j, p = label.indices
    return j, art.formula.clauses[j - 1][p - 1]


def _assert_red_edges_are_twin_detours(art: ReductionArtifact, cycle: tuple[int, ...]) -> None:
    """Red edges on the cycle must come in pairs ``v_j^p - r - v_j^q`` joining two copies of one literal."""
    g = art.graph
    size = len(cycle)
    for index, vertex in enumerate(cycle):
        following = cycle[(index + 1) % size]
        if g.color(vertex, following) is not RED:
            continue
        if _clause_literal(art, vertex) is not None:
            twin_side, target, beyond = vertex, following, cycle[(index + 2) % size]
        else:
            twin_side, target, beyond = following, vertex, cycle[(index - 1) % size]
        own = _clause_literal(art, twin_side)
        other = _clause_literal(art, beyond)
        if own is None or other != own or g.color(target, beyond) is not RED:
            raise InvariantViolation(f"certificate cycle uses the red edge {vertex}-{following}")


def cycle_to_assignment(art: ReductionArtifact, z: HoleWitness) -> Assignment:
    """Truth assignment read off an induced cycle through ``a`` and ``b``."""
    a, b = _require_terminals(art)
    cycle = tuple(z)
    if not is_hole(art.graph, cycle):
        raise CertificateError("cycle is not an induced cycle of the instance")
    if a not in cycle or b not in cycle:
        raise CertificateError("cycle does not contain both terminals a and b")
    _assert_red_edges_are_twin_detours(art, cycle)

    members = set(cycle)
    values = []
    for i in range(1, art.n + 1):
        on_true = art.vertex(f"t_{i},0") in members
        on_false = art.vertex(f"f_{i},0") in members
        if on_true == on_false:
            raise InvariantViolation(f"cycle holds {'both' if on_true else 'neither'} of t_{i},0 and f_{i},0")
        values.append(1 if on_true else 0)
    xi = Assignment(tuple(values))
    unsatisfied = art.formula.first_unsatisfied_clause(xi.values)
    if unsatisfied is not None:
        raise InvariantViolation(f"assignment read from the cycle falsifies clause {unsatisfied}")
    return xi
