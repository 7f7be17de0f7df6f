from __future__ import annotations

from typing import Iterable, Sequence

from wheelwatch.core.bitset import bit, mask_of
from wheelwatch.core.errors import CertificateError
from wheelwatch.core.graph import Edge, Graph, edge_key, is_chordless_cycle
from wheelwatch.core.graph_models import ConfigKind, ConfigWitness, HoleWitness

PATH_ROLES = ("path1", "path2", "path3")


def _path_edges(path: Sequence[int]) -> set[Edge]:
    return {edge_key(u, v) for u, v in zip(path, path[1:])}


def _triangle_edges(triangle: Sequence[int]) -> set[Edge]:
    a, b, c = triangle
    return {edge_key(a, b), edge_key(b, c), edge_key(a, c)}


def _induced_edges(g: Graph, vertices: Iterable[int]) -> set[Edge]:
    chosen = set(vertices)
    return {edge_key(u, v) for u in chosen for v in chosen if u < v and g.row(u) & bit(v)}


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise CertificateError(message)


def _role(witness: ConfigWitness, name: str, size: int | None = None) -> tuple[int, ...]:
    members = witness.roles.get(name)
    _require(members is not None, f"{witness.kind.value} witness lacks role '{name}'")
    if size is not None:
        _require(len(members) == size, f"role '{name}' must hold {size} vertices, got {len(members)}")
    return tuple(members)


def _check_exact_edges(g: Graph, vertices: Sequence[int], expected: set[Edge]) -> None:
    _require(len(set(vertices)) == len(vertices), "witness repeats a vertex")
    actual = _induced_edges(g, vertices)
    missing = sorted(expected - actual)
    if missing:
        raise CertificateError(f"witness edge {missing[0]} is not an edge of the graph")
    extra = sorted(actual - expected)
    if extra:
        raise CertificateError(f"witness induces the extra edge {extra[0]}")


def validate_hole(g: Graph, hole: HoleWitness | Sequence[int], min_len: int = 4) -> None:
    cycle = tuple(hole)
    _require(len(cycle) >= min_len, f"cycle has length {len(cycle)}, below {min_len}")
    _require(all(v in g for v in cycle), "cycle uses a vertex outside the graph")
    _require(is_chordless_cycle(g, cycle, min_length=3), "sequence is not a chordless cycle")


def _validate_wheel(g: Graph, witness: ConfigWitness) -> None:
    rim = _role(witness, "rim")
    center = _role(witness, "center", 1)[0]
    if witness.kind is ConfigKind.WHEEL:
        min_len, min_hits = 4, 3
    else:
        _require(witness.k is not None and witness.l is not None, "kl-wheel witness lacks its (k, l) parameters")
        min_len, min_hits = max(3, witness.k), witness.l
    _require(center in g, f"center {center} is not a vertex of the graph")
    _require(center not in rim, "center lies on the rim")
    validate_hole(g, rim, min_len)
    hits = (g.row(center) & mask_of(rim)).bit_count()
    _require(hits >= min_hits, f"center has {hits} rim neighbours, needs at least {min_hits}")


def _validate_theta(g: Graph, witness: ConfigWitness) -> None:
    a = _role(witness, "a", 1)[0]
    b = _role(witness, "b", 1)[0]
    paths = [_role(witness, name) for name in PATH_ROLES]
    expected: set[Edge] = set()
    vertices = [a, b]
    for path in paths:
        _require(path[0] == a and path[-1] == b, "every theta path must run from a to b")
        _require(len(path) >= 3, "every theta path must have length at least 2")
        expected |= _path_edges(path)
        vertices.extend(path[1:-1])
    _check_exact_edges(g, vertices, expected)


def _validate_prism(g: Graph, witness: ConfigWitness) -> None:
    triangle_a = _role(witness, "triangle_a", 3)
    triangle_b = _role(witness, "triangle_b", 3)
    paths = [_role(witness, name) for name in PATH_ROLES]
    expected = _triangle_edges(triangle_a) | _triangle_edges(triangle_b)
    vertices = [*triangle_a, *triangle_b]
    for index, path in enumerate(paths):
        _require(
            path[0] == triangle_a[index] and path[-1] == triangle_b[index],
            f"prism path {index + 1} must join the matching triangle vertices",
        )
        _require(len(path) >= 2, "every prism path must have length at least 1")
        expected |= _path_edges(path)
        vertices.extend(path[1:-1])
    _check_exact_edges(g, vertices, expected)


def _validate_pyramid(g: Graph, witness: ConfigWitness) -> None:
    apex = _role(witness, "apex", 1)[0]
    triangle = _role(witness, "triangle", 3)
    paths = [_role(witness, name) for name in PATH_ROLES]
    expected = _triangle_edges(triangle)
    vertices = [apex, *triangle]
    for index, path in enumerate(paths):
        _require(
            path[0] == apex and path[-1] == triangle[index],
            f"pyramid path {index + 1} must run from the apex to its triangle vertex",
        )
        _require(len(path) >= 2, "every pyramid path must have length at least 1")
        expected |= _path_edges(path)
        vertices.extend(path[1:-1])
    long_paths = sum(1 for path in paths if len(path) >= 3)
    _require(long_paths >= 2, "at least two pyramid paths must have length at least 2")
    _check_exact_edges(g, vertices, expected)


_VALIDATORS = {
    ConfigKind.THETA: _validate_theta,
    ConfigKind.PRISM: _validate_prism,
    ConfigKind.PYRAMID: _validate_pyramid,
    ConfigKind.WHEEL: _validate_wheel,
    ConfigKind.KL_WHEEL: _validate_wheel,
}


def validate_witness(g: Graph, witness: ConfigWitness) -> None:
    """Raise :class:`CertificateError` naming the first violated condition."""
    for vertex in witness.vertex_set:
        _require(vertex in g, f"witness vertex {vertex} is not in the graph")
    _VALIDATORS[witness.kind](g, witness)

