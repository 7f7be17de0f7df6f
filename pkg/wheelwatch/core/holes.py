from __future__ import annotations

import logging
from typing import Mapping

from wheelwatch.core.bitset import bit, iter_bits, lowest, reach, shortest_path
from wheelwatch.core.errors import InvariantViolation, ParameterError
from wheelwatch.core.graph import Graph, is_chordless_cycle
from wheelwatch.core.graph_models import HoleWitness

logger = logging.getLogger(__name__)


def search_induced_cycle(
    rows: Mapping[int, int],
    start: int,
    allowed: int,
    min_len: int,
    *,
    required: int = 0,
    center_row: int = 0,
    min_center_hits: int = 0,
) -> list[int] | None:
    """Lexicographically first chordless cycle through ``start``.

    The other cycle vertices come from ``allowed``. The cycle must have at
    least ``min_len`` vertices, contain every vertex of ``required`` and at
    least ``min_center_hits`` vertices of ``center_row``.
    """
    allowed &= ~bit(start)
    required &= ~bit(start)
    start_row = rows[start]

    def satisfied(cycle_mask: int, length: int) -> bool:
        return (
            length >= min_len
            and required & ~cycle_mask == 0
            and (center_row & cycle_mask).bit_count() >= min_center_hits
        )

    # inner: closed neighbourhoods of the path vertices strictly between start and last
    def extend(path: list[int], path_mask: int, inner: int) -> list[int] | None:
        last = path[-1]
        next_inner = inner if last == start else inner | rows[last] | bit(last)
        for candidate in iter_bits(rows[last] & allowed & ~inner & ~path_mask):
            next_mask = path_mask | bit(candidate)
            if len(path) >= 2 and start_row & bit(candidate):
                if satisfied(next_mask, len(path) + 1):
                    return [*path, candidate]
                continue
            region = allowed & ~next_inner & ~next_mask
            component = reach(rows, rows[candidate] & region, region)
            if not component & start_row:
                continue
            if required & ~next_mask & ~component:
                continue
            if len(path) + 1 + component.bit_count() < min_len:
                continue
            if (center_row & (next_mask | component)).bit_count() < min_center_hits:
                continue
            found = extend([*path, candidate], next_mask, next_inner)
            if found is not None:
                return found
        return None

    return extend([start], bit(start), 0)


def _check_hole(g: Graph, cycle: list[int], min_len: int) -> HoleWitness:
    if len(cycle) < min_len or not is_chordless_cycle(g, cycle):
        raise InvariantViolation(f"hole search produced an invalid cycle: {cycle}")
    return HoleWitness(tuple(cycle))


def find_hole(g: Graph, min_len: int) -> HoleWitness | None:
    """Lexicographically smallest hole of length at least ``min_len``, or ``None``."""
    if min_len < 4:
        raise ParameterError(f"Hole length bound must be at least 4, got {min_len}")
    rows = g.rows
    remaining = g.vertex_mask
    for start in g.vertices:
        remaining &= ~bit(start)
        cycle = search_induced_cycle(rows, start, remaining, min_len)
        if cycle is not None:
            return _check_hole(g, cycle, min_len)
    return None


def find_hole_through(g: Graph, a: int, b: int, min_len: int) -> HoleWitness | None:
    """Hole of length at least ``min_len`` containing both ``a`` and ``b``; it starts at ``a``."""
    if a == b:
        raise ParameterError("The two prescribed vertices must differ")
    for vertex in (a, b):
        if vertex not in g:
            raise ParameterError(f"Unknown vertex: {vertex}")
    if min_len < 4:
        raise ParameterError(f"Hole length bound must be at least 4, got {min_len}")
    cycle = search_induced_cycle(g.rows, a, g.vertex_mask, min_len, required=bit(b))
    if cycle is None:
        return None
    if b not in cycle:
        raise InvariantViolation(f"hole through {a} misses {b}: {cycle}")
    return _check_hole(g, cycle, min_len)


def _components(rows: Mapping[int, int], region: int) -> list[int]:
    components: list[int] = []
    while region:
        component = reach(rows, bit(lowest(region)), region)
        components.append(component)
        region &= ~component
    return components


def find_hole_ge5(g: Graph) -> HoleWitness | None:
    """Polynomial search for a hole of length at least five.

    Every such hole contains an induced path a-b-c-d whose ends are joined
    by the rest of the hole away from N[b] and N[c]; a shortest joining path
    closes a hole.
    """
    rows = g.rows
    everything = g.vertex_mask
    for b, c in g.edges():
        closed_b = rows[b] | bit(b)
        closed_c = rows[c] | bit(c)
        a_side = rows[b] & ~closed_c
        d_side = rows[c] & ~closed_b
        if not a_side or not d_side:
            continue
        region = everything & ~closed_b & ~closed_c
        for component in _components(rows, region):
            for a in iter_bits(a_side):
                if not rows[a] & component:
                    continue
                for d in iter_bits(d_side & ~rows[a]):
                    if not rows[d] & component:
                        continue
                    path = shortest_path(rows, a, d, component)
                    if path is None:
                        continue
                    logger.debug("hole of length >= 5 closed on edge %s-%s", b, c)
                    return _check_hole(g, [b, *path, c], 5)
    return None
