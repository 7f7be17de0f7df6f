from __future__ import annotations

from typing import Iterable, Iterator, Mapping


def bit(vertex: int) -> int:
    return 1 << vertex


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for vertex in vertices:
        mask |= 1 << vertex
    return mask


def up_to(vertex: int) -> int:
    """Mask of every identity from 0 through ``vertex``."""
    return (1 << (vertex + 1)) - 1 if vertex >= 0 else 0


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def reach(rows: Mapping[int, int], seeds: int, region: int) -> int:
    """Vertices of ``region`` reachable from ``seeds`` inside ``region``."""
    seen = seeds & region
    frontier = seen
    while frontier:
        grown = 0
        for vertex in iter_bits(frontier):
            grown |= rows[vertex]
        frontier = grown & region & ~seen
        seen |= frontier
    return seen


def shortest_path(rows: Mapping[int, int], source: int, target: int, region: int) -> list[int] | None:
    """Shortest source-target path whose interior lies in ``region``.

    Ties are broken towards smaller vertex identities.
    """
    if source == target:
        return [source]
    allowed = region | bit(target)
    parent: dict[int, int] = {source: source}
    seen = bit(source)
    frontier = [source]
    while frontier:
        next_frontier: list[int] = []
        for vertex in frontier:
            for neighbor in iter_bits(rows[vertex] & allowed & ~seen):
                seen |= bit(neighbor)
                parent[neighbor] = vertex
                if neighbor == target:
                    path = [target]
                    while path[-1] != source:
                        path.append(parent[path[-1]])
                    path.reverse()
                    return path
                next_frontier.append(neighbor)
        frontier = sorted(next_frontier)
    return None
