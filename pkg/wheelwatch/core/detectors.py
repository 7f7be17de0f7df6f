from __future__ import annotations

import logging
from itertools import permutations
from typing import Iterator, Mapping, Sequence

from wheelwatch.core.bitset import bit, iter_bits, mask_of, reach, up_to
from wheelwatch.core.errors import CertificateError, InvariantViolation, ParameterError
from wheelwatch.core.graph import Graph, hubs
from wheelwatch.core.graph_models import ConfigKind, ConfigWitness, wheel_witness
from wheelwatch.core.holes import search_induced_cycle
from wheelwatch.core.witnesses import PATH_ROLES, validate_witness

logger = logging.getLogger(__name__)


def _checked(g: Graph, witness: ConfigWitness) -> ConfigWitness:
    try:
        validate_witness(g, witness)
    except CertificateError as exc:
        raise InvariantViolation(f"{witness.kind.value} detector returned an invalid witness: {exc}") from exc
    return witness


def _closed(rows: Mapping[int, int], vertices: Sequence[int]) -> int:
    mask = 0
    for vertex in vertices:
        mask |= rows[vertex] | bit(vertex)
    return mask


def detect_kl_wheel(g: Graph, k: int, l: int) -> ConfigWitness | None:
    """Chordless cycle of length at least ``k`` plus a vertex with at least ``l`` neighbours on it.

    For ``k == 3`` triangles count as rims. Centers are tried in increasing
    order; for ``l >= 3`` only hubs can be centers.
    """
    if k < 3:
        raise ParameterError(f"k must be at least 3, got {k}")
    if not 0 <= l <= k:
        raise ParameterError(f"l must lie in [0, k], got l={l} with k={k}")
    witness = _search_kl_wheel(g, k, l)
    if witness is None:
        return None
    return _checked(g, wheel_witness(witness[0], witness[1], k, l))


def _search_kl_wheel(g: Graph, k: int, l: int) -> tuple[tuple[int, ...], int] | None:
    rows = g.rows
    everything = g.vertex_mask
    centers = sorted(hubs(g)) if l >= 3 else list(g.vertices)
    for center in centers:
        center_row = rows[center]
        if center_row.bit_count() < l:
            continue
        rim_region = everything & ~bit(center)
        if l == 0:
            starts = [(start, rim_region & ~up_to(start)) for start in iter_bits(rim_region)]
        else:
            starts = []
            excluded = 0
            for start in iter_bits(center_row):
                excluded |= bit(start)
                starts.append((start, rim_region & ~excluded))
        for start, allowed in starts:
            cycle = search_induced_cycle(
                rows,
                start,
                allowed,
                k,
                center_row=center_row,
                min_center_hits=l,
            )
            if cycle is not None:
                logger.debug("(%s, %s)-wheel found at center %s", k, l, center)
                return tuple(cycle), center
    return None


def detect_wheel(g: Graph) -> ConfigWitness | None:
    found = _search_kl_wheel(g, 4, 3)
    if found is None:
        return None
    return _checked(g, wheel_witness(*found))


def _anchor_paths(
    rows: Mapping[int, int],
    source: int,
    target: int,
    free: int,
    first_floor: int = -1,
) -> Iterator[list[int]]:
    """Interiors of induced source-target paths drawn from ``free``, in increasing order.

    Adjacent anchors only admit the empty interior; non-adjacent ones need a
    non-empty one. ``free`` must already exclude every vertex seeing another anchor.
    """
    if rows[source] & bit(target):
        yield []
        return
    target_row = rows[target]

    def extend(interior: list[int], last: int, inner: int) -> Iterator[list[int]]:
        next_inner = inner | rows[last] | bit(last)
        candidates = rows[last] & free & ~inner
        if not interior:
            candidates &= ~up_to(first_floor)
        for candidate in iter_bits(candidates):
            if target_row & bit(candidate):
                yield [*interior, candidate]
                continue
            region = free & ~next_inner & ~bit(candidate)
            if not reach(rows, rows[candidate] & region, region) & target_row:
                continue
            yield from extend([*interior, candidate], candidate, next_inner)

    yield from extend([], source, 0)


def _three_paths(
    g: Graph,
    ends: Sequence[tuple[int, int]],
    ordered_firsts: bool = False,
) -> list[list[int]] | None:
    """Pairwise anticomplete interiors for the three anchor pairs in ``ends``.

    Each interior avoids every anchor other than its own two ends. With
    ``ordered_firsts`` the first interior vertices increase from path to path.
    """
    rows = g.rows
    anchors = mask_of(vertex for pair in ends for vertex in pair)
    open_region = g.vertex_mask & ~anchors
    frees = []
    for source, target in ends:
        foreign = anchors & ~bit(source) & ~bit(target)
        frees.append(mask_of(v for v in iter_bits(open_region) if not rows[v] & foreign))

    def solve(index: int, blocked: int, floor: int) -> list[list[int]] | None:
        if index == len(ends):
            return []
        source, target = ends[index]
        for interior in _anchor_paths(rows, source, target, frees[index] & ~blocked, floor):
            rest = solve(
                index + 1,
                blocked | _closed(rows, interior),
                interior[0] if ordered_firsts and interior else -1,
            )
            if rest is not None:
                return [interior, *rest]
        return None

    return solve(0, 0, -1)


def detect_theta(g: Graph) -> ConfigWitness | None:
    rows = g.rows
    for a in g.vertices:
        if rows[a].bit_count() < 3:
            continue
        for b in g.vertices:
            if b <= a or rows[a] & bit(b) or rows[b].bit_count() < 3:
                continue
            interiors = _three_paths(g, [(a, b)] * 3, ordered_firsts=True)
            if interiors is None:
                continue
            roles = {"a": (a,), "b": (b,)}
            for name, interior in zip(PATH_ROLES, interiors):
                roles[name] = (a, *interior, b)
            return _checked(g, ConfigWitness(kind=ConfigKind.THETA, roles=roles))
    return None


def _triangles(g: Graph) -> Iterator[tuple[int, int, int]]:
    rows = g.rows
    for x in g.vertices:
        for y in iter_bits(rows[x] & ~up_to(x)):
            for z in iter_bits(rows[x] & rows[y] & ~up_to(y)):
                yield x, y, z


def detect_pyramid(g: Graph) -> ConfigWitness | None:
    rows = g.rows
    triangles = list(_triangles(g))
    for apex in g.vertices:
        for triangle in triangles:
            if apex in triangle:
                continue
            if (rows[apex] & mask_of(triangle)).bit_count() > 1:
                continue
            interiors = _three_paths(g, [(apex, corner) for corner in triangle])
            if interiors is None:
                continue
            roles = {"apex": (apex,), "triangle": triangle}
            for name, interior, corner in zip(PATH_ROLES, interiors, triangle):
                roles[name] = (apex, *interior, corner)
            return _checked(g, ConfigWitness(kind=ConfigKind.PYRAMID, roles=roles))
    return None


def detect_prism(g: Graph) -> ConfigWitness | None:
    rows = g.rows
    triangles = list(_triangles(g))
    for first in triangles:
        for second in triangles:
            if second[0] <= first[0] or set(first) & set(second):
                continue
            for matched in permutations(second):
                crossing = any(
                    rows[first[i]] & bit(matched[j]) for i in range(3) for j in range(3) if i != j
                )
                if crossing:
                    continue
                interiors = _three_paths(g, list(zip(first, matched)))
                if interiors is None:
                    continue
                roles = {"triangle_a": first, "triangle_b": tuple(matched)}
                for name, interior, source, target in zip(PATH_ROLES, interiors, first, matched):
                    roles[name] = (source, *interior, target)
                return _checked(g, ConfigWitness(kind=ConfigKind.PRISM, roles=roles))
    return None


def detect_any_truemper(g: Graph) -> ConfigWitness | None:
    for detector in (detect_theta, detect_pyramid, detect_prism, detect_wheel):
        witness = detector(g)
        if witness is not None:
            return witness
    return None
