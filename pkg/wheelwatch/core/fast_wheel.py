from __future__ import annotations

import logging
from itertools import combinations
from typing import Mapping

from wheelwatch import config
from wheelwatch.core.bitset import bit, iter_bits, lowest, mask_of, reach
from wheelwatch.core.errors import CertificateError, InvariantViolation, ParameterError
from wheelwatch.core.graph import Graph, complement, is_hole
from wheelwatch.core.graph_models import (
    ConfigWitness,
    HoleWitness,
    Side,
    SidedWitness,
    TripleClassification,
    TripleKind,
    wheel_witness,
)
from wheelwatch.core.holes import find_hole_ge5
from wheelwatch.core.witnesses import validate_witness

logger = logging.getLogger(__name__)


def classify_triples(rows: Mapping[int, int], region: int) -> TripleClassification:
    """Complete, edgeless, or a P3 / co-P3 inside ``region``.

    A P3 triple is ``(end, middle, end)``; a co-P3 triple is ``(v, w, u)``
    with vw the only edge.
    """
    if all(not rows[v] & region for v in iter_bits(region)):
        return TripleClassification(TripleKind.EDGELESS)
    not_full = [v for v in iter_bits(region) if region & ~rows[v] & ~bit(v)]
    if not not_full:
        return TripleClassification(TripleKind.COMPLETE)

    first = lowest(region)
    component = reach(rows, bit(first), region)
    if component != region:
        remaining = region
        while remaining:
            part = reach(rows, bit(lowest(remaining)), remaining)
            for v in iter_bits(part):
                inside = rows[v] & part
                if inside:
                    return TripleClassification(TripleKind.CO_P3, (v, lowest(inside), lowest(region & ~part)))
            remaining &= ~part
        raise InvariantViolation("region with an edge has no edge in any component")

    end = not_full[0]
    far = region & ~rows[end] & ~bit(end)
    for other in iter_bits(far):
        common = rows[end] & rows[other] & region
        if common:
            return TripleClassification(TripleKind.P3, (end, lowest(common), other))
    raise InvariantViolation("connected region without distance-two pair is not complete")


def p3_or_co_p3(g: Graph) -> TripleClassification:
    return classify_triples(g.rows, g.vertex_mask)


def co_wheel5_scan(g: Graph) -> ConfigWitness | None:
    """Five vertices of ``g`` inducing the complement of a wheel.

    The returned wheel witness is valid in ``complement(g)``.
    """
    rows = g.rows
    everything = g.vertex_mask
    for v, w in g.edges():
        region = everything & ~rows[v] & ~rows[w] & ~bit(v) & ~bit(w)
        if region.bit_count() < 3:
            continue
        found = classify_triples(rows, region)
        if found.kind is TripleKind.P3:
            end, middle, other = found.triple
            return wheel_witness((v, middle, w, other), end)
        if found.kind is TripleKind.CO_P3:
            x, y, isolated = found.triple
            return wheel_witness((v, x, w, y), isolated)
    return None


def wheel_from_long_hole(g: Graph, h: HoleWitness, w: int) -> SidedWitness:
    """Wheel in ``g`` or its complement built from a hole of length >= 5 and a vertex off it."""
    cycle = tuple(h)
    if len(cycle) < 5 or not is_hole(g, cycle):
        raise ParameterError("wheel_from_long_hole needs a hole of length at least 5")
    if w not in g or w in cycle:
        raise ParameterError(f"Vertex {w} must be a graph vertex outside the hole")

    length = len(cycle)
    hits = g.row(w) & mask_of(cycle)
    if hits.bit_count() >= 3:
        return SidedWitness(Side.GRAPH, wheel_witness(cycle, w))
    if length == 5:
        h0, h1, h2, h3, h4 = cycle
        return SidedWitness(Side.COMPLEMENT, wheel_witness((h0, h2, h4, h1, h3), w))

    if hits:
        first = min(index for index, vertex in enumerate(cycle) if hits & bit(vertex))
        window = [cycle[(first + offset) % length] for offset in range(1, 6)]
    else:
        window = list(cycle[:5])
    v2, v3, _, v5, v6 = window
    return SidedWitness(Side.COMPLEMENT, wheel_witness((v2, v5, v3, v6), w))


def hole_graph_answer(n: int) -> bool:
    """Whether ``C_n`` or its complement contains a wheel."""
    if n < 5:
        raise ParameterError(f"Cycle length must be at least 5, got {n}")
    if n in config.HOLE_GRAPH_ANSWERS:
        return config.HOLE_GRAPH_ANSWERS[n]
    return True


def _hole_graph_witness(host: Graph, hole: HoleWitness, side: Side) -> SidedWitness:
    cycle = hole.canonical().cycle
    if len(cycle) >= 8:
        return SidedWitness(side.flipped, wheel_witness((cycle[0], cycle[3], cycle[1], cycle[4]), cycle[6]))
    witness = co_wheel5_scan(host)
    if witness is None:
        raise InvariantViolation(f"C{len(cycle)} is recorded as holding a wheel but the scan found none")
    return SidedWitness(side.flipped, witness)


def _checked(g: Graph, found: SidedWitness, complement_graph: Graph | None = None) -> SidedWitness:
    host = g if found.side is Side.GRAPH else complement_graph
    if host is None:
        host = complement(g)
    try:
        validate_witness(host, found.witness)
    except CertificateError as exc:
        raise InvariantViolation(f"wheel witness invalid on the {found.side.value} side: {exc}") from exc
    return found


def _first_wheel(g: Graph, co: Graph) -> SidedWitness | None:
    for side, host in ((Side.GRAPH, g), (Side.COMPLEMENT, co)):
        hole = find_hole_ge5(host)
        if hole is None:
            continue
        hole_mask = mask_of(hole.cycle)
        outside = host.vertex_mask & ~hole_mask
        if outside:
            centers = [w for w in iter_bits(outside) if (host.row(w) & hole_mask).bit_count() >= 3]
            local = wheel_from_long_hole(host, hole, centers[0] if centers else lowest(outside))
            logger.debug("long hole of length %s on the %s side", len(hole), side.value)
            return SidedWitness(side if local.side is Side.GRAPH else side.flipped, local.witness)
        if not hole_graph_answer(len(hole)):
            logger.debug("graph is C%s or its complement, no wheel", len(hole))
            return None
        return _hole_graph_witness(host, hole, side)

    witness = co_wheel5_scan(co)
    if witness is not None:
        return SidedWitness(Side.GRAPH, witness)
    witness = co_wheel5_scan(g)
    if witness is not None:
        return SidedWitness(Side.COMPLEMENT, witness)
    return None


def wheel_in_g_or_complement(g: Graph) -> SidedWitness | None:
    """A wheel in ``g`` or its complement; a 5-vertex wheel in ``g`` wins over any complement answer."""
    co = complement(g)
    found = _first_wheel(g, co)
    if found is None:
        return None
    if found.side is Side.COMPLEMENT:
        witness = co_wheel5_scan(co)
        if witness is not None:
            logger.debug("5-vertex wheel on the graph side replaces the complement answer")
            found = SidedWitness(Side.GRAPH, witness)
    return _checked(g, found, co)


def _rim_order(rows: Mapping[int, int], rim: int) -> tuple[int, ...] | None:
    for v in iter_bits(rim):
        if (rows[v] & rim).bit_count() != 2:
            return None
    start = lowest(rim)
    if reach(rows, bit(start), rim) != rim:
        return None
    order = [start]
    previous, current = -1, start
    while True:
        options = [v for v in iter_bits(rows[current] & rim) if v != previous]
        following = options[0]
        if following == start:
            break
        order.append(following)
        previous, current = current, following
        if len(order) > rim.bit_count():
            raise InvariantViolation("rim walk did not close")
    return tuple(order)


def small_k_pibar(g: Graph, k: int, l: int) -> SidedWitness | None:
    """Brute-force (k, l)-wheel search in ``g`` and its complement over at most eight vertices."""
    if not 3 <= k <= 4:
        raise ParameterError(f"k must be 3 or 4 for the bounded search, got {k}")
    if not 0 <= l <= k:
        raise ParameterError(f"l must lie in [0, k], got l={l} with k={k}")
    co = complement(g)
    hosts = ((Side.GRAPH, g.rows), (Side.COMPLEMENT, co.rows))
    largest = min(config.SMALL_PIBAR_MAX_ORDER, g.order)
    for size in range(k + 1, largest + 1):
        for side, rows in hosts:
            for subset in combinations(g.vertices, size):
                subset_mask = mask_of(subset)
                for center in subset:
                    rim = subset_mask & ~bit(center)
                    if (rows[center] & rim).bit_count() < l:
                        continue
                    order = _rim_order(rows, rim)
                    if order is None:
                        continue
                    return _checked(g, SidedWitness(side, wheel_witness(order, center, k, l)), co)
    return None
