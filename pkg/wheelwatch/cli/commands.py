from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from typing import Callable

from wheelwatch import config
from wheelwatch.cli.progress import TqdmProgress
from wheelwatch.cli.report import (
    RunReport,
    assignment_record,
    config_record,
    hole_record,
    hubs_record,
    sided_record,
)
from wheelwatch.cli.worker import CommandWorker
from wheelwatch.core.census import run_census
from wheelwatch.core.detectors import (
    detect_any_truemper,
    detect_kl_wheel,
    detect_prism,
    detect_pyramid,
    detect_theta,
    detect_wheel,
)
from wheelwatch.core.dimacs_service import DimacsService
from wheelwatch.core.errors import ParameterError
from wheelwatch.core.fast_wheel import wheel_in_g_or_complement
from wheelwatch.core.generators import GraphFamily, generate
from wheelwatch.core.graph import hubs
from wheelwatch.core.graph_io import (
    DotService,
    GraphDocument,
    GraphFileService,
    artifact_from_document,
    document_from_artifact,
)
from wheelwatch.core.graph_models import HoleWitness
from wheelwatch.core.holes import find_hole, find_hole_through
from wheelwatch.core.reduction_models import Assignment, ReductionArtifact, ReductionStage
from wheelwatch.core.sat_reduction import (
    assignment_to_cycle,
    build_gf,
    cycle_to_assignment,
    harden,
    lift_to_wheel_instance,
    make_f_graph,
    random_subdivision_plan,
)

logger = logging.getLogger(__name__)

EXIT_FOUND = 0
EXIT_NOT_FOUND = 1
EXIT_ERROR = 2

_CONFIG_DETECTORS = {
    "wheel": detect_wheel,
    "theta": detect_theta,
    "prism": detect_prism,
    "pyramid": detect_pyramid,
    "any-truemper": detect_any_truemper,
}
# answered without search; everything else runs under the timeout
_POLYNOMIAL_TARGETS = {"hub"}
_TARGET_PARAMS = {
    "hole": {"k"},
    "hole-through": {"k", "a", "b"},
    "kl-wheel": {"k", "l"},
}

graph_files = GraphFileService()
dimacs = DimacsService()
dot = DotService()


def _emit(text: str) -> None:
    print(text, file=sys.stdout)


def _emit_witness(args: argparse.Namespace, record: dict | None) -> None:
    if getattr(args, "witness", False) and record is not None:
        _emit(json.dumps(record, sort_keys=True))


def _resolve_timeout(value: float | None) -> float | None:
    if value is None:
        return config.default_timeout()
    return value if value > 0 else None


def resolve_vertex(document: GraphDocument, token: str) -> int:
    """A vertex given as a terminal name, a vertex label or a numeric id."""
    if token in document.terminals:
        return document.terminals[token]
    for vertex, label in document.graph.labels.items():
        if label == token:
            return vertex
    try:
        vertex = int(token)
    except ValueError:
        raise ParameterError(f"{token!r} is neither a terminal, a label nor a vertex id") from None
    if vertex not in document.graph:
        raise ParameterError(f"vertex {vertex} is not in the graph")
    return vertex


def _check_target_params(args: argparse.Namespace) -> None:
    allowed = _TARGET_PARAMS.get(args.target, set())
    given = {name for name in ("k", "l", "a", "b") if getattr(args, name) is not None}
    unexpected = sorted(given - allowed)
    if unexpected:
        raise ParameterError(f"--{unexpected[0]} does not apply to target {args.target}")
    if args.target == "kl-wheel" and (args.k is None or args.l is None):
        raise ParameterError("kl-wheel needs both --k and --l")


def _detect_task(args: argparse.Namespace, document: GraphDocument) -> Callable[[], tuple[bool, dict | None]]:
    g = document.graph
    target = args.target

    if target in _CONFIG_DETECTORS:
        detector = _CONFIG_DETECTORS[target]

        def run_config() -> tuple[bool, dict | None]:
            found = detector(g)
            return found is not None, config_record(found) if found is not None else None

        return run_config

    if target == "kl-wheel":

        def run_kl() -> tuple[bool, dict | None]:
            found = detect_kl_wheel(g, args.k, args.l)
            return found is not None, config_record(found) if found is not None else None

        return run_kl

    min_len = args.k if args.k is not None else 4
    if target == "hole":

        def run_hole() -> tuple[bool, dict | None]:
            found = find_hole(g, min_len)
            return found is not None, hole_record(found, min_len) if found is not None else None

        return run_hole

    if target == "hole-through":
        a = resolve_vertex(document, args.a if args.a is not None else "a")
        b = resolve_vertex(document, args.b if args.b is not None else "b")

        def run_through() -> tuple[bool, dict | None]:
            found = find_hole_through(g, a, b, min_len)
            return found is not None, hole_record(found, min_len) if found is not None else None

        return run_through

    def run_hubs() -> tuple[bool, dict | None]:
        found = hubs(g)
        return bool(found), hubs_record(found)

    return run_hubs


def cmd_detect(args: argparse.Namespace, report: RunReport) -> int:
    _check_target_params(args)
    document = graph_files.read(args.graph)
    report.add_input(args.graph, holds_graph=True)
    task = _detect_task(args, document)
    timeout = None if args.target in _POLYNOMIAL_TARGETS else _resolve_timeout(args.timeout)
    logger.debug("detect %s on %s vertices, timeout %s", args.target, document.graph.order, timeout)

    found, record = CommandWorker(f"detect {args.target}", task).execute(timeout)
    report.answer = "yes" if found else "no"
    report.witness = record if found else None
    report.details["target"] = args.target
    _emit(report.answer)
    _emit_witness(args, report.witness)
    return EXIT_FOUND if found else EXIT_NOT_FOUND


def cmd_wheel_or_co(args: argparse.Namespace, report: RunReport) -> int:
    document = graph_files.read(args.graph)
    report.add_input(args.graph, holds_graph=True)
    found = wheel_in_g_or_complement(document.graph)
    if found is None:
        report.answer = "no"
        _emit("no")
        return EXIT_NOT_FOUND
    report.answer = "yes"
    report.side = found.side.value
    report.witness = sided_record(found)
    _emit(f"yes {found.side.value}")
    _emit_witness(args, report.witness)
    return EXIT_FOUND


def _check_reduce_params(args: argparse.Namespace, stage: ReductionStage) -> None:
    if args.k is not None and stage not in (ReductionStage.HARDENED, ReductionStage.WHEEL_INSTANCE):
        raise ParameterError(f"--k does not apply to mode {stage.value}")
    if args.l is not None and stage is not ReductionStage.WHEEL_INSTANCE:
        raise ParameterError(f"--l does not apply to mode {stage.value}")
    if args.subdiv_seed is not None and stage is not ReductionStage.F_GRAPH:
        raise ParameterError(f"--subdiv-seed does not apply to mode {stage.value}")
    if stage is ReductionStage.WHEEL_INSTANCE and (args.k is None or args.l is None):
        raise ParameterError("wheel-instance needs both --k and --l")


def build_instance(args: argparse.Namespace) -> ReductionArtifact:
    stage = ReductionStage(args.mode)
    _check_reduce_params(args, stage)
    formula = dimacs.read(args.cnf, pad=args.pad)
    gf = build_gf(formula)
    if stage is ReductionStage.GF:
        return gf
    if stage is ReductionStage.F_GRAPH:
        return make_f_graph(gf, random_subdivision_plan(gf, args.subdiv_seed))
    if stage is ReductionStage.HARDENED:
        return harden(gf, args.k if args.k is not None else config.DEFAULT_HARDEN_K)
    hardened = harden(gf, max(config.DEFAULT_HARDEN_K, args.k))
    return lift_to_wheel_instance(hardened, args.k, args.l)


def cmd_reduce(args: argparse.Namespace, report: RunReport) -> int:
    art = build_instance(args)
    report.add_input(args.cnf)
    report.seed = args.subdiv_seed
    graph_files.write(document_from_artifact(art), args.out)
    if args.dot is not None:
        dot.write(art.graph, args.dot, art.terminals)
    report.answer = "ok"
    report.details.update(
        {"stage": art.stage.value, "vertices": art.graph.order, "edges": art.graph.size, "out": str(args.out)}
    )
    _emit(f"wrote {args.out} ({art.stage.value}: {art.graph.order} vertices, {art.graph.size} edges)")
    return EXIT_FOUND


def parse_cycle(text: str) -> HoleWitness:
    tokens = [token for token in re.split(r"[,\s]+", text.strip()) if token]
    try:
        return HoleWitness(tuple(int(token) for token in tokens))
    except ValueError:
        raise ParameterError(f"--cycle expects vertex ids, got {text!r}") from None


def cmd_verify(args: argparse.Namespace, report: RunReport) -> int:
    document = graph_files.read(args.graph)
    report.add_input(args.graph, holds_graph=True)
    art = artifact_from_document(document)
    if args.assignment is not None:
        cycle = assignment_to_cycle(art, Assignment.from_bits(args.assignment))
        report.witness = hole_record(cycle, 4)
        _emit(" ".join(str(vertex) for vertex in cycle))
    else:
        xi = cycle_to_assignment(art, parse_cycle(args.cycle))
        report.witness = assignment_record(xi)
        _emit(xi.to_bits())
    report.answer = "yes"
    return EXIT_FOUND


def cmd_gen(args: argparse.Namespace, report: RunReport) -> int:
    family = GraphFamily(args.family)
    graph = generate(family, n=args.n, p=args.p, seed=args.seed, rung_subdivisions=args.rungs)
    document = GraphDocument(graph=graph)
    report.seed = args.seed
    report.answer = "ok"
    report.details.update({"family": family.value, "vertices": graph.order, "edges": graph.size})
    if args.out is None:
        sys.stdout.write(graph_files.format(document))
    else:
        graph_files.write(document, args.out)
        report.details["out"] = str(args.out)
        _emit(f"wrote {args.out} ({graph.order} vertices, {graph.size} edges)")
    return EXIT_FOUND


def cmd_census(args: argparse.Namespace, report: RunReport) -> int:
    with TqdmProgress(enabled=sys.stderr.isatty()) as progress:
        census = run_census(args.max_n, progress_callback=progress)
    for order in census.orders:
        _emit(f"order {order.order}: {len(order.wheel_free)} of {order.total} graphs without a wheel on either side")
        if args.codes:
            for code in order.wheel_free:
                _emit(f"  {code}")
    failing = []
    for name, check in census.cross_checks.items():
        status = "ok" if check.passed else f"FAILED {', '.join(check.failures)}"
        _emit(f"cross-check {name}: {check.checked} checked, {status}")
        if not check.passed:
            failing.append(name)
    report.answer = "no" if failing else "ok"
    report.details.update(census.to_record())
    return EXIT_NOT_FOUND if failing else EXIT_FOUND


COMMANDS: dict[str, Callable[[argparse.Namespace, RunReport], int]] = {
    "detect": cmd_detect,
    "wheel-or-co": cmd_wheel_or_co,
    "reduce": cmd_reduce,
    "verify": cmd_verify,
    "gen": cmd_gen,
    "census": cmd_census,
}
