from __future__ import annotations

import argparse
from pathlib import Path

from wheelwatch.config import APP_NAME, TIMEOUT_ENV_VAR
from wheelwatch.core.generators import GraphFamily
from wheelwatch.core.reduction_models import ReductionStage
from wheelwatch.version import APP_VERSION

DETECT_TARGETS = (
    "wheel",
    "theta",
    "prism",
    "pyramid",
    "any-truemper",
    "hole",
    "hole-through",
    "kl-wheel",
    "hub",
)


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", type=Path, help="Write a JSON run report to this path")
    common.add_argument("-v", "--verbose", action="store_true", help="Log debug details to stderr")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wheelwatch",
        description=f"{APP_NAME}: detect wheels and other Truemper configurations, build SAT reductions.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {APP_VERSION}")
    common = _common_options()
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    detect = commands.add_parser("detect", parents=[common], help="Search a graph for one configuration")
    detect.add_argument("graph", type=Path, help="Edge-list graph file")
    detect.add_argument("--target", required=True, choices=DETECT_TARGETS)
    detect.add_argument("--k", type=int, help="Minimum rim or hole length (kl-wheel, hole, hole-through)")
    detect.add_argument("--l", type=int, help="Minimum number of center neighbours on the rim (kl-wheel)")
    detect.add_argument("--a", help="First vertex for hole-through: id, label or terminal name")
    detect.add_argument("--b", help="Second vertex for hole-through: id, label or terminal name")
    detect.add_argument("--witness", action="store_true", help="Print the witness as JSON")
    detect.add_argument(
        "--timeout",
        type=float,
        help=f"Seconds before a search is abandoned; 0 disables (default from {TIMEOUT_ENV_VAR} or 60)",
    )

    wheel_or_co = commands.add_parser(
        "wheel-or-co", parents=[common], help="Decide whether the graph or its complement has a wheel"
    )
    wheel_or_co.add_argument("graph", type=Path, help="Edge-list graph file")
    wheel_or_co.add_argument("--witness", action="store_true", help="Print the witness as JSON")

    reduce = commands.add_parser("reduce", parents=[common], help="Build a reduction instance from a 3-CNF formula")
    reduce.add_argument("cnf", type=Path, help="DIMACS CNF file")
    reduce.add_argument("--mode", required=True, choices=[stage.value for stage in ReductionStage])
    reduce.add_argument("--k", type=int, help="Hardening length (hardened) or rim length (wheel-instance)")
    reduce.add_argument("--l", type=int, help="Center neighbour count (wheel-instance)")
    reduce.add_argument("--subdiv-seed", type=int, help="Seed for the random subdivision plan (f-graph)")
    reduce.add_argument("--pad", action="store_true", help="Pad short clauses by repeating their last literal")
    reduce.add_argument("--out", type=Path, required=True, help="Edge-list output path")
    reduce.add_argument("--dot", type=Path, help="Optional Graphviz output path")

    verify = commands.add_parser("verify", parents=[common], help="Check a certificate against a reduction instance")
    verify.add_argument("graph", type=Path, help="Instance file written by 'reduce'")
    certificate = verify.add_mutually_exclusive_group(required=True)
    certificate.add_argument("--assignment", help="Truth values as a 0/1 string, variable 1 first")
    certificate.add_argument("--cycle", help="Vertex ids of an induced cycle, comma or space separated")

    gen = commands.add_parser("gen", parents=[common], help="Generate a test graph")
    gen.add_argument("family", choices=[family.value for family in GraphFamily])
    gen.add_argument("--n", type=int, help="Order (rim length for wheel)")
    gen.add_argument("--p", type=float, help="Edge probability (gnp)")
    gen.add_argument("--seed", type=int, help="Random seed (gnp)")
    gen.add_argument("--rungs", type=int, default=0, help="Subdivisions per prism rung")
    gen.add_argument("--out", type=Path, help="Edge-list output path; stdout when omitted")

    census = commands.add_parser(
        "census", parents=[common], help="List small graphs where neither G nor its complement has a wheel"
    )
    census.add_argument("--max-n", type=int, default=6, help="Largest order to enumerate (at most 9)")
    census.add_argument("--codes", action="store_true", help="Print the graph6 code of every listed graph")

    return parser
