from __future__ import annotations

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from wheelwatch.core.detectors import detect_wheel  # noqa: E402
from wheelwatch.core.generators import GraphFamily, generate  # noqa: E402
from wheelwatch.core.graph import complement  # noqa: E402


def hole_graph_table(low: int, high: int) -> dict[int, bool]:
    """For each n, whether C_n or its complement contains a wheel, by exhaustive search."""
    table = {}
    for n in range(low, high + 1):
        cycle = generate(GraphFamily.CYCLE, n=n)
        table[n] = detect_wheel(cycle) is not None or detect_wheel(complement(cycle)) is not None
    return table


def parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(description="Recompute HOLE_GRAPH_ANSWERS for wheelwatch/config.py.")
    parser.add_argument("--low", type=int, default=5, help="Smallest cycle length")
    parser.add_argument("--high", type=int, default=7, help="Largest cycle length")
    return parser.parse_args()


def main() -> int:
    args = parse_args()
    if args.low < 3 or args.high < args.low:
        print("error: need 3 <= --low <= --high", file=sys.stderr)
        return 2
    table = hole_graph_table(args.low, args.high)
    print("HOLE_GRAPH_ANSWERS = {" + ", ".join(f"{n}: {answer}" for n, answer in table.items()) + "}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
