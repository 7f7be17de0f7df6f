from __future__ import annotations

from pathlib import Path

from wheelwatch.core.errors import FormulaError
from wheelwatch.core.reduction_models import CnfFormula


class DimacsService:
    """Reads 3-CNF formulas in DIMACS ``p cnf`` format."""

    def parse(self, text: str, pad: bool = False) -> CnfFormula:
        variable_count: int | None = None
        clause_count = 0
        clauses: list[list[int]] = []
        current: list[int] = []

        for line_number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("c"):
                continue
            if line.startswith("%"):
                break
            if line.startswith("p"):
                parts = line.split()
                if variable_count is not None:
                    raise FormulaError(f"line {line_number}: duplicate problem line")
                if len(parts) != 4 or parts[1] != "cnf":
                    raise FormulaError(f"line {line_number}: expected 'p cnf <variables> <clauses>'")
                try:
                    variable_count, clause_count = int(parts[2]), int(parts[3])
                except ValueError:
                    raise FormulaError(f"line {line_number}: problem line counts must be integers") from None
                continue
            if variable_count is None:
                raise FormulaError(f"line {line_number}: clause before the problem line")
            for token in line.split():
                try:
                    value = int(token)
                except ValueError:
                    raise FormulaError(f"line {line_number}: bad literal {token!r}") from None
                if value == 0:
                    clauses.append(self._finish_clause(current, len(clauses) + 1, pad))
                    current = []
                    continue
                if abs(value) > variable_count:
                    raise FormulaError(f"line {line_number}: variable {abs(value)} exceeds {variable_count}")
                current.append(value)

        if variable_count is None:
            raise FormulaError("missing 'p cnf' problem line")
        if current:
            clauses.append(self._finish_clause(current, len(clauses) + 1, pad))
        if len(clauses) != clause_count:
            raise FormulaError(f"problem line announces {clause_count} clauses, found {len(clauses)}")
        return CnfFormula.from_dimacs_clauses(variable_count, clauses)

    @staticmethod
    def _finish_clause(literals: list[int], index: int, pad: bool) -> list[int]:
        if not literals:
            raise FormulaError(f"clause {index} is empty")
        if len(literals) > 3:
            raise FormulaError(f"clause {index} has {len(literals)} literals, at most 3 are supported")
        if len(literals) < 3:
            if not pad:
                raise FormulaError(f"clause {index} has {len(literals)} literals; use --pad to repeat the last one")
            literals = literals + [literals[-1]] * (3 - len(literals))
        return literals

    def read(self, path: Path, pad: bool = False) -> CnfFormula:
        return self.parse(path.read_text(encoding="utf-8"), pad=pad)

