from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Sequence

from wheelwatch.core.errors import FormulaError, GraphError
from wheelwatch.core.graph import Edge, Graph


@dataclass(slots=True, frozen=True)
class Literal:
    variable: int
    positive: bool = True

    @classmethod
    def from_dimacs(cls, value: int) -> Literal:
        if value == 0:
            raise FormulaError("Literal 0 is the clause terminator, not a literal")
        return cls(variable=abs(value), positive=value > 0)

    def to_dimacs(self) -> int:
        return self.variable if self.positive else -self.variable

    def is_true(self, values: Sequence[int]) -> bool:
        return bool(values[self.variable - 1]) == self.positive

    def __str__(self) -> str:
        return f"x{self.variable}" if self.positive else f"~x{self.variable}"


Clause = tuple[Literal, Literal, Literal]


@dataclass(slots=True, frozen=True)
class CnfFormula:
    variable_count: int
    clauses: tuple[Clause, ...]

    def __post_init__(self) -> None:
        if self.variable_count < 1:
            raise FormulaError(f"A formula needs at least one variable, got {self.variable_count}")
        if not self.clauses:
            raise FormulaError("A formula needs at least one clause")
        for index, clause in enumerate(self.clauses, start=1):
            if len(clause) != 3:
                raise FormulaError(f"Clause {index} has {len(clause)} literals, expected exactly 3")
            for literal in clause:
                if not 1 <= literal.variable <= self.variable_count:
                    raise FormulaError(
                        f"Clause {index} uses variable {literal.variable} outside 1..{self.variable_count}"
                    )

    @classmethod
    def from_dimacs_clauses(cls, variable_count: int, clauses: Sequence[Sequence[int]]) -> CnfFormula:
        converted = []
        for index, clause in enumerate(clauses, start=1):
            if len(clause) != 3:
                raise FormulaError(f"Clause {index} has {len(clause)} literals, expected exactly 3")
            converted.append(tuple(Literal.from_dimacs(int(value)) for value in clause))
        return cls(variable_count=variable_count, clauses=tuple(converted))

    @property
    def n(self) -> int:
        return self.variable_count

    @property
    def m(self) -> int:
        return len(self.clauses)

    def dimacs_clauses(self) -> list[tuple[int, int, int]]:
        return [tuple(literal.to_dimacs() for literal in clause) for clause in self.clauses]

    def first_unsatisfied_clause(self, values: Sequence[int]) -> int | None:
        """1-based index of the first clause ``values`` falsifies, or ``None``."""
        for index, clause in enumerate(self.clauses, start=1):
            if not any(literal.is_true(values) for literal in clause):
                return index
        return None

    def __str__(self) -> str:
        return " & ".join("(" + " | ".join(str(literal) for literal in clause) + ")" for clause in self.clauses)


@dataclass(slots=True, frozen=True)
class Assignment:
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(value not in (0, 1) for value in self.values):
            raise FormulaError("Assignment values must be 0 or 1")

    @classmethod
    def from_bits(cls, bits: str) -> Assignment:
        cleaned = bits.strip().replace(",", "").replace(" ", "")
        if not cleaned or set(cleaned) - {"0", "1"}:
            raise FormulaError(f"Assignment must be a string of 0/1 bits, got {bits!r}")
        return cls(tuple(int(char) for char in cleaned))

    def to_bits(self) -> str:
        return "".join(str(value) for value in self.values)

    def __len__(self) -> int:
        return len(self.values)

    def value(self, variable: int) -> int:
        return self.values[variable - 1]


class LabelRole(str, Enum):
    A = "a"
    B = "b"
    X = "x"
    Y = "y"
    A_I = "a_i"
    B_I = "b_i"
    A_PRIME = "a'_i"
    B_PRIME = "b'_i"
    C = "c_j"
    D = "d_j"
    Z = "z_r"
    T = "t"
    F = "f"
    T_PRIME = "t'"
    F_PRIME = "f'"
    V = "v"
    SUB = "sub"


_TERMINAL_ROLES = {"a": LabelRole.A, "b": LabelRole.B, "x": LabelRole.X, "y": LabelRole.Y}
_INDEXED_ROLES = {
    "a": LabelRole.A_I,
    "b": LabelRole.B_I,
    "a'": LabelRole.A_PRIME,
    "b'": LabelRole.B_PRIME,
    "c": LabelRole.C,
    "d": LabelRole.D,
    "z": LabelRole.Z,
}
_PATH_ROLES = {"t": LabelRole.T, "f": LabelRole.F, "t'": LabelRole.T_PRIME, "f'": LabelRole.F_PRIME}
_INDEXED_PREFIX = {role: prefix for prefix, role in _INDEXED_ROLES.items()}
_PATH_PREFIX = {role: prefix for prefix, role in _PATH_ROLES.items()}

_INDEXED_RE = re.compile(r"^(a'|b'|a|b|c|d|z)_(\d+)$")
_PATH_RE = re.compile(r"^(t'|f'|t|f)_(\d+),(\d+)$")
_CLAUSE_RE = re.compile(r"^v_(\d+)\^(\d+)$")
_SUB_RE = re.compile(r"^sub\((\d+),(\d+),(\d+)\)$")


@dataclass(slots=True, frozen=True)
class VertexLabel:
    """Symbolic name of a reduction vertex, e.g. ``t'_2,4`` or ``v_3^1``."""

    role: LabelRole
    indices: tuple[int, ...] = ()

    @classmethod
    def parse(cls, text: str) -> VertexLabel:
        text = text.strip()
        if text in _TERMINAL_ROLES:
            return cls(_TERMINAL_ROLES[text])
        if match := _INDEXED_RE.match(text):
            return cls(_INDEXED_ROLES[match.group(1)], (int(match.group(2)),))
        if match := _PATH_RE.match(text):
            return cls(_PATH_ROLES[match.group(1)], (int(match.group(2)), int(match.group(3))))
        if match := _CLAUSE_RE.match(text):
            return cls(LabelRole.V, (int(match.group(1)), int(match.group(2))))
        if match := _SUB_RE.match(text):
            return cls(LabelRole.SUB, tuple(int(group) for group in match.groups()))
        raise GraphError(f"Unrecognised vertex label: {text!r}")

    def __str__(self) -> str:
        if self.role.value in _TERMINAL_ROLES:
            return self.role.value
        if self.role in _INDEXED_PREFIX:
            return f"{_INDEXED_PREFIX[self.role]}_{self.indices[0]}"
        if self.role in _PATH_PREFIX:
            return f"{_PATH_PREFIX[self.role]}_{self.indices[0]},{self.indices[1]}"
        if self.role is LabelRole.V:
            return f"v_{self.indices[0]}^{self.indices[1]}"
        return "sub({},{},{})".format(*self.indices)


class ReductionStage(str, Enum):
    GF = "gf"
    F_GRAPH = "f-graph"
    HARDENED = "hardened"
    WHEEL_INSTANCE = "wheel-instance"


@dataclass(slots=True, frozen=True)
class ReductionArtifact:
    """A reduction instance: colored graph, labels on every vertex, terminals and parameters."""

    stage: ReductionStage
    formula: CnfFormula
    graph: Graph
    terminals: Mapping[str, int]
    params: Mapping[str, int] = field(default_factory=dict)
    subdivision_plan: Mapping[Edge, int] = field(default_factory=dict)
    _index: dict[str, int] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        labels = self.graph.labels
        for vertex in self.graph.vertices:
            if vertex not in labels:
                raise GraphError(f"Reduction vertex {vertex} carries no label")
        for vertex, text in labels.items():
            if text in self._index:
                raise GraphError(f"Label {text!r} names both {self._index[text]} and {vertex}")
            self._index[text] = vertex
        for name, vertex in self.terminals.items():
            if vertex not in self.graph:
                raise GraphError(f"Terminal {name} = {vertex} is not a graph vertex")

    def vertex(self, label: str | VertexLabel) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise GraphError(f"No vertex labelled {str(label)!r}") from None

    def has_label(self, label: str | VertexLabel) -> bool:
        return str(label) in self._index

    def label_of(self, vertex: int) -> VertexLabel:
        return VertexLabel.parse(self.graph.label(vertex) or "")

    @property
    def n(self) -> int:
        return self.formula.n

    @property
    def m(self) -> int:
        return self.formula.m
