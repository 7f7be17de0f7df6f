from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping


class EdgeColor(str, Enum):
    BLACK = "black"
    RED = "red"
    PLAIN = "plain"


class ConfigKind(str, Enum):
    THETA = "theta"
    PRISM = "prism"
    PYRAMID = "pyramid"
    WHEEL = "wheel"
    KL_WHEEL = "kl-wheel"


class Side(str, Enum):
    GRAPH = "graph"
    COMPLEMENT = "complement"

    @property
    def flipped(self) -> Side:
        return Side.COMPLEMENT if self is Side.GRAPH else Side.GRAPH


class TripleKind(str, Enum):
    COMPLETE = "complete"
    EDGELESS = "edgeless"
    P3 = "p3"
    CO_P3 = "co-p3"


@dataclass(slots=True, frozen=True)
class HoleWitness:
    """An ordered cyclic vertex sequence claimed to be a hole."""

    cycle: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.cycle)

    def __iter__(self):
        return iter(self.cycle)

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.cycle)

    def canonical(self) -> HoleWitness:
        """Same cycle, rotated to its smallest vertex and heading to the smaller neighbour."""
        if not self.cycle:
            return self
        start = self.cycle.index(min(self.cycle))
        rotated = self.cycle[start:] + self.cycle[:start]
        if len(rotated) > 2 and rotated[-1] < rotated[1]:
            rotated = (rotated[0], *reversed(rotated[1:]))
        return HoleWitness(tuple(rotated))


@dataclass(slots=True, frozen=True)
class TwoColoring:
    colors: Mapping[int, int]

    def color(self, vertex: int) -> int:
        return self.colors[vertex]


@dataclass(slots=True, frozen=True)
class ConfigWitness:
    """An embedded Truemper configuration.

    Role names by kind:
      theta   -- ``a``, ``b``, ``path1..path3`` (each path runs a..b)
      prism   -- ``triangle_a``, ``triangle_b``, ``path1..path3`` (path i runs a_i..b_i)
      pyramid -- ``apex``, ``triangle``, ``path1..path3`` (path i runs apex..b_i)
      wheel, kl-wheel -- ``rim`` (cyclic order) and ``center``
    """

    kind: ConfigKind
    roles: Mapping[str, tuple[int, ...]]
    k: int | None = None
    l: int | None = None

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(v for members in self.roles.values() for v in members)

    @property
    def rim(self) -> tuple[int, ...]:
        return self.roles["rim"]

    @property
    def center(self) -> int:
        return self.roles["center"][0]

    def to_record(self) -> dict:
        record: dict = {
            "kind": self.kind.value,
            "roles": {name: list(members) for name, members in self.roles.items()},
        }
        if self.k is not None:
            record["k"] = self.k
        if self.l is not None:
            record["l"] = self.l
        return record

    @classmethod
    def from_record(cls, record: Mapping) -> ConfigWitness:
        return cls(
            kind=ConfigKind(record["kind"]),
            roles={name: tuple(int(v) for v in members) for name, members in record["roles"].items()},
            k=record.get("k"),
            l=record.get("l"),
        )


@dataclass(slots=True, frozen=True)
class SidedWitness:
    side: Side
    witness: ConfigWitness

    def to_record(self) -> dict:
        return {"side": self.side.value, **self.witness.to_record()}

    @classmethod
    def from_record(cls, record: Mapping) -> SidedWitness:
        return cls(side=Side(record["side"]), witness=ConfigWitness.from_record(record))


@dataclass(slots=True, frozen=True)
class TripleClassification:
    kind: TripleKind
    triple: tuple[int, int, int] | None = None

    @property
    def has_triple(self) -> bool:
        return self.triple is not None


def wheel_witness(rim: tuple[int, ...], center: int, k: int | None = None, l: int | None = None) -> ConfigWitness:
    if k is None and l is None:
        return ConfigWitness(kind=ConfigKind.WHEEL, roles={"rim": tuple(rim), "center": (center,)})
    return ConfigWitness(kind=ConfigKind.KL_WHEEL, roles={"rim": tuple(rim), "center": (center,)}, k=k, l=l)

