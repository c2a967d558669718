"""Small shared value types: validation reports and partitions."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

MAX_RECORDED = 200


@dataclass
class Violation:
    axiom: str
    message: str
    witness: tuple = ()

    def to_dict(self):
        return {"axiom": self.axiom, "message": self.message, "witness": list(self.witness)}


@dataclass
class ValidationReport:
    """Outcome of an exhaustive check. Truthy iff nothing was violated."""

    violations: list[Violation] = field(default_factory=list)
    info: dict = field(default_factory=dict)
    total: int = 0

    @property
    def ok(self) -> bool:
        return self.total == 0

    def __bool__(self):
        return self.ok

    def add(self, axiom: str, message: str, *witness):
        self.total += 1
        if len(self.violations) < MAX_RECORDED:
            self.violations.append(Violation(axiom, message, tuple(witness)))

    def extend(self, other: "ValidationReport", prefix: str = ""):
        for v in other.violations:
            self.add(prefix + v.axiom, v.message, *v.witness)
        # keep the count honest when the other report was truncated
        self.total += other.total - len(other.violations)

    def axioms(self) -> set[str]:
        return {v.axiom for v in self.violations}

    def to_dict(self):
        return {
            "ok": self.ok,
            "violation_count": self.total,
            "violations": [v.to_dict() for v in self.violations],
            "info": self.info,
        }


@dataclass(frozen=True)
class Partition:
    """A partition of ``range(n)`` in canonical form.

    Blocks are sorted ascending and ordered by their minimum, so the
    representative of a block (its first entry) is the minimal index.
    """

    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]]) -> "Partition":
        canon = sorted(tuple(sorted(b)) for b in blocks)
        return cls(tuple(b for b in canon if b))

    @cached_property
    def reps(self) -> tuple[int, ...]:
        return tuple(b[0] for b in self.blocks)

    @cached_property
    def block_of(self) -> dict[int, int]:
        return {x: i for i, b in enumerate(self.blocks) for x in b}

    def __len__(self):
        return len(self.blocks)

    def same_block(self, x: int, y: int) -> bool:
        return self.block_of[x] == self.block_of[y]

    def labelled(self, labels) -> list[list[str]]:
        return [[labels[x] for x in b] for b in self.blocks]


def partition_from_neighbours(n: int, neighbours) -> Partition:
    """Connected components of ``range(n)`` under ``neighbours(i) -> iterable``.

    The neighbour relation is treated as undirected.
    """
    adj: list[set[int]] = [set() for _ in range(n)]
    for i in range(n):
        for j in neighbours(i):
            if j != i:
                adj[i].add(j)
                adj[j].add(i)
    seen = [False] * n
    blocks = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        block = [start]
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in adj[i]:
                if not seen[j]:
                    seen[j] = True
                    block.append(j)
                    queue.append(j)
        blocks.append(block)
    return Partition.from_blocks(blocks)


def partition_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Partition:
    adj: list[list[int]] = [[] for _ in range(n)]
    for i, j in edges:
        adj[i].append(j)
    return partition_from_neighbours(n, adj.__getitem__)


def tuple_label(*parts) -> str:
    return "(" + ",".join(str(p) for p in parts) + ")"
