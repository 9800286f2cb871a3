"""Community assignments and the contingency table linking two of them.

The binary co-occurrence matrix of a partition (row i = indicator of the set
{j : c_j = c_i}) is never stored in production code: every quantity that
needs it reduces to overlap counts between two partitions. ``cc_row`` exists
only as the materialized oracle for tests.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence, TextIO

import numpy as np


class PartitionError(ValueError):
    """Invalid or incomplete community assignment."""


@dataclass(frozen=True)
class Partition:
    """One community label per node; community ids dense in [0, k)."""

    labels: np.ndarray  # shape (n,), int64
    sizes: np.ndarray  # shape (k,), int64
    k: int
    original_ids: tuple = ()  # dense id -> external community label, if any

    @property
    def n(self) -> int:
        return int(self.labels.shape[0])

    @classmethod
    def from_labels(cls, raw_labels: Sequence) -> "Partition":
        """Relabel arbitrary community ids to dense ids in first-seen order."""
        if len(raw_labels) == 0:
            raise PartitionError("empty label sequence")
        remap: dict = {}
        dense = np.empty(len(raw_labels), dtype=np.int64)
        for i, lab in enumerate(raw_labels):
            if lab not in remap:
                remap[lab] = len(remap)
            dense[i] = remap[lab]
        k = len(remap)
        sizes = np.bincount(dense, minlength=k)
        return cls(labels=dense, sizes=sizes, k=k, original_ids=tuple(remap.keys()))

    def members(self, c: int) -> np.ndarray:
        return np.flatnonzero(self.labels == c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return bool(np.array_equal(self.labels, other.labels))


@dataclass(frozen=True)
class ContingencyTable:
    """Overlap counts |a ∩ b| between ground-truth and predicted communities.

    Sparse: only non-empty cells are stored. Row marginals are the
    ground-truth community sizes, column marginals the predicted ones.
    """

    overlap: dict[tuple[int, int], int]
    row_sums: np.ndarray
    col_sums: np.ndarray
    n: int

    def cell(self, a: int, b: int) -> int:
        return self.overlap.get((a, b), 0)


def contingency(gt: Partition, pred: Partition) -> ContingencyTable:
    """Single O(n) pass over node labels."""
    if gt.n != pred.n:
        raise PartitionError(f"partition sizes differ: {gt.n} vs {pred.n}")
    counts = Counter(zip(gt.labels.tolist(), pred.labels.tolist()))
    return ContingencyTable(
        overlap=dict(counts),
        row_sums=gt.sizes.copy(),
        col_sums=pred.sizes.copy(),
        n=gt.n,
    )


def cc_row(p: Partition, i: int) -> np.ndarray:
    """Materialized co-occurrence row: v[j] = 1 iff c_j = c_i. Oracle only."""
    if not 0 <= i < p.n:
        raise IndexError(f"node index {i} out of range for n={p.n}")
    return (p.labels == p.labels[i]).astype(np.float64)


def load_partition(source: TextIO | Iterable[str], n: int) -> Partition:
    """Parse 'node_id community_id' lines; every node in [0, n) exactly once."""
    assigned: dict[int, str] = {}
    for lineno, line in enumerate(source, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        if len(tokens) != 2:
            raise PartitionError(f"line {lineno}: expected two tokens, got {len(tokens)}")
        try:
            node = int(tokens[0])
        except ValueError:
            raise PartitionError(f"line {lineno}: non-integer node id {tokens[0]!r}")
        if not 0 <= node < n:
            raise PartitionError(f"line {lineno}: node {node} outside [0, {n})")
        if node in assigned:
            raise PartitionError(f"line {lineno}: node {node} assigned twice")
        assigned[node] = tokens[1]
    missing = [i for i in range(n) if i not in assigned]
    if missing:
        raise PartitionError(f"node {missing[0]} unassigned")
    return Partition.from_labels([assigned[i] for i in range(n)])


def write_partition(p: Partition, sink: TextIO) -> None:
    """Write one 'node_id community_id' line per node."""
    for i, lab in enumerate(p.labels.tolist()):
        sink.write(f"{i} {lab}\n")
