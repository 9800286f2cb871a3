"""Undirected simple graph over dense node indices, plus edge-list I/O."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, TextIO

log = logging.getLogger(__name__)


class EdgeListError(ValueError):
    """Malformed or empty edge-list input."""


@dataclass(frozen=True)
class Graph:
    """Immutable undirected, unweighted simple graph.

    Nodes are dense integers in [0, n). Adjacency lists are sorted, so any
    iteration over neighbors is deterministic.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.adjacency) != self.n:
            raise ValueError("adjacency length does not match node count")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph from an iterable of edges; rejects invalid edges."""
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n=n, adjacency=tuple(tuple(sorted(s)) for s in adj))

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def degree(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(f"node index {i} out of range for n={self.n}")
        return len(self.adjacency[i])

    def neighbors(self, i: int) -> tuple[int, ...]:
        if not 0 <= i < self.n:
            raise IndexError(f"node index {i} out of range for n={self.n}")
        return self.adjacency[i]

    def edges(self) -> Iterable[tuple[int, int]]:
        """Yield each edge once as (u, v) with u < v, in sorted order."""
        for u in range(self.n):
            for v in self.adjacency[u]:
                if u < v:
                    yield (u, v)

    def has_edge(self, u: int, v: int) -> bool:
        a, b = self.adjacency[u], self.adjacency[v]
        return v in a if len(a) <= len(b) else u in b


@dataclass(frozen=True)
class LoadedEdgeList:
    """Result of parsing an edge-list file."""

    graph: Graph
    id_map: dict[str, int]  # original token -> dense index
    duplicates_dropped: int
    self_loops_dropped: int


def load_edge_list(source: TextIO | Iterable[str], id_mode: str = "remap") -> LoadedEdgeList:
    """Parse a whitespace-separated edge list into a validated Graph.

    Lines starting with '#' are comments. Duplicate edges and self-loops are
    dropped (counted, warned), never fatal.

    id_mode:
      "raw"   - tokens must be non-negative integers used directly as indices;
                n is max index + 1.
      "remap" - arbitrary tokens, mapped to dense indices in first-seen order.
    """
    if id_mode not in ("raw", "remap"):
        raise ValueError(f"unknown id_mode {id_mode!r}")

    id_map: dict[str, int] = {}
    pairs: list[tuple[int, int]] = []
    max_raw = -1
    saw_line = False

    def index_of(tok: str, lineno: int) -> int:
        nonlocal max_raw
        if id_mode == "raw":
            try:
                i = int(tok)
            except ValueError:
                raise EdgeListError(f"line {lineno}: non-integer node id {tok!r} in raw mode")
            if i < 0:
                raise EdgeListError(f"line {lineno}: negative node id {i}")
            max_raw = max(max_raw, i)
            return i
        if tok not in id_map:
            id_map[tok] = len(id_map)
        return id_map[tok]

    for lineno, line in enumerate(source, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        saw_line = True
        tokens = stripped.split()
        if len(tokens) != 2:
            raise EdgeListError(f"line {lineno}: expected two tokens, got {len(tokens)}")
        u = index_of(tokens[0], lineno)
        v = index_of(tokens[1], lineno)
        pairs.append((u, v))

    if not saw_line:
        raise EdgeListError("empty edge-list input")

    n = max_raw + 1 if id_mode == "raw" else len(id_map)
    seen: set[tuple[int, int]] = set()
    dup = loops = 0
    edges: list[tuple[int, int]] = []
    for u, v in pairs:
        if u == v:
            loops += 1
            continue
        key = (u, v) if u < v else (v, u)
        if key in seen:
            dup += 1
            continue
        seen.add(key)
        edges.append(key)
    if dup or loops:
        log.warning("dropped %d duplicate edge(s) and %d self-loop(s)", dup, loops)

    if id_mode == "raw":
        id_map = {str(i): i for i in range(n)}
    return LoadedEdgeList(
        graph=Graph.from_edges(n, edges),
        id_map=id_map,
        duplicates_dropped=dup,
        self_loops_dropped=loops,
    )


def write_edge_list(g: Graph, sink: TextIO) -> None:
    """Write one 'u v' line per edge, u < v, sorted."""
    for u, v in g.edges():
        sink.write(f"{u} {v}\n")


def write_id_map(id_map: dict[str, int], sink: TextIO) -> None:
    """Persist the token->index mapping as CSV 'token,index'."""
    sink.write("token,index\n")
    for tok, idx in sorted(id_map.items(), key=lambda kv: kv[1]):
        sink.write(f"{tok},{idx}\n")
