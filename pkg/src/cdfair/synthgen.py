"""Synthetic benchmarks with planted communities.

Two generators: a simplified ABCD-style model (power-law degrees and
community sizes, with a mixing fraction xi of edge stubs routed through a
community-agnostic background configuration model) and a two-block
minority/majority model used by the perturbation lab.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .partition import Partition


class GenerationError(RuntimeError):
    """Sampling failure after exhausting a retry cap."""


@dataclass(frozen=True)
class AbcdParams:
    n: int
    gamma: float = 2.5  # degree power-law exponent
    d_min: int = 5
    d_max: int = 50
    beta: float = 1.5  # community-size power-law exponent
    c_min: int = 100
    c_max: int = 1000
    xi: float = 0.2  # fraction of stubs routed to the background graph
    d_max_iter: int = 1000
    c_max_iter: int = 1000
    seed: int = 0

    def validate(self) -> None:
        if self.d_min < 1 or self.d_min > self.d_max or self.d_max >= self.n:
            raise ValueError("need 1 <= d_min <= d_max < n")
        if not (1 <= self.c_min <= self.c_max <= self.n):
            raise ValueError("need 1 <= c_min <= c_max <= n")
        if not 0.0 <= self.xi <= 1.0:
            raise ValueError("xi must lie in [0, 1]")

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def truncated_power_law(rng: np.random.Generator, exponent: float, lo: int, hi: int, size: int) -> np.ndarray:
    """Sample integers in [lo, hi] with P(v) proportional to v^-exponent."""
    values = np.arange(lo, hi + 1, dtype=np.float64)
    weights = values ** (-exponent)
    weights /= weights.sum()
    return rng.choice(np.arange(lo, hi + 1), size=size, p=weights)


def _sample_community_sizes(rng: np.random.Generator, p: AbcdParams) -> list[int]:
    for _ in range(p.c_max_iter):
        sizes: list[int] = []
        total = 0
        while total < p.n:
            s = int(truncated_power_law(rng, p.beta, p.c_min, p.c_max, 1)[0])
            sizes.append(s)
            total += s
        overshoot = total - p.n
        if sizes[-1] - overshoot >= 1:
            sizes[-1] -= overshoot
            return sizes
    raise GenerationError("community-size sampling failed after c_max_iter attempts")


def _sample_degrees(rng: np.random.Generator, p: AbcdParams) -> np.ndarray:
    for _ in range(p.d_max_iter):
        degrees = truncated_power_law(rng, p.gamma, p.d_min, p.d_max, p.n).astype(np.int64)
        if degrees.sum() % 2 == 0:
            return degrees
        # flip one node's degree by 1 to fix parity when possible
        idx = int(rng.integers(p.n))
        if degrees[idx] < p.d_max:
            degrees[idx] += 1
            return degrees
    raise GenerationError("degree sampling failed after d_max_iter attempts")


def _pair_stubs(
    rng: np.random.Generator,
    stubs: np.ndarray,
    edges: set[tuple[int, int]],
    max_rounds: int = 50,
    labels: np.ndarray | None = None,
) -> int:
    """Configuration-model pairing with rejection of self-loops/multi-edges.

    When `labels` is given, pairs falling inside one community are rejected
    too, so the background pass yields inter-community edges only and the
    realized mixing fraction tracks xi instead of undershooting it by the
    same-community collision rate.

    Adds accepted edges to `edges` in place; returns the number of stubs
    dropped as irreparable.
    """
    pool = stubs.copy()
    for _ in range(max_rounds):
        if len(pool) < 2:
            break
        rng.shuffle(pool)
        if len(pool) % 2 == 1:
            leftover = pool[-1:]
            pool = pool[:-1]
        else:
            leftover = pool[:0]
        bad: list[int] = list(leftover)
        for i in range(0, len(pool), 2):
            u, v = int(pool[i]), int(pool[i + 1])
            if u == v or (labels is not None and labels[u] == labels[v]):
                bad.extend((u, v))
                continue
            key = (u, v) if u < v else (v, u)
            if key in edges:
                bad.extend((u, v))
                continue
            edges.add(key)
        if not bad:
            return 0
        pool = np.array(bad, dtype=np.int64)
    return len(pool)


def generate_abcd_lite(p: AbcdParams) -> tuple[Graph, Partition, dict]:
    """Generate a planted-partition graph; returns (graph, partition, info).

    The info dict records realized quantities (dropped stubs, realized mixing)
    for the provenance sidecar.
    """
    p.validate()
    rng = np.random.default_rng(p.seed)

    sizes = _sample_community_sizes(rng, p)
    degrees = _sample_degrees(rng, p)

    # assign shuffled nodes to communities sequentially
    order = rng.permutation(p.n)
    labels = np.empty(p.n, dtype=np.int64)
    pos = 0
    for c, s in enumerate(sizes):
        labels[order[pos : pos + s]] = c
        pos += s
    community_size = np.array(sizes, dtype=np.int64)

    # split each node's stubs between its community and the background
    intra_target = np.empty(p.n, dtype=np.int64)
    frac = (1.0 - p.xi) * degrees
    base = np.floor(frac).astype(np.int64)
    extra = (rng.random(p.n) < (frac - base)).astype(np.int64)
    intra_target = base + extra
    # a community of size s can host at most s-1 distinct neighbors
    cap = community_size[labels] - 1
    overflow = np.maximum(intra_target - cap, 0)
    intra_target -= overflow
    background = degrees - intra_target
    dropped = 0
    if p.xi == 0.0:
        # keep the graph purely intra-community: drop the excess stubs
        dropped += int(background.sum())
        background = np.zeros_like(background)

    edges: set[tuple[int, int]] = set()
    for c in range(len(sizes)):
        members = np.flatnonzero(labels == c)
        counts = intra_target[members]
        if counts.sum() % 2 == 1:
            if p.xi == 0.0:
                # drop one stub from the highest-count member
                j = int(np.argmax(counts))
                counts[j] -= 1
                dropped += 1
            else:
                # divert one stub to the background pass
                j = int(np.argmax(counts))
                counts[j] -= 1
                background[members[j]] += 1
        stubs = np.repeat(members, counts)
        dropped += _pair_stubs(rng, stubs, edges)

    if background.sum() > 0:
        if background.sum() % 2 == 1:
            j = int(np.argmax(background))
            background[j] -= 1
            dropped += 1
        stubs = np.repeat(np.arange(p.n), background)
        # with a single community no inter-community pair exists; fall back
        # to unconstrained pairing instead of dropping every stub
        bg_labels = labels if len(sizes) > 1 else None
        dropped += _pair_stubs(rng, stubs, edges, labels=bg_labels)

    graph = Graph.from_edges(p.n, edges)
    partition = Partition.from_labels(labels.tolist())
    inter = sum(1 for u, v in edges if labels[u] != labels[v])
    info = {
        "dropped_stubs": int(dropped),
        "num_edges": len(edges),
        "num_communities": len(sizes),
        "realized_inter_fraction": inter / len(edges) if edges else 0.0,
        "mean_degree": 2 * len(edges) / p.n,
    }
    return graph, partition, info


def two_block_partition(n: int, minority_frac: float) -> Partition:
    """Planted labels only: community 0 = minority block, community 1 = rest."""
    if not 0.0 < minority_frac < 1.0:
        raise ValueError("minority_frac must lie in (0, 1)")
    size_m = int(math.floor(minority_frac * n + 0.5))
    if size_m < 1 or size_m >= n:
        raise ValueError("degenerate block sizes")
    labels = [0] * size_m + [1] * (n - size_m)
    return Partition.from_labels(labels)


def _sample_block_edges(rng: np.random.Generator, total: int, prob: float, edges: list[tuple[int, int]], pair_at) -> None:
    """Bernoulli-sample pairs via geometric skipping; O(expected edges)."""
    if prob <= 0.0:
        return
    if prob >= 1.0:
        edges.extend(pair_at(i) for i in range(total))
        return
    log_q = math.log1p(-prob)
    i = -1
    while True:
        r = rng.random()
        i += 1 + int(math.floor(math.log(1.0 - r) / log_q))
        if i >= total:
            break
        edges.append(pair_at(i))


def generate_two_community(
    n: int,
    minority_frac: float = 0.2,
    intra_p: float = 0.3,
    inter_p: float = 0.05,
    seed: int = 0,
) -> tuple[Graph, Partition]:
    """Two-block planted graph: Bernoulli(intra_p) within, Bernoulli(inter_p) across."""
    if not (0.0 <= intra_p <= 1.0 and 0.0 <= inter_p <= 1.0):
        raise ValueError("probabilities must lie in [0, 1]")
    partition = two_block_partition(n, minority_frac)
    size_m = int(partition.sizes[0])
    rng = np.random.default_rng(seed)
    edges: list[tuple[int, int]] = []

    def block_pairs(offset: int, size: int):
        def at(idx: int) -> tuple[int, int]:
            # row-major indexing over the strict upper triangle
            u = size - 2 - int(math.floor(math.sqrt(-8 * idx + 4 * size * (size - 1) - 7) / 2.0 - 0.5))
            v = idx + u + 1 - size * (size - 1) // 2 + (size - u) * ((size - u) - 1) // 2
            return (offset + u, offset + v)

        return at

    size_big = n - size_m
    _sample_block_edges(rng, size_m * (size_m - 1) // 2, intra_p, edges, block_pairs(0, size_m))
    _sample_block_edges(rng, size_big * (size_big - 1) // 2, intra_p, edges, block_pairs(size_m, size_big))

    def cross_at(idx: int) -> tuple[int, int]:
        return (idx // size_big, size_m + idx % size_big)

    _sample_block_edges(rng, size_m * size_big, inter_p, edges, cross_at)
    return Graph.from_edges(n, edges), partition
