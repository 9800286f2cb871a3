"""Partition quality scores: modularity (internal), NMI, ARI, NF1 (external)."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graph import Graph
from .partition import ContingencyTable, Partition, PartitionError, contingency

NMI_NORMS = ("arithmetic", "max", "min", "geometric")


@dataclass(frozen=True)
class QualityScores:
    modularity: float | None
    nmi: float
    ari: float
    nf1: float


def modularity(g: Graph, p: Partition) -> float:
    """Newman-Girvan modularity Q = sum_c [e_c/m - (d_c/2m)^2]."""
    m = g.num_edges
    if m == 0:
        raise ValueError("modularity undefined on an edgeless graph")
    if p.n != g.n:
        raise PartitionError(f"partition covers {p.n} nodes, graph has {g.n}")
    intra = [0] * p.k
    deg_tot = [0] * p.k
    labels = p.labels
    for u in range(g.n):
        cu = labels[u]
        deg_tot[cu] += len(g.adjacency[u])
        for v in g.adjacency[u]:
            if u < v and labels[v] == cu:
                intra[cu] += 1
    two_m = 2.0 * m
    return sum(e / m - (d / two_m) ** 2 for e, d in zip(intra, deg_tot))


def _entropy(sizes, n: int) -> float:
    h = 0.0
    for s in sizes:
        if s > 0:
            frac = s / n
            h -= frac * math.log(frac)
    return h


def nmi(gt: Partition, pred: Partition, norm: str = "arithmetic") -> float:
    """Normalized mutual information from the contingency table.

    Conventions for zero-entropy partitions: both single-community -> 1.0,
    exactly one side single-community -> 0.0.
    """
    if norm not in NMI_NORMS:
        raise ValueError(f"unknown NMI normalizer {norm!r}")
    ct = contingency(gt, pred)
    n = ct.n
    h1 = _entropy(ct.row_sums.tolist(), n)
    h2 = _entropy(ct.col_sums.tolist(), n)
    if h1 == 0.0 and h2 == 0.0:
        return 1.0
    if h1 == 0.0 or h2 == 0.0:
        return 0.0
    mi = 0.0
    for (a, b), o in ct.overlap.items():
        mi += (o / n) * math.log(o * n / (ct.row_sums[a] * ct.col_sums[b]))
    mi = max(mi, 0.0)  # guard tiny negative round-off
    if norm == "arithmetic":
        z = 0.5 * (h1 + h2)
    elif norm == "max":
        z = max(h1, h2)
    elif norm == "min":
        z = min(h1, h2)
    else:
        z = math.sqrt(h1 * h2)
    return mi / z


def _comb2(x: int) -> int:
    return x * (x - 1) // 2


def ari(gt: Partition, pred: Partition) -> float:
    """Adjusted Rand index from contingency-table pair counts."""
    ct = contingency(gt, pred)
    if ct.n < 2:
        raise ValueError("ARI requires at least 2 nodes")
    sum_cells = sum(_comb2(o) for o in ct.overlap.values())
    sum_rows = sum(_comb2(int(s)) for s in ct.row_sums)
    sum_cols = sum(_comb2(int(s)) for s in ct.col_sums)
    total = _comb2(ct.n)
    expected = sum_rows * sum_cols / total
    max_index = 0.5 * (sum_rows + sum_cols)
    if max_index == expected:
        # both partitions degenerate (all-singleton or all-in-one): identical
        return 1.0
    return (sum_cells - expected) / (max_index - expected)


def nf1(gt: Partition, pred: Partition) -> float:
    """Normalized F1 over max-overlap matches from predicted to ground truth.

    Each predicted community is matched to the ground-truth community with the
    largest overlap (ties -> smaller ground-truth id). NF1 is the mean matched
    F1 scaled by coverage (fraction of ground-truth communities hit) and
    divided by redundancy (predicted count over distinct matched ground-truth
    count).
    """
    ct = contingency(gt, pred)
    # best ground-truth match per predicted community
    best: dict[int, tuple[int, int]] = {}  # pred id -> (overlap, gt id)
    for (a, b), o in ct.overlap.items():
        cur = best.get(b)
        if cur is None or o > cur[0] or (o == cur[0] and a < cur[1]):
            best[b] = (o, a)
    f1_sum = 0.0
    matched_gt: set[int] = set()
    for b, (o, a) in best.items():
        precision = o / ct.col_sums[b]
        recall = o / ct.row_sums[a]
        f1_sum += 2 * precision * recall / (precision + recall)
        matched_gt.add(a)
    mean_f1 = f1_sum / pred.k
    coverage = len(matched_gt) / gt.k
    redundancy = pred.k / len(matched_gt)
    return mean_f1 * coverage / redundancy


def all_scores(g: Graph | None, gt: Partition, pred: Partition, nmi_norm: str = "arithmetic") -> QualityScores:
    return QualityScores(
        modularity=modularity(g, pred) if g is not None else None,
        nmi=nmi(gt, pred, norm=nmi_norm),
        ari=ari(gt, pred),
        nf1=nf1(gt, pred),
    )
