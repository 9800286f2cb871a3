"""Group fairness: per-community scores regressed on normalized properties.

For each ground-truth community we compute structural properties (size,
conductance, density) and detection scores (FCCN, F1, FCCE against the
max-overlap predicted community). The fairness value for a (property, score)
pair is the ordinary-least-squares slope of score against the min-max
normalized property; slope 0 means no systematic bias, its sign says which
communities are favoured.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence, TextIO

from .graph import Graph
from .partition import Partition, PartitionError, contingency

PROPERTIES = ("size", "conductance", "density")
SCORES = ("fccn", "f1", "fcce")


@dataclass(frozen=True)
class CommunityStats:
    size: int
    density: float  # 2 e_c / (s (s-1)); 1.0 for singletons by convention
    conductance: float  # cut / min(vol, vol_complement); 0 for the full graph


@dataclass(frozen=True)
class CommunityScores:
    fccn: float
    f1: float
    fcce: float


@dataclass(frozen=True)
class GroupFairnessResult:
    # phi[property][score] -> OLS slope, or None when the property is degenerate
    phi: dict[str, dict[str, float | None]]
    stats: list[CommunityStats]
    scores: list[CommunityScores]

    def write_points_csv(self, sink: TextIO) -> None:
        sink.write("community,property,property_norm,fccn,f1,fcce\n")
        for prop in PROPERTIES:
            raw = [getattr(st, prop) for st in self.stats]
            norm = _minmax(raw)
            for c, (st, sc) in enumerate(zip(self.stats, self.scores)):
                nv = "" if norm is None else repr(norm[c])
                sink.write(
                    f"{c},{prop},{nv},{sc.fccn!r},{sc.f1!r},{sc.fcce!r}\n"
                )

    def write_phi_json(self, sink: TextIO) -> None:
        json.dump(self.phi, sink, sort_keys=True, indent=2)
        sink.write("\n")


def ols_slope(x: Sequence[float], y: Sequence[float]) -> float:
    """Slope of the least-squares line through (x, y)."""
    n = len(x)
    if n != len(y) or n < 2:
        raise ValueError("need at least two paired points")
    mx = sum(x) / n
    my = sum(y) / n
    sxx = sum((xi - mx) ** 2 for xi in x)
    if sxx == 0.0:
        raise ValueError("slope undefined: all x values equal")
    sxy = sum((xi - mx) * (yi - my) for xi, yi in zip(x, y))
    return sxy / sxx


def _minmax(values: Sequence[float]) -> list[float] | None:
    lo, hi = min(values), max(values)
    if lo == hi:
        return None
    return [(v - lo) / (hi - lo) for v in values]


def community_stats(g: Graph, p: Partition) -> list[CommunityStats]:
    """Size, density, conductance per community of `p`."""
    if p.n != g.n:
        raise PartitionError(f"partition covers {p.n} nodes, graph has {g.n}")
    labels = p.labels
    intra = [0] * p.k
    cut = [0] * p.k
    vol = [0] * p.k
    for u in range(g.n):
        cu = labels[u]
        vol[cu] += len(g.adjacency[u])
        for v in g.adjacency[u]:
            if labels[v] == cu:
                if u < v:
                    intra[cu] += 1
            else:
                cut[cu] += 1
    total_vol = sum(vol)
    out = []
    for c in range(p.k):
        s = int(p.sizes[c])
        density = 1.0 if s == 1 else 2.0 * intra[c] / (s * (s - 1))
        denom = min(vol[c], total_vol - vol[c])
        conductance = 0.0 if denom == 0 else cut[c] / denom
        out.append(CommunityStats(size=s, density=density, conductance=conductance))
    return out


def community_scores(g: Graph, gt: Partition, pred: Partition) -> list[CommunityScores]:
    """FCCN / F1 / FCCE per ground-truth community.

    Each ground-truth community is mapped to the predicted community of
    maximum overlap, ties broken towards the smaller predicted id. FCCE of an
    edgeless community is 1.0 by convention (nothing to misclassify).
    """
    ct = contingency(gt, pred)
    best: dict[int, tuple[int, int]] = {}  # gt id -> (overlap, pred id)
    for (a, b), o in ct.overlap.items():
        cur = best.get(a)
        if cur is None or o > cur[0] or (o == cur[0] and b < cur[1]):
            best[a] = (o, b)
    labels_gt = gt.labels
    labels_pred = pred.labels
    intra_edges: list[int] = [0] * gt.k
    kept_edges: list[int] = [0] * gt.k
    for u in range(g.n):
        a = labels_gt[u]
        target = best[int(a)][1]
        for v in g.adjacency[u]:
            if u < v and labels_gt[v] == a:
                intra_edges[a] += 1
                if labels_pred[u] == target and labels_pred[v] == target:
                    kept_edges[a] += 1
    out = []
    for a in range(gt.k):
        o, b = best[a]
        s = int(gt.sizes[a])
        sp = int(pred.sizes[b])
        fccn = o / s
        precision = o / sp
        recall = o / s
        f1 = 2 * precision * recall / (precision + recall)
        fcce = 1.0 if intra_edges[a] == 0 else kept_edges[a] / intra_edges[a]
        out.append(CommunityScores(fccn=fccn, f1=f1, fcce=fcce))
    return out


def phi(g: Graph, gt: Partition, pred: Partition) -> GroupFairnessResult:
    """Fairness slopes for all (property, score) combinations."""
    if gt.k < 2:
        raise PartitionError("group fairness needs at least two ground-truth communities")
    stats = community_stats(g, gt)
    scores = community_scores(g, gt, pred)
    result: dict[str, dict[str, float | None]] = {}
    for prop in PROPERTIES:
        norm = _minmax([getattr(st, prop) for st in stats])
        result[prop] = {}
        for score in SCORES:
            if norm is None:
                result[prop][score] = None
            else:
                ys = [getattr(sc, score) for sc in scores]
                result[prop][score] = ols_slope(norm, ys)
    return GroupFairnessResult(phi=result, stats=stats, scores=scores)
