import itertools

import numpy as np
import pytest

from cdfair.graph import Graph
from cdfair.synthgen import (
    AbcdParams,
    GenerationError,
    generate_abcd_lite,
    generate_two_community,
    truncated_power_law,
    two_block_partition,
)

SMALL = dict(n=500, c_min=50, c_max=150, d_min=5, d_max=30)


def test_power_law_respects_bounds_and_shape():
    rng = np.random.default_rng(1)
    vals = truncated_power_law(rng, 2.5, 5, 50, 10000)
    assert vals.min() >= 5
    assert vals.max() <= 50
    # heavier mass at the low end
    assert (vals == 5).sum() > (vals == 50).sum() * 5


def test_param_validation():
    with pytest.raises(ValueError):
        AbcdParams(n=100, d_min=0).validate()
    with pytest.raises(ValueError):
        AbcdParams(n=100, xi=1.5).validate()
    with pytest.raises(ValueError):
        AbcdParams(n=100, c_min=200, c_max=300).validate()


def test_xi_zero_all_intra():
    g, p, info = generate_abcd_lite(AbcdParams(**SMALL, xi=0.0, seed=2))
    for u, v in g.edges():
        assert p.labels[u] == p.labels[v]
    assert info["realized_inter_fraction"] == 0.0


def test_xi_one_no_community_signal():
    from cdfair.detectors import louvain
    from cdfair.quality import nmi

    g, p, _ = generate_abcd_lite(AbcdParams(**SMALL, xi=1.0, seed=3))
    pred = louvain(g, seed=0)
    assert nmi(p, pred) <= 0.2


def test_graph_invariants_and_partition_validity():
    g, p, _ = generate_abcd_lite(AbcdParams(**SMALL, xi=0.3, seed=4))
    assert g.n == 500
    assert p.n == 500
    assert p.sizes.sum() == 500
    assert p.sizes.min() >= 1
    for u in range(g.n):
        assert u not in g.adjacency[u]
        for v in g.adjacency[u]:
            assert u in g.adjacency[v]


def test_determinism_under_seed():
    a = generate_abcd_lite(AbcdParams(**SMALL, xi=0.2, seed=5))
    b = generate_abcd_lite(AbcdParams(**SMALL, xi=0.2, seed=5))
    assert set(a[0].edges()) == set(b[0].edges())
    assert a[1] == b[1]
    c = generate_abcd_lite(AbcdParams(**SMALL, xi=0.2, seed=6))
    assert set(a[0].edges()) != set(c[0].edges())


def test_benchmark_scale_parameters():
    params = AbcdParams(n=2000, c_min=50, c_max=400, xi=0.2, seed=7)
    g, p, info = generate_abcd_lite(params)
    mean_deg = 2 * g.num_edges / g.n
    assert 5 <= mean_deg <= 50
    assert 5 <= p.k <= 40
    assert abs(info["realized_inter_fraction"] - 0.2) <= 0.05


def test_mixing_converges_at_scale():
    params = AbcdParams(n=5000, c_min=100, c_max=1000, xi=0.4, seed=8)
    _, _, info = generate_abcd_lite(params)
    assert abs(info["realized_inter_fraction"] - 0.4) <= 0.05


# ------------------------------------------------------- two-community


def test_two_block_sizes():
    p = two_block_partition(100, 0.2)
    assert p.sizes.tolist() == [20, 80]


def test_two_block_degenerate():
    with pytest.raises(ValueError):
        two_block_partition(3, 0.01)
    with pytest.raises(ValueError):
        two_block_partition(100, 0.0)


def test_two_community_cliques():
    g, p = generate_two_community(20, 0.25, intra_p=1.0, inter_p=0.0, seed=1)
    expected = set(itertools.combinations(range(5), 2)) | set(
        itertools.combinations(range(5, 20), 2)
    )
    assert set(g.edges()) == expected
    assert p.sizes.tolist() == [5, 15]


def test_two_community_edge_counts_near_expectation():
    n, frac, ip, xp = 400, 0.2, 0.2, 0.02
    g, p = generate_two_community(n, frac, intra_p=ip, inter_p=xp, seed=42)
    sm, sb = 80, 320
    expected = ip * (sm * (sm - 1) / 2 + sb * (sb - 1) / 2) + xp * sm * sb
    assert g.num_edges == pytest.approx(expected, rel=0.1)


def test_two_community_determinism():
    a, _ = generate_two_community(200, 0.2, seed=9)
    b, _ = generate_two_community(200, 0.2, seed=9)
    assert set(a.edges()) == set(b.edges())


def test_two_community_probability_validation():
    with pytest.raises(ValueError):
        generate_two_community(10, 0.5, intra_p=1.5)
