"""Clustering checks.

* extend_labelling produces the documented bijection and, followed by plain
  FDG synthesis, reproduces update_fdg_with_ag exactly
* incremental clustering: one prototype under a huge threshold, one per AG
  under a negative one, z grows when identical AGs are absorbed, each AG
  joins the nearest prototype, and second-order weights are forced to zero
* hierarchical clustering: identical AGs collapse, a threshold below the
  smallest distance keeps singletons, single and complete linkage part ways
  on a chain, z mass is conserved, and the partition does not depend on the
  input order when the pairwise distances are distinct
* ClusterState keeps dead rows at infinity and labellings only for live pairs
"""

import math

import numpy as np
import pytest

from graphproto import (
    AttributedGraph,
    CommonLabelling,
    CostWeights,
    ag_to_fdg,
    attr,
    bnb_distance,
    synth_from_labelled_fdgs,
    update_fdg_with_ag,
)
from graphproto.baseline import EditCosts, edit_distance
from graphproto.clustering import (
    ClusterState,
    extend_labelling,
    hierarchical_clustering,
    incremental_clustering,
)


def _same_fdg(f1, f2):
    assert f1.order == f2.order
    assert f1.z == f2.z
    assert f1.vertex_pdfs == f2.vertex_pdfs
    assert f1.arc_pdfs == f2.arc_pdfs
    assert f1.u == f2.u
    for name in ("Aw", "Ow", "Ew", "Ae", "Oe", "Ee"):
        assert (getattr(f1, name) == getattr(f2, name)).all(), name


def test_extend_labelling_shapes():
    g = AttributedGraph([attr(1), attr(2)], {(0, 1): attr(9)})
    f = ag_to_fdg(AttributedGraph([attr(5), attr(1), attr(6)], {}))
    g_ext, f_ext, lab = extend_labelling(g, f, [1, None])
    assert g_ext.order == f_ext.order == 4
    assert list(lab.vertex_map) == [1, 3, 0, 2]
    assert g_ext.vertices[2].is_null and g_ext.vertices[3].is_null
    assert f_ext.vertex_pdfs[3].is_null()


def test_extend_then_synthesise_matches_update():
    g1 = AttributedGraph([attr(1), attr(2), attr(3)],
                         {(0, 1): attr(10), (1, 2): attr(11)})
    f = ag_to_fdg(g1)
    g2 = AttributedGraph([attr(1), attr(4)], {(0, 1): attr(12)})
    for vmap in ([0, 1], [0, None], [2, None], [None, None]):
        direct = update_fdg_with_ag(f, g2, vmap)
        g_ext, f_ext, lab = extend_labelling(g2, f, vmap)
        k = f_ext.order
        routed = synth_from_labelled_fdgs(
            [ag_to_fdg(g_ext), f_ext],
            CommonLabelling([list(lab.vertex_map), list(range(k))], k))
        _same_fdg(direct, routed)


def test_incremental_threshold_extremes():
    ags = [AttributedGraph([attr(v)], {}) for v in (0, 50, 100)]
    assert len(incremental_clustering(ags, d_alpha=1e9)) == 1
    assert len(incremental_clustering(ags, d_alpha=-1.0)) == 3


def test_incremental_identical_ags_share_a_prototype():
    g = AttributedGraph([attr(1), attr(2)], {(0, 1): attr(9)})
    fdgs = incremental_clustering([g, g], d_alpha=0.0)
    assert len(fdgs) == 1
    assert fdgs[0].z == 2
    assert fdgs[0].vertex_pdfs[0].prob_attr(attr(1)) == 1.0


def test_incremental_joins_the_nearest_prototype():
    a = AttributedGraph([attr(0)], {})
    b = AttributedGraph([attr(100)], {})
    fdgs, members = incremental_clustering([a, b, a], d_alpha=0.5,
                                           return_assignments=True)
    assert len(fdgs) == 2
    assert members == [{0, 2}, {1}]
    assert fdgs[0].z == 2


def test_incremental_zeroes_second_order_weights():
    seen = []

    def spy(g, f, w):
        seen.append(w)
        return bnb_distance(g, f, w)

    ags = [AttributedGraph([attr(v)], {}) for v in (0, 1)]
    incremental_clustering(ags, d_alpha=1e9,
                           weights=CostWeights(K1=2.0, K3=7.0, K8=2.0),
                           matcher=spy)
    assert seen
    for w in seen:
        assert w.K1 == 2.0
        assert (w.K3, w.K4, w.K5, w.K6, w.K7, w.K8) == (0,) * 6


def test_hierarchical_identical_ags_single_linkage():
    g = AttributedGraph([attr(1), attr(2)], {(0, 1): attr(9)})
    fdgs = hierarchical_clustering([g, g, g], d_alpha=0.0, linkage="single")
    assert len(fdgs) == 1
    assert fdgs[0].z == 3
    assert fdgs[0].order == 2


def test_hierarchical_threshold_below_minimum():
    ags = [AttributedGraph([attr(v)], {}) for v in (0, 50, 100)]
    fdgs = hierarchical_clustering(ags, d_alpha=0.5)
    assert len(fdgs) == 3
    assert all(f.z == 1 for f in fdgs)


def test_linkages_part_ways_on_a_chain():
    # pairwise edit distances 1 (a, b), 2 (b, c), 3 (a, c)
    a = AttributedGraph([attr(1)], {})
    b = AttributedGraph([attr(1), attr(2)], {})
    c = AttributedGraph([attr(1), attr(2), attr(3), attr(4)], {})
    single = hierarchical_clustering([a, b, c], d_alpha=2.0, linkage="single")
    complete = hierarchical_clustering([a, b, c], d_alpha=2.0,
                                       linkage="complete")
    assert len(single) == 1
    assert len(complete) == 2


def test_hierarchical_conserves_z():
    rng = np.random.default_rng(47)
    ags = []
    for _ in range(6):
        order = int(rng.integers(1, 4))
        vertices = [attr(int(rng.integers(0, 5))) for _ in range(order)]
        arcs = {}
        for i in range(order):
            for j in range(order):
                if i != j and rng.random() < 0.3:
                    arcs[(i, j)] = attr(int(rng.integers(0, 5)))
        ags.append(AttributedGraph(vertices, arcs))
    for d_alpha in (0.5, 1.5, 3.0, 100.0):
        fdgs, members = hierarchical_clustering(
            ags, d_alpha, return_assignments=True)
        assert sum(f.z for f in fdgs) == len(ags)
        assert sorted(i for m in members for i in m) == list(range(len(ags)))


def _graded_distance(g1, g2):
    scale = lambda a, b: abs(a.values[0] - b.values[0]) / 100.0
    return edit_distance(g1, g2,
                         EditCosts(vertex_sub=scale, arc_sub=scale))


def test_partition_ignores_input_order():
    values = [0, 1, 3, 7, 15, 31]
    ags = [AttributedGraph([attr(v)], {}) for v in values]
    rng = np.random.default_rng(53)
    for linkage in ("single", "complete"):
        _, members = hierarchical_clustering(
            ags, d_alpha=0.05, linkage=linkage,
            ag_distance=_graded_distance, return_assignments=True)
        want = set(frozenset(m) for m in members)
        for _ in range(4):
            perm = list(rng.permutation(len(ags)))
            _, got = hierarchical_clustering(
                [ags[p] for p in perm], d_alpha=0.05, linkage=linkage,
                ag_distance=_graded_distance, return_assignments=True)
            back = set(frozenset(perm[i] for i in m) for m in got)
            assert back == want


def test_cluster_state_sentinels():
    ags = [AttributedGraph([attr(v)], {}) for v in (0, 1, 50)]
    state = ClusterState(ags)
    hit = state.closest_pair()
    assert hit == (0, 1, 1.0)
    state.merge(0, 1, "complete")
    assert not state.live[0]
    assert np.isinf(state.dist[0]).all() and np.isinf(state.dist[:, 0]).all()
    assert all(0 not in key for key in state.phi)
    assert state.members[1] == {0, 1}
    nxt = state.closest_pair()
    assert nxt[0] == 1 and nxt[1] == 2


def test_validation():
    with pytest.raises(ValueError):
        incremental_clustering([], d_alpha=1.0)
    with pytest.raises(ValueError):
        hierarchical_clustering([], d_alpha=1.0)
    g = AttributedGraph([attr(1)], {})
    with pytest.raises(ValueError):
        hierarchical_clustering([g, g], d_alpha=1.0, linkage="average")
