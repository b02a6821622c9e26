"""FDG synthesis checks.

Covers:
  * the two-graph worked example: pdfs, denominators and relation bits by hand
  * consistency of synthesised FDGs with verify_identities (independent route)
  * single-graph synthesis (ag_to_fdg)
  * combining FDGs: grouping invariance and agreement with direct synthesis
  * one-at-a-time updates equal one-pass synthesis, exactly, field by field
  * input validation
"""

import numpy as np
import pytest

from graphproto.core import (
    PHI,
    AttributedGraph,
    Pdf,
    attr,
    null_pdf,
    verify_identities,
)
from graphproto.synthesis import (
    CommonLabelling,
    ag_to_fdg,
    synth_from_labelled_ags,
    synth_from_labelled_fdgs,
    update_fdg_with_ag,
)


def _worked_pair():
    """Two order-4 AGs sharing three vertices, one private vertex each."""
    b, a, c, d, e = attr(2), attr(1), attr(3), attr(4), attr(5)
    X, Y, Z, K, L = attr(10), attr(11), attr(12), attr(13), attr(14)
    g1 = AttributedGraph([b, a, c, d],
                         {(1, 0): X, (1, 2): Y, (0, 2): Z, (1, 3): K})
    g2 = AttributedGraph([b, a, c, e],
                         {(1, 0): X, (1, 2): Y, (0, 2): Z, (0, 3): L})
    lab = CommonLabelling([[0, 1, 2, 3], [0, 1, 2, 4]], 5)
    return [g1, g2], lab


def test_worked_pair_first_order():
    ags, lab = _worked_pair()
    f = synth_from_labelled_ags(ags, lab)
    assert f.z == 2 and f.order == 5
    assert f.vertex_pdfs[0] == Pdf({(2,): 2}, 2)
    assert f.vertex_pdfs[3] == Pdf({(4,): 1, None: 1}, 2)
    assert f.vertex_pdfs[4] == Pdf({(5,): 1, None: 1}, 2)
    assert f.u[(0, 1)] == 2 and f.u[(1, 3)] == 1 and f.u[(3, 4)] == 0
    assert f.arc_pdfs[(1, 0)] == Pdf({(10,): 2}, 2)
    assert f.arc_pdfs[(1, 3)] == Pdf({(13,): 1}, 1)
    assert f.arc_pdfs[(0, 4)] == Pdf({(14,): 1}, 1)
    assert f.arc_pdfs[(0, 1)] == Pdf({None: 2}, 2)
    assert f.arc_pdfs[(3, 4)] == Pdf({}, 0)


def test_worked_pair_relations():
    ags, lab = _worked_pair()
    f = synth_from_labelled_ags(ags, lab)
    # the private vertices never met
    assert f.Aw[3, 4] and f.Aw[4, 3]
    assert not f.Aw[0, 1] and not f.Aw[0, 3] and not f.Aw[3, 3]
    # each private vertex occurs in the shared trio but not vice versa
    assert f.Ow[3, 0] and f.Ow[3, 1] and f.Ow[3, 2]
    assert not f.Ow[3, 4] and not f.Ow[0, 3] and not f.Ow[4, 3]
    assert f.Ow[0, 1] and f.Ow[1, 0]
    # no two distinct slots were ever absent together
    assert (f.Ew | np.eye(5, dtype=bool)).all()
    assert not f.Aw.diagonal().any()
    assert np.array_equal(f.Ew.diagonal(),
                          np.array([1, 1, 1, 0, 0], dtype=bool))


def test_worked_pair_identities():
    ags, lab = _worked_pair()
    f = synth_from_labelled_ags(ags, lab)
    assert verify_identities(f, ags, lab.maps) == []


def test_ag_to_fdg():
    from graphproto.core import arc_index
    g = AttributedGraph([attr(1), attr(2), attr(3)],
                        {(0, 1): attr(7), (2, 0): attr(8)})
    f = ag_to_fdg(g)
    assert f.z == 1 and f.order == 3
    assert all(u == 1 for u in f.u.values())
    assert f.vertex_pdfs[1] == Pdf({(2,): 1}, 1)
    assert f.arc_pdfs[(0, 1)] == Pdf({(7,): 1}, 1)
    assert f.arc_pdfs[(1, 0)] == Pdf({None: 1}, 1)
    assert not f.Aw.any()
    assert f.Ow.all() and f.Ew.all()
    s01, s20 = arc_index(0, 1, 3), arc_index(2, 0, 3)
    s02, s10 = arc_index(0, 2, 3), arc_index(1, 0, 3)
    assert not f.Ae[s01, s20] and f.Ae[s02, s10] and f.Ae[s01, s02]
    assert f.Oe[s01, s20] and not f.Oe[s01, s02] and f.Oe[s02, s01]
    assert f.Ee[s01, s02] and not f.Ee[s02, s10]
    assert verify_identities(f, [g]) == []


def test_combine_matches_direct_synthesis():
    ags, lab = _worked_pair()
    f_direct = synth_from_labelled_ags(ags, lab)
    parts = [ag_to_fdg(g) for g in ags]
    f_comb = synth_from_labelled_fdgs(parts, lab)
    assert f_comb.z == f_direct.z
    assert f_comb.vertex_pdfs == f_direct.vertex_pdfs
    assert f_comb.arc_pdfs == f_direct.arc_pdfs
    assert f_comb.u == f_direct.u
    for name in ("Aw", "Ow", "Ew", "Ae", "Oe", "Ee"):
        assert np.array_equal(getattr(f_comb, name), getattr(f_direct, name))


def test_combine_grouping_invariance():
    rng = np.random.default_rng(3)
    ags = [_random_ag(rng, exact_order=3) for _ in range(3)]
    parts = [ag_to_fdg(g) for g in ags]
    ident = [[0, 1, 2]] * 3
    all_at_once = synth_from_labelled_fdgs(parts, CommonLabelling(ident, 3))
    two = synth_from_labelled_fdgs(parts[:2], CommonLabelling(ident[:2], 3))
    nested = synth_from_labelled_fdgs([two, parts[2]],
                                      CommonLabelling(ident[:2], 3))
    assert nested.vertex_pdfs == all_at_once.vertex_pdfs
    assert nested.arc_pdfs == all_at_once.arc_pdfs
    assert nested.u == all_at_once.u and nested.z == all_at_once.z
    for name in ("Aw", "Ow", "Ew", "Ae", "Oe", "Ee"):
        assert np.array_equal(getattr(nested, name), getattr(all_at_once, name))


def _random_ag(rng, exact_order=None, max_order=4):
    order = exact_order or int(rng.integers(1, max_order + 1))
    vertices = [attr(int(rng.integers(0, 5))) for _ in range(order)]
    arcs = {}
    for i in range(order):
        for j in range(order):
            if i != j and rng.random() < 0.4:
                arcs[(i, j)] = attr(int(rng.integers(0, 5)))
    return AttributedGraph(vertices, arcs)


def test_incremental_equals_batch():
    rng = np.random.default_rng(29)
    for _ in range(15):
        ags = [_random_ag(rng) for _ in range(int(rng.integers(2, 6)))]
        f = ag_to_fdg(ags[0])
        batch_maps = [list(range(ags[0].order))]
        for g in ags[1:]:
            free = list(range(f.order))
            rng.shuffle(free)
            vmap = []
            for _ in range(g.order):
                if free and rng.random() < 0.5:
                    vmap.append(free.pop())
                else:
                    vmap.append(None)
            placed = []
            nxt = f.order
            for t in vmap:
                if t is None:
                    placed.append(nxt)
                    nxt += 1
                else:
                    placed.append(t)
            batch_maps.append(placed)
            f = update_fdg_with_ag(f, g, vmap)
        batch = synth_from_labelled_ags(ags, CommonLabelling(batch_maps, f.order))
        assert batch.z == f.z
        assert batch.vertex_pdfs == f.vertex_pdfs
        assert batch.arc_pdfs == f.arc_pdfs
        assert batch.u == f.u
        for name in ("Aw", "Ow", "Ew", "Ae", "Oe", "Ee"):
            assert np.array_equal(getattr(batch, name), getattr(f, name)), name
        assert verify_identities(batch, ags, batch_maps) == []


def test_vertex_pdf_totals_track_z():
    ags, lab = _worked_pair()
    f = synth_from_labelled_ags(ags, lab)
    assert all(p.total == f.z for p in f.vertex_pdfs)
    assert all(f.arc_pdfs[ij].total == f.u[ij] for ij in f.u)


def test_synthesis_validation():
    ags, lab = _worked_pair()
    with pytest.raises(ValueError):
        synth_from_labelled_ags([], CommonLabelling([], 0))
    with pytest.raises(ValueError):
        synth_from_labelled_ags(ags, CommonLabelling([[0, 1, 2, 3]], 5))
    with pytest.raises(ValueError):
        CommonLabelling([[0, 0, 1, 2]], 5)
    with pytest.raises(ValueError):
        CommonLabelling([[0, 1, 2, 9]], 5)
    with pytest.raises(ValueError):
        synth_from_labelled_ags(ags, CommonLabelling([[0, 1, 2], [0, 1, 2, 4]], 5))
    with pytest.raises(ValueError):
        synth_from_labelled_ags(
            ags, CommonLabelling([[0, 1, 2, None], [0, 1, 2, 4]], 5))
    f = ag_to_fdg(ags[0])
    with pytest.raises(ValueError):
        update_fdg_with_ag(f, ags[1], [0, 1])


def test_extended_inputs_are_equivalent():
    from graphproto.core import extend_ag
    ags, lab = _worked_pair()
    plain = synth_from_labelled_ags(ags, lab)
    padded = [extend_ag(g, 5) for g in ags]
    lab5 = CommonLabelling([[0, 1, 2, 3, 4], [0, 1, 2, 4, 3]], 5)
    f = synth_from_labelled_ags(padded, lab5)
    assert f.vertex_pdfs == plain.vertex_pdfs
    assert f.arc_pdfs == plain.arc_pdfs
    assert f.u == plain.u
    for name in ("Aw", "Ow", "Ew", "Ae", "Oe", "Ee"):
        assert np.array_equal(getattr(f, name), getattr(plain, name))


def test_null_slot_padding():
    g = AttributedGraph([attr(1)], {})
    f = synth_from_labelled_ags([g], CommonLabelling([[1]], 3))
    assert f.vertex_pdfs[0] == null_pdf(1)
    assert f.vertex_pdfs[1] == Pdf({(1,): 1}, 1)
    assert f.vertex_pdfs[2] == null_pdf(1)
    assert f.u[(0, 2)] == 0 and f.arc_pdfs[(0, 2)].is_null()
