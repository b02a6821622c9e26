"""Edit distance between two AGs and a nearest-neighbour classifier on it.

The distance is the cheapest way to turn one graph into the other with six
operations: insert, delete or substitute a vertex or an arc.  A configuration
is an injective partial map of the first graph's vertices onto the second's;
unmatched first-graph elements are deleted, uncovered second-graph elements
are inserted, matched pairs pay their substitution cost, and an arc whose
endpoint dies dies with it.  Insertion and deletion costs are constants, the
substitution costs are pluggable functions of the two attribute tuples.

The search is the same depth-first scheme as the FDG matcher: vertices of the
first graph are placed in index order on unused second-graph vertices or on
nothing, and a branch is cut as soon as its accumulated cost reaches the
incumbent.  The optional planar flag applies the cyclic-order constraint on
outgoing arcs, as in the matcher.
"""

import math

import numpy as np

from .core import Labelling
from .matching import _planar_ok


def _exact_mismatch(a, b):
    return 0.0 if a.values == b.values else 1.0


class EditCosts:
    """Constant insertion/deletion costs plus substitution cost functions.

    vertex_sub and arc_sub take the two attribute tuples and return a cost;
    the default charges one unit unless the values are equal.
    """

    __slots__ = ("C_vi", "C_ei", "C_vd", "C_ed", "vertex_sub", "arc_sub")

    def __init__(self, C_vi=1.0, C_ei=1.0, C_vd=1.0, C_ed=1.0,
                 vertex_sub=None, arc_sub=None):
        for name, value in (("C_vi", C_vi), ("C_ei", C_ei),
                            ("C_vd", C_vd), ("C_ed", C_ed)):
            if value < 0:
                raise ValueError("%s must be non-negative" % name)
        self.C_vi = float(C_vi)
        self.C_ei = float(C_ei)
        self.C_vd = float(C_vd)
        self.C_ed = float(C_ed)
        self.vertex_sub = vertex_sub or _exact_mismatch
        self.arc_sub = arc_sub or _exact_mismatch


def squared_threshold(k_a=4.0, k_b=4.0):
    """Unit insertions and deletions; a substitution costs one unit when the
    squared difference of the first attribute components exceeds the noise
    threshold (k_a for vertices, k_b for arcs) and nothing otherwise."""

    def vs(a, b):
        return 1.0 if (a.values[0] - b.values[0]) ** 2 > k_a else 0.0

    def es(a, b):
        return 1.0 if (a.values[0] - b.values[0]) ** 2 > k_b else 0.0

    return EditCosts(vertex_sub=vs, arc_sub=es)


def abs_threshold():
    """Unit insertions and deletions; a substitution costs one unit above an
    absolute first-component difference of 10, half a unit from 5 to 10 and
    nothing below 5."""

    def sub(a, b):
        d = abs(a.values[0] - b.values[0])
        if d > 10:
            return 1.0
        if d >= 5:
            return 0.5
        return 0.0

    return EditCosts(vertex_sub=sub, arc_sub=sub)


def edit_distance(g1, g2, costs=None, planar=False):
    """Minimum edit cost from g1 to g2 and the vertex map achieving it.

    Returns (cost, Labelling); the labelling sends each g1 vertex to a g2
    vertex index or to None for a deletion.
    """
    c = costs or EditCosts()
    n1, n2 = g1.order, g2.order
    vs = [[c.vertex_sub(a, b) for b in g2.vertices] for a in g1.vertices]
    pn1 = np.zeros((n1, n1), bool)
    b1 = {}
    for (i, j), b in g1.present_arcs():
        pn1[i, j] = True
        b1[(i, j)] = b
    pn2 = np.zeros((n2, n2), bool)
    b2 = {}
    for (i, j), b in g2.present_arcs():
        pn2[i, j] = True
        b2[(i, j)] = b

    def pair_cost(i, s, j, r):
        # ordered arc (i, s) of g1 against (j, r) of g2, all four matched
        if pn1[i, s]:
            if pn2[j, r]:
                return c.arc_sub(b1[(i, s)], b2[(j, r)])
            return c.C_ed
        if pn2[j, r]:
            return c.C_ei
        return 0.0

    best_cost = math.inf
    best_map = None
    vmap = [None] * n1

    def walk(p, g, used):
        nonlocal best_cost, best_map
        if g >= best_cost:
            return
        if p == n1:
            extra = 0.0
            for q in range(n2):
                if not (used >> q) & 1:
                    extra += c.C_vi
            for (j, r) in b2:
                if not (used >> j) & 1 or not (used >> r) & 1:
                    extra += c.C_ei
            if g + extra < best_cost:
                best_cost = g + extra
                best_map = Labelling(list(vmap))
            return
        for q in range(n2):
            if (used >> q) & 1:
                continue
            vmap[p] = q
            if planar:
                sources = [p] + [s for s in range(p) if pn1[s, p]]
                if not _planar_ok(g1, vmap[:p + 1], sources):
                    vmap[p] = None
                    continue
            step = vs[p][q]
            for s in range(p):
                r = vmap[s]
                if r is None:
                    step += c.C_ed * (int(pn1[p, s]) + int(pn1[s, p]))
                else:
                    step += pair_cost(p, s, q, r) + pair_cost(s, p, r, q)
            walk(p + 1, g + step, used | (1 << q))
            vmap[p] = None
        step = c.C_vd
        for s in range(p):
            step += c.C_ed * (int(pn1[p, s]) + int(pn1[s, p]))
        walk(p + 1, g + step, used)

    walk(0, 0.0, 0)
    return best_cost, best_map


def knn_classify(test, refs, k=5, costs=None, planar=False):
    """Majority class among the k references nearest to `test`.

    refs is a sequence of (AttributedGraph, class label) pairs.  A voting tie
    goes to the class with the smaller mean distance inside the neighbourhood
    and then to the lower class index.
    """
    if not refs:
        raise ValueError("refs must be non-empty")
    if k < 1:
        raise ValueError("k must be at least 1")
    scored = []
    for idx, (g, label) in enumerate(refs):
        d, _ = edit_distance(test, g, costs, planar=planar)
        scored.append((d, idx, label))
    scored.sort(key=lambda t: (t[0], t[1]))
    votes = {}
    for d, _, label in scored[:k]:
        votes.setdefault(label, []).append(d)
    most = max(len(v) for v in votes.values())
    tied = [label for label, v in votes.items() if len(v) == most]
    return min(tied, key=lambda label: (sum(votes[label]) / len(votes[label]),
                                        label))
