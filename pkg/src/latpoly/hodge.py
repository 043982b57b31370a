"""Hodge data of Calabi-Yau hypersurfaces from a reflexive pair."""

from .linalg import dot
from .polytope import (PolytopeError, complete_points, dual, incidence_structure,
                       is_reflexive)


class HodgeData:
    """Point-count invariants of the hypersurface defined by a reflexive polytope.

    ``h11`` and ``h1_dm2`` are always filled; ``euler`` only for d = 4 and
    ``k3`` = (picard, correction) only for d = 3.
    """

    def __init__(self, d, h11, h1_dm2, correction):
        self.d = d
        self.h11 = h11
        self.h1_dm2 = h1_dm2
        self.correction = correction
        self.euler = 2 * (h11 - h1_dm2) if d == 4 else None
        self.k3 = (h11, correction) if d == 3 else None

    @property
    def fields(self):
        names = ["h11", "h1_dm2"]
        if self.euler is not None:
            names.append("euler")
        if self.k3 is not None:
            names.append("k3")
        return names

    def __repr__(self):
        return f"HodgeData(d={self.d}, h11={self.h11}, h1_dm2={self.h1_dm2}, euler={self.euler})"


def _side_counts(p, q):
    """Interior point counts for faces of p and their dual faces in q.

    p and q are completed, q = dual(p).  Returns (faces, lstar_p, lstar_q)
    where faces[i] lists vertex bitmasks of i-dimensional faces of p.
    """
    inc = incidence_structure(p)
    fs = p.facets()
    verts = p.vertices
    lstar_p = {}
    for x in p.points:
        m = 0
        for j, (a, c) in enumerate(fs):
            if dot(a, x) + c == 0:
                m |= 1 << j
        lstar_p[m] = lstar_p.get(m, 0) + 1
    lstar_q = {}
    for y in q.points:
        m = 0
        for i, v in enumerate(verts):
            if dot(v, y) == -1:
                m |= 1 << i
        lstar_q[m] = lstar_q.get(m, 0) + 1
    faces = []
    for lst in inc.faces:
        faces.append([(vb, lstar_p.get(fb, 0), lstar_q.get(vb, 0)) for vb, fb in lst])
    return faces


def _h1(p, q, d, faces):
    # h^{1,1} of the hypersurface with Newton polytope p: points of q = dual(p)
    # minus facet interiors of q plus codim-2 corrections
    vertices = faces[0]
    edges = faces[1] if d > 1 else []
    facet_sum = sum(lq for _, _, lq in vertices)
    corr = sum(lp * lq for _, lp, lq in edges)
    return len(q.points) - d - 1 - facet_sum + corr, corr


def hodge_numbers(delta, d=None):
    """Batyrev counts for the hypersurface with Newton polytope ``delta``."""
    if not is_reflexive(delta):
        raise PolytopeError("Hodge numbers require a reflexive polytope")
    d = d or delta.dim
    if d < 3:
        raise PolytopeError("Hodge numbers need dimension at least 3")
    p = delta if delta.complete else complete_points(delta)
    q = complete_points(dual(p))
    h11, corr = _h1(p, q, d, _side_counts(p, q))
    h1m, _ = _h1(q, p, d, _side_counts(q, p))
    return HodgeData(d, h11, h1m, corr)


def euler_via_faces(delta):
    if delta.dim != 4:
        raise PolytopeError("Euler number formula needs d = 4")
    h = hodge_numbers(delta)
    return 2 * (h.h11 - h.h1_dm2)
