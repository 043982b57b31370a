"""Lattice polytopes: hulls, facets, lattice points, duality and face data."""

from fractions import Fraction
from math import gcd

from .cone import extreme_rays
from .linalg import (RatVector, coordinates, det, dot, identity, kernel_basis,
                     rank, saturated_span, transpose, vec_gcd)

MAX_DIM = 8
MAX_POINTS = 10 ** 6


class PolytopeError(ValueError):
    pass


class LatticePolytope:
    """An ordered set of lattice points with the extreme ones flagged.

    ``points`` is a list of integer tuples; ``vertex_flags`` marks the
    vertices.  ``affine_dim`` is the dimension of the affine hull, which may
    be smaller than the ambient dimension ``dim``.
    """

    def __init__(self, points, vertex_flags, affine_dim=None, complete=False):
        self.points = [tuple(p) for p in points]
        self.vertex_flags = list(vertex_flags)
        self.dim = len(self.points[0]) if self.points else 0
        if affine_dim is None:
            affine_dim = affine_dimension(self.points)
        self.affine_dim = affine_dim
        self.complete = complete
        self._facets = None

    @property
    def vertices(self):
        return [p for p, f in zip(self.points, self.vertex_flags) if f]

    @property
    def full_dimensional(self):
        return self.affine_dim == self.dim

    def facets(self):
        if self._facets is None:
            self._facets = facets_of(self)
        return self._facets

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return (f"LatticePolytope(dim={self.dim}, points={len(self.points)}, "
                f"vertices={sum(self.vertex_flags)})")


def affine_dimension(points):
    if not points:
        return -1
    p0 = points[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in points[1:]]) if len(points) > 1 else 0


def affine_lattice(points):
    """Base point and saturated basis (rows) of the affine lattice spanned by points."""
    p0 = list(points[0])
    diffs = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    diffs = [v for v in diffs if any(v)]
    basis = saturated_span(diffs) if diffs else []
    return p0, basis


def to_affine_coords(points, p0, basis):
    out = []
    for p in points:
        c = coordinates(basis, [a - b for a, b in zip(p, p0)])
        if c is None:
            raise PolytopeError("point outside the affine lattice")
        out.append(tuple(c))
    return out


def from_affine_coords(coords, p0, basis):
    return [tuple(p0[i] + sum(c[j] * basis[j][i] for j in range(len(basis)))
                  for i in range(len(p0))) for c in coords]


def _facets_full(points):
    # facets of a full-dimensional point set, as (normal, offset) pairs
    rows = [[1] + list(p) for p in points]
    out = []
    for r, _ in extreme_rays(rows):
        out.append((tuple(r[1:]), r[0]))
    out.sort(reverse=True)
    return out


def hull_vertices(points):
    """Flag the extreme points of a finite set of lattice points."""
    pts = [tuple(int(x) for x in p) for p in points]
    if not pts:
        raise PolytopeError("empty point set")
    if len(set(pts)) != len(pts):
        raise PolytopeError("duplicate points")
    d = len(pts[0])
    if d > MAX_DIM:
        raise PolytopeError(f"dimension {d} exceeds the configured cap {MAX_DIM}")
    if len(pts) == 1:
        return LatticePolytope(pts, [True], 0)
    p0, basis = affine_lattice(pts)
    k = len(basis)
    coords = to_affine_coords(pts, p0, basis) if k < d else pts
    if k == 0:
        return LatticePolytope(pts, [True], 0)
    facets = _facets_full(coords)
    flags = []
    for c in coords:
        tight = [a for a, off in facets if dot(a, c) + off == 0]
        flags.append(len(tight) >= k and rank(tight) == k)
    poly = LatticePolytope(pts, flags, k)
    if k == d:
        poly._facets = facets
    return poly


def polytope(points):
    """Hull of the points, keeping only the vertices."""
    p = hull_vertices(points)
    return LatticePolytope(p.vertices, [True] * len(p.vertices), p.affine_dim)


def facets_of(p):
    """Facet inequalities a.x + c >= 0 of a full-dimensional polytope.

    Normals are primitive; the list is sorted in decreasing lexicographic
    order of (a, c).
    """
    if not p.full_dimensional:
        raise PolytopeError("polytope is not full-dimensional")
    if p._facets is not None:
        return p._facets
    return _facets_full(p.vertices)


def is_ip(p):
    """Origin strictly in the interior."""
    return p.full_dimensional and all(c >= 1 for _, c in p.facets())


def is_reflexive(p):
    return p.full_dimensional and all(c == 1 for _, c in p.facets())


def dual(p):
    """The polar dual {y : <x, y> >= -1} of a reflexive polytope, as vertices."""
    if not is_reflexive(p):
        raise PolytopeError("dual requires a reflexive polytope")
    verts = [a for a, _ in p.facets()]
    q = LatticePolytope(verts, [True] * len(verts), p.dim)
    q._facets = sorted(((tuple(v), 1) for v in p.vertices), reverse=True)
    return q


def pairing_matrix(p):
    """Vertex-facet pairing a_j . v_i + c_j (rows: vertices, columns: facets)."""
    fs = p.facets()
    return [[dot(a, v) + c for a, c in fs] for v in p.vertices]


def _interval_bounds(ineqs, prefix, k):
    # bounds on x_k from inequalities (a, c) with a.x + c >= 0 on x_0..x_k
    lo, hi = None, None
    for a, c in ineqs:
        s = c + sum(a[j] * prefix[j] for j in range(k))
        ak = a[k]
        if ak > 0:
            b = -(s // ak)  # ceil(-s / ak)
            lo = b if lo is None or b > lo else lo
        elif ak < 0:
            b = s // (-ak)  # floor(s / -ak)
            hi = b if hi is None or b < hi else hi
        elif s < 0:
            return 1, 0
    return lo, hi


def _enumerate_full(verts, facets):
    d = len(verts[0])
    levels = []
    for k in range(1, d):
        proj = sorted(set(v[:k] for v in verts))
        if k == 1:
            lo, hi = proj[0][0], proj[-1][0]
            levels.append([((1,), -lo), ((-1,), hi)])
        else:
            levels.append(_facets_full(proj))
    levels.append(list(facets))
    if d == 1:
        levels = [list(facets)]
    out = []
    prefix = [0] * d

    def rec(k):
        lo, hi = _interval_bounds(levels[k], prefix, k)
        if lo is None or hi is None:
            raise PolytopeError("unbounded region")
        for x in range(lo, hi + 1):
            prefix[k] = x
            if k == d - 1:
                out.append(tuple(prefix))
                if len(out) > MAX_POINTS:
                    raise PolytopeError(f"more than {MAX_POINTS} lattice points")
            else:
                rec(k + 1)

    rec(0)
    return out


def lattice_points(p):
    """All lattice points of the hull of p (unordered)."""
    verts = p.vertices
    if p.affine_dim == 0:
        return [verts[0]]
    if p.full_dimensional:
        return _enumerate_full(verts, p.facets())
    p0, basis = affine_lattice(verts)
    coords = to_affine_coords(verts, p0, basis)
    pts = _enumerate_full(coords, _facets_full(coords))
    return from_affine_coords(pts, p0, basis)


def order_points(p, pts):
    """Order points as vertices, other boundary points off facet interiors,
    facet-interior points, remaining interior points, origin."""
    verts = p.vertices
    vset = set(verts)
    rest = sorted(set(pts) - vset, reverse=True)
    origin = tuple([0] * p.dim)
    if not p.full_dimensional:
        return verts + rest
    fs = p.facets()
    buckets = ([], [], [], [])
    for q in rest:
        t = sum(1 for a, c in fs if dot(a, q) + c == 0)
        if q == origin:
            buckets[3].append(q)
        elif t >= 2:
            buckets[0].append(q)
        elif t == 1:
            buckets[1].append(q)
        else:
            buckets[2].append(q)
    return verts + buckets[0] + buckets[1] + buckets[2] + buckets[3]


def complete_points(p):
    """Polytope carrying all lattice points of its hull, in the standard order."""
    pts = order_points(p, lattice_points(p))
    q = LatticePolytope(pts, [i < len(p.vertices) for i in range(len(pts))],
                        p.affine_dim, complete=True)
    q._facets = p._facets
    return q


def count_points(p):
    return len(lattice_points(p))


def tight_facets(p, x):
    """Bitmask of facets on which x lies."""
    m = 0
    for j, (a, c) in enumerate(p.facets()):
        if dot(a, x) + c == 0:
            m |= 1 << j
    return m


class IncidenceData:
    """Faces of a full-dimensional polytope by dimension.

    ``faces[i]`` lists ``(vertex_bits, facet_bits)`` for the i-dimensional
    faces; bit j refers to vertex (or facet) j in the polytope's order.
    """

    def __init__(self, faces):
        self.faces = faces

    def f_vector(self):
        return [len(f) for f in self.faces]


def incidence_structure(p):
    verts = p.vertices
    fs = p.facets()
    d = p.dim
    fmasks = []
    for a, c in fs:
        m = 0
        for i, v in enumerate(verts):
            if dot(a, v) + c == 0:
                m |= 1 << i
        fmasks.append(m)
    seen = set(fmasks)
    frontier = list(fmasks)
    while frontier:
        nxt = []
        for s in frontier:
            for f in fmasks:
                t = s & f
                if t and t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    faces = [[] for _ in range(d)]
    for s in seen:
        idx = [i for i in range(len(verts)) if s >> i & 1]
        k = rank([[1] + list(verts[i]) for i in idx]) - 1
        fb = 0
        for j, f in enumerate(fmasks):
            if f & s == s:
                fb |= 1 << j
        faces[k].append((s, fb))
    for lst in faces:
        lst.sort()
    return IncidenceData(faces)


def face_vertex_sets(p):
    """Vertex bitmasks of all proper faces, keyed by dimension."""
    return [[s for s, _ in lst] for lst in incidence_structure(p).faces]


def triangulate(p):
    """Pulling triangulation of a full-dimensional polytope.

    Returns simplices as lists of vertex indices.
    """
    nv = len(p.vertices)
    if p.dim <= 1 or nv == p.dim + 1:
        return [list(range(nv))]
    faces = [[s for s, _ in lst] for lst in incidence_structure(p).faces]

    def tri(mask, k):
        apex = (mask & -mask).bit_length() - 1
        if k == 0:
            return [[apex]]
        out = []
        for sub in faces[k - 1]:
            if sub & mask == sub and not sub >> apex & 1:
                out.extend([apex] + s for s in tri(sub, k - 1))
        return out

    return tri((1 << nv) - 1, p.dim)


def simplex_volume(pts):
    p0 = pts[0]
    return abs(det([[a - b for a, b in zip(q, p0)] for q in pts[1:]]))


def volume_barycenter(p):
    """Normalized volume (d! times Euclidean) and barycenter of the solid polytope."""
    if not p.full_dimensional:
        raise PolytopeError("volume requires a full-dimensional polytope")
    verts = p.vertices
    d = p.dim
    total = 0
    acc = [Fraction(0)] * d
    for s in triangulate(p):
        pts = [verts[i] for i in s]
        v = simplex_volume(pts)
        total += v
        for i in range(d):
            acc[i] += Fraction(v * sum(q[i] for q in pts), d + 1)
    return total, RatVector.from_fractions([x / total for x in acc])


def divisibility(p):
    """Largest g such that every vertex coordinate is divisible by g."""
    g = 0
    for v in p.vertices:
        g = gcd(g, vec_gcd(v))
    return g


def facet_coordinates(p, j):
    """Vertices of facet j in coordinates of the facet's own affine lattice."""
    a, c = p.facets()[j]
    verts = [v for v in p.vertices if dot(a, v) + c == 0]
    basis = kernel_basis(transpose([list(a)]))
    p0 = list(verts[0])
    return to_affine_coords(verts, p0, basis)


def unimodular_image(p, u, shift=None):
    """Image of a polytope under x -> u x + shift."""
    shift = shift or [0] * p.dim
    pts = [tuple(sum(u[i][j] * x[j] for j in range(p.dim)) + shift[i] for i in range(p.dim))
           for x in p.points]
    return LatticePolytope(pts, p.vertex_flags, p.affine_dim, p.complete)


__all__ = [
    "LatticePolytope", "PolytopeError", "hull_vertices", "polytope", "facets_of",
    "complete_points", "lattice_points", "is_reflexive", "is_ip", "dual",
    "pairing_matrix", "incidence_structure", "volume_barycenter", "divisibility",
    "facet_coordinates", "affine_lattice", "to_affine_coords", "identity",
]
