"""Star triangulations, Stanley-Reisner ideals and Mori cones of toric fans."""

from itertools import combinations

from .cone import extreme_rays, positive_relations
from .linalg import (coordinates, det, dot, kernel_basis, primitive, rank,
                     solve, transpose)
from .polytope import (LatticePolytope, PolytopeError, affine_lattice,
                       complete_points, hull_vertices, is_reflexive,
                       to_affine_coords, volume_barycenter)

MAX_FACET_POINTS = 10


class TriangulationError(PolytopeError):
    pass


def bits(indices, n):
    """Left-to-right bit string: character i is 1 iff i is in indices."""
    s = set(indices)
    return "".join("1" if i in s else "0" for i in range(n))


def parse_bits(text):
    return frozenset(i for i, ch in enumerate(text) if ch == "1")


def relevant_points(pstar, include_facet_interior=False):
    """Nonzero points of pstar in standard order with a relevance flag.

    Without ``include_facet_interior`` points interior to facets are not
    relevant.  Returns ``(points, relevant_indices)``.
    """
    if not pstar.complete:
        pstar = complete_points(pstar)
    origin = tuple([0] * pstar.dim)
    pts = [p for p in pstar.points if p != origin]
    if include_facet_interior:
        return pts, list(range(len(pts)))
    fs = pstar.facets()
    rel = []
    for i, p in enumerate(pts):
        tight = sum(1 for a, c in fs if dot(a, p) + c == 0)
        if tight != 1 or pstar.vertex_flags[i]:
            rel.append(i)
    return pts, rel


class Triangulation:
    """Simplices of a star triangulation as frozensets of point indices."""

    def __init__(self, points, simplices, relevant=None, regular=None):
        self.points = [tuple(p) for p in points]
        self.simplices = list(simplices)
        self.relevant = sorted(relevant) if relevant is not None else list(range(len(points)))
        self.regular = regular

    @property
    def n(self):
        # relevant points precede the others, so bit strings cover this prefix
        return len(self.relevant)

    def bitsets(self):
        return [bits(s, self.n) for s in self.simplices]

    def __repr__(self):
        return f"Triangulation({len(self.simplices)} simplices)"


def _affine_coords(pts):
    p0, basis = affine_lattice(pts)
    return to_affine_coords(pts, p0, basis), len(basis)


def _contains(simplex_pts, q):
    # barycentric coordinates of q, all >= 0
    k = len(simplex_pts) - 1
    p0 = simplex_pts[0]
    m = transpose([[a - b for a, b in zip(p, p0)] for p in simplex_pts[1:]])
    lam = solve(m, [a - b for a, b in zip(q, p0)])
    if lam is None:
        return False
    return all(x >= 0 for x in lam) and sum(lam) <= 1 and k >= 0


def _side(ridge_pts, apex, other):
    # sign of other relative to the hyperplane through ridge_pts, oriented by apex
    p0 = ridge_pts[0]
    rows = [[a - b for a, b in zip(p, p0)] for p in ridge_pts[1:]]
    s1 = det(rows + [[a - b for a, b in zip(apex, p0)]])
    s2 = det(rows + [[a - b for a, b in zip(other, p0)]])
    return (s1 > 0) - (s1 < 0), (s2 > 0) - (s2 < 0)


def proper_intersection(sigma, tau, coords):
    """True if the two simplices (index sets) meet in a common face."""
    common = sigma & tau
    vecs = []
    kinds = []
    for i in sorted(sigma | tau):
        u = [1] + list(coords[i])
        if i in common:
            vecs.append(u)
            vecs.append([-x for x in u])
            kinds += [0, 0]
        elif i in sigma:
            vecs.append(u)
            kinds.append(1)
        else:
            vecs.append([-x for x in u])
            kinds.append(1)
    for w in positive_relations(vecs):
        if any(x and k for x, k in zip(w, kinds)):
            return False
    return True


def fine_triangulations(coords):
    """All triangulations of a full-dimensional point configuration using every point.

    ``coords`` are points of Z^k; simplices are frozensets of indices.
    """
    n = len(coords)
    k = len(coords[0])
    if n == k + 1:
        return [[frozenset(range(n))]]
    hull = hull_vertices(coords)
    poly = LatticePolytope(hull.vertices, [True] * len(hull.vertices), k)
    total, _ = volume_barycenter(poly)
    fs = poly.facets()
    cands = []
    vol = {}
    for s in combinations(range(n), k + 1):
        pts = [coords[i] for i in s]
        v = abs(det([[a - b for a, b in zip(q, pts[0])] for q in pts[1:]]))
        if v == 0:
            continue
        if any(_contains(pts, coords[j]) for j in range(n) if j not in s):
            continue
        fs_ = frozenset(s)
        cands.append(fs_)
        vol[fs_] = v
    by_ridge = {}
    for s in cands:
        for i in s:
            by_ridge.setdefault(s - {i}, []).append(s)

    def on_boundary(ridge):
        pts = [coords[i] for i in ridge]
        return any(all(dot(a, p) + c == 0 for p in pts) for a, c in fs)

    boundary = {r: on_boundary(r) for r in by_ridge}
    compat = {}

    def ok(s, t):
        key = (s, t) if id(s) < id(t) else (t, s)
        if key not in compat:
            compat[key] = proper_intersection(s, t, coords)
        return compat[key]

    found = set()

    def rec(chosen, volume):
        if volume > total:
            return
        open_ridges = {}
        for s in chosen:
            for i in s:
                r = s - {i}
                if boundary[r]:
                    continue
                open_ridges.setdefault(r, []).append((s, i))
        todo = [(r, lst[0]) for r, lst in open_ridges.items() if len(lst) == 1]
        if any(len(lst) > 2 for lst in open_ridges.values()):
            return
        if not todo:
            if volume == total:
                found.add(frozenset(chosen))
            return
        ridge, (s, apex) = min(todo, key=lambda x: sorted(x[0]))
        rpts = [coords[i] for i in sorted(ridge)]
        for t in by_ridge[ridge]:
            if t == s or t in chosen:
                continue
            b = next(iter(t - ridge))
            sa, sb = _side(rpts, coords[apex], coords[b])
            if sa * sb >= 0:
                continue
            if all(ok(t, u) for u in chosen):
                rec(chosen | {t}, volume + vol[t])

    for s in cands:
        if 0 in s:
            rec(frozenset([s]), vol[s])
    return sorted((sorted(sorted(s) for s in t) for t in found))


def _facet_point_sets(pstar, pts, rel):
    out = []
    for a, c in pstar.facets():
        out.append([i for i in rel if dot(a, pts[i]) + c == 0])
    return out


def auto_star_triangulations(pstar, include_facet_interior=False, include_nonregular=False,
                             max_facet_points=MAX_FACET_POINTS):
    """All fine star triangulations of the relevant points of a reflexive polytope.

    Every non-simplicial facet is triangulated exhaustively; the choices
    are combined when they agree on shared faces.  Unless
    ``include_nonregular`` is set, only regular (projective) fans are kept.
    """
    if not is_reflexive(pstar):
        raise PolytopeError("star triangulations require a reflexive polytope")
    if not pstar.complete:
        pstar = complete_points(pstar)
    pts, rel = relevant_points(pstar, include_facet_interior)
    d = pstar.dim
    facet_sets = _facet_point_sets(pstar, pts, rel)
    options = []
    for fset in facet_sets:
        if len(fset) == d:
            options.append([[frozenset(fset)]])
            continue
        if len(fset) > max_facet_points:
            raise TriangulationError(
                f"cannot auto-triangulate a facet with {len(fset)} relevant points;"
                " supply a triangulation and use validate_triangulation")
        coords, k = _affine_coords([pts[i] for i in fset])
        if k != d - 1:
            raise TriangulationError("relevant points do not span a facet")
        local = fine_triangulations(coords)
        options.append([[frozenset(fset[i] for i in s) for s in t] for t in local])
    results = []

    def shared_ok(chosen, new_idx, new_tri):
        for j, tri in chosen:
            face = set(facet_sets[j]) & set(facet_sets[new_idx])
            if len(face) <= d - 1:
                continue
            a = {s & face for s in tri if len(s & face) == d - 1}
            b = {s & face for s in new_tri if len(s & face) == d - 1}
            if a != b:
                return False
        return True

    def rec(i, chosen):
        if i == len(options):
            results.append([s for _, tri in chosen for s in tri])
            return
        for tri in options[i]:
            if shared_ok(chosen, i, tri):
                rec(i + 1, chosen + [(i, tri)])

    rec(0, [])
    simple = [k for k, o in enumerate(options) if len(o[0]) == 1 and len(facet_sets[k]) == d]
    out = []
    for simplices in results:
        # simplicial facets first (facet order), then the subdivided ones
        first = [s for s in simplices if any(s == frozenset(facet_sets[k]) for k in simple)]
        rest = [s for s in simplices if s not in first]
        t = Triangulation(pts, first + rest, rel)
        t.regular = mori_cone(t).regular
        if t.regular or include_nonregular:
            out.append(t)
    out.sort(key=lambda t: (len(t.simplices), t.bitsets()))
    return out


def validate_triangulation(points, simplices):
    """Check that simplicial cones over the given simplices form a complete fan.

    ``points`` are the nonzero points (rows); ``simplices`` are index sets
    or left-to-right bit strings.  Returns a Triangulation.
    """
    pts = [tuple(p) for p in points]
    d = len(pts[0])
    sims = [parse_bits(s) if isinstance(s, str) else frozenset(s) for s in simplices]
    for s in sims:
        if len(s) != d:
            raise TriangulationError(f"simplex {sorted(s)} does not have {d} points")
        if det([list(pts[i]) for i in sorted(s)]) == 0:
            raise TriangulationError(f"simplex {sorted(s)} does not span a full cone")
    walls = {}
    for s in sims:
        for i in s:
            walls.setdefault(s - {i}, []).append((s, i))
    for w, lst in walls.items():
        if len(lst) != 2:
            raise TriangulationError(f"wall {sorted(w)} bounds {len(lst)} cones")
        (s, a), (t, b) = lst
        wp = [pts[i] for i in sorted(w)]
        origin = tuple([0] * d)
        sa, sb = _side([origin] + wp, pts[a], pts[b])
        if sa * sb >= 0:
            raise TriangulationError(f"cones over {sorted(s)} and {sorted(t)} overlap")
    v = _generic_vector(pts, sims, d)
    deg = 0
    for s in sims:
        m = transpose([list(pts[i]) for i in sorted(s)])
        lam = solve(m, v)
        if all(x > 0 for x in lam):
            deg += 1
    if deg != 1:
        raise TriangulationError(f"cones cover a generic point {deg} times")
    return Triangulation(pts, sims)


def _generic_vector(pts, sims, d):
    normals = []
    for s in sims:
        for sub in combinations(sorted(s), d - 1):
            rows = [list(pts[i]) for i in sub]
            k = kernel_basis(transpose(rows))
            if len(k) == 1:
                normals.append(k[0])
    base = 1
    while True:
        base += 1
        v = [base ** (i + 1) + i for i in range(d)]
        if all(dot(nv, v) != 0 for nv in normals):
            return v


class SRIdeal:
    def __init__(self, generators, n):
        self.generators = generators
        self.n = n

    def bitsets(self):
        return [bits(g, self.n) for g in self.generators]


def sr_ideal(t):
    """Minimal non-faces over the relevant points, by increasing size."""
    n = t.n
    verts = t.relevant
    faces = set()
    for s in t.simplices:
        for k in range(1, len(s) + 1):
            for sub in combinations(sorted(s), k):
                faces.add(frozenset(sub))
    gens = []
    level = [frozenset()]
    size = 1
    while level:
        nxt = []
        cand = set()
        for f in level:
            for v in verts:
                if f and v <= max(f):
                    continue
                cand.add(f | {v})
        for c in sorted(cand, key=sorted):
            if not all(c - {v} in faces or not (c - {v}) for v in c):
                continue
            if c in faces:
                nxt.append(c)
            else:
                gens.append(c)
        level = nxt
        size += 1
    gens.sort(key=lambda g: (len(g), bits(g, n)))
    return SRIdeal(gens, n)


def wall_relations(t):
    """Primitive linear relations across interior walls, apexes positive."""
    pts = t.points
    walls = {}
    for s in t.simplices:
        for i in s:
            walls.setdefault(s - {i}, []).append(i)
    out = []
    for w, apexes in walls.items():
        if len(apexes) != 2:
            continue
        idx = sorted(w) + apexes
        ker = kernel_basis([list(pts[i]) for i in idx])
        if len(ker) != 1:
            raise TriangulationError("degenerate wall")
        r = ker[0]
        if r[-1] < 0:
            r = [-x for x in r]
        full = [0] * len(pts)
        for i, x in zip(idx, r):
            full[i] = x
        full = primitive(full)
        if full not in out:
            out.append(full)
    return out


class MoriCone:
    def __init__(self, generators, dim, incidence, regular, kahler):
        self.generators = generators
        self.dim = dim
        self.incidence = incidence
        self.regular = regular
        self.kahler = kahler

    def __repr__(self):
        return f"MoriCone({self.generators}, dim={self.dim})"


def mori_cone(t):
    """Mori cone generated by the wall relations of a complete simplicial fan.

    Generators are integer relations whose columns are the relevant points.
    ``regular`` is False when the cone contains a line, i.e. the fan is not
    projective.
    """
    rel = t.relevant
    walls = [[w[i] for i in rel] for w in wall_relations(t)]
    lattice = kernel_basis([list(t.points[i]) for i in rel])
    k = len(lattice)
    coords = [coordinates(lattice, w) for w in walls]
    if any(c is None for c in coords) or rank(coords) < k:
        return MoriCone([], k, [], False, [])
    kahler = [r for r, _ in extreme_rays(coords)]
    if rank(kahler) < k:
        return MoriCone([], k, [], False, kahler)
    gens = []
    for c, _ in extreme_rays(kahler):
        g = primitive([sum(c[j] * lattice[j][i] for j in range(k)) for i in range(len(rel))])
        gens.append((g, c))
    gens.sort(key=lambda x: x[0], reverse=True)
    inc = ["".join("1" if dot(kr, c) == 0 else "0" for kr in kahler) for _, c in gens]
    return MoriCone([g for g, _ in gens], k, inc, True, kahler)


def mori_generators(t):
    m = mori_cone(t)
    if not m.regular:
        raise TriangulationError("the fan is not projective; its Mori cone contains a line")
    return m


def kreuzer_polynomial(points, vertex_flags):
    """Laurent-polynomial rendering of points: + for vertices, - for others."""
    terms = []
    for p, vflag in zip(points, vertex_flags):
        num, den = [], []
        for i, x in enumerate(p):
            var = f"t_{i + 1}"
            if x:
                (num if x > 0 else den).append(var if abs(x) == 1 else f"{var}^{abs(x)}")
        mono = "".join(num) or "1"
        if den:
            mono += "/" + (den[0] if len(den) == 1 else "(" + "".join(den) + ")")
        terms.append(("+" if vflag else "-") + mono)
    s = "".join(terms)
    return s[1:] if s.startswith("+") else s
