"""Nef partitions of reflexive polytopes and reflexive Gorenstein cones."""

from fractions import Fraction
from itertools import combinations

from .canonical import automorphisms
from .linalg import (coordinates, det, dot, independent_rows, inverse,
                     kernel_basis, rank, saturated_span, solve, transpose)
from .polytope import (LatticePolytope, PolytopeError, complete_points, dual,
                       hull_vertices, is_reflexive, lattice_points)

MAX_WORK_DIM = 8


class NefPartition:
    """A nef partition of the vertices of a reflexive polytope.

    ``parts`` lists vertex-index sets as displayed: parts not containing
    vertex 0 first (ordered by smallest element), then the part holding
    vertex 0.  ``point_parts`` gives the part of every nonzero lattice point
    of the polytope, in the polytope's point order (origin excluded).
    ``functionals[l][j]`` is the integral linear form m with
    phi_l(y) = -<m, y> on the cone over facet j.
    """

    def __init__(self, pstar, parts, functionals):
        self.pstar = pstar
        self.r = len(parts)
        self.parts = parts
        self.functionals = functionals
        self.is_projection = False
        self.is_direct_product = False
        self.is_quotient_product = False
        pts = [p for p in pstar.points if any(p)]
        self.points = pts
        self.point_parts = []
        for p in pts:
            phis = [self.phi(l, p) for l in range(self.r)]
            self.point_parts.append(phis.index(max(phis)) if max(phis) > 0 else None)

    def phi(self, l, y):
        return max(-dot(m, y) for m in self.functionals[l])

    @property
    def lift_order(self):
        """Part indices in the order of the lifted coordinates."""
        return [self.r - 1] + list(range(self.r - 1))

    def point_sets(self):
        """Indices (into ``points``) of the nonzero points of each part."""
        return [[i for i, l in enumerate(self.point_parts) if l == k] for k in range(self.r)]

    def __repr__(self):
        return f"NefPartition({[sorted(p) for p in self.parts]})"


class _FacetData:
    def __init__(self, idx, verts):
        self.idx = idx
        basis = independent_rows([verts[i] for i in idx])
        self.basis = [idx[i] for i in basis]
        self.inv = inverse([list(verts[i]) for i in self.basis])
        self.others = [i for i in idx if i not in self.basis]
        self.last = max(idx)

    def functional(self, values):
        # m with <m, v_b> = -values[b] for basis vertices b
        rhs = [-values[b] for b in self.basis]
        return [sum(self.inv[t][i] * rhs[i] for i in range(len(rhs))) for t in range(len(rhs))]


def _nef_search(pstar, r):
    verts = [list(v) for v in pstar.vertices]
    n = len(verts)
    fs = pstar.facets()
    facets = []
    for a, c in fs:
        idx = [i for i, v in enumerate(verts) if dot(a, v) + c == 0]
        facets.append(_FacetData(idx, verts))
    done_at = [[f for f in facets if f.last == t] for t in range(n)]
    assign = [0] * n
    found = []
    completed = []  # stack of (facet, functionals)

    def facet_ok(f):
        ms = []
        for l in range(r):
            vals = {i: int(assign[i] == l) for i in f.idx}
            m = f.functional(vals)
            if any(x.denominator != 1 for x in m):
                return None
            m = [int(x) for x in m]
            for i in f.others:
                if dot(m, verts[i]) != -vals[i]:
                    return None
            ms.append(m)
        return ms

    def convex(ms, upto, only=None):
        rng = [only] if only is not None else range(upto + 1)
        for l in range(r):
            m = ms[l]
            for y in rng:
                if dot(m, verts[y]) < -int(assign[y] == l):
                    return False
        return True

    def rec(t, used):
        if t == n:
            if used == r:
                found.append((list(assign), [list(ms) for _, ms in completed]))
            return
        if n - t < r - used:
            return
        for l in range(min(used + 1, r)):
            assign[t] = l
            ok = True
            for _, ms in completed:
                if not convex(ms, t, only=t):
                    ok = False
                    break
            if not ok:
                continue
            pushed = 0
            for f in done_at[t]:
                ms = facet_ok(f)
                if ms is None or not convex(ms, t):
                    ok = False
                    break
                completed.append((f, ms))
                pushed += 1
            if ok:
                rec(t + 1, max(used, l + 1))
            for _ in range(pushed):
                completed.pop()

    assign[0] = 0
    if n >= r:
        # vertex 0 always starts part 0
        for f in done_at[0]:
            raise PolytopeError("facet with a single vertex")
        rec(1, 1)
    return found


def _display_parts(assign, r):
    groups = [frozenset(i for i, a in enumerate(assign) if a == l) for l in range(r)]
    zero = next(g for g in groups if 0 in g)
    rest = sorted((g for g in groups if 0 not in g), key=min)
    return rest + [zero]


def _build(pstar, assign, functionals, r):
    parts = _display_parts(assign, r)
    # functionals are indexed by assignment label; reorder to display order
    label_of = [assign[min(p)] for p in parts]
    funcs = [[ms[label] for ms in functionals] for label in label_of]
    return NefPartition(pstar, parts, funcs)


def classify_partition(part):
    """Set the projection and direct-product flags of a partition."""
    verts = part.pstar.vertices
    d = part.pstar.dim
    part.is_projection = any(len(p) == 1 for p in part.parts)
    part.is_direct_product = False
    part.is_quotient_product = False
    r = part.r
    for k in range(1, r // 2 + 1):
        for group in combinations(range(r), k):
            if k == r - k and 0 not in group:
                continue
            g1 = [verts[i] for l in group for i in part.parts[l]]
            g2 = [verts[i] for l in range(r) if l not in group for i in part.parts[l]]
            r1, r2 = rank(g1), rank(g2)
            if r1 + r2 != d or rank(g1 + g2) != d:
                continue
            part.is_quotient_product = True
            b = saturated_span(g1) + saturated_span(g2)
            if abs(det(b)) == 1:
                part.is_direct_product = True
    return part


def enumerate_nef_partitions(pstar, r, keep_symmetric=False):
    """All nef partitions of length r of the reflexive polytope pstar.

    Unless ``keep_symmetric`` is set, partitions related by a lattice
    automorphism of pstar are reported once.
    """
    if not is_reflexive(pstar):
        raise PolytopeError("nef partitions require a reflexive polytope")
    if pstar.dim + r - 1 > MAX_WORK_DIM:
        raise PolytopeError(f"working dimension {pstar.dim + r - 1} exceeds the cap {MAX_WORK_DIM}")
    if not pstar.complete:
        pstar = complete_points(pstar)
    found = _nef_search(pstar, r)
    autos = None if keep_symmetric else automorphisms(pstar)
    seen = set()
    out = []
    for assign, funcs in found:
        groups = frozenset(frozenset(i for i, a in enumerate(assign) if a == l) for l in range(r))
        if autos is not None:
            key = min(tuple(sorted(tuple(sorted(g[i] for i in grp)) for grp in groups)) for g in autos)
            if key in seen:
                continue
            seen.add(key)
        out.append(classify_partition(_build(pstar, assign, funcs, r)))
    return out


def partition_degrees(part, relations, over_points=False):
    """Per relation, the tuple of coefficient sums over the displayed parts."""
    out = []
    if over_points:
        labels = part.point_parts
    else:
        labels = [None] * len(part.pstar.vertices)
        for l, p in enumerate(part.parts):
            for i in p:
                labels[i] = l
    for w in relations:
        tup = [0] * part.r
        for i, x in enumerate(w):
            if x and labels[i] is not None:
                tup[labels[i]] += x
        out.append(tuple(tup))
    return out


def _slice_coords(points, deg):
    # coordinates of degree-1 points in the lattice of the hyperplane slice
    ker = kernel_basis(transpose([list(deg)]))
    base = points[0]
    return [tuple(coordinates(ker, [a - b for a, b in zip(p, base)])) for p in points]


def _slice_vertices(points, deg):
    """Flags marking which degree-1 points are vertices of their hull."""
    coords = _slice_coords(points, deg)
    uniq = sorted(set(coords))
    hv = hull_vertices(uniq)
    vs = set(hv.vertices)
    return [c in vs for c in coords]


def _hyperplane_points(gens, deg, k):
    """Lattice points of k * conv(gens) inside {x : deg . x = k}."""
    gens = [list(g) for g in gens]
    n = len(deg)
    ker = kernel_basis(transpose([list(deg)]))
    base = [k * x for x in gens[0]]
    coords = []
    for g in gens:
        c = coordinates(ker, [k * a - b for a, b in zip(g, base)])
        coords.append(tuple(c))
    poly = hull_vertices(sorted(set(coords)))
    poly = LatticePolytope(poly.vertices, [True] * len(poly.vertices), poly.affine_dim)
    pts = lattice_points(poly)
    return [tuple(base[i] + sum(c[j] * ker[j][i] for j in range(len(ker))) for i in range(n))
            for c in pts]


class GorensteinCone:
    """A cone given by its degree-1 support points and those of its dual.

    ``deg`` is the degree functional; the dual support consists of the
    points of the dual cone on which the dual degree element is 1.
    """

    def __init__(self, support, dual_support, deg, index):
        self.support = [tuple(x) for x in support]
        self.dual_support = [tuple(x) for x in dual_support]
        self.deg = tuple(deg)
        self.index = index
        self.dim = len(deg)

    def dual(self, dual_deg):
        return GorensteinCone(self.dual_support, self.support, dual_deg, self.index)

    def level_points(self, k):
        if k == 0:
            return [tuple([0] * self.dim)]
        return _hyperplane_points(self.support, self.deg, k)

    def level_counts(self, kmax):
        out = []
        for k in range(1, kmax + 1):
            pts = self.level_points(k)
            inner = sum(1 for x in pts if all(dot(x, y) > 0 for y in self.dual_support))
            out.append((len(pts), inner))
        return out


def level_counts(cone, k_max):
    return cone.level_counts(k_max)


class STPolynomials:
    def __init__(self, s, t):
        self.S = s
        self.T = t

    def __repr__(self):
        return f"STPolynomials(S={self.S}, T={self.T})"


def _series_coeffs(counts, n, upto):
    # coefficients of (1 - t)^n * sum counts[k] t^k up to degree upto
    from math import comb
    out = []
    for j in range(upto + 1):
        out.append(sum((-1) ** i * comb(n, i) * counts[j - i] for i in range(min(j, n) + 1)))
    return out


def s_t_polynomials(cone, check_serre=False):
    """S and T polynomials of a reflexive Gorenstein cone of dimension d~.

    Counts are taken up to half the degree and completed by the Serre
    relation S(t) = t^d~ T(1/t); with ``check_serre`` all degrees are
    counted and the relation is verified.
    """
    n = cone.dim
    kmax = n if check_serre else (n + 2) // 2
    lev = cone.level_counts(kmax)
    ell = [1] + [a for a, _ in lev]
    ell_in = [0] + [b for _, b in lev]
    s = _series_coeffs(ell, n, kmax)
    t = _series_coeffs(ell_in, n, kmax)
    if check_serre:
        if any(s[j] != t[n - j] for j in range(n + 1)):
            raise ArithmeticError("Serre relation violated")
    else:
        s = s + [t[n - j] for j in range(kmax + 1, n + 1)]
        t = t + [s[n - j] for j in range(kmax + 1, n + 1)]
    while len(s) > 1 and s[-1] == 0:
        s.pop()
    while len(t) > 1 and t[-1] == 0:
        t.pop()
    return STPolynomials(s, t)


def _lift(part, p):
    return tuple(part.phi(l, p) for l in part.lift_order) + tuple(p)


def gorenstein_lift(pstar, part, mode=2):
    """Points of the support of the cone over the partition (columns as tuples).

    Vertices come first, then the other nonzero points, then the r copies
    of the origin.  Mode 1 drops the first coordinate, mode 0 returns the
    bare points of pstar.  Returns ``(points, number_of_vertices)``.
    """
    if not pstar.complete:
        pstar = complete_points(pstar)
    r = part.r
    d = pstar.dim
    nz = [p for p in pstar.points if any(p)]
    if mode == 0:
        return list(pstar.points), len(pstar.vertices)
    pts = [_lift(part, p) for p in nz]
    for pos in reversed(range(r)):
        pts.append(tuple(int(i == pos) for i in range(r)) + tuple([0] * d))
    nv = sum(_slice_vertices(pts, [1] * r + [0] * d))
    if mode == 1:
        pts = [q[1:] for q in pts]
    return pts, nv


def _delta_parts(pstar, part):
    """Lattice points of the polytopes Delta_l in lift order."""
    delta = complete_points(dual(pstar))
    verts = pstar.vertices
    phis = [[part.phi(l, v) for v in verts] for l in part.lift_order]
    out = []
    for ph in phis:
        pts = [m for m in delta.points if all(dot(m, v) >= -f for v, f in zip(verts, ph))]
        out.append(pts)
    return out


def dual_gorenstein(pstar, part, mode=2):
    """Points of the support of the dual cone, vertices first.

    Returns ``(points, number_of_vertices)``; with mode 2 the first r
    coordinates give the part, mode 1 drops the first one, mode 0 returns
    the points of the convex hull of the union of the Delta_l.
    """
    r = part.r
    parts = _delta_parts(pstar, part)
    lifted = []
    for l, pts in enumerate(parts):
        e = tuple(int(i == l) for i in range(r))
        lifted.extend(e + tuple(q) for q in pts)
    flags = _slice_vertices(lifted, [1] * r + [0] * pstar.dim)
    verts = [q for q, f in zip(lifted, flags) if f]
    rest = [q for q, f in zip(lifted, flags) if not f and any(q[r:])]
    origins = [q for q in lifted if not any(q[r:])]
    pts = verts + rest + origins
    if mode == 0:
        union = sorted(set(q for ps in parts for q in ps), reverse=True)
        hv = hull_vertices(union)
        ordered = hv.vertices + [q for q in union if q not in set(hv.vertices)]
        return ordered, len(hv.vertices)
    if mode == 1:
        pts = [q[1:] for q in pts]
    return pts, len(verts)


def nef_cones(pstar, part):
    """The cone over the partition (N side) and its dual (M side)."""
    r = part.r
    d = pstar.dim
    cn, _ = gorenstein_lift(pstar, part, 2)
    cm, _ = dual_gorenstein(pstar, part, 2)
    deg = tuple([1] * r + [0] * d)
    cone_n = GorensteinCone(cn, cm, deg, r)
    cone_m = GorensteinCone(cm, cn, deg, r)
    return cone_n, cone_m


class GorensteinReport:
    def __init__(self, m_counts, n_counts, facets, index, reflexive):
        self.m_counts = m_counts
        self.n_counts = n_counts
        self.facets = facets
        self.index = index
        self.reflexive = reflexive


def gorenstein_mode(support, r):
    """Analyse the cone over a support polytope placed at degree 1."""
    if not support.complete:
        support = complete_points(support)
    n = support.dim
    fs = support.facets()
    rays = [(c,) + tuple(a) for a, c in fs]
    m = solve([list(y) for y in rays], [1] * len(rays))
    mcounts = (len(support.points), len(support.vertices))
    if m is None or any(x.denominator != 1 for x in m) or \
            any(dot(m, y) != 1 for y in rays):
        return GorensteinReport(mcounts, None, len(fs), None, False)
    m = [int(x) for x in m]
    index = m[0]
    npts = _hyperplane_points(rays, m, 1)
    nv = len(hull_vertices(npts).vertices)
    return GorensteinReport(mcounts, (len(npts), nv), len(fs), index, True)


def minkowski_sum(polys):
    pts = {tuple([0] * len(polys[0][0]))}
    for poly in polys:
        pts = {tuple(a + b for a, b in zip(x, y)) for x in pts for y in poly}
    return hull_vertices(sorted(pts)).vertices


__all__ = [
    "NefPartition", "enumerate_nef_partitions", "classify_partition",
    "partition_degrees", "gorenstein_lift", "dual_gorenstein", "GorensteinCone",
    "level_counts", "s_t_polynomials", "gorenstein_mode", "nef_cones",
    "Fraction",
]
